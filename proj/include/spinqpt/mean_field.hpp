// mean_field.hpp — closed-form mean-field results for the collective-mode
// picture of the bath: energy functional, order parameters, and the
// delta = 0 asymptotic spectra.

#pragma once

#include "spinqpt/model.hpp"

namespace spinqpt {

enum class Phase { normal, superradiant, inadmissible };

struct MeanFieldSolution {
    double n_g{};        // continuum excitation number, 0 in the normal phase
    double energy{};
    double coherence{};  // sqrt(n_g), the broken-symmetry order parameter
    Phase phase{Phase::normal};
};

struct MeanFieldEnergyPoint {
    double n{};
    double energy{};      // omega*(n - j) - omega_bar0/2
    double omega_bar0{};  // sqrt(4*lambda^2*n + (2*n*delta + omega0_tilde)^2)
};

// Mean-field energy functional at bath occupation n >= 0.
MeanFieldEnergyPoint mean_field_energy(const ModelParams& p, double n);

// Phase classification and ground-state order parameters. The superradiant
// branch requires |delta| < omega; otherwise the phase is marked
// inadmissible and the order parameters are NaN. Near delta = 0 the
// quadratic-stationarity closed form degenerates and the evaluation switches
// to its delta -> 0 limit.
MeanFieldSolution mean_field_solution(const ModelParams& p);

// Rationalized form of the superradiant excitation number. Algebraically
// identical to the value in mean_field_solution wherever both are defined,
// and free of small-delta cancellation.
double excitation_rationalized(const ModelParams& p);

// Near-resonance limit omega_tilde -> 0 of the excitation number,
//   n_g = omega0_tilde/(2*delta^2) * (g_tilde*omega - delta).
// Requires 0 < delta < omega and g_tilde*omega > delta.
double excitation_near_resonance(const ModelParams& p);

// delta = 0 expansion of the sector ground energies for eta >> 1:
//   E(n) = -omega0/2 - omega*j + (1 - g^2 + g^2*(n-1)/(2j)) * n * omega.
double harmonic_energy_delta0(const ModelParams& p, double n);

// delta = 0, N >> n form of the lower sector branch,
//   E(n) = -(omega0/2)*sqrt(1 + 4*g^2*n/eta) + omega0*(n - j - 1)/eta.
double asymptotic_energy_delta0(const ModelParams& p, double n);

// Integer minimizer of asymptotic_energy_delta0 over n in [0, 2j].
int asymptotic_integer_minimum(const ModelParams& p);

}  // namespace spinqpt
