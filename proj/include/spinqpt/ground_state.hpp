// ground_state.hpp — exact ground-state search over the excitation sectors,
// sweep utilities, and finite-difference curvature of the ground energy.

#pragma once

#include <vector>

#include "spinqpt/model.hpp"

namespace spinqpt {

enum class GroundBranch { edge_down_zero, block_minus };

struct GroundStateReport {
    int n_g{};           // excitation number of the ground sector, 0 = |dn,0>
    double energy{};
    GroundBranch branch{GroundBranch::edge_down_zero};
    double c_up{};       // amplitudes on (|up,n-1>, |dn,n>); zero for the edge branch
    double c_down{};
};

// Global minimum over the |dn,0> edge state and all sector lower branches.
// Ties are resolved toward the smaller excitation number.
GroundStateReport find_ground_state(const ModelParams& p);

struct ExcitationPoint {
    double g_tilde{};
    int n_g{};
    bool defined{true};  // false when g_tilde is undefined for the template
};

// Per-point find_ground_state with A back-solved from g_tilde. Undefined
// points are marked and skipped, never fatal.
std::vector<ExcitationPoint> excitation_sweep(const ModelParams& tpl,
                                              const std::vector<double>& grid);

struct EnergyCurve {
    std::vector<double> grid;    // g_tilde values, strictly increasing
    std::vector<double> energy;  // exact ground energies
    std::vector<double> d2;      // central-difference d2E/dg_tilde^2
};

// Three-point stencil on exact ground energies, step h in g_tilde.
EnergyCurve energy_second_derivative(const ModelParams& tpl,
                                     const std::vector<double>& grid, double h);

}  // namespace spinqpt
