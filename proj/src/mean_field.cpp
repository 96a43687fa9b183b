#include "spinqpt/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spinqpt {

namespace {

// The stationarity form of the excitation number carries 1/delta^2
// cancellations that cost ~(lambda/delta)^2 ulps; below this threshold the
// algebraically identical rationalized form is used instead (its error stays
// at machine epsilon for all delta).
constexpr double kDeltaSwitch = 1e-4;  // relative to omega

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Rationalized closed form: no small-delta cancellation, defined at delta = 0.
double excitation_rationalized_impl(double lambda, double omega, double delta,
                                    double w0t) {
    const double l2 = lambda * lambda;
    const double w2d2 = omega * omega - delta * delta;
    const double num = l2 * (l2 + 2.0 * delta * w0t) - w2d2 * w0t * w0t;
    const double den = 2.0 * w2d2 * (l2 + delta * w0t) +
                       2.0 * lambda * omega * std::sqrt(w2d2 * (l2 + 2.0 * delta * w0t));
    return num / den;
}

// Superradiant excitation number from the stationarity condition of the
// mean-field energy; valid for |delta| < omega, g_tilde > 1.
double excitation_generic(double lambda, double omega, double delta, double w0t) {
    if (std::abs(delta) < kDeltaSwitch * omega) {
        return excitation_rationalized_impl(lambda, omega, delta, w0t);
    }
    const double l2 = lambda * lambda;
    const double d2 = delta * delta;
    return -(l2 + delta * w0t) / (2.0 * d2) +
           (lambda * omega / (2.0 * d2)) *
               std::sqrt((l2 + 2.0 * delta * w0t) / (omega * omega - d2));
}

}  // namespace

MeanFieldEnergyPoint mean_field_energy(const ModelParams& p, double n) {
    p.validate();
    if (n < 0.0) throw std::domain_error("mean_field_energy: n must be >= 0");
    const DerivedParams d = derive(p);
    MeanFieldEnergyPoint pt;
    pt.n = n;
    // radicand written as a sum of squares, nonnegative by construction
    pt.omega_bar0 = std::hypot(2.0 * d.lambda * std::sqrt(n),
                               2.0 * n * p.delta + d.omega0_tilde);
    pt.energy = p.omega * (n - d.j) - 0.5 * pt.omega_bar0;
    return pt;
}

MeanFieldSolution mean_field_solution(const ModelParams& p) {
    p.validate();
    const DerivedParams d = derive(p);
    MeanFieldSolution s;
    if (std::abs(p.delta) >= p.omega) {
        s.phase = Phase::inadmissible;
        s.n_g = quiet_nan();
        s.energy = quiet_nan();
        s.coherence = quiet_nan();
        return s;
    }
    if (!d.g_tilde) {
        throw std::domain_error(
            "mean_field_solution: omega0_tilde <= 0, phase classification undefined");
    }
    if (*d.g_tilde <= 1.0) {
        s.phase = Phase::normal;
        s.n_g = 0.0;
        s.energy = -0.5 * d.omega0_tilde - p.omega * d.j;
        s.coherence = 0.0;
        return s;
    }
    s.phase = Phase::superradiant;
    s.n_g = excitation_generic(d.lambda, p.omega, p.delta, d.omega0_tilde);
    s.energy = mean_field_energy(p, s.n_g).energy;
    s.coherence = std::sqrt(s.n_g);
    return s;
}

double excitation_rationalized(const ModelParams& p) {
    p.validate();
    const DerivedParams d = derive(p);
    if (std::abs(p.delta) >= p.omega) {
        throw std::domain_error("excitation_rationalized: requires |delta| < omega");
    }
    if (!d.g_tilde || *d.g_tilde <= 1.0) {
        throw std::domain_error("excitation_rationalized: requires g_tilde > 1");
    }
    return excitation_rationalized_impl(d.lambda, p.omega, p.delta, d.omega0_tilde);
}

double excitation_near_resonance(const ModelParams& p) {
    p.validate();
    const DerivedParams d = derive(p);
    if (!(p.delta > 0.0 && p.delta < p.omega)) {
        throw std::domain_error("excitation_near_resonance: requires 0 < delta < omega");
    }
    if (!d.g_tilde) {
        throw std::domain_error("excitation_near_resonance: g_tilde undefined");
    }
    if (!(*d.g_tilde * p.omega > p.delta)) {
        throw std::domain_error("excitation_near_resonance: requires g_tilde*omega > delta");
    }
    return d.omega0_tilde / (2.0 * p.delta * p.delta) * (*d.g_tilde * p.omega - p.delta);
}

double harmonic_energy_delta0(const ModelParams& p, double n) {
    p.validate();
    if (p.delta != 0.0) throw std::domain_error("harmonic_energy_delta0: requires delta = 0");
    const DerivedParams d = derive(p);
    const double g2 = d.g * d.g;
    return -0.5 * p.omega0 - p.omega * d.j +
           (1.0 - g2 + g2 * (n - 1.0) / (2.0 * d.j)) * n * p.omega;
}

double asymptotic_energy_delta0(const ModelParams& p, double n) {
    p.validate();
    if (p.delta != 0.0) throw std::domain_error("asymptotic_energy_delta0: requires delta = 0");
    const DerivedParams d = derive(p);
    const double g2 = d.g * d.g;
    return -0.5 * p.omega0 * std::sqrt(1.0 + 4.0 * g2 * n / d.eta) +
           p.omega0 * (n - d.j - 1.0) / d.eta;
}

int asymptotic_integer_minimum(const ModelParams& p) {
    const DerivedParams d = derive(p);
    if (p.delta != 0.0) throw std::domain_error("asymptotic_integer_minimum: requires delta = 0");
    const double g = d.g;
    if (g <= 1.0) return 0;
    // the functional is convex in n, so the integer minimum brackets the
    // continuum stationary point
    const double n_star = 0.25 * d.eta * (g * g - 1.0 / (g * g));
    const int lo = std::clamp(static_cast<int>(std::floor(n_star)), 0, p.N);
    const int hi = std::clamp(lo + 1, 0, p.N);
    return asymptotic_energy_delta0(p, lo) <= asymptotic_energy_delta0(p, hi) ? lo : hi;
}

}  // namespace spinqpt
