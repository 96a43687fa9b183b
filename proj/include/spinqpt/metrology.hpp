// metrology.hpp — criticality-based sensing: ground-state fidelity and its
// curvature across the transition, central-spin signal dynamics, and the
// error-propagation inverse variance.

#pragma once

#include <complex>
#include <vector>

#include "spinqpt/model.hpp"

namespace spinqpt {

// Row flags shared by the sensitivity curves and the sweep front end.
inline constexpr unsigned kFlagUndefined = 1u;
inline constexpr unsigned kFlagSectorCrossing = 2u;
inline constexpr unsigned kFlagTruncation = 4u;

enum class WeightKind { bosonic_coherent, spin_coherent };

// Probe state (b_up|up> + b_dn|dn>) ⊗ sum_n d_n |n>. Bath weights |d_n|^2
// are coherent (Poissonian) or spin-coherent (binomial with mean alpha^2),
// truncated at n_max and renormalized.
struct InitialState {
    std::complex<double> b_up{0.7071067811865476, 0.0};
    std::complex<double> b_down{0.7071067811865476, 0.0};
    double alpha_probe{2.0};
    WeightKind kind{WeightKind::bosonic_coherent};
    int n_max{0};  // 0 = automatic cutoff min(2j, ceil(alpha^2 + 10*alpha + 20))

    void validate() const;
};

// Truncated, renormalized bath weights |d_n|^2 for n = 0..n_max, plus the
// probability mass lost to truncation before renormalization.
struct BathWeights {
    std::vector<double> p;
    double truncation_loss{};
};

BathWeights bath_weights(const InitialState& st, int N);

// |<psi_g(g)|psi_g(g + dg)>| from the exact ground states. Exactly zero when
// the two ground states occupy different excitation sectors.
double ground_fidelity(const ModelParams& tpl, double g_tilde, double dg);

struct QfiPoint {
    double value{};
    bool sector_crossing{};  // ground sector changed across the probe step
};

// Fidelity-curvature estimate 8*(1 - f)/dg^2 of the quantum Fisher
// information. At sector crossings f drops to zero and the estimate
// saturates at 8/dg^2; such points carry the crossing flag.
QfiPoint qfi(const ModelParams& tpl, double g_tilde, double dg = 1e-5);

struct SensitivityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<unsigned> flags;
};

SensitivityCurve qfi_sweep(const ModelParams& tpl, const std::vector<double>& grid,
                           double dg = 1e-5);

struct SigmaX {
    double value{};
    bool truncation_warning{};
};

// Central-spin signal 2*Re{ b_up* b_dn sum_n |d_n|^2 e^{i t phi(n)} } with
// phi(n) = 2*(omega_tilde*g_tilde^2 + delta)*n, in the normal-phase
// effective picture. Exactly periodic with period
// pi/(omega_tilde*g_tilde^2 + delta).
SigmaX sigma_x_expectation(const ModelParams& p, const InitialState& st, double t);

enum class DerivMode { analytic, finite_difference };

struct InverseVariancePoint {
    double value{};
    bool defined{true};  // false when |<sigma_x>| = 1 within 1e-12
    bool truncation_warning{};
};

// Error-propagation bound (d<sigma_x>/dg)^2 / (1 - <sigma_x>^2). The signal
// derivative is taken analytically through the phase by default; the
// finite-difference mode is a diagnostic cross-check.
InverseVariancePoint inverse_variance(const ModelParams& tpl, const InitialState& st,
                                      double t, double g_tilde,
                                      DerivMode mode = DerivMode::analytic,
                                      double fd_step = 1e-6);

SensitivityCurve inverse_variance_sweep(const ModelParams& tpl, const InitialState& st,
                                        double t, const std::vector<double>& grid,
                                        DerivMode mode = DerivMode::analytic);

}  // namespace spinqpt
