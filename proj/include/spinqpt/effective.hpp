// effective.hpp — low-energy effective Hamiltonians from the
// Schrieffer-Wolff treatment of the collective-mode picture: normal-phase
// gap, superradiant displaced-frame parameters, and the transition
// admissibility predicate.

#pragma once

#include <string>

#include "spinqpt/model.hpp"

namespace spinqpt {

struct Admissibility {
    bool admissible{};    // |delta| < omega, necessary for the transition
    std::string reason;
    double radicand{};    // (lambda^2 + 2*delta*omega0_tilde)/(omega^2 - delta^2), diagnostic
};

Admissibility qpt_admissible(const ModelParams& p);

struct NormalPhaseEffective {
    double constant{};        // -omega0_tilde/2 - omega*j, equals the edge energy exactly
    double gap{};             // omega_tilde*(1 - g_tilde^2)
    double sw_coefficient{};  // lambda/omega0_tilde, generator amplitude
};

NormalPhaseEffective normal_effective(const ModelParams& p);

// Displaced-frame parameters of the superradiant effective oscillator. The
// two curvature coefficients kappa1, kappa2 vanish identically when alpha^2
// solves the mean-field stationarity condition; kappa0 is reported in the
// sign convention that makes the x^2 curvature positive, with the opposite
// printed convention kept alongside.
struct SuperradiantFrame {
    double alpha{};           // sqrt(n_g), taken real and nonnegative
    double theta{};           // central-spin dressing angle
    double omega_bar0{};      // dressed central-spin splitting at n = n_g
    double kappa0{};          // omega/4 - (2*alpha^2*delta^2 + delta*omega0_tilde)/(4*omega_bar0)
    double kappa0_flipped{};  // -kappa0, the alternative printed convention
    double kappa1{};
    double kappa2{};
    double ground_energy{};   // omega*alpha^2 - omega_bar0/2 - omega*j
};

SuperradiantFrame superradiant_frame(const ModelParams& p);

}  // namespace spinqpt
