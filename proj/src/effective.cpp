#include "spinqpt/effective.hpp"

#include <cmath>
#include <stdexcept>

#include "spinqpt/mean_field.hpp"

namespace spinqpt {

Admissibility qpt_admissible(const ModelParams& p) {
    p.validate();
    const DerivedParams d = derive(p);
    Admissibility a;
    a.admissible = std::abs(p.delta) < p.omega;
    if (a.admissible) {
        a.reason = "|delta| < omega";
    } else if (p.delta >= p.omega) {
        a.reason = "delta >= omega";
    } else {
        a.reason = "delta <= -omega";
    }
    const double l2 = d.lambda * d.lambda;
    a.radicand = (l2 + 2.0 * p.delta * d.omega0_tilde) /
                 (p.omega * p.omega - p.delta * p.delta);
    return a;
}

NormalPhaseEffective normal_effective(const ModelParams& p) {
    const Admissibility a = qpt_admissible(p);
    if (!a.admissible) {
        throw std::domain_error("normal_effective: " + a.reason);
    }
    const DerivedParams d = derive(p);
    if (!d.g_tilde) {
        throw std::domain_error("normal_effective: omega0_tilde <= 0, gap undefined");
    }
    NormalPhaseEffective eff;
    eff.constant = -0.5 * d.omega0_tilde - p.omega * d.j;
    eff.gap = d.omega_tilde * (1.0 - *d.g_tilde * *d.g_tilde);
    eff.sw_coefficient = d.lambda / d.omega0_tilde;
    return eff;
}

SuperradiantFrame superradiant_frame(const ModelParams& p) {
    const Admissibility a = qpt_admissible(p);
    if (!a.admissible) {
        throw std::domain_error("superradiant_frame: " + a.reason);
    }
    const DerivedParams d = derive(p);
    if (!d.g_tilde || *d.g_tilde <= 1.0) {
        throw std::domain_error("superradiant_frame: requires g_tilde > 1");
    }
    const MeanFieldSolution mf = mean_field_solution(p);
    const double w0t = d.omega0_tilde;
    const double l2 = d.lambda * d.lambda;

    SuperradiantFrame f;
    f.alpha = std::sqrt(mf.n_g);
    f.theta = 0.5 * std::atan2(2.0 * f.alpha * d.lambda,
                               2.0 * f.alpha * f.alpha * p.delta + w0t);
    f.omega_bar0 = std::sqrt((l2 * l2 + 2.0 * p.delta * l2 * w0t) /
                             (p.omega * p.omega - p.delta * p.delta));
    const double a2 = f.alpha * f.alpha;
    const double a3 = a2 * f.alpha;
    f.kappa0 = 0.25 * p.omega -
               (2.0 * a2 * p.delta * p.delta + p.delta * w0t) / (4.0 * f.omega_bar0);
    f.kappa0_flipped = -f.kappa0;
    f.kappa1 = p.omega * f.alpha -
               (l2 * f.alpha + 2.0 * a3 * p.delta * p.delta + p.delta * f.alpha * w0t) /
                   f.omega_bar0;
    f.kappa2 = 0.25 * p.omega -
               (2.0 * a2 * p.delta * p.delta + p.delta * w0t + l2) / (4.0 * f.omega_bar0);
    f.ground_energy = p.omega * a2 - 0.5 * f.omega_bar0 - p.omega * d.j;
    return f;
}

}  // namespace spinqpt
