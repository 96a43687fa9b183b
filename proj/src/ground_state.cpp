#include "spinqpt/ground_state.hpp"

#include <cmath>
#include <stdexcept>

namespace spinqpt {

GroundStateReport find_ground_state(const ModelParams& p) {
    p.validate();
    const auto [edge_lo, edge_hi] = edge_state_energies(p);
    (void)edge_hi;

    GroundStateReport best;
    best.n_g = 0;
    best.energy = edge_lo.energy;
    best.branch = GroundBranch::edge_down_zero;
    best.c_up = 0.0;
    best.c_down = 0.0;

    // The scan keeps the first minimum, so ties go to the smallest n.
    const double j = p.j();
    const double w0 = p.omega0, w = p.omega, D = p.delta;
    const double A = p.A;
    for (int n = 1; n <= p.N; ++n) {
        const double m = static_cast<double>(n) - 1.0 - j;
        const double k_n =
            static_cast<double>((static_cast<std::int64_t>(p.N) - n + 1) * n);
        const double O1 = 2.0 * A * std::sqrt(k_n);
        const double O2 = (2.0 * m + 1.0) * D - w + w0;
        const double O3 = D - (2.0 * m + 1.0) * w;
        const double e = 0.5 * (-O3 - std::hypot(O1, O2));
        if (e < best.energy) {
            best.n_g = n;
            best.energy = e;
            best.branch = GroundBranch::block_minus;
            const double theta = 0.5 * std::atan2(O1, O2);
            best.c_up = -std::sin(theta);
            best.c_down = std::cos(theta);
        }
    }
    return best;
}

std::vector<ExcitationPoint> excitation_sweep(const ModelParams& tpl,
                                              const std::vector<double>& grid) {
    std::vector<ExcitationPoint> out;
    out.reserve(grid.size());
    for (double gt : grid) {
        ExcitationPoint pt;
        pt.g_tilde = gt;
        try {
            pt.n_g = find_ground_state(with_g_tilde(tpl, gt)).n_g;
        } catch (const std::domain_error&) {
            pt.n_g = 0;
            pt.defined = false;
        }
        out.push_back(pt);
    }
    return out;
}

EnergyCurve energy_second_derivative(const ModelParams& tpl,
                                     const std::vector<double>& grid, double h) {
    if (!(h > 0.0)) throw std::domain_error("energy_second_derivative: h must be > 0");
    EnergyCurve c;
    c.grid = grid;
    c.energy.reserve(grid.size());
    c.d2.reserve(grid.size());
    auto E = [&](double gt) { return find_ground_state(with_g_tilde(tpl, gt)).energy; };
    for (double gt : grid) {
        const double e0 = E(gt);
        c.energy.push_back(e0);
        c.d2.push_back((E(gt + h) - 2.0 * e0 + E(gt - h)) / (h * h));
    }
    return c;
}

}  // namespace spinqpt
