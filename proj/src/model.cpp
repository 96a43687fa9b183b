#include "spinqpt/model.hpp"

#include <cmath>

namespace spinqpt {

DerivedParams derive(const ModelParams& p) {
    p.validate();
    DerivedParams d;
    d.j = p.j();
    d.lambda = p.A * std::sqrt(static_cast<double>(p.N));
    d.eta = p.omega0 / p.omega;
    d.omega_tilde = p.omega - p.delta;
    d.omega0_tilde = p.omega0 - static_cast<double>(p.N) * p.delta;
    d.g = d.lambda / std::sqrt(p.omega0 * p.omega);
    const double prod = d.omega_tilde * d.omega0_tilde;
    if (prod > 0.0) {
        d.lambda_c = std::sqrt(prod);
        d.g_tilde = d.lambda / *d.lambda_c;
    }
    return d;
}

ModelParams with_g_tilde(const ModelParams& tpl, double g_tilde) {
    if (g_tilde < 0.0) throw std::domain_error("with_g_tilde: g_tilde must be >= 0");
    const double wt = tpl.omega - tpl.delta;
    const double w0t = tpl.omega0 - static_cast<double>(tpl.N) * tpl.delta;
    const double prod = wt * w0t;
    if (!(prod > 0.0)) {
        throw std::domain_error("with_g_tilde: g_tilde undefined, omega_tilde*omega0_tilde <= 0");
    }
    ModelParams p = tpl;
    p.A = g_tilde * std::sqrt(prod / static_cast<double>(tpl.N));
    return p;
}

BlockIndex::BlockIndex(const ModelParams& p, int n_) : n(n_) {
    if (n < 1 || n > p.N) {
        throw std::domain_error("BlockIndex: n out of range [1, 2j], n=" + std::to_string(n_));
    }
    m = static_cast<double>(n) - 1.0 - p.j();
    // (2j - n + 1)*n in exact integer arithmetic before widening
    k_n = static_cast<double>((static_cast<std::int64_t>(p.N) - n + 1) * n);
}

BlockMatrix block_matrix(const ModelParams& p, int n) {
    const BlockIndex b(p, n);
    BlockMatrix h;
    h.up_up = 0.5 * p.omega0 + (p.omega + p.delta) * b.m;
    h.dn_dn = -0.5 * p.omega0 + (p.omega - p.delta) * (b.m + 1.0);
    h.off = p.A * std::sqrt(b.k_n);
    return h;
}

BlockSpectrum block_eigensystem(const ModelParams& p, int n) {
    const BlockIndex b(p, n);
    BlockSpectrum s;
    s.Omega1 = 2.0 * p.A * std::sqrt(b.k_n);
    s.Omega2 = (2.0 * b.m + 1.0) * p.delta - p.omega + p.omega0;
    s.Omega3 = p.delta - (2.0 * b.m + 1.0) * p.omega;
    const double r = std::hypot(s.Omega1, s.Omega2);
    s.E_minus = 0.5 * (-s.Omega3 - r);
    s.E_plus = 0.5 * (-s.Omega3 + r);

    if (s.Omega1 == 0.0) {
        // Decoupled sector: bare basis states, ordered by diagonal energy;
        // on full degeneracy the order is fixed to (|up,n-1>, |dn,n>).
        const bool up_below = s.Omega2 <= 0.0;  // Omega2 = H_upup - H_dndn
        s.c_up_minus = up_below ? 1.0 : 0.0;
        s.c_dn_minus = up_below ? 0.0 : 1.0;
        s.c_up_plus = up_below ? 0.0 : 1.0;
        s.c_dn_plus = up_below ? 1.0 : 0.0;
        return s;
    }

    // Half-angle form of the analytic eigenvectors: with t = Omega2/Omega1 the
    // amplitude ratios are t + sqrt(1+t^2) = cot(theta) (upper branch) and
    // t - sqrt(1+t^2) = -tan(theta) (lower branch), theta = atan2(Omega1, Omega2)/2.
    // Evaluating through theta avoids cancellation at |t| >> 1.
    const double theta = 0.5 * std::atan2(s.Omega1, s.Omega2);
    s.c_up_plus = std::cos(theta);
    s.c_dn_plus = std::sin(theta);
    s.c_up_minus = -std::sin(theta);
    s.c_dn_minus = std::cos(theta);
    return s;
}

std::pair<EdgeState, EdgeState> edge_state_energies(const ModelParams& p) {
    p.validate();
    const double j = p.j();
    EdgeState lo{EdgeLabel::down_zero, -0.5 * p.omega0 - (p.omega - p.delta) * j};
    EdgeState hi{EdgeLabel::up_full, 0.5 * p.omega0 + (p.omega + p.delta) * j};
    return {lo, hi};
}

}  // namespace spinqpt
