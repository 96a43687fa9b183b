#include "spinqpt/metrology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinqpt/ground_state.hpp"

namespace spinqpt {

namespace {

constexpr double kTruncationTol = 1e-8;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// phase rate phi(n)/n = 2*(omega_tilde*g_tilde^2 + delta)
double phase_rate(const ModelParams& p) {
    const DerivedParams d = derive(p);
    if (!d.g_tilde) {
        throw std::domain_error("metrology: g_tilde undefined for these parameters");
    }
    return 2.0 * (d.omega_tilde * *d.g_tilde * *d.g_tilde + p.delta);
}

struct Signal {
    double value{};
    double dvalue{};  // derivative in g_tilde at fixed weights
    bool truncated{};
};

Signal signal_and_derivative(const ModelParams& p, const InitialState& st, double t) {
    st.validate();
    const DerivedParams d = derive(p);
    if (!d.g_tilde) {
        throw std::domain_error("metrology: g_tilde undefined for these parameters");
    }
    const BathWeights w = bath_weights(st, p.N);
    const double rate = phase_rate(p);
    const std::complex<double> coeff = 2.0 * std::conj(st.b_up) * st.b_down;
    std::complex<double> acc{0.0, 0.0};
    std::complex<double> dacc{0.0, 0.0};
    for (std::size_t n = 0; n < w.p.size(); ++n) {
        const double nn = static_cast<double>(n);
        const std::complex<double> ph = std::polar(w.p[n], rate * nn * t);
        acc += ph;
        // d(phi)/dg = 4*omega_tilde*g_tilde*n, applied inside the sum
        dacc += std::complex<double>(0.0, 4.0 * d.omega_tilde * *d.g_tilde * nn * t) * ph;
    }
    Signal s;
    s.value = (coeff * acc).real();
    s.dvalue = (coeff * dacc).real();
    s.truncated = w.truncation_loss > kTruncationTol;
    return s;
}

}  // namespace

void InitialState::validate() const {
    const double norm = std::norm(b_up) + std::norm(b_down);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("InitialState: |b_up|^2 + |b_down|^2 must equal 1");
    }
    if (alpha_probe < 0.0) {
        throw std::invalid_argument("InitialState: alpha_probe must be >= 0");
    }
}

BathWeights bath_weights(const InitialState& st, int N) {
    st.validate();
    const double a2 = st.alpha_probe * st.alpha_probe;
    int n_max = st.n_max > 0
                    ? std::min(st.n_max, N)
                    : std::min(N, static_cast<int>(
                                      std::ceil(a2 + 10.0 * st.alpha_probe + 20.0)));
    BathWeights w;
    w.p.resize(static_cast<std::size_t>(n_max) + 1);
    if (st.kind == WeightKind::bosonic_coherent) {
        double pn = std::exp(-a2);
        for (int n = 0; n <= n_max; ++n) {
            w.p[static_cast<std::size_t>(n)] = pn;
            pn *= a2 / (n + 1.0);
        }
    } else {
        // binomial over the N bath levels with mean alpha^2
        const double prob = a2 / static_cast<double>(N);
        if (prob > 1.0) {
            throw std::domain_error("bath_weights: spin-coherent mean alpha^2 exceeds N");
        }
        double pn = std::pow(1.0 - prob, N);
        for (int n = 0; n <= n_max; ++n) {
            w.p[static_cast<std::size_t>(n)] = pn;
            pn *= (static_cast<double>(N - n) / (n + 1.0)) * (prob / (1.0 - prob));
        }
    }
    double sum = 0.0;
    for (double v : w.p) sum += v;
    w.truncation_loss = 1.0 - sum;
    for (double& v : w.p) v /= sum;
    return w;
}

double ground_fidelity(const ModelParams& tpl, double g_tilde, double dg) {
    const GroundStateReport a = find_ground_state(with_g_tilde(tpl, g_tilde));
    const GroundStateReport b = find_ground_state(with_g_tilde(tpl, g_tilde + dg));
    if (a.n_g != b.n_g) return 0.0;  // disjoint basis states, orthogonal exactly
    if (a.branch == GroundBranch::edge_down_zero) return 1.0;
    return std::abs(a.c_up * b.c_up + a.c_down * b.c_down);
}

QfiPoint qfi(const ModelParams& tpl, double g_tilde, double dg) {
    if (!(dg > 0.0)) throw std::domain_error("qfi: dg must be > 0");
    QfiPoint q;
    const GroundStateReport a = find_ground_state(with_g_tilde(tpl, g_tilde));
    const GroundStateReport b = find_ground_state(with_g_tilde(tpl, g_tilde + dg));
    q.sector_crossing = a.n_g != b.n_g;
    const double f = q.sector_crossing
                         ? 0.0
                         : (a.branch == GroundBranch::edge_down_zero
                                ? 1.0
                                : std::abs(a.c_up * b.c_up + a.c_down * b.c_down));
    q.value = 8.0 * (1.0 - f) / (dg * dg);
    return q;
}

SensitivityCurve qfi_sweep(const ModelParams& tpl, const std::vector<double>& grid,
                           double dg) {
    SensitivityCurve c;
    c.grid = grid;
    c.values.reserve(grid.size());
    c.flags.reserve(grid.size());
    for (double gt : grid) {
        try {
            const QfiPoint q = qfi(tpl, gt, dg);
            c.values.push_back(q.value);
            c.flags.push_back(q.sector_crossing ? kFlagSectorCrossing : 0u);
        } catch (const std::domain_error&) {
            c.values.push_back(quiet_nan());
            c.flags.push_back(kFlagUndefined);
        }
    }
    return c;
}

SigmaX sigma_x_expectation(const ModelParams& p, const InitialState& st, double t) {
    const Signal s = signal_and_derivative(p, st, t);
    return SigmaX{s.value, s.truncated};
}

InverseVariancePoint inverse_variance(const ModelParams& tpl, const InitialState& st,
                                      double t, double g_tilde, DerivMode mode,
                                      double fd_step) {
    const ModelParams p = with_g_tilde(tpl, g_tilde);
    const Signal s = signal_and_derivative(p, st, t);
    InverseVariancePoint out;
    out.truncation_warning = s.truncated;
    if (std::abs(std::abs(s.value) - 1.0) <= 1e-12) {
        out.defined = false;
        out.value = quiet_nan();
        return out;
    }
    double ds = s.dvalue;
    if (mode == DerivMode::finite_difference) {
        const Signal sp = signal_and_derivative(with_g_tilde(tpl, g_tilde + fd_step), st, t);
        const Signal sm = signal_and_derivative(with_g_tilde(tpl, g_tilde - fd_step), st, t);
        ds = (sp.value - sm.value) / (2.0 * fd_step);
    }
    out.value = ds * ds / (1.0 - s.value * s.value);
    return out;
}

SensitivityCurve inverse_variance_sweep(const ModelParams& tpl, const InitialState& st,
                                        double t, const std::vector<double>& grid,
                                        DerivMode mode) {
    SensitivityCurve c;
    c.grid = grid;
    c.values.reserve(grid.size());
    c.flags.reserve(grid.size());
    for (double gt : grid) {
        try {
            const InverseVariancePoint pt = inverse_variance(tpl, st, t, gt, mode);
            unsigned flag = 0u;
            if (!pt.defined) flag |= kFlagUndefined;
            if (pt.truncation_warning) flag |= kFlagTruncation;
            c.values.push_back(pt.value);
            c.flags.push_back(flag);
        } catch (const std::domain_error&) {
            c.values.push_back(quiet_nan());
            c.flags.push_back(kFlagUndefined);
        }
    }
    return c;
}

}  // namespace spinqpt
