#include <doctest.h>

#include <cmath>
#include <random>

#include "spinqpt/effective.hpp"
#include "spinqpt/ground_state.hpp"
#include "spinqpt/mean_field.hpp"

using namespace spinqpt;

TEST_CASE("qpt_admissible") {
    CHECK(qpt_admissible({10.0, 0.5, 0.0, 0.25, 8}).admissible);
    CHECK_FALSE(qpt_admissible({10.0, 0.1, 0.0, 0.15, 8}).admissible);
    // the boundary |delta| = omega is excluded
    CHECK_FALSE(qpt_admissible({10.0, 0.5, 0.0, -0.5, 8}).admissible);
    CHECK(qpt_admissible({10.0, 0.1, 0.0, 0.15, 8}).reason == "delta >= omega");
}

TEST_CASE("normal_effective gap") {
    {
        const ModelParams p = with_g_tilde({100.0, 0.5, 0.0, 0.1, 200}, 1.0);
        CHECK(normal_effective(p).gap == doctest::Approx(0.0).epsilon(1e-12));
    }
    {
        const ModelParams p = with_g_tilde({100.0, 0.5, 0.0, 0.1, 200}, 0.8);
        const NormalPhaseEffective eff = normal_effective(p);
        CHECK(eff.gap == doctest::Approx(0.4 * (1.0 - 0.64)).epsilon(1e-12));
        CHECK(eff.sw_coefficient ==
              doctest::Approx(derive(p).lambda / 80.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(normal_effective({10.0, 0.5, 0.0, 0.6, 8}), std::domain_error);
}

TEST_CASE("effective constant equals the exact edge energy") {
    std::mt19937_64 rng(90125);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        ModelParams p;
        p.omega = 0.1 + 3.0 * u01(rng);
        p.delta = (2.0 * u01(rng) - 1.0) * 0.95 * p.omega;
        p.N = 1 + static_cast<int>(u01(rng) * 400);
        p.omega0 = std::abs(p.N * p.delta) + 1.0 + 300.0 * u01(rng);
        p.A = u01(rng);
        const auto [edge, hi] = edge_state_energies(p);
        (void)hi;
        const double c = normal_effective(p).constant;
        REQUIRE(std::abs(c - edge.energy) <= 1e-12 * std::abs(edge.energy));
    }
}

TEST_CASE("normal-phase gap matches the exact sector spacing at large eta") {
    const double w = 0.5, eta = 1e4;
    for (double dfrac : {-0.2, 0.0, 0.2}) {
        const ModelParams tpl{eta * w, w, 0.0, dfrac * w, 2000};
        for (double gt : {0.3, 0.8, 0.95}) {
            const ModelParams p = with_g_tilde(tpl, gt);
            const double spacing = block_eigensystem(p, 1).E_minus -
                                   edge_state_energies(p).first.energy;
            const double gap = normal_effective(p).gap;
            REQUIRE(std::abs(spacing - gap) <= 1e-4 * w);
        }
    }
}

TEST_CASE("critical coupling is the unique zero of the gap") {
    const ModelParams tpl{100.0, 0.5, 0.0, -0.15, 300};
    const DerivedParams d0 = derive(tpl);
    REQUIRE(d0.lambda_c.has_value());
    auto gap_at = [&](double lambda) {
        ModelParams p = tpl;
        p.A = lambda / std::sqrt(static_cast<double>(tpl.N));
        return normal_effective(p).gap;
    };
    // strictly decreasing in lambda, so at most one zero
    double prev = gap_at(1e-6);
    for (double lam = 0.5; lam <= 2.0 * *d0.lambda_c; lam += 0.5) {
        const double g = gap_at(lam);
        REQUIRE(g < prev);
        prev = g;
    }
    double lo = 1e-6, hi = 2.0 * *d0.lambda_c;
    REQUIRE(gap_at(lo) > 0.0);
    REQUIRE(gap_at(hi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap_at(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(*d0.lambda_c).epsilon(1e-10));
}

TEST_CASE("superradiant frame: curvature coefficients vanish at the minimizer") {
    std::mt19937_64 rng(555888);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        ModelParams tpl;
        tpl.omega = 0.1 + 2.9 * u01(rng);
        tpl.delta = (2.0 * u01(rng) - 1.0) * 0.98 * tpl.omega;
        tpl.N = 50 + static_cast<int>(u01(rng) * 950);
        const double w0t = 5.0 + 495.0 * u01(rng);
        tpl.omega0 = std::max(w0t + tpl.N * tpl.delta, w0t);
        const double gt = 1.0001 + u01(rng) * 0.9999;
        const ModelParams p = with_g_tilde(tpl, gt);
        const SuperradiantFrame f = superradiant_frame(p);
        const DerivedParams d = derive(p);
        const double tol = 1e-9 * (std::abs(p.omega) + std::abs(d.lambda));
        REQUIRE(std::abs(f.kappa1) <= tol);
        REQUIRE(std::abs(f.kappa2) <= tol);
        // stationarity identity behind the cancellation
        const double lhs = 2.0 * p.delta * p.delta * f.alpha * f.alpha +
                           d.lambda * d.lambda + p.delta * d.omega0_tilde;
        const double rhs = p.omega * f.omega_bar0;
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
        // alpha^2 = n_g, and the chosen kappa0 convention is the stable one
        REQUIRE(std::abs(f.alpha * f.alpha - mean_field_solution(p).n_g) <= 1e-12 *
                    (1.0 + mean_field_solution(p).n_g));
        REQUIRE(f.kappa0 > 0.0);
        REQUIRE(f.kappa0_flipped == -f.kappa0);
        // dressed splitting closed form agrees with the generic radicand
        const double generic = mean_field_energy(p, f.alpha * f.alpha).omega_bar0;
        REQUIRE(std::abs(f.omega_bar0 - generic) <= 1e-8 * generic);
    }
}

TEST_CASE("superradiant frame near delta = 0") {
    const ModelParams tpl{100.0, 0.5, 0.0, 1e-8, 200};
    const ModelParams p = with_g_tilde(tpl, 1.4);
    const SuperradiantFrame f = superradiant_frame(p);
    const DerivedParams d = derive(p);
    CHECK(f.omega_bar0 ==
          doctest::Approx(d.lambda * d.lambda / p.omega).epsilon(1e-6));
    CHECK(f.kappa0 == doctest::Approx(0.25 * p.omega).epsilon(1e-5));
}

TEST_CASE("effective ground energy equals the mean-field energy") {
    for (double delta : {-0.2, -0.05, 0.05, 0.2}) {
        const ModelParams tpl{100.0, 0.5, 0.0, delta, 300};
        for (double gt : {1.05, 1.3, 1.8}) {
            const ModelParams p = with_g_tilde(tpl, gt);
            const SuperradiantFrame f = superradiant_frame(p);
            const double e_mf = mean_field_solution(p).energy;
            REQUIRE(std::abs(f.ground_energy - e_mf) <= 1e-6 * std::abs(e_mf));
        }
    }
}

TEST_CASE("superradiant frame rejects normal-phase parameters") {
    CHECK_THROWS_AS(superradiant_frame(with_g_tilde({100.0, 0.5, 0.0, 0.1, 200}, 0.9)),
                    std::domain_error);
    CHECK_THROWS_AS(superradiant_frame({10.0, 0.5, 0.3, 0.7, 16}), std::domain_error);
}
