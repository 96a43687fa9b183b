#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinqpt/dense_oracle.hpp"
#include "spinqpt/ground_state.hpp"
#include "spinqpt/mean_field.hpp"

using namespace spinqpt;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return g;
}

}  // namespace

TEST_CASE("normal phase: ground state is the |dn,0> edge") {
    const ModelParams p = with_g_tilde({100.0, 0.5, 0.0, 0.0, 100}, 0.5);
    const GroundStateReport g = find_ground_state(p);
    CHECK(g.n_g == 0);
    CHECK(g.branch == GroundBranch::edge_down_zero);
    CHECK(g.energy == doctest::Approx(-75.0).epsilon(1e-14));
    CHECK(g.c_up == 0.0);
    CHECK(g.c_down == 0.0);
}

TEST_CASE("ground energy equals the dense-oracle minimum") {
    for (const ModelParams& p :
         {ModelParams{100.0, 0.5, 0.5, 0.1, 24}, ModelParams{30.0, 1.0, 0.9, -0.4, 17},
          ModelParams{5.0, 0.5, 0.3, 0.2, 40}}) {
        const auto dense = oracle_spectrum(p);
        const double scale = std::max(std::abs(dense.front()), std::abs(dense.back()));
        CHECK(std::abs(find_ground_state(p).energy - dense.front()) <= 1e-10 * scale);
    }
}

TEST_CASE("excitation number approaches the large-N closed form") {
    // eta = 100, g = sqrt(2): continuum value 37.5. The exact integer
    // minimizer converges to it from below as N grows; at N = 16000 it sits
    // within one excitation.
    const double g = std::sqrt(2.0);
    ModelParams p{100.0, 1.0, 0.0, 0.0, 16000};
    p.A = g * std::sqrt(p.omega0 * p.omega / p.N);
    const GroundStateReport rep = find_ground_state(p);
    CHECK(std::abs(rep.n_g - 37.5) <= 1.0);
    CHECK(rep.n_g == 37);
    CHECK(asymptotic_integer_minimum(p) == 38);
}

TEST_CASE("exact excitation number vs mean-field closed form") {
    // eta = 200, delta = 0.1, g_tilde = 1.3. In the headroom regime the two
    // agree within two excitations; at small N the finite-size shift is
    // larger (measured -7.2 at N = 400).
    const ModelParams p = with_g_tilde({100.0, 0.5, 0.0, 0.1, 900}, 1.3);
    CHECK(std::abs(find_ground_state(p).n_g - mean_field_solution(p).n_g) <= 2.0);

    const ModelParams p400 = with_g_tilde({100.0, 0.5, 0.0, 0.1, 400}, 1.3);
    CHECK(std::abs(find_ground_state(p400).n_g - mean_field_solution(p400).n_g) <= 8.0);
}

TEST_CASE("excitation_sweep: normal-phase plateau") {
    const ModelParams tpl{50.0, 0.5, 0.0, 0.0, 1000};  // eta = 100
    const auto pts = excitation_sweep(tpl, linspace(0.0, 0.98, 50));
    for (const auto& pt : pts) {
        REQUIRE(pt.defined);
        REQUIRE(pt.n_g == 0);
    }
}

TEST_CASE("excitation_sweep: plateau holds below 1 - 5/sqrt(eta)") {
    for (double eta : {100.0, 1e4}) {
        const ModelParams tpl{eta * 0.5, 0.5, 0.0, 0.0, 1000};
        const double top = 1.0 - 5.0 / std::sqrt(eta);
        for (const auto& pt : excitation_sweep(tpl, linspace(0.01, top, 40))) {
            REQUIRE(pt.n_g == 0);
        }
    }
}

TEST_CASE("negative longitudinal coupling enhances the excitation number") {
    const int N = 2048;
    const double gt = 1.2;
    const int ng0 = find_ground_state(with_g_tilde({50.0, 0.5, 0.0, 0.0, N}, gt)).n_g;
    const int ngm = find_ground_state(with_g_tilde({50.0, 0.5, 0.0, -0.25, N}, gt)).n_g;
    CHECK(ng0 > 0);
    CHECK(ngm > ng0);
}

TEST_CASE("positive delta near omega: staircase of repeated values") {
    const ModelParams tpl{50.0, 0.5, 0.0, 0.4, 100};
    const auto pts = excitation_sweep(tpl, linspace(1.02, 1.5, 25));
    bool any_repeat = false;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        REQUIRE(pts[i].defined);
        REQUIRE(pts[i].n_g >= pts[i - 1].n_g);
        any_repeat = any_repeat || pts[i].n_g == pts[i - 1].n_g;
    }
    CHECK(any_repeat);
    CHECK(pts.back().n_g > pts.front().n_g);
}

TEST_CASE("n_g is non-decreasing in g_tilde") {
    for (double delta : {-0.2, 0.0, 0.15}) {
        const ModelParams tpl{50.0, 0.5, 0.0, delta, 512};
        const auto pts = excitation_sweep(tpl, linspace(0.2, 1.8, 120));
        for (std::size_t i = 1; i < pts.size(); ++i) {
            REQUIRE(pts[i].n_g >= pts[i - 1].n_g);
        }
    }
}

TEST_CASE("excitation_sweep marks undefined grid points and continues") {
    // omega_tilde < 0 and omega0_tilde > 0: g_tilde undefined everywhere
    const ModelParams tpl{100.0, 0.5, 0.0, 0.6, 64};
    const auto pts = excitation_sweep(tpl, linspace(0.5, 1.5, 5));
    REQUIRE(pts.size() == 5);
    for (const auto& pt : pts) CHECK_FALSE(pt.defined);
}

TEST_CASE("second derivative vanishes on the normal branch") {
    const ModelParams tpl{100.0, 0.5, 0.0, 0.0, 200};
    const EnergyCurve c = energy_second_derivative(tpl, linspace(0.3, 0.7, 20), 1e-3);
    for (double v : c.d2) REQUIRE(std::abs(v) <= 1e-6 * tpl.omega0);
}

TEST_CASE("second derivative jump sits at the critical coupling") {
    const ModelParams tpl{100.0, 0.5, 0.0, -0.25, 8192};
    const auto grid = linspace(0.8, 1.2, 161);
    const EnergyCurve c = energy_second_derivative(tpl, grid, 1e-3);
    double best = -1.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i + 1 < c.d2.size(); ++i) {
        const double jump = std::abs(c.d2[i + 1] - c.d2[i]);
        if (jump > best) {
            best = jump;
            at = i;
        }
    }
    const double step = grid[1] - grid[0];
    CHECK(std::min(std::abs(grid[at] - 1.0), std::abs(grid[at + 1] - 1.0)) <= step);
}

TEST_CASE("second derivative is smooth on the superradiant branch") {
    const ModelParams tpl{100.0, 0.5, 0.0, -0.25, 8192};
    const EnergyCurve c = energy_second_derivative(tpl, linspace(1.2, 2.0, 100), 1e-3);
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < c.d2.size(); ++i) {
        diffs.push_back(std::abs(c.d2[i + 1] - c.d2[i]));
    }
    std::vector<double> sorted = diffs;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (double d : diffs) REQUIRE(d <= 10.0 * median);
}

TEST_CASE("energy_second_derivative rejects non-positive steps") {
    const ModelParams tpl{100.0, 0.5, 0.0, 0.0, 100};
    CHECK_THROWS_AS(energy_second_derivative(tpl, linspace(0.5, 1.0, 3), 0.0),
                    std::domain_error);
}
