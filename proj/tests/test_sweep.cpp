#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "spinqpt/sweep.hpp"

using namespace spinqpt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("config parsing") {
    const char* text = R"(
# comment
omega0 = 50
omega  = 0.5
delta  = -0.1
N      = auto
axis   = g_tilde
start  = 0
stop   = 0.99
points = 50
quantity = n_g_exact
mf_companion = true
out    = /tmp/x.csv
workers = 4
)";
    const SweepConfig c = parse_config_text(text);
    CHECK(c.model.omega0 == 50.0);
    CHECK(c.model.delta == -0.1);
    CHECK(c.n_auto);
    CHECK(c.points == 50);
    CHECK(c.mf_companion);
    CHECK(c.workers == 4);
    CHECK(c.quantity == Quantity::n_g_exact);
    CHECK_NOTHROW(c.validate());

    CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("omega0 = abc\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_config_text("omega0\n"), std::runtime_error);
}

TEST_CASE("config validation catches bad grids and missing probe times") {
    SweepConfig c = parse_config_text("omega0=50\nomega=0.5\npoints=1\nstart=0\nstop=1\n");
    CHECK_THROWS_AS(c.validate(), std::runtime_error);
    SweepConfig d = parse_config_text(
        "omega0=50\nomega=0.5\npoints=10\nstart=1\nstop=0.5\n");
    CHECK_THROWS_AS(d.validate(), std::runtime_error);
    SweepConfig e = parse_config_text(
        "omega0=50\nomega=0.5\npoints=10\nstart=0.8\nstop=1\nquantity=inverse_variance\n");
    CHECK_THROWS_AS(e.validate(), std::runtime_error);  // no time given
}

TEST_CASE("bath-size policies") {
    CHECK(auto_bath_size({50.0, 0.5, 0.0, 0.0, 1}, 1.2) == 256);
    CHECK(auto_bath_size({50.0, 0.5, 0.0, 0.0, 1}, 0.8) == 128);
    // negative delta saturates at the cap
    CHECK(auto_bath_size({50.0, 0.5, 0.0, -0.25, 1}, 1.5) == 8192);
    // delta > 0 must keep omega0_tilde positive
    const int n_pos = auto_bath_size({50.0, 0.5, 0.0, 0.4, 1}, 1.5);
    CHECK(50.0 - n_pos * 0.4 > 0.0);
    CHECK(curvature_bath_size({100.0, 0.5, 0.0, -0.1, 1}) == 8192);
    CHECK(curvature_bath_size({100.0, 0.5, 0.0, 0.25, 1}) == 392);
}

TEST_CASE("run_sweep: normal-phase plateau produces all zeros") {
    SweepConfig c;
    c.model = {50.0, 0.5, 0.0, 0.0, 1};
    c.axis = SweepAxis::g_tilde;
    c.start = 0.0;
    c.stop = 0.99;
    c.points = 50;
    c.quantity = Quantity::n_g_exact;
    const SweepResult r = run_sweep(c);
    REQUIRE(r.columns.size() == 1);
    REQUIRE(r.axis.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        REQUIRE(r.columns[0].values[i] == 0.0);
        REQUIRE(r.columns[0].flags[i] == 0u);
    }
}

TEST_CASE("run_sweep: undefined points are flagged rows, not aborts") {
    SweepConfig c;
    c.model = {100.0, 0.5, 0.0, 0.6, 64};  // |delta| > omega
    c.n_auto = false;
    c.start = 0.5;
    c.stop = 1.5;
    c.points = 9;
    c.quantity = Quantity::n_g_mf;
    const SweepResult r = run_sweep(c);
    for (unsigned f : r.columns[0].flags) CHECK((f & kFlagUndefined) != 0);
}

TEST_CASE("CSV round-trips bit-exactly") {
    SweepConfig c;
    c.model = {50.0, 0.5, 0.0, -0.1, 1};
    c.start = 0.7;
    c.stop = 1.7;
    c.points = 40;
    c.quantity = Quantity::energy;
    c.mf_companion = true;
    const SweepResult r = run_sweep(c);
    const std::string path = "/tmp/spinqpt_roundtrip.csv";
    emit_csv(r, path);
    const ParsedCsv back = read_csv(path);
    REQUIRE(back.axis.size() == r.axis.size());
    REQUIRE(back.values.size() == r.columns.size());
    for (std::size_t i = 0; i < r.axis.size(); ++i) {
        REQUIRE(back.axis[i] == r.axis[i]);
        for (std::size_t ci = 0; ci < r.columns.size(); ++ci) {
            REQUIRE(back.values[ci][i] == r.columns[ci].values[i]);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("parallel evaluation is byte-identical to serial") {
    SweepConfig c;
    c.model = {50.0, 0.5, 0.0, -0.1, 1};
    c.start = 0.5;
    c.stop = 1.8;
    c.points = 64;
    c.quantity = Quantity::n_g_exact;
    c.mf_companion = true;
    c.workers = 1;
    const std::string a = render_csv(run_sweep(c));
    c.workers = 8;
    const std::string b = render_csv(run_sweep(c));
    CHECK(a == b);
}

TEST_CASE("presets construct and run") {
    for (const auto& name : preset_names()) {
        CHECK_NOTHROW(preset(name));
    }
    CHECK_THROWS_AS(preset("fig9z"), std::runtime_error);

    SweepConfig c = preset("fig2a");
    c.points = 41;  // trimmed grid for the smoke run
    const SweepResult r = run_sweep(c);
    CHECK(r.columns.size() == 8);  // four deltas, exact + mean-field each
    bool has_preset_key = false;
    for (const auto& [k, v] : r.header) {
        has_preset_key = has_preset_key || (k == "preset" && v == "fig2a");
    }
    CHECK(has_preset_key);

    SweepConfig f5 = preset("fig5a");
    f5.points = 41;
    const SweepResult r5 = run_sweep(f5);
    CHECK(r5.columns.size() == 3);
    for (const auto& col : r5.columns) {
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            if (col.flags[i] == 0) REQUIRE(col.values[i] >= 0.0);
        }
    }
}

TEST_CASE("unwritable output raises an I/O error with path context") {
    SweepConfig c;
    c.model = {50.0, 0.5, 0.0, 0.0, 1};
    c.start = 0.5;
    c.stop = 0.9;
    c.points = 3;
    c.quantity = Quantity::n_g_exact;
    const SweepResult r = run_sweep(c);
    CHECK_THROWS_AS(emit_csv(r, "/no_such_dir/out.csv"), std::ios_base::failure);
    CHECK_THROWS_AS(emit_svg(r, "/no_such_dir/out.svg"), std::ios_base::failure);
}

TEST_CASE("SVG plot is written") {
    SweepConfig c;
    c.model = {50.0, 0.5, 0.0, 0.0, 1};
    c.start = 0.5;
    c.stop = 1.5;
    c.points = 21;
    c.quantity = Quantity::n_g_exact;
    const SweepResult r = run_sweep(c);
    const std::string path = "/tmp/spinqpt_plot.svg";
    emit_svg(r, path);
    const std::string svg = slurp(path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    std::remove(path.c_str());
}
