// sweep.hpp — parameter-sweep front end: configuration, bath-size policies,
// figure presets, deterministic CSV emission, and a minimal SVG plot.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spinqpt/metrology.hpp"
#include "spinqpt/model.hpp"

namespace spinqpt {

inline constexpr const char* kToolVersion = "spinqpt 1.0.0";

enum class SweepAxis { g_tilde, delta, eta, time };
enum class Quantity {
    energy,
    d2_energy,
    n_g_exact,
    n_g_mf,
    coherence,
    qfi,
    inverse_variance,
    sigma_x,
};

const char* to_string(SweepAxis a);
const char* to_string(Quantity q);
SweepAxis axis_from_string(const std::string& s);
Quantity quantity_from_string(const std::string& s);

// Curve families: one column per member value (delta or eta), sharing the axis.
struct FamilySpec {
    enum class Kind { none, delta, eta } kind{Kind::none};
    std::vector<double> values;
    std::vector<int> bath_sizes;  // optional per-member N override
};

struct SweepSteps {
    double h_fd{1e-3};        // finite-difference step for d2_energy
    double delta_g_qfi{1e-5};  // fidelity probe step for qfi
};

struct SweepConfig {
    ModelParams model;        // template; A is overridden on g_tilde sweeps
    bool n_auto{true};        // pick N by policy and echo it
    SweepAxis axis{SweepAxis::g_tilde};
    double start{0.0};
    double stop{1.0};
    int points{2};
    Quantity quantity{Quantity::n_g_exact};
    bool mf_companion{false};  // add the mean-field column next to the exact one
    FamilySpec family;
    InitialState probe;
    double fixed_g_tilde{1.0};    // coupling for time-axis sweeps
    double probe_time{0.0};       // absolute evolution time for dynamics quantities
    double probe_time_periods{0.0};  // if > 0, t = periods * 2*pi/omega_tilde
    SweepSteps steps;
    std::string out_path{"sweep.csv"};
    bool emit_plot{false};
    int workers{1};
    std::string preset_name;

    void validate() const;
};

// Headroom policy: smallest power-of-two N (from 128, cap 8192) for which the
// sweep axis is defined and the mean-field excitation at the largest coupling
// leaves n_g <= N/10. Falls back to the largest N keeping the axis defined.
int auto_bath_size(const ModelParams& tpl, double g_max);

// Policy for curvature sweeps: the staircase of sector crossings must be
// either denser than the stencil (delta <= 0, N = 8192) or dilated past the
// window (delta > 0, N pinned by omega0_tilde = 4*omega).
int curvature_bath_size(const ModelParams& tpl);

struct SweepColumn {
    std::string name;
    std::vector<double> values;
    std::vector<unsigned> flags;  // kFlag* bits per row
};

struct SweepResult {
    std::vector<std::pair<std::string, std::string>> header;
    std::string axis_name;
    std::vector<double> axis;
    std::vector<SweepColumn> columns;
};

SweepResult run_sweep(const SweepConfig& cfg);

// Figure-reproduction recipes. Parameters the source figures state are fixed;
// the rest (N, grids, probe amplitude) are documented reproduction choices.
const std::vector<std::string>& preset_names();
SweepConfig preset(const std::string& name);

// Plain-text key = value configuration, '#' comments. Unknown keys are errors.
SweepConfig parse_config_text(const std::string& text);
SweepConfig load_config(const std::string& path);

// CSV: '#'-prefixed header block, then one row per grid point with
// axis,value,flags per column; shortest round-trip float formatting, LF ends.
std::string render_csv(const SweepResult& r);
void emit_csv(const SweepResult& r, const std::string& path);

// Parse back a CSV produced by render_csv (header block ignored).
struct ParsedCsv {
    std::vector<double> axis;
    std::vector<std::vector<double>> values;          // per column
    std::vector<std::vector<std::string>> flag_text;  // per column
};
ParsedCsv read_csv(const std::string& path);

// Single-axes line plot of all columns; flagged points are skipped.
void emit_svg(const SweepResult& r, const std::string& path);

}  // namespace spinqpt
