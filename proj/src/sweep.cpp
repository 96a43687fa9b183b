#include "spinqpt/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spinqpt/ground_state.hpp"
#include "spinqpt/mean_field.hpp"

namespace spinqpt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string flags_text(unsigned f) {
    std::string s;
    auto add = [&](const char* tok) {
        if (!s.empty()) s += '|';
        s += tok;
    };
    if (f & kFlagUndefined) add("undefined");
    if (f & kFlagSectorCrossing) add("sector_crossing");
    if (f & kFlagTruncation) add("truncation_warning");
    return s;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: bad numeric value for '" + key + "': " + s);
    }
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, key));
    }
    return out;
}

}  // namespace

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::g_tilde: return "g_tilde";
        case SweepAxis::delta: return "delta";
        case SweepAxis::eta: return "eta";
        case SweepAxis::time: return "time";
    }
    return "?";
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::energy: return "energy";
        case Quantity::d2_energy: return "d2_energy";
        case Quantity::n_g_exact: return "n_g_exact";
        case Quantity::n_g_mf: return "n_g_mf";
        case Quantity::coherence: return "coherence";
        case Quantity::qfi: return "qfi";
        case Quantity::inverse_variance: return "inverse_variance";
        case Quantity::sigma_x: return "sigma_x";
    }
    return "?";
}

SweepAxis axis_from_string(const std::string& s) {
    if (s == "g_tilde") return SweepAxis::g_tilde;
    if (s == "delta") return SweepAxis::delta;
    if (s == "eta") return SweepAxis::eta;
    if (s == "time") return SweepAxis::time;
    throw std::runtime_error("config: unknown axis '" + s + "'");
}

Quantity quantity_from_string(const std::string& s) {
    if (s == "energy") return Quantity::energy;
    if (s == "d2_energy") return Quantity::d2_energy;
    if (s == "n_g_exact") return Quantity::n_g_exact;
    if (s == "n_g_mf") return Quantity::n_g_mf;
    if (s == "coherence") return Quantity::coherence;
    if (s == "qfi") return Quantity::qfi;
    if (s == "inverse_variance") return Quantity::inverse_variance;
    if (s == "sigma_x") return Quantity::sigma_x;
    throw std::runtime_error("config: unknown quantity '" + s + "'");
}

void SweepConfig::validate() const {
    if (points < 2) throw std::runtime_error("config: points must be >= 2");
    if (!(start < stop)) throw std::runtime_error("config: start must be < stop");
    if (!(model.omega > 0.0) || !(model.omega0 > 0.0)) {
        throw std::runtime_error("config: omega and omega0 must be > 0");
    }
    const bool dynamics =
        quantity == Quantity::inverse_variance || quantity == Quantity::sigma_x;
    if (dynamics) {
        probe.validate();
        if (probe_time <= 0.0 && probe_time_periods <= 0.0 && axis != SweepAxis::time) {
            throw std::runtime_error("config: dynamics quantities need time or time_periods");
        }
    }
    if (quantity == Quantity::d2_energy && axis != SweepAxis::g_tilde) {
        throw std::runtime_error("config: d2_energy requires the g_tilde axis");
    }
    if (quantity == Quantity::qfi && axis != SweepAxis::g_tilde) {
        throw std::runtime_error("config: qfi requires the g_tilde axis");
    }
    if (mf_companion && quantity != Quantity::energy && quantity != Quantity::n_g_exact) {
        throw std::runtime_error("config: mf_companion applies to energy and n_g_exact only");
    }
    if (!(steps.h_fd > 0.0) || !(steps.delta_g_qfi > 0.0)) {
        throw std::runtime_error("config: steps must be > 0");
    }
    if (workers < 1) throw std::runtime_error("config: workers must be >= 1");
}

int auto_bath_size(const ModelParams& tpl, double g_max) {
    const double w0 = tpl.omega0, w = tpl.omega, D = tpl.delta;
    auto defined = [&](int N) { return (w - D) * (w0 - N * D) > 0.0; };
    int best = -1;
    for (int N = 128; N <= 8192; N *= 2) {
        if (!defined(N)) continue;
        best = N;
        if (std::abs(D) >= w || g_max <= 1.0) return N;
        ModelParams probe = tpl;
        probe.N = N;
        const MeanFieldSolution mf = mean_field_solution(with_g_tilde(probe, g_max));
        if (mf.n_g <= N / 10.0) return N;
    }
    if (best > 0) return best;
    for (int N = 64; N >= 1; N /= 2) {
        if (defined(N)) return N;
    }
    throw std::domain_error("auto_bath_size: no bath size keeps the sweep axis defined");
}

int curvature_bath_size(const ModelParams& tpl) {
    if (tpl.delta <= 0.0) return 8192;
    const int N = static_cast<int>(std::floor((tpl.omega0 - 4.0 * tpl.omega) / tpl.delta));
    if (N < 1) {
        throw std::domain_error("curvature_bath_size: omega0 too small for this delta");
    }
    return N;
}

namespace {

struct ColumnTask {
    ModelParams tpl;  // member-resolved template (N fixed)
    Quantity q{};
    bool mf{};
    SweepAxis axis{};
    double fixed_g_tilde{};
    double probe_time{};  // resolved absolute time
    SweepSteps steps{};
    InitialState probe{};
};

struct PointResult {
    double value{quiet_nan()};
    unsigned flags{0};
};

double ground_energy_at(const ColumnTask& t, double gt, bool mf) {
    if (mf) return mean_field_solution(with_g_tilde(t.tpl, gt)).energy;
    return find_ground_state(with_g_tilde(t.tpl, gt)).energy;
}

PointResult eval_point(const ColumnTask& t, double x) {
    PointResult r;
    try {
        switch (t.q) {
            case Quantity::energy:
            case Quantity::d2_energy:
            case Quantity::n_g_exact:
            case Quantity::n_g_mf:
            case Quantity::coherence: {
                ModelParams p = t.tpl;
                if (t.axis == SweepAxis::g_tilde) {
                    p = with_g_tilde(t.tpl, x);
                } else if (t.axis == SweepAxis::delta) {
                    p.delta = x;
                } else if (t.axis == SweepAxis::eta) {
                    p.omega0 = x * p.omega;
                } else {
                    throw std::domain_error("time axis needs a dynamics quantity");
                }
                if (t.q == Quantity::energy) {
                    r.value = t.mf ? mean_field_solution(p).energy
                                   : find_ground_state(p).energy;
                } else if (t.q == Quantity::d2_energy) {
                    const double h = t.steps.h_fd;
                    const double e0 = ground_energy_at(t, x, t.mf);
                    const double ep = ground_energy_at(t, x + h, t.mf);
                    const double em = ground_energy_at(t, x - h, t.mf);
                    r.value = (ep - 2.0 * e0 + em) / (h * h);
                } else if (t.q == Quantity::n_g_exact) {
                    r.value = t.mf ? mean_field_solution(p).n_g
                                   : static_cast<double>(find_ground_state(p).n_g);
                } else {
                    const MeanFieldSolution mf = mean_field_solution(p);
                    if (mf.phase == Phase::inadmissible) {
                        r.flags |= kFlagUndefined;
                        return r;
                    }
                    r.value = t.q == Quantity::n_g_mf ? mf.n_g : mf.coherence;
                }
                if (std::isnan(r.value)) r.flags |= kFlagUndefined;
                return r;
            }
            case Quantity::qfi: {
                const QfiPoint q = qfi(t.tpl, x, t.steps.delta_g_qfi);
                r.value = q.value;
                if (q.sector_crossing) r.flags |= kFlagSectorCrossing;
                return r;
            }
            case Quantity::inverse_variance: {
                const double gt = t.axis == SweepAxis::time ? t.fixed_g_tilde : x;
                const double tm = t.axis == SweepAxis::time ? x : t.probe_time;
                const InverseVariancePoint pt =
                    inverse_variance(t.tpl, t.probe, tm, gt);
                r.value = pt.value;
                if (!pt.defined) r.flags |= kFlagUndefined;
                if (pt.truncation_warning) r.flags |= kFlagTruncation;
                return r;
            }
            case Quantity::sigma_x: {
                const double gt = t.axis == SweepAxis::time ? t.fixed_g_tilde : x;
                const double tm = t.axis == SweepAxis::time ? x : t.probe_time;
                const SigmaX sx =
                    sigma_x_expectation(with_g_tilde(t.tpl, gt), t.probe, tm);
                r.value = sx.value;
                if (sx.truncation_warning) r.flags |= kFlagTruncation;
                return r;
            }
        }
    } catch (const std::domain_error&) {
        r.value = quiet_nan();
        r.flags |= kFlagUndefined;
    }
    return r;
}

SweepColumn run_column(const ColumnTask& t, const std::vector<double>& axis,
                       const std::string& name, int workers) {
    SweepColumn col;
    col.name = name;
    col.values.assign(axis.size(), quiet_nan());
    col.flags.assign(axis.size(), 0u);
    const int nw = std::max(1, std::min<int>(workers, static_cast<int>(axis.size())));
    if (nw == 1) {
        for (std::size_t i = 0; i < axis.size(); ++i) {
            const PointResult pr = eval_point(t, axis[i]);
            col.values[i] = pr.value;
            col.flags[i] = pr.flags;
        }
        return col;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = static_cast<std::size_t>(w); i < axis.size();
                 i += static_cast<std::size_t>(nw)) {
                const PointResult pr = eval_point(t, axis[i]);
                col.values[i] = pr.value;
                col.flags[i] = pr.flags;
            }
        });
    }
    for (auto& th : pool) th.join();
    return col;
}

std::string member_suffix(const FamilySpec& fam, std::size_t i) {
    if (fam.kind == FamilySpec::Kind::none) return "";
    const char* key = fam.kind == FamilySpec::Kind::delta ? "delta" : "eta";
    return std::string("[") + key + "=" + format_double(fam.values[i]) + "]";
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult res;
    res.axis_name = to_string(cfg.axis);
    res.axis.resize(static_cast<std::size_t>(cfg.points));
    for (int i = 0; i < cfg.points; ++i) {
        res.axis[static_cast<std::size_t>(i)] =
            cfg.start + (cfg.stop - cfg.start) * i / (cfg.points - 1);
    }

    res.header.emplace_back("tool", kToolVersion);
    if (!cfg.preset_name.empty()) res.header.emplace_back("preset", cfg.preset_name);
    res.header.emplace_back("quantity", to_string(cfg.quantity));
    res.header.emplace_back("axis", res.axis_name);
    res.header.emplace_back("start", format_double(cfg.start));
    res.header.emplace_back("stop", format_double(cfg.stop));
    res.header.emplace_back("points", std::to_string(cfg.points));
    res.header.emplace_back("omega0", format_double(cfg.model.omega0));
    res.header.emplace_back("omega", format_double(cfg.model.omega));
    if (cfg.family.kind != FamilySpec::Kind::delta) {
        res.header.emplace_back("delta", format_double(cfg.model.delta));
    }
    if (cfg.quantity == Quantity::d2_energy) {
        res.header.emplace_back("h_fd", format_double(cfg.steps.h_fd));
    }
    if (cfg.quantity == Quantity::qfi) {
        res.header.emplace_back("delta_g_qfi", format_double(cfg.steps.delta_g_qfi));
    }
    const bool dynamics =
        cfg.quantity == Quantity::inverse_variance || cfg.quantity == Quantity::sigma_x;
    if (dynamics) {
        res.header.emplace_back("probe_alpha", format_double(cfg.probe.alpha_probe));
        res.header.emplace_back("probe_weights",
                                cfg.probe.kind == WeightKind::bosonic_coherent
                                    ? "bosonic_coherent"
                                    : "spin_coherent");
        res.header.emplace_back("probe_b_up", format_double(cfg.probe.b_up.real()) + "," +
                                                  format_double(cfg.probe.b_up.imag()));
        res.header.emplace_back("probe_b_down",
                                format_double(cfg.probe.b_down.real()) + "," +
                                    format_double(cfg.probe.b_down.imag()));
        if (cfg.probe_time_periods > 0.0) {
            res.header.emplace_back("time_periods", format_double(cfg.probe_time_periods));
        } else if (cfg.axis != SweepAxis::time) {
            res.header.emplace_back("time", format_double(cfg.probe_time));
        }
        if (cfg.axis == SweepAxis::time) {
            res.header.emplace_back("fixed_g_tilde", format_double(cfg.fixed_g_tilde));
        }
    }

    std::size_t members = 1;
    if (cfg.family.kind != FamilySpec::Kind::none) members = cfg.family.values.size();

    for (std::size_t mi = 0; mi < members; ++mi) {
        ColumnTask task;
        task.tpl = cfg.model;
        task.q = cfg.quantity;
        task.mf = false;
        task.axis = cfg.axis;
        task.fixed_g_tilde = cfg.fixed_g_tilde;
        task.steps = cfg.steps;
        task.probe = cfg.probe;

        if (cfg.family.kind == FamilySpec::Kind::delta) {
            task.tpl.delta = cfg.family.values[mi];
        } else if (cfg.family.kind == FamilySpec::Kind::eta) {
            task.tpl.omega0 = cfg.family.values[mi] * task.tpl.omega;
        }

        if (!cfg.family.bath_sizes.empty()) {
            task.tpl.N = cfg.family.bath_sizes[mi];
        } else if (cfg.n_auto) {
            const double g_max =
                cfg.axis == SweepAxis::g_tilde ? cfg.stop : cfg.fixed_g_tilde;
            task.tpl.N = cfg.quantity == Quantity::d2_energy
                             ? curvature_bath_size(task.tpl)
                             : auto_bath_size(task.tpl, g_max);
        }

        task.probe_time = cfg.probe_time;
        if (cfg.probe_time_periods > 0.0) {
            const double wt = task.tpl.omega - task.tpl.delta;
            if (!(wt > 0.0)) {
                throw std::runtime_error("run_sweep: time_periods needs omega_tilde > 0");
            }
            task.probe_time = cfg.probe_time_periods * 2.0 * kPi / wt;
        }

        const std::string suffix = member_suffix(cfg.family, mi);
        const std::string name = std::string(to_string(cfg.quantity)) + suffix;
        res.header.emplace_back("N" + suffix, std::to_string(task.tpl.N));
        res.columns.push_back(run_column(task, res.axis, name, cfg.workers));
        if (cfg.mf_companion) {
            ColumnTask mf_task = task;
            mf_task.mf = true;
            res.columns.push_back(run_column(mf_task, res.axis,
                                             std::string(to_string(cfg.quantity)) +
                                                 "_mf" + suffix,
                                             cfg.workers));
        }
    }
    return res;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {
        "fig1a", "fig1b", "fig2a", "fig2b", "fig3", "fig4a", "fig4b", "fig5a", "fig5b",
    };
    return names;
}

SweepConfig preset(const std::string& name) {
    SweepConfig c;
    c.preset_name = name;
    c.out_path = name + ".csv";
    if (name == "fig1a" || name == "fig1b") {
        c.model = ModelParams{100.0, 0.5, 0.0, 0.0, 1};
        c.family.kind = FamilySpec::Kind::delta;
        c.family.values = {-0.25, -0.1, 0.1, 0.25};
        if (name == "fig1a") {
            c.quantity = Quantity::d2_energy;
            c.start = 0.5;
            c.stop = 1.5;
            c.points = 400;
            c.steps.h_fd = 1e-3;
        } else {
            c.quantity = Quantity::energy;
            c.mf_companion = true;
            c.start = 0.0;
            c.stop = 1.5;
            c.points = 301;
        }
    } else if (name == "fig2a" || name == "fig2b" || name == "fig3") {
        c.model = ModelParams{50.0, 0.5, 0.0, 0.0, 1};  // eta = 100
        c.family.kind = FamilySpec::Kind::delta;
        c.start = 0.5;
        c.stop = 2.0;
        c.points = 301;
        if (name == "fig2a") {
            c.quantity = Quantity::n_g_exact;
            c.mf_companion = true;
            c.family.values = {0.0, -0.1, -0.25, -0.4};
        } else if (name == "fig2b") {
            c.quantity = Quantity::n_g_exact;
            c.mf_companion = true;
            c.family.values = {0.1, 0.25, 0.4};
        } else {
            c.quantity = Quantity::coherence;
            c.family.values = {-0.4, -0.25, -0.1, 0.0, 0.1, 0.25, 0.4};
        }
    } else if (name == "fig4a") {
        c.model = ModelParams{10.0, 0.1, 0.0, 0.0, 64};
        c.quantity = Quantity::qfi;
        c.family.kind = FamilySpec::Kind::eta;
        c.family.values = {100.0, 1000.0, 10000.0};
        c.family.bath_sizes = {64, 64, 64};
        c.start = 0.5;
        c.stop = 1.5;
        c.points = 201;
    } else if (name == "fig4b") {
        c.model = ModelParams{1000.0, 0.1, 0.0, 0.0, 64};  // eta = 1e4
        c.quantity = Quantity::qfi;
        c.family.kind = FamilySpec::Kind::delta;
        c.family.values = {0.05, 0.15};
        // same critical coupling scale |omega_tilde*omega0_tilde| = 10 for both
        c.family.bath_sizes = {16000, 8000};
        c.start = 0.5;
        c.stop = 1.5;
        c.points = 201;
    } else if (name == "fig5a" || name == "fig5b") {
        c.model = ModelParams{50.0, 0.5, 0.0, 0.0, 64};  // eta = 100
        c.quantity = Quantity::inverse_variance;
        c.family.kind = FamilySpec::Kind::delta;
        c.family.values = {-0.1, 0.0, 0.1};
        c.family.bath_sizes = {64, 64, 64};
        c.start = 0.8;
        c.stop = 1.0;
        c.points = 501;
        c.probe.alpha_probe = 2.0;
        c.probe_time_periods = name == "fig5a" ? 1.0 : 2.0;
    } else {
        std::string known;
        for (const auto& n : preset_names()) known += " " + n;
        throw std::runtime_error("unknown preset '" + name + "'; known presets:" + known);
    }
    return c;
}

SweepConfig parse_config_text(const std::string& text) {
    SweepConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "omega0") c.model.omega0 = parse_double(val, key);
        else if (key == "omega") c.model.omega = parse_double(val, key);
        else if (key == "A") c.model.A = parse_double(val, key);
        else if (key == "delta") c.model.delta = parse_double(val, key);
        else if (key == "N") {
            if (val == "auto") c.n_auto = true;
            else { c.n_auto = false; c.model.N = static_cast<int>(parse_double(val, key)); }
        }
        else if (key == "axis") c.axis = axis_from_string(val);
        else if (key == "start") c.start = parse_double(val, key);
        else if (key == "stop") c.stop = parse_double(val, key);
        else if (key == "points") c.points = static_cast<int>(parse_double(val, key));
        else if (key == "quantity") c.quantity = quantity_from_string(val);
        else if (key == "mf_companion") c.mf_companion = val == "true" || val == "1";
        else if (key == "delta_family") {
            c.family.kind = FamilySpec::Kind::delta;
            c.family.values = parse_list(val, key);
        }
        else if (key == "eta_family") {
            c.family.kind = FamilySpec::Kind::eta;
            c.family.values = parse_list(val, key);
        }
        else if (key == "family_N") {
            for (double v : parse_list(val, key)) {
                c.family.bath_sizes.push_back(static_cast<int>(v));
            }
        }
        else if (key == "h_fd") c.steps.h_fd = parse_double(val, key);
        else if (key == "delta_g_qfi") c.steps.delta_g_qfi = parse_double(val, key);
        else if (key == "probe_alpha") c.probe.alpha_probe = parse_double(val, key);
        else if (key == "probe_weights") {
            if (val == "bosonic_coherent") c.probe.kind = WeightKind::bosonic_coherent;
            else if (val == "spin_coherent") c.probe.kind = WeightKind::spin_coherent;
            else throw std::runtime_error("config: unknown probe_weights '" + val + "'");
        }
        else if (key == "probe_n_max") c.probe.n_max = static_cast<int>(parse_double(val, key));
        else if (key == "probe_b_up" || key == "probe_b_down") {
            const auto parts = parse_list(val, key);
            if (parts.empty() || parts.size() > 2) {
                throw std::runtime_error("config: " + key + " wants 're' or 're,im'");
            }
            const std::complex<double> b(parts[0], parts.size() == 2 ? parts[1] : 0.0);
            if (key == "probe_b_up") c.probe.b_up = b;
            else c.probe.b_down = b;
        }
        else if (key == "fixed_g_tilde") c.fixed_g_tilde = parse_double(val, key);
        else if (key == "time") c.probe_time = parse_double(val, key);
        else if (key == "time_periods") c.probe_time_periods = parse_double(val, key);
        else if (key == "out") c.out_path = val;
        else if (key == "plot") c.emit_plot = val == "true" || val == "1";
        else if (key == "workers") c.workers = static_cast<int>(parse_double(val, key));
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    if (!c.family.bath_sizes.empty() &&
        c.family.bath_sizes.size() != c.family.values.size()) {
        throw std::runtime_error("config: family_N size must match the family size");
    }
    return c;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string render_csv(const SweepResult& r) {
    std::string out;
    for (const auto& [k, v] : r.header) {
        out += "# " + k + " = " + v + "\n";
    }
    out += "# columns: " + r.axis_name;
    for (const auto& col : r.columns) out += "," + col.name + ",flags";
    out += "\n";
    for (std::size_t i = 0; i < r.axis.size(); ++i) {
        out += format_double(r.axis[i]);
        for (const auto& col : r.columns) {
            out += "," + format_double(col.values[i]) + "," + flags_text(col.flags[i]);
        }
        out += "\n";
    }
    return out;
}

void emit_csv(const SweepResult& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write: " + path);
    out << render_csv(r);
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

ParsedCsv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot read: " + path);
    ParsedCsv out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cells.size() < 3 || cells.size() % 2 == 0) {
            throw std::runtime_error("read_csv: malformed row: " + line);
        }
        const std::size_t ncols = (cells.size() - 1) / 2;
        if (out.values.empty()) {
            out.values.resize(ncols);
            out.flag_text.resize(ncols);
        }
        auto to_double = [](const std::string& s) {
            double v{};
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
                throw std::runtime_error("read_csv: bad number: " + s);
            }
            return v;
        };
        out.axis.push_back(to_double(cells[0]));
        for (std::size_t c = 0; c < ncols; ++c) {
            out.values[c].push_back(to_double(cells[1 + 2 * c]));
            out.flag_text[c].push_back(cells[2 + 2 * c]);
        }
    }
    return out;
}

void emit_svg(const SweepResult& r, const std::string& path) {
    constexpr int W = 720, H = 480, ML = 64, MR = 16, MT = 16, MB = 40;
    double xmin = r.axis.front(), xmax = r.axis.back();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();
    for (const auto& col : r.columns) {
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            if (col.flags[i] != 0 || !std::isfinite(col.values[i])) continue;
            ymin = std::min(ymin, col.values[i]);
            ymax = std::max(ymax, col.values[i]);
        }
    }
    if (!std::isfinite(ymin) || !std::isfinite(ymax)) { ymin = 0.0; ymax = 1.0; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double xspan = xmax > xmin ? xmax - xmin : 1.0;
    const double yspan = ymax - ymin;
    auto px = [&](double x) { return ML + (x - xmin) / xspan * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / yspan * (H - MT - MB); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  ML, MT, W - ML - MR, H - MT - MB);
    svg += buf;
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
        const auto& col = r.columns[c];
        std::string pts;
        bool open = false;
        auto flush = [&]() {
            if (open && !pts.empty()) {
                svg += "<polyline fill=\"none\" stroke=\"";
                svg += palette[c % 8];
                svg += "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
            }
            pts.clear();
            open = false;
        };
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            if (col.flags[i] != 0 || !std::isfinite(col.values[i])) {
                flush();
                continue;
            }
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(r.axis[i]),
                          py(col.values[i]));
            pts += buf;
            open = true;
        }
        flush();
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%d\" y=\"%d\" font-size=\"12\" fill=\"%s\">%s</text>\n",
                      ML + 8, MT + 16 + 14 * static_cast<int>(c), palette[c % 8],
                      col.name.c_str());
        svg += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" font-size=\"12\">%s</text>\n", ML,
                  H - MB + 24, (r.axis_name + " in [" + format_double(xmin) + ", " +
                                format_double(xmax) + "]; y in [" + format_double(ymin) +
                                ", " + format_double(ymax) + "]")
                                   .c_str());
    svg += buf;
    svg += "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write: " + path);
    out << svg;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace spinqpt
