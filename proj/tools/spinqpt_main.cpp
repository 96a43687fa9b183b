// spinqpt_main.cpp — command-line front end.
//
// Exit codes: 0 success, 1 usage/config error, 2 I/O error,
// 3 admissibility error on a non-sweep command.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "spinqpt/dense_oracle.hpp"
#include "spinqpt/effective.hpp"
#include "spinqpt/ground_state.hpp"
#include "spinqpt/model.hpp"
#include "spinqpt/sweep.hpp"

namespace {

std::string plot_path_for(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return stem + ".svg";
}

int emit_result(const spinqpt::SweepResult& res, const std::string& out, bool plot) {
    try {
        spinqpt::emit_csv(res, out);
        std::cout << "wrote " << out << "\n";
        if (plot) {
            const std::string svg = plot_path_for(out);
            spinqpt::emit_svg(res, svg);
            std::cout << "wrote " << svg << "\n";
        }
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

int run_check() {
    using namespace spinqpt;
    int failures = 0;

    // closed-form sector spectrum against the dense oracle at N = 10
    {
        const ModelParams p{100.0, 0.5, 0.5, 0.1, 10};
        std::vector<double> analytic;
        const auto [lo, hi] = edge_state_energies(p);
        analytic.push_back(lo.energy);
        analytic.push_back(hi.energy);
        for (int n = 1; n <= p.N; ++n) {
            const BlockSpectrum s = block_eigensystem(p, n);
            analytic.push_back(s.E_minus);
            analytic.push_back(s.E_plus);
        }
        std::sort(analytic.begin(), analytic.end());
        const std::vector<double> dense = oracle_spectrum(p);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < dense.size(); ++i) {
            worst = std::max(worst, std::abs(dense[i] - analytic[i]));
            scale = std::max(scale, std::abs(dense[i]));
        }
        const bool ok = worst <= 1e-10 * scale;
        std::printf("oracle equivalence (N=10): %s  (worst %.3e, tol %.3e)\n",
                    ok ? "ok" : "FAIL", worst, 1e-10 * scale);
        failures += ok ? 0 : 1;
    }

    // displaced-frame linear and momentum curvature coefficients vanish
    {
        const ModelParams tpl{100.0, 0.5, 0.0, 0.1, 200};
        const ModelParams p = with_g_tilde(tpl, 1.4);
        const SuperradiantFrame f = superradiant_frame(p);
        const double tol = 1e-9 * (std::abs(p.omega) + std::abs(derive(p).lambda));
        const bool ok = std::abs(f.kappa1) <= tol && std::abs(f.kappa2) <= tol;
        std::printf("kappa1 = kappa2 = 0: %s  (|k1| %.3e, |k2| %.3e, tol %.3e)\n",
                    ok ? "ok" : "FAIL", std::abs(f.kappa1), std::abs(f.kappa2), tol);
        failures += ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XXZ central spin model: spectra, phase diagram, metrology sweeps"};
    app.require_subcommand(1);

    std::string config_path, out_path, preset_name;
    bool plot = false;
    int workers = 0;

    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep from a config file");
    sweep_cmd->add_option("--config", config_path, "key = value config file")->required();
    sweep_cmd->add_option("--out", out_path, "output CSV path (overrides config)");
    sweep_cmd->add_flag("--plot", plot, "also write an SVG line plot");
    sweep_cmd->add_option("--workers", workers, "evaluation threads (overrides config)");

    auto* preset_cmd = app.add_subcommand("preset", "run a figure-reproduction preset");
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    preset_cmd->add_option("--out", out_path, "output CSV path");
    preset_cmd->add_flag("--plot", plot, "also write an SVG line plot");
    preset_cmd->add_option("--workers", workers, "evaluation threads");

    spinqpt::ModelParams sp;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "print the full sorted spectrum");
    spectrum_cmd->add_option("--omega0", sp.omega0, "central-spin frequency")->required();
    spectrum_cmd->add_option("--omega", sp.omega, "bath frequency")->required();
    spectrum_cmd->add_option("--A", sp.A, "transverse coupling per spin")->required();
    spectrum_cmd->add_option("--delta", sp.delta, "longitudinal coupling")->required();
    spectrum_cmd->add_option("--N", sp.N, "number of bath spins")->required();

    auto* check_cmd = app.add_subcommand("check", "run the built-in self-tests");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sweep_cmd->parsed()) {
            spinqpt::SweepConfig cfg;
            try {
                cfg = spinqpt::load_config(config_path);
            } catch (const std::ios_base::failure& e) {
                std::cerr << "I/O error: " << e.what() << "\n";
                return 2;
            }
            if (!out_path.empty()) cfg.out_path = out_path;
            if (plot) cfg.emit_plot = true;
            if (workers > 0) cfg.workers = workers;
            const auto res = spinqpt::run_sweep(cfg);
            return emit_result(res, cfg.out_path, cfg.emit_plot);
        }
        if (preset_cmd->parsed()) {
            spinqpt::SweepConfig cfg = spinqpt::preset(preset_name);
            if (!out_path.empty()) cfg.out_path = out_path;
            if (plot) cfg.emit_plot = true;
            if (workers > 0) cfg.workers = workers;
            const auto res = spinqpt::run_sweep(cfg);
            return emit_result(res, cfg.out_path, cfg.emit_plot);
        }
        if (spectrum_cmd->parsed()) {
            try {
                sp.validate();
                const auto [lo, hi] = spinqpt::edge_state_energies(sp);
                std::vector<double> energies{lo.energy, hi.energy};
                for (int n = 1; n <= sp.N; ++n) {
                    const auto s = spinqpt::block_eigensystem(sp, n);
                    energies.push_back(s.E_minus);
                    energies.push_back(s.E_plus);
                }
                std::sort(energies.begin(), energies.end());
                char buf[64];
                for (double e : energies) {
                    if (e == 0.0) e = 0.0;  // drop the sign of negative zero
                    auto r = std::to_chars(buf, buf + sizeof(buf), e);
                    std::cout.write(buf, r.ptr - buf);
                    std::cout.put('\n');
                }
                return 0;
            } catch (const std::invalid_argument& e) {
                std::cerr << "admissibility error: " << e.what() << "\n";
                return 3;
            } catch (const std::domain_error& e) {
                std::cerr << "admissibility error: " << e.what() << "\n";
                return 3;
            }
        }
        if (check_cmd->parsed()) {
            return run_check();
        }
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
