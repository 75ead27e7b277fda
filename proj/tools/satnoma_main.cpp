#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "satnoma/errors.hpp"
#include "satnoma/sweep.hpp"

namespace {

satnoma::SweepSpec parse_sweep_flags(const std::string& snr_spec, const std::string& modes,
                                     const std::string& users, int user_count) {
    satnoma::SweepSpec sweep;
    {
        std::istringstream in(snr_spec);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c))
            throw satnoma::ValidationError("--snr-db expects START:STOP:STEP, got '" + snr_spec + "'");
        try {
            sweep.snr_db_start = std::stod(a);
            sweep.snr_db_stop = std::stod(b);
            sweep.snr_db_step = std::stod(c);
        } catch (const std::exception&) {
            throw satnoma::ValidationError("--snr-db expects numbers in START:STOP:STEP, got '" +
                                           snr_spec + "'");
        }
    }
    {
        std::istringstream in(modes);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) sweep.modes.push_back(satnoma::parse_sweep_mode(tok));
    }
    if (users == "all") {
        for (int u = 1; u <= user_count; ++u) sweep.users.push_back(u);
    } else {
        std::istringstream in(users);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            try {
                sweep.users.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw satnoma::ValidationError("--users expects a comma-separated index list");
            }
        }
    }
    return sweep;
}

// For multi-run presets the run label lands in the file name: out.csv ->
// out_<label>.csv.
std::string labelled_path(const std::string& out_path, const std::string& label) {
    if (label.empty()) return out_path;
    const auto dot = out_path.find_last_of('.');
    const auto slash = out_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out_path + "_" + label;
    return out_path.substr(0, dot) + "_" + label + out_path.substr(dot);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probability sweeps for a NOMA satellite downlink over "
                 "Shadowed-Rician fading"};

    std::string scenario_path, preset, out_path = "outage.csv";
    std::string snr_spec, modes_spec = "exact,asymptote,floor,mc,oma", users_spec = "all";
    long long trials = 100000;
    std::uint64_t seed = 12345;
    int workers = 0;
    int quad_n = 64;
    std::optional<double> omega_i_db;
    bool validate_only = false;

    auto* scenario_opt =
        app.add_option("--scenario", scenario_path, "Scenario file (flat key = value format)");
    auto* preset_opt = app.add_option("--preset", preset, "Built-in recipe: fig1|fig2|fig3");
    preset_opt->excludes(scenario_opt);
    app.add_option("--snr-db", snr_spec, "Sweep grid START:STOP:STEP in dB");
    app.add_option("--modes", modes_spec, "Comma list from exact,asymptote,floor,mc,oma");
    app.add_option("--users", users_spec, "Comma list of 1-based user indices, or 'all'");
    app.add_option("--trials", trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Master RNG seed");
    app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
    app.add_option("--quad-n", quad_n, "Gauss-Laguerre size for the ipSIC integral")
        ->check(CLI::Range(2, 128));
    app.add_option("--omega-i-db", omega_i_db,
                   "Residual interference power in dB (overrides scenario/recipe)");
    app.add_option("--out", out_path, "Output CSV path");
    app.add_flag("--validate-only", validate_only, "Validate the scenario, print derived "
                                                   "quantities and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        satnoma::SimConfig sim;
        sim.trials = trials;
        sim.seed = seed;
        sim.workers = workers;

        std::vector<satnoma::RecipeRun> runs;
        satnoma::SweepSpec sweep;
        if (!preset.empty()) {
            satnoma::Recipe recipe = satnoma::figure_recipe(preset, omega_i_db);
            runs = std::move(recipe.runs);
            sweep = recipe.sweep;
        } else if (!scenario_path.empty()) {
            satnoma::NomaScenario scenario = satnoma::load_scenario(scenario_path);
            if (omega_i_db && scenario.sic().kind == satnoma::SicKind::ipsic)
                scenario = scenario.with_sic(
                    satnoma::SicMode::ipsic(std::pow(10.0, *omega_i_db / 10.0)));
            sweep.snr_db_start = 0.0;
            sweep.snr_db_stop = 40.0;
            sweep.snr_db_step = 5.0;
            sweep.modes = {satnoma::SweepMode::exact, satnoma::SweepMode::mc};
            runs.push_back({"", std::move(scenario)});
        } else {
            std::cerr << "error: either --scenario or --preset is required\n";
            return 1;
        }
        if (!snr_spec.empty() || app.count("--modes") || app.count("--users")) {
            const int user_count = runs.front().scenario.user_count();
            satnoma::SweepSpec flags = parse_sweep_flags(
                snr_spec.empty() ? "0:40:5" : snr_spec, modes_spec, users_spec, user_count);
            if (!snr_spec.empty()) {
                sweep.snr_db_start = flags.snr_db_start;
                sweep.snr_db_stop = flags.snr_db_stop;
                sweep.snr_db_step = flags.snr_db_step;
            }
            if (app.count("--modes")) sweep.modes = flags.modes;
            if (app.count("--users")) sweep.users = flags.users;
        }

        if (validate_only) {
            for (const auto& run : runs) {
                if (!run.label.empty()) std::cout << "[" << run.label << "]\n";
                satnoma::write_validation_report(std::cout, run.scenario);
            }
            return 0;
        }

        for (const auto& run : runs) {
            const std::string path = labelled_path(out_path, run.label);
            std::ofstream out(path, std::ios::binary);
            if (!out) throw satnoma::ValidationError("cannot open output file '" + path + "'");
            satnoma::run_sweep(run.scenario, sweep, sim, quad_n, out);
            std::cerr << "wrote " << path << " (seed=" << sim.seed << " trials=" << sim.trials
                      << " workers=" << sim.workers << " quad_n=" << quad_n << ")\n";
        }
        return 0;
    } catch (const satnoma::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const satnoma::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
