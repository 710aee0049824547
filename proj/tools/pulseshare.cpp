// pulseshare command-line front end.
//
//   pulseshare bounds   --n-atoms N --nbar X
//   pulseshare simulate --model phase|tc|encoded --gate pi|pi_half --n-atoms N --nbar X
//   pulseshare sweep    --config FILE [--fit N|nbar]
//   pulseshare verify   [--sweep-output FILE]
//
// Exit codes: 0 ok, 2 bad configuration, 3 numerical guard tripped,
// 4 acceptance failure.

#include "pulseshare/acceptance.hpp"
#include "pulseshare/bounds.hpp"
#include "pulseshare/errors.hpp"
#include "pulseshare/fit.hpp"
#include "pulseshare/serialize.hpp"
#include "pulseshare/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr int kConfigError = 2;
constexpr int kGuardError = 3;
constexpr int kAcceptanceFailure = 4;

using namespace pulseshare;

void write_or_print(const std::string& text, const std::filesystem::path& path) {
    if (path.empty())
        std::cout << text;
    else
        write_text(path, text);
}

int run_bounds(int n_atoms, double nbar) {
    if (n_atoms < 1) throw ConfigError("--n-atoms must be at least 1");
    if (!(nbar > 0.0)) throw ConfigError("--nbar must be positive");
    std::cout << nlohmann::json(bound_report(n_atoms, nbar)).dump(2) << '\n';
    return 0;
}

int run_simulate(SweepConfig config, int n_atoms, double nbar) {
    config.n_list = {n_atoms};
    config.nbar_list = {nbar};
    config.validate();
    std::cout << nlohmann::json(evaluate_point(config, n_atoms, nbar)).dump(2) << '\n';
    return 0;
}

int run_sweep_command(const std::filesystem::path& config_path, const std::string& fit_axis) {
    const SweepConfig config = load_sweep_config(config_path);
    std::optional<FitAxis> axis;
    if (!fit_axis.empty()) axis = parse_fit_axis(fit_axis);
    const auto records = run_sweep(config);
    write_or_print(format_records(records, config.format), config.output_path);
    if (axis) {
        const FitResult fit = fit_exponent(records, *axis);
        std::cerr << "fit " << to_string(fit.axis) << ": exponent " << fit.exponent << ", r^2 "
                  << fit.r_squared << '\n';
        if (!config.output_path.empty()) {
            std::filesystem::path fit_path = config.output_path;
            fit_path.replace_extension(".fit" + config.output_path.extension().string());
            emit(fit, config.format, fit_path);
        }
    }
    return 0;
}

int run_verify(const std::string& sweep_output) {
    AcceptanceOptions options;
    options.workers = default_worker_count();
    if (!sweep_output.empty()) options.sweep_output = sweep_output;
    bool all = true;
    for (const CriterionResult& r : run_acceptance(options)) {
        std::cout << format_result_line(r) << '\n';
        all &= r.passed;
    }
    std::cout << (all ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << std::endl;
    return all ? 0 : kAcceptanceFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infidelity of gates driven by a shared quantized pulse"};
    app.require_subcommand(1);

    int n_atoms = 1;
    double nbar = 0.0;
    auto* bounds = app.add_subcommand("bounds", "Closed-form bounds as JSON");
    bounds->add_option("--n-atoms", n_atoms, "Number of atoms")->required();
    bounds->add_option("--nbar", nbar, "Mean photon number")->required();

    std::string model = "phase", gate = "pi";
    double delta = 0.0, coupling = 1.0;
    std::int64_t cutoff = -1;
    auto* simulate = app.add_subcommand("simulate", "One simulated grid point as JSON");
    simulate->add_option("--model", model, "phase, tc or encoded")->required();
    simulate->add_option("--gate", gate, "pi or pi_half")->required();
    simulate->add_option("--n-atoms", n_atoms, "Number of atoms")->required();
    simulate->add_option("--nbar", nbar, "Mean photon number")->required();
    simulate->add_option("--delta", delta, "GHZ relative phase");
    simulate->add_option("--cutoff", cutoff, "Photon-number cutoff override");
    simulate->add_option("--coupling", coupling, "Tavis-Cummings coupling g");

    std::string config_path, fit_axis;
    auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
    sweep->add_option("--config", config_path, "Config file")->required();
    sweep->add_option("--fit", fit_axis, "Fit the exponent along N or nbar");

    std::string sweep_output;
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--sweep-output", sweep_output, "Also write the determinism sweep CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*bounds) return run_bounds(n_atoms, nbar);
        if (*simulate) {
            SweepConfig config;
            config.model = parse_model(model);
            config.gate = parse_gate_kind(gate);
            config.delta = delta;
            config.coupling = coupling;
            if (cutoff >= 0) config.cutoff_override = cutoff;
            return run_simulate(config, n_atoms, nbar);
        }
        if (*sweep) return run_sweep_command(config_path, fit_axis);
        if (*verify) return run_verify(sweep_output);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalGuardError& e) {
        std::cerr << "numerical guard: " << e.what() << '\n';
        return kGuardError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
