#include "pulseshare/sweep.hpp"

#include "pulseshare/bounds.hpp"
#include "pulseshare/encoded_gate.hpp"
#include "pulseshare/errors.hpp"
#include "pulseshare/tavis_cummings.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace pulseshare {

std::string_view to_string(Model model) {
    switch (model) {
        case Model::phase: return "phase";
        case Model::tc: return "tc";
        case Model::encoded: return "encoded";
    }
    return "phase";
}

Model parse_model(std::string_view text) {
    if (text == "phase") return Model::phase;
    if (text == "tc") return Model::tc;
    if (text == "encoded") return Model::encoded;
    throw ConfigError("unknown model '" + std::string(text) + "' (expected phase, tc or encoded)");
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

void SweepConfig::validate() const {
    if (n_list.empty()) throw ConfigError("n_list must not be empty");
    if (nbar_list.empty()) throw ConfigError("nbar_list must not be empty");
    for (int n : n_list)
        if (n < 1 || n > kDefaultMaxAtoms)
            throw ConfigError("N=" + std::to_string(n) + " outside [1, " +
                              std::to_string(kDefaultMaxAtoms) + "]");
    for (double nbar : nbar_list) {
        if (!(nbar > 0.0) || !std::isfinite(nbar)) throw ConfigError("every nbar must be positive");
        if (model == Model::tc && nbar > kMaxTcNbar)
            throw ConfigError("tc model is limited to nbar <= 2000");
        if (model == Model::tc && nbar < 16.0)
            throw ConfigError("tc model needs nbar >= 16 for pulse calibration");
    }
    if (model == Model::encoded && gate != GateKind::pi)
        throw ConfigError("encoded model only implements the collective bit flip (gate=pi)");
    if (!(coupling > 0.0)) throw ConfigError("coupling must be positive");
    if (cutoff_override && *cutoff_override < 1) throw ConfigError("cutoff must be >= 1");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
    T value{};
    text = trim(text);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("cannot parse '" + std::string(text) + "' for key " + std::string(key));
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, std::string_view key) {
    std::vector<T> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_number<T>(text.substr(0, comma), key));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

bool parse_bool(std::string_view text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("expected a boolean, got '" + std::string(text) + "'");
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
    SweepConfig cfg;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "model") cfg.model = parse_model(value);
        else if (key == "gate") cfg.gate = parse_gate_kind(value);
        else if (key == "n_list") cfg.n_list = parse_list<int>(value, key);
        else if (key == "nbar_list") cfg.nbar_list = parse_list<double>(value, key);
        else if (key == "delta") cfg.delta = parse_number<double>(value, key);
        else if (key == "cutoff") cfg.cutoff_override = parse_number<std::int64_t>(value, key);
        else if (key == "coupling") cfg.coupling = parse_number<double>(value, key);
        else if (key == "output") cfg.output_path = std::string(value);
        else if (key == "format") cfg.format = parse_output_format(value);
        else if (key == "record_runtime") cfg.record_runtime = parse_bool(value);
        else
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                              std::string(key) + "'");
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_config(buf.str());
}

void SweepRecord::validate() const {
    if (!(infidelity_sim >= 0.0 && infidelity_sim <= 1.0))
        throw NumericalGuardError("record N=" + std::to_string(n_atoms) +
                                  ": infidelity outside [0, 1]");
    if (!(leakage < 1e-9))
        throw NumericalGuardError("record N=" + std::to_string(n_atoms) + ": leakage >= 1e-9");
}

SweepRecord evaluate_point(const SweepConfig& config, int n_atoms, double nbar) {
    const auto start = std::chrono::steady_clock::now();
    SweepRecord r;
    r.model = std::string(to_string(config.model));
    r.gate = std::string(to_string(config.gate));
    r.n_atoms = n_atoms;
    r.nbar = nbar;
    switch (config.model) {
        case Model::phase: {
            const SimulationResult sim =
                config.gate == GateKind::pi
                    ? simulate_phase_pi(n_atoms, nbar, config.delta, config.cutoff_override)
                    : simulate_phase_pi2(n_atoms, nbar, config.cutoff_override);
            r.cutoff = sim.cutoff;
            r.infidelity_sim = sim.infidelity;
            r.leakage = sim.leakage;
            break;
        }
        case Model::tc: {
            const TcGateResult sim = simulate_tc_gate(config.gate, n_atoms, nbar, config.delta,
                                                      config.coupling, config.cutoff_override);
            r.cutoff = sim.cutoff;
            r.infidelity_sim = sim.infidelity;
            break;
        }
        case Model::encoded:
            r.infidelity_sim = encoded_sm_infidelity(n_atoms, nbar);
            break;
    }
    r.bound_eq8 = bound_general_pi2(n_atoms, nbar);
    r.bound_eq12 = bound_phase_pi2(n_atoms, nbar);
    r.bound_eq13 = bound_phase_pi(n_atoms, nbar);
    r.bitflip_exact_eq15 = bitflip_infidelity_exact(n_atoms, nbar);
    if (config.record_runtime)
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.validate();
    return r;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("PULSESHARE_MAX_WORKERS")) {
        unsigned value = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec == std::errc{} && ptr == s.data() + s.size() && value > 0) return value;
        throw ConfigError("PULSESHARE_MAX_WORKERS must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

[[noreturn]] void rethrow_with_context(std::exception_ptr error, int n_atoms, double nbar) {
    std::ostringstream where;
    where << "grid point N=" << n_atoms << ", nbar=" << nbar << ": ";
    try {
        std::rethrow_exception(error);
    } catch (const ConfigError& e) {
        throw ConfigError(where.str() + e.what());
    } catch (const NumericalGuardError& e) {
        throw NumericalGuardError(where.str() + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(where.str() + e.what());
    }
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned workers) {
    config.validate();
    struct Point {
        int n_atoms;
        double nbar;
    };
    std::vector<Point> grid;
    for (int n : config.n_list)
        for (double nbar : config.nbar_list) grid.push_back({n, nbar});

    std::vector<SweepRecord> records(grid.size());
    std::vector<std::exception_ptr> errors(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                records[i] = evaluate_point(config, grid[i].n_atoms, grid[i].nbar);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned pool = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(grid.size()));
    {
        std::vector<std::jthread> threads;
        for (unsigned t = 1; t < pool; ++t) threads.emplace_back(work);
        work();
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (errors[i]) rethrow_with_context(errors[i], grid[i].n_atoms, grid[i].nbar);
    return records;
}

}  // namespace pulseshare
