#pragma once

#include "pulseshare/phase_model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pulseshare {

enum class Model { phase, tc, encoded };
enum class OutputFormat { csv, json };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);
std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view text);

inline constexpr double kMaxTcNbar = 2000.0;

struct SweepConfig {
    Model model = Model::phase;
    GateKind gate = GateKind::pi;
    std::vector<int> n_list;
    std::vector<double> nbar_list;
    double delta = 0.0;
    std::optional<std::int64_t> cutoff_override;
    double coupling = 1.0;  ///< g for the TC model
    std::filesystem::path output_path;
    OutputFormat format = OutputFormat::csv;
    /// Wall-clock timings make output non-reproducible, so they are off
    /// unless asked for; runtime_ms is written as 0 otherwise.
    bool record_runtime = false;

    /// Throws ConfigError on empty lists, N outside [1, 12], nbar ≤ 0, TC
    /// nbar above kMaxTcNbar, or an encoded-model gate other than pi.
    void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment; lists are comma-separated.
/// Keys: model, gate, n_list, nbar_list, delta, cutoff, coupling, output,
/// format, record_runtime.
SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepRecord {
    std::string model;
    std::string gate;
    int n_atoms = 0;
    double nbar = 0.0;
    std::int64_t cutoff = 0;
    double infidelity_sim = 0.0;
    double bound_eq8 = 0.0;
    double bound_eq12 = 0.0;
    double bound_eq13 = 0.0;
    double bitflip_exact_eq15 = 0.0;
    double runtime_ms = 0.0;
    double leakage = 0.0;

    /// infidelity_sim ∈ [0, 1] and leakage < 1e-9.
    void validate() const;
    bool operator==(const SweepRecord&) const = default;
};

/// One grid point: the model's simulated infidelity plus every bound.
SweepRecord evaluate_point(const SweepConfig& config, int n_atoms, double nbar);

/// PULSESHARE_MAX_WORKERS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned default_worker_count();

/// One record per (N, n̄) pair in N-major, n̄-minor order of the config
/// lists, independent of the worker count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config, unsigned workers = default_worker_count());

}  // namespace pulseshare
