#pragma once

// CSV and JSON output for sweep records, bound reports and fits.
//
// Record CSV columns (exact header):
//   model,gate,N,nbar,cutoff,infidelity_sim,bound_eq8,bound_eq12,bound_eq13,
//   bitflip_exact_eq15,runtime_ms,leakage
// Reals are written in scientific notation with 17 significant digits, so
// both formats round-trip every double exactly.

#include "pulseshare/bounds.hpp"
#include "pulseshare/fit.hpp"
#include "pulseshare/sweep.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pulseshare {

inline constexpr std::string_view kRecordCsvHeader =
    "model,gate,N,nbar,cutoff,infidelity_sim,bound_eq8,bound_eq12,bound_eq13,"
    "bitflip_exact_eq15,runtime_ms,leakage";

void to_json(nlohmann::json& j, const SweepRecord& r);
void from_json(const nlohmann::json& j, SweepRecord& r);
void to_json(nlohmann::json& j, const BoundReport& r);
void to_json(nlohmann::json& j, const FitResult& f);

std::string format_real(double value);

std::string records_to_csv(std::span<const SweepRecord> records);
std::string records_to_json(std::span<const SweepRecord> records);
std::vector<SweepRecord> records_from_json(std::string_view text);

std::string fit_to_csv(const FitResult& fit);

/// Records in the requested format. Validates every record before writing.
std::string format_records(std::span<const SweepRecord> records, OutputFormat format);

/// Writes text to path; throws std::runtime_error on I/O failure.
void write_text(const std::filesystem::path& path, std::string_view text);

void emit(std::span<const SweepRecord> records, OutputFormat format, const std::filesystem::path& path);
void emit(const BoundReport& report, const std::filesystem::path& path);
void emit(const FitResult& fit, OutputFormat format, const std::filesystem::path& path);

}  // namespace pulseshare
