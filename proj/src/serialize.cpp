#include "pulseshare/serialize.hpp"

#include "pulseshare/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace pulseshare {

using nlohmann::json;

void to_json(json& j, const SweepRecord& r) {
    j = json{{"model", r.model},
             {"gate", r.gate},
             {"N", r.n_atoms},
             {"nbar", r.nbar},
             {"cutoff", r.cutoff},
             {"infidelity_sim", r.infidelity_sim},
             {"bound_eq8", r.bound_eq8},
             {"bound_eq12", r.bound_eq12},
             {"bound_eq13", r.bound_eq13},
             {"bitflip_exact_eq15", r.bitflip_exact_eq15},
             {"runtime_ms", r.runtime_ms},
             {"leakage", r.leakage}};
}

void from_json(const json& j, SweepRecord& r) {
    j.at("model").get_to(r.model);
    j.at("gate").get_to(r.gate);
    j.at("N").get_to(r.n_atoms);
    j.at("nbar").get_to(r.nbar);
    j.at("cutoff").get_to(r.cutoff);
    j.at("infidelity_sim").get_to(r.infidelity_sim);
    j.at("bound_eq8").get_to(r.bound_eq8);
    j.at("bound_eq12").get_to(r.bound_eq12);
    j.at("bound_eq13").get_to(r.bound_eq13);
    j.at("bitflip_exact_eq15").get_to(r.bitflip_exact_eq15);
    j.at("runtime_ms").get_to(r.runtime_ms);
    j.at("leakage").get_to(r.leakage);
}

void to_json(json& j, const BoundReport& r) {
    j = json{{"n_atoms", r.n_atoms},
             {"nbar", r.nbar},
             {"bound_general_pi2", r.bound_general_pi2},
             {"bound_phase_pi2", r.bound_phase_pi2},
             {"bound_phase_pi", r.bound_phase_pi},
             {"bitflip_exact", r.bitflip_exact},
             {"n2sq", r.n2sq},
             {"log_n2sq", r.log_n2sq}};
}

void to_json(json& j, const FitResult& f) {
    j = json{{"exponent", f.exponent},
             {"intercept", f.intercept},
             {"r_squared", f.r_squared},
             {"axis", std::string(to_string(f.axis))}};
}

std::string format_real(double value) {
    std::array<char, 40> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific, 16);
    if (ec != std::errc{}) throw std::runtime_error("cannot format real value");
    return std::string(buf.data(), ptr);
}

std::string records_to_csv(std::span<const SweepRecord> records) {
    std::string out(kRecordCsvHeader);
    out += '\n';
    for (const SweepRecord& r : records) {
        out += r.model + ',' + r.gate + ',' + std::to_string(r.n_atoms) + ',' + format_real(r.nbar) +
               ',' + std::to_string(r.cutoff) + ',' + format_real(r.infidelity_sim) + ',' +
               format_real(r.bound_eq8) + ',' + format_real(r.bound_eq12) + ',' +
               format_real(r.bound_eq13) + ',' + format_real(r.bitflip_exact_eq15) + ',' +
               format_real(r.runtime_ms) + ',' + format_real(r.leakage) + '\n';
    }
    return out;
}

std::string records_to_json(std::span<const SweepRecord> records) {
    json arr = json::array();
    for (const SweepRecord& r : records) arr.push_back(r);
    return arr.dump(2) + '\n';
}

std::vector<SweepRecord> records_from_json(std::string_view text) {
    return json::parse(text).get<std::vector<SweepRecord>>();
}

std::string fit_to_csv(const FitResult& fit) {
    return "exponent,intercept,r_squared,axis\n" + format_real(fit.exponent) + ',' +
           format_real(fit.intercept) + ',' + format_real(fit.r_squared) + ',' +
           std::string(to_string(fit.axis)) + '\n';
}

std::string format_records(std::span<const SweepRecord> records, OutputFormat format) {
    for (const SweepRecord& r : records) r.validate();
    return format == OutputFormat::csv ? records_to_csv(records) : records_to_json(records);
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void emit(std::span<const SweepRecord> records, OutputFormat format, const std::filesystem::path& path) {
    write_text(path, format_records(records, format));
}

void emit(const BoundReport& report, const std::filesystem::path& path) {
    write_text(path, json(report).dump(2) + '\n');
}

void emit(const FitResult& fit, OutputFormat format, const std::filesystem::path& path) {
    write_text(path, format == OutputFormat::csv ? fit_to_csv(fit) : json(fit).dump(2) + '\n');
}

}  // namespace pulseshare
