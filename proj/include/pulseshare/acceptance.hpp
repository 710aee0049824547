#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pulseshare {

/// Every acceptance threshold in one place.
struct AcceptanceTolerances {
    // 1. π-pulse scaling
    double pi_ratio_lo = 0.95, pi_ratio_hi = 1.05;
    double pi_max_n2_over_nbar = 4e-3;
    double pi_runtime_s = 10.0;
    // 2. π/2-pulse scaling
    double pi2_ratio_lo = 0.9, pi2_ratio_hi = 1.1;
    // 3. exponent fits
    double exponent_tol = 0.05;
    // 4. exact sum
    double n2sq_rel = 1e-10;
    double n2sq_asym_coeff = 3.0;
    double n2sq_asym_max_x = 0.1;
    // 5. bit-flip entanglement
    double bitflip_abs = 1e-9;
    double bitflip_leading_rel = 0.03;
    // 6. encoded gate
    double encoded_abs = 1e-10;
    double encoded_ratio_lo = 0.98, encoded_ratio_hi = 1.02;
    double encoded_max_x = 0.01;
    // 7. ⟨D²⟩
    double d2_resum_abs = 1e-10;
    // 8. conservation law
    double l_abs = 1e-10;
    double unitarity = 1e-12;
    // 10. free space
    double free_space_rel = 0.01;
    double free_space_min_area = 100.0;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct AcceptanceOptions {
    unsigned workers = 1;
    /// Where criterion 11 writes its sweep CSV (skipped when empty).
    std::optional<std::filesystem::path> sweep_output;
    AcceptanceTolerances tolerances{};
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "[PASS] 3 exponent fits: ..." — deterministic, no timings.
std::string format_result_line(const CriterionResult& r);

}  // namespace pulseshare
