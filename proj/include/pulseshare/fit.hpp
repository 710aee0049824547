#pragma once

#include "pulseshare/sweep.hpp"

#include <span>
#include <string_view>

namespace pulseshare {

enum class FitAxis { n_atoms, nbar };

std::string_view to_string(FitAxis axis);
FitAxis parse_fit_axis(std::string_view text);

struct FitResult {
    double exponent = 0.0;
    double intercept = 0.0;  ///< ln of the prefactor
    double r_squared = 0.0;
    FitAxis axis = FitAxis::n_atoms;
};

/// Least-squares slope of ln(infidelity_sim) against ln(axis value). The
/// other axis must be the same in every record, the chosen axis needs at
/// least three distinct values, and every infidelity must be positive.
FitResult fit_exponent(std::span<const SweepRecord> records, FitAxis axis);

}  // namespace pulseshare
