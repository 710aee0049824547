#include "pulseshare/fit.hpp"

#include "pulseshare/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace pulseshare {

std::string_view to_string(FitAxis axis) { return axis == FitAxis::n_atoms ? "N" : "nbar"; }

FitAxis parse_fit_axis(std::string_view text) {
    if (text == "N") return FitAxis::n_atoms;
    if (text == "nbar") return FitAxis::nbar;
    throw ConfigError("unknown fit axis '" + std::string(text) + "' (expected N or nbar)");
}

FitResult fit_exponent(std::span<const SweepRecord> records, FitAxis axis) {
    std::set<double> distinct;
    std::set<double> held;
    const auto m = static_cast<Eigen::Index>(records.size());
    Eigen::VectorXd x(m), y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const SweepRecord& r = records[static_cast<std::size_t>(i)];
        if (!(r.infidelity_sim > 0.0))
            throw ConfigError("fit_exponent needs strictly positive infidelities");
        const double on_axis = axis == FitAxis::n_atoms ? r.n_atoms : r.nbar;
        held.insert(axis == FitAxis::n_atoms ? r.nbar : r.n_atoms);
        distinct.insert(on_axis);
        x[i] = std::log(on_axis);
        y[i] = std::log(r.infidelity_sim);
    }
    if (distinct.size() < 3)
        throw ConfigError("fit_exponent needs at least 3 distinct values on the fit axis");
    if (held.size() != 1) throw ConfigError("fit_exponent needs the other axis held fixed");

    const double x_mean = x.mean();
    const double y_mean = y.mean();
    const Eigen::VectorXd dx = x.array() - x_mean;
    const Eigen::VectorXd dy = y.array() - y_mean;
    FitResult fit;
    fit.axis = axis;
    fit.exponent = dx.dot(dy) / dx.squaredNorm();
    fit.intercept = y_mean - fit.exponent * x_mean;
    const double ss_tot = dy.squaredNorm();
    const double ss_res = (dy - fit.exponent * dx).squaredNorm();
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace pulseshare
