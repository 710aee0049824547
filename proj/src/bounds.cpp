#include "pulseshare/bounds.hpp"

#include "pulseshare/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pulseshare {

namespace {

void require_atoms(int n_atoms) {
    if (n_atoms < 1) throw ConfigError("atom count must be >= 1");
}

void require_positive(double nbar) {
    if (!(nbar > 0.0)) throw ConfigError("nbar must be positive");
}

// log Σ_k exp(x_k) with a compensated inner sum
double log_sum_exp(const std::vector<double>& xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    const double top = *std::max_element(xs.begin(), xs.end());
    double sum = 0.0, carry = 0.0;
    for (double x : xs) {
        const double term = std::exp(x - top);
        const double t = sum + term;
        carry += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return top + std::log(sum + carry);
}

// log T_k for n2sq/n̄ᴺ = Σ_k T_k, T_k = (N!/(N−k)!)² / (k! n̄ᵏ)
std::vector<double> log_ratio_terms(int n_atoms, double nbar) {
    std::vector<double> terms{0.0};
    const double log_nbar = std::log(nbar);
    double t = 0.0;
    for (int k = 0; k < n_atoms; ++k) {
        t += 2.0 * std::log(static_cast<double>(n_atoms - k)) - std::log(k + 1.0) - log_nbar;
        terms.push_back(t);
    }
    return terms;
}

// log(n2sq/n̄ᴺ) = log1p(Σ_{k≥1} T_k), accurate when the tail is tiny
double log_ratio(int n_atoms, double nbar) {
    std::vector<double> terms = log_ratio_terms(n_atoms, nbar);
    terms.erase(terms.begin());
    if (terms.empty()) return 0.0;
    const double log_tail = log_sum_exp(terms);
    return log_tail < 0.0 ? std::log1p(std::exp(log_tail))
                          : log_tail + std::log1p(std::exp(-log_tail));
}

}  // namespace

double bound_general_pi2(int n_atoms, double var_n) { return 0.25 * bound_d_squared(n_atoms, var_n); }

double bound_d_squared(int n_atoms, double var_n) {
    require_atoms(n_atoms);
    if (!(var_n >= 0.0)) throw ConfigError("number variance must be non-negative");
    const double n = n_atoms;
    return n * n / (2.0 * n * (n + 1.0) + 4.0 * var_n);
}

double bound_phase_pi2(int n_atoms, double nbar) {
    require_atoms(n_atoms);
    require_positive(nbar);
    const double n = n_atoms;
    return n * (n + 1.0) / (16.0 * nbar);
}

double bound_phase_pi(int n_atoms, double nbar) {
    require_atoms(n_atoms);
    require_positive(nbar);
    const double n = n_atoms;
    return n * n / (4.0 * nbar);
}

double log_n2sq_exact(int n_atoms, double nbar) {
    if (n_atoms < 0) throw ConfigError("ladder power must be non-negative");
    require_positive(nbar);
    return n_atoms * std::log(nbar) + log_ratio(n_atoms, nbar);
}

double n2sq_exact(int n_atoms, double nbar) { return std::exp(log_n2sq_exact(n_atoms, nbar)); }

double n2sq_ratio(int n_atoms, double nbar) {
    if (n_atoms < 0) throw ConfigError("ladder power must be non-negative");
    require_positive(nbar);
    return std::exp(log_ratio(n_atoms, nbar));
}

double bitflip_infidelity_exact(int n_atoms, double nbar) {
    require_atoms(n_atoms);
    require_positive(nbar);
    // ½ − n̄ᴺ/(2 n̄^{N/2} √n2sq) = ½(1 − (n2sq/n̄ᴺ)^{−½})
    return -0.5 * std::expm1(-0.5 * log_ratio(n_atoms, nbar));
}

BoundReport bound_report(int n_atoms, double nbar) {
    BoundReport r;
    r.n_atoms = n_atoms;
    r.nbar = nbar;
    r.bound_general_pi2 = bound_general_pi2(n_atoms, nbar);
    r.bound_phase_pi2 = bound_phase_pi2(n_atoms, nbar);
    r.bound_phase_pi = bound_phase_pi(n_atoms, nbar);
    r.bitflip_exact = bitflip_infidelity_exact(n_atoms, nbar);
    r.log_n2sq = log_n2sq_exact(n_atoms, nbar);
    r.n2sq = std::exp(r.log_n2sq);
    return r;
}

void FreeSpaceSpec::validate() const {
    require_atoms(n_atoms);
    require_positive(nbar);
    if (!(emission_prob >= 0.0 && emission_prob <= 1.0))
        throw ConfigError("emission probability must lie in [0, 1]");
    if (!(mode_fraction >= 0.0 && mode_fraction <= 1.0))
        throw ConfigError("mode fraction must lie in [0, 1]");
    if (emission_prob * n_atoms > 0.1)
        throw ConfigError("free-space model requires p*N <= 0.1");
}

double free_space_failure_full(const FreeSpaceSpec& spec) {
    spec.validate();
    const double lost = spec.emission_prob * (1.0 - spec.mode_fraction);
    return spec.n_atoms * lost +
           std::pow(1.0 - lost, spec.n_atoms) * bound_phase_pi(spec.n_atoms, spec.nbar);
}

double free_space_failure(const FreeSpaceSpec& spec) {
    spec.validate();
    const double lost = spec.emission_prob * (1.0 - spec.mode_fraction);
    return spec.n_atoms * lost + bound_phase_pi(spec.n_atoms, spec.nbar);
}

double free_space_failure_resonant(int n_atoms, double nbar, double area_ratio) {
    require_atoms(n_atoms);
    require_positive(nbar);
    if (!(area_ratio >= 1.0)) throw ConfigError("area ratio must be >= 1");
    return n_atoms / (4.0 * nbar) * (area_ratio + n_atoms);
}

double resonant_emission_prob(double nbar, double area_ratio) {
    require_positive(nbar);
    return area_ratio / 4.0 / nbar;
}

double min_nbar_free_space(int n_atoms, double area_ratio, double epsilon) {
    require_atoms(n_atoms);
    if (!(epsilon > 0.0)) throw ConfigError("error budget must be positive");
    return (area_ratio + n_atoms) / (4.0 * epsilon);
}

double min_nbar_single_mode(int n_atoms, double epsilon) {
    require_atoms(n_atoms);
    if (!(epsilon > 0.0)) throw ConfigError("error budget must be positive");
    return n_atoms / (4.0 * epsilon);
}

}  // namespace pulseshare
