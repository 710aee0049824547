#include "pulseshare/oracles.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace pulseshare::oracle {

namespace {

std::int64_t sum_limit(double nbar) {
    return static_cast<std::int64_t>(std::ceil(nbar + 40.0 * std::sqrt(nbar) + 60.0));
}

}  // namespace

double poisson_pmf(double nbar, std::int64_t n) {
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    const double k = static_cast<double>(n);
    return std::exp(-nbar + k * std::log(nbar) - std::lgamma(k + 1.0));
}

double poisson_tail_above(double nbar, std::int64_t cutoff) {
    double tail = 0.0;
    for (std::int64_t n = sum_limit(nbar) + cutoff; n > cutoff; --n) tail += poisson_pmf(nbar, n);
    return tail;
}

double n2sq_dense(int n, double nbar, std::int64_t cutoff) {
    const auto d = static_cast<Eigen::Index>(cutoff + 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::VectorXd v(d);
    for (Eigen::Index k = 0; k < d; ++k) v[k] = std::sqrt(poisson_pmf(nbar, k));
    const Eigen::MatrixXd create = a.transpose();
    for (int i = 0; i < n; ++i) v = create * v;
    return v.squaredNorm();
}

std::complex<double> poisson_char_direct(double nbar, double lambda) {
    std::complex<double> sum{};
    for (std::int64_t n = 0; n <= sum_limit(nbar); ++n)
        sum += poisson_pmf(nbar, n) * std::polar(1.0, lambda * (static_cast<double>(n) - nbar));
    return sum;
}

double encoded_infidelity_direct(int n_logical, double nbar) {
    double sum = 0.0;
    for (std::int64_t n = 0; n <= sum_limit(nbar); ++n) {
        const double s = std::sin(std::numbers::pi * n_logical * (static_cast<double>(n) - nbar) /
                                  (2.0 * nbar));
        sum += poisson_pmf(nbar, n) * s * s;
    }
    return sum;
}

}  // namespace pulseshare::oracle
