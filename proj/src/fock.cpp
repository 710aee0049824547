#include "pulseshare/fock.hpp"

#include "pulseshare/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pulseshare {

FieldVector::FieldVector(std::int64_t floor, std::int64_t cutoff) : floor_(floor) {
    if (floor < 0 || cutoff < floor || cutoff < 1)
        throw ConfigError("field window must satisfy 0 <= floor <= cutoff, cutoff >= 1");
    amplitudes_ = AmplitudeVector::Zero(cutoff - floor + 1);
}

FieldVector::FieldVector(std::int64_t floor, AmplitudeVector amplitudes)
    : floor_(floor), amplitudes_(std::move(amplitudes)) {
    if (floor < 0 || amplitudes_.size() == 0 || floor_ + amplitudes_.size() - 1 < 1)
        throw ConfigError("field window must satisfy 0 <= floor <= cutoff, cutoff >= 1");
}

FieldVector FieldVector::number_state(std::int64_t n, std::int64_t cutoff) {
    if (n < 0 || n > cutoff) throw ConfigError("number state outside 0..cutoff");
    FieldVector v(0, cutoff);
    v.amplitudes_[n] = 1.0;
    return v;
}

Complex FieldVector::operator[](std::int64_t n) const {
    if (n < floor_ || n > cutoff()) return {};
    return amplitudes_[n - floor_];
}

FieldVector& FieldVector::operator+=(const FieldVector& rhs) {
    if (!same_basis(rhs)) throw ConfigError("field vectors have different photon-number windows");
    amplitudes_ += rhs.amplitudes_;
    return *this;
}

FieldVector& FieldVector::operator*=(Complex s) {
    amplitudes_ *= s;
    return *this;
}

FieldVector operator+(FieldVector lhs, const FieldVector& rhs) { return lhs += rhs; }

FieldVector operator-(FieldVector lhs, const FieldVector& rhs) {
    return lhs += Complex(-1.0) * rhs;
}

FieldVector operator*(Complex s, FieldVector v) { return v *= s; }

CoherentSpec CoherentSpec::from_nbar(double nbar) {
    if (!(nbar >= 0.0)) throw ConfigError("nbar must be non-negative");
    return CoherentSpec{Complex(std::sqrt(nbar), 0.0)};
}

std::int64_t default_cutoff(double nbar) {
    return static_cast<std::int64_t>(std::ceil(nbar + 12.0 * std::sqrt(nbar) + 20.0));
}

std::int64_t default_floor(double nbar) {
    const double lo = std::floor(nbar - 12.0 * std::sqrt(nbar) - 20.0);
    return lo > 0.0 ? static_cast<std::int64_t>(lo) : 0;
}

namespace {

// log Poisson(n̄)(m) without the cancellation between m log n̄ and lgamma(m + 1)
double log_poisson_at(double nbar, std::int64_t m) {
    const auto x = static_cast<double>(m);
    if (m < 100) return -nbar + x * std::log(nbar) - std::lgamma(x + 1.0);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double stirling_tail = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
    return (x - nbar) - x * std::log1p((x - nbar) / nbar) -
           0.5 * std::log(2.0 * std::numbers::pi * x) - stirling_tail;
}

}  // namespace

FieldVector coherent_state(const CoherentSpec& spec, std::int64_t cutoff, std::int64_t floor) {
    FieldVector out(floor, cutoff);
    AmplitudeVector amps = out.amplitudes();
    const double nbar = spec.nbar();
    if (nbar == 0.0) {
        if (floor == 0) amps[0] = 1.0;
    } else {
        const double arg = std::arg(spec.alpha);
        const std::int64_t mode = std::clamp<std::int64_t>(static_cast<std::int64_t>(nbar), floor, cutoff);
        const double log_mode = log_poisson_at(nbar, mode);
        // ½ log(n̄/k) stepping away from the mode keeps the error per step at one ulp
        const auto half_log_ratio = [nbar](std::int64_t k) {
            return -0.5 * std::log1p((static_cast<double>(k) - nbar) / nbar);
        };
        const auto set = [&](std::int64_t n, double log_c) {
            amps[n - floor] = std::polar(std::exp(log_c), static_cast<double>(n) * arg);
        };
        double log_c = 0.5 * log_mode;
        set(mode, log_c);
        for (std::int64_t n = mode + 1; n <= cutoff; ++n) set(n, log_c += half_log_ratio(n));
        log_c = 0.5 * log_mode;
        for (std::int64_t n = mode - 1; n >= floor; --n) set(n, log_c -= half_log_ratio(n + 1));
    }
    const double mass = 1.0 - amps.squaredNorm();
    if (mass > 1e-12)
        throw CutoffTooSmall("coherent state truncation mass " + std::to_string(mass) +
                             " exceeds 1e-12 for window [" + std::to_string(floor) + ", " +
                             std::to_string(cutoff) + "]");
    return FieldVector(floor, std::move(amps));
}

FieldVector coherent_window(const CoherentSpec& spec) {
    return coherent_state(spec, default_cutoff(spec.nbar()), default_floor(spec.nbar()));
}

ShiftResult phase_shift(const FieldVector& v, PhaseShift direction) {
    const auto& in = v.amplitudes();
    const Eigen::Index d = in.size();
    AmplitudeVector out = AmplitudeVector::Zero(d);
    double leaked = 0.0;
    if (direction == PhaseShift::lower) {
        out.head(d - 1) = in.tail(d - 1);
        leaked = std::norm(in[0]);
    } else {
        out.tail(d - 1) = in.head(d - 1);
        leaked = std::norm(in[d - 1]);
    }
    return {FieldVector(v.floor(), std::move(out)), leaked};
}

ShiftResult apply_ladder(const FieldVector& v, Ladder kind, int times, double leak_tolerance) {
    if (times < 0) throw ConfigError("ladder power must be non-negative");
    AmplitudeVector cur = v.amplitudes();
    const Eigen::Index d = cur.size();
    const auto floor = v.floor();
    double leaked = 0.0;
    for (int step = 0; step < times; ++step) {
        AmplitudeVector next = AmplitudeVector::Zero(d);
        double lost = 0.0;
        if (kind == Ladder::annihilate) {
            // a|n⟩ = √n|n−1⟩
            for (Eigen::Index k = 0; k + 1 < d; ++k)
                next[k] = std::sqrt(static_cast<double>(floor + k + 1)) * cur[k + 1];
            lost = static_cast<double>(floor) * std::norm(cur[0]);
        } else {
            // a†|n⟩ = √(n+1)|n+1⟩
            for (Eigen::Index k = 1; k < d; ++k)
                next[k] = std::sqrt(static_cast<double>(floor + k)) * cur[k - 1];
            lost = static_cast<double>(floor + d) * std::norm(cur[d - 1]);
        }
        const double kept = next.squaredNorm();
        if (lost > 0.0) leaked += lost / (kept + lost);
        cur = std::move(next);
    }
    if (leaked > leak_tolerance)
        throw CutoffTooSmall("ladder operator leakage " + std::to_string(leaked) +
                             " exceeds tolerance");
    return {FieldVector(floor, std::move(cur)), leaked};
}

Complex inner(const FieldVector& u, const FieldVector& v) {
    if (!u.same_basis(v)) throw ConfigError("inner product of fields with different windows");
    return u.amplitudes().dot(v.amplitudes());
}

NumberMoments number_moments(const FieldVector& v) {
    const double norm2 = v.squared_norm();
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw ConfigError("number_moments requires a normalized field (norm² = " +
                          std::to_string(norm2) + ")");
    const auto& amps = v.amplitudes();
    double mean = 0.0;
    for (Eigen::Index k = 0; k < amps.size(); ++k)
        mean += static_cast<double>(v.floor() + k) * std::norm(amps[k]);
    double variance = 0.0;
    for (Eigen::Index k = 0; k < amps.size(); ++k) {
        const double dn = static_cast<double>(v.floor() + k) - mean;
        variance += dn * dn * std::norm(amps[k]);
    }
    return {mean, variance};
}

Complex displaced_char(double nbar, double lambda) {
    // cos λ − 1 = −2 sin²(λ/2) and a series for sin λ − λ avoid cancellation
    // at the small λ the encoded-gate model uses.
    const double half_sin = std::sin(0.5 * lambda);
    const double re = -2.0 * half_sin * half_sin;
    const double l2 = lambda * lambda;
    const double im = std::abs(lambda) < 1e-2
                          ? -lambda * l2 / 6.0 * (1.0 - l2 / 20.0 * (1.0 - l2 / 42.0))
                          : std::sin(lambda) - lambda;
    return std::exp(nbar * Complex(re, im));
}

}  // namespace pulseshare
