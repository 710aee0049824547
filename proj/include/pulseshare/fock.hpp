#pragma once

// Truncated photon-number numerics for a single field mode.
//
// A FieldVector stores amplitudes for photon numbers floor..cutoff. Most
// vectors start at floor = 0; the simulations use a window around a
// coherent state's mean so that n̄ = 10^6 fields stay small. Amplitudes
// outside the window are zero by definition, and anything an operator
// pushes across either edge is reported as leakage.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace pulseshare {

using Complex = std::complex<double>;
using AmplitudeVector = Eigen::VectorXcd;

class FieldVector {
public:
    /// Zero vector over photon numbers floor..cutoff.
    FieldVector(std::int64_t floor, std::int64_t cutoff);
    FieldVector(std::int64_t floor, AmplitudeVector amplitudes);

    static FieldVector zero(std::int64_t cutoff) { return FieldVector(0, cutoff); }
    /// Number state |n⟩ over 0..cutoff.
    static FieldVector number_state(std::int64_t n, std::int64_t cutoff);

    std::int64_t floor() const { return floor_; }
    std::int64_t cutoff() const { return floor_ + amplitudes_.size() - 1; }
    Eigen::Index size() const { return amplitudes_.size(); }

    /// Amplitude of |n⟩; zero outside the stored window.
    Complex operator[](std::int64_t n) const;
    const AmplitudeVector& amplitudes() const { return amplitudes_; }

    double squared_norm() const { return amplitudes_.squaredNorm(); }
    bool same_basis(const FieldVector& other) const {
        return floor_ == other.floor_ && size() == other.size();
    }

    FieldVector& operator+=(const FieldVector& rhs);
    FieldVector& operator*=(Complex s);

private:
    std::int64_t floor_;
    AmplitudeVector amplitudes_;
};

FieldVector operator+(FieldVector lhs, const FieldVector& rhs);
FieldVector operator-(FieldVector lhs, const FieldVector& rhs);
FieldVector operator*(Complex s, FieldVector v);

/// Coherent-state parameters; nbar is always |alpha|².
struct CoherentSpec {
    Complex alpha{0.0, 0.0};

    static CoherentSpec from_nbar(double nbar);
    double nbar() const { return std::norm(alpha); }
};

/// ⌈n̄ + 12√n̄ + 20⌉
std::int64_t default_cutoff(double nbar);
/// max(0, ⌊n̄ − 12√n̄ − 20⌋); the mirror image of default_cutoff.
std::int64_t default_floor(double nbar);

/// c_n = e^{-|α|²/2} α^n/√(n!) on floor..cutoff, evaluated in log space.
/// Throws CutoffTooSmall when the mass outside the window exceeds 1e-12.
/// The returned vector's squared norm is 1 minus the truncation mass.
FieldVector coherent_state(const CoherentSpec& spec, std::int64_t cutoff, std::int64_t floor = 0);
/// Coherent state over [default_floor, default_cutoff].
FieldVector coherent_window(const CoherentSpec& spec);

/// e^{+iφ̂}: |n⟩ → |n−1⟩ (lower); e^{−iφ̂}: |n⟩ → |n+1⟩ (raise).
enum class PhaseShift { lower = +1, raise = -1 };

struct ShiftResult {
    FieldVector field;
    /// Squared norm dropped at the window edges. For apply_ladder this is
    /// relative to the norm of the result.
    double leaked = 0.0;
};

/// One-sided shift with annihilating boundaries (|floor⟩ under lower,
/// |cutoff⟩ under raise). Never throws; leakage is reported.
ShiftResult phase_shift(const FieldVector& v, PhaseShift direction);

enum class Ladder { create, annihilate };

/// Unnormalized aᵏ|v⟩ or (a†)ᵏ|v⟩. Throws CutoffTooSmall when the relative
/// mass pushed outside the window exceeds leak_tolerance.
ShiftResult apply_ladder(const FieldVector& v, Ladder kind, int times,
                         double leak_tolerance = 1e-12);

/// ⟨u|v⟩, conjugate-linear in u. Bases must match.
Complex inner(const FieldVector& u, const FieldVector& v);

struct NumberMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Mean and variance of n̂; v must be normalized to 1e-10.
NumberMoments number_moments(const FieldVector& v);

/// ⟨e^{iλ(n̂−n̄)}⟩ in a coherent state: exp(n̄(e^{iλ} − 1 − iλ)).
Complex displaced_char(double nbar, double lambda);

}  // namespace pulseshare
