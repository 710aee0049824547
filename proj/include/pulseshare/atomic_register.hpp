#pragma once

// Atoms ⊗ field wavefunctions.
//
// Bitstring b indexes the atomic basis; bit i of b is atom i, and a bit
// value of 0 is the excited state |e⟩ (σ_z|e⟩ = +|e⟩). A JointState keeps
// one field vector per bitstring as a row of a dense 2ᴺ × (window) matrix.

#include "pulseshare/fock.hpp"

#include <array>
#include <cstdint>

namespace pulseshare {

inline constexpr int kDefaultMaxAtoms = 12;

using JointRows = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline int popcount(std::uint64_t b) { return __builtin_popcountll(b); }

class AtomicState {
public:
    /// Amplitudes must have length 2ᴺ and unit norm (1e-10).
    AtomicState(int n_atoms, AmplitudeVector amplitudes, int max_atoms = kDefaultMaxAtoms);

    static AtomicState basis(int n_atoms, std::uint64_t bitstring);

    int n_atoms() const { return n_atoms_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_atoms_; }
    const AmplitudeVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::uint64_t bitstring) const { return amplitudes_[bitstring]; }

private:
    int n_atoms_;
    AmplitudeVector amplitudes_;
};

/// (|0⟩⊗N + e^{iδ}|1⟩⊗N)/√2
AtomicState ghz_atomic(int n_atoms, double delta, int max_atoms = kDefaultMaxAtoms);

class JointState {
public:
    JointState(int n_atoms, std::int64_t floor, JointRows rows, double leakage = 0.0,
               int max_atoms = kDefaultMaxAtoms);

    int n_atoms() const { return n_atoms_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << n_atoms_; }
    std::int64_t floor() const { return floor_; }
    std::int64_t cutoff() const { return floor_ + rows_.cols() - 1; }

    FieldVector field(std::uint64_t bitstring) const;
    const JointRows& rows() const { return rows_; }

    double squared_norm() const { return rows_.squaredNorm(); }
    /// Cumulative squared norm lost across the field window's edges.
    double leakage() const { return leakage_; }

private:
    int n_atoms_;
    std::int64_t floor_;
    JointRows rows_;
    double leakage_;
};

/// f_b = ψ_b·Φ. The field must be normalized to 1e-10.
JointState embed(const AtomicState& atoms, const FieldVector& field);

/// What an OperatorGate2x2 entry does to a field vector before scaling.
enum class FieldAction { identity, lower, raise };

struct GateEntry {
    Complex coefficient{0.0, 0.0};
    FieldAction action = FieldAction::identity;
};

/// Single-atom gate whose entries are field operators. entries[r][c] maps
/// atomic state c to r (0 = excited, 1 = ground).
struct OperatorGate2x2 {
    std::array<std::array<GateEntry, 2>, 2> entries;

    static OperatorGate2x2 identity();
};

JointState apply_atom_gate(const JointState& state, int atom_index, const OperatorGate2x2& gate);

/// Σ_b conj(target_b)·f_b
FieldVector project_atomic(const JointState& state, const AtomicState& target);

/// Probability of finding the atoms in target: ‖project_atomic‖².
double fidelity_atomic(const JointState& state, const AtomicState& target);

/// |⟨target ⊗ field|Ψ⟩|². Diagnostic only; it also penalizes the field
/// having moved away from `field`.
double joint_fidelity(const JointState& state, const AtomicState& target, const FieldVector& field);

/// The bit-flip output (|0ᴺ⟩ a†ᴺ|Φ⟩/𝒩₂ + |1ᴺ⟩ aᴺ|Φ⟩/𝒩₁)/√2, built with the
/// ladder operators on Φ's window. Φ must be normalized.
JointState bitflip_entangled_state(int n_atoms, const FieldVector& field);

struct ConservedParts {
    double atomic = 0.0;   ///< ⟨½Σσ_z⟩
    double photons = 0.0;  ///< ⟨n̂⟩
};

ConservedParts conserved_L_parts(const JointState& state);

/// ⟨½Σσ_iz + n̂⟩
double conserved_L_expectation(const JointState& state);

}  // namespace pulseshare
