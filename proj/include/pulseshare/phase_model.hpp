#pragma once

// Single-mode phase-operator model: each atom sees the 2×2 operator-valued
// rotation
//
//     [ cos θ            −e^{−iφ̂} sin θ ]
//     [ e^{+iφ̂} sin θ     cos θ          ]      θ = ΩT
//
// with e^{±iφ̂} realized as one-sided photon-number shifts. θ = π/4 is the
// π/2 pulse and θ = π/2 the π pulse; at φ̂ = 0 the gate reduces to the
// ideal collective rotation.

#include "pulseshare/atomic_register.hpp"

#include <functional>
#include <optional>
#include <string_view>

namespace pulseshare {

enum class GateKind { pi, pi_half };

std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view text);

struct PulseSpec {
    double pulse_area = 0.0;  ///< ΩT in radians
    GateKind gate_kind = GateKind::pi;

    static PulseSpec for_gate(GateKind kind);
};

/// Rotation angle of the named gate: π/2 for pi, π/4 for pi_half.
double pulse_area(GateKind kind);

OperatorGate2x2 phase_gate(double pulse_area);
/// The same rotation with e^{±iφ̂} replaced by the identity (φ̂ → 0).
OperatorGate2x2 classical_gate(double pulse_area);

/// Applies phase_gate(spec.pulse_area) to every atom, atom 0 first.
JointState phase_pulse(const JointState& state, const PulseSpec& spec);
JointState classical_pulse(const JointState& state, const PulseSpec& spec);

/// The φ̂ = 0 limit of phase_pulse acting on the atoms alone.
AtomicState ideal_gate(const AtomicState& atoms, GateKind kind);

/// Real rotation [[cos θ, −sin θ], [sin θ, cos θ]] applied to every atom.
AtomicState rotate_all(const AtomicState& atoms, double theta);

/// Thresholds for phase-model simulations.
struct PhaseGuard {
    double boundary_weight = 1e-12;  ///< initial |c_0|² and window-edge weight
    double max_leakage = 1e-9;       ///< cumulative norm lost at the window edges
};

/// Coherent field for a simulation: default window unless cutoff given
/// (the window floor always follows the default rule).
FieldVector simulation_field(double nbar, std::optional<std::int64_t> cutoff);

/// Throws NumericalGuardError if the field carries vacuum or edge weight.
void check_boundary_weight(const FieldVector& field, const PhaseGuard& guard = {});

struct SimulationResult {
    double infidelity = 0.0;
    std::int64_t floor = 0;
    std::int64_t cutoff = 0;
    double leakage = 0.0;
};

/// GHZ(N, δ) ⊗ |α⟩ through the π pulse, scored against ideal_gate.
SimulationResult simulate_phase_pi(int n_atoms, double nbar, double delta,
                                   std::optional<std::int64_t> cutoff = {},
                                   const PhaseGuard& guard = {});
/// GHZ(N, π/2) ⊗ |α⟩ through the π/2 pulse, scored against ideal_gate.
SimulationResult simulate_phase_pi2(int n_atoms, double nbar,
                                    std::optional<std::int64_t> cutoff = {},
                                    const PhaseGuard& guard = {});

double pi_infidelity_sim(int n_atoms, double nbar, double delta,
                         std::optional<std::int64_t> cutoff = {});
double pi2_infidelity_sim(int n_atoms, double nbar, std::optional<std::int64_t> cutoff = {});

using JointEvolution = std::function<JointState(const JointState&)>;

struct DSquaredReport {
    double d_squared = 0.0;
    /// Σ over even-parity ψ' of ‖⟨ψ'|U(|0ᴺ⟩ − (−1)ᴺ|1ᴺ⟩)|Φ⟩‖²
    double even_sum = 0.0;
    /// Σ over odd-parity ψ' of ‖⟨ψ'|U(|0ᴺ⟩ + (−1)ᴺ|1ᴺ⟩)|Φ⟩‖²
    double odd_sum = 0.0;
    /// π/2-gate infidelities for the normalized inputs of the two sums. The
    /// ideal gate maps each input into the opposite parity, so each sum is
    /// at most twice its infidelity.
    double even_input_infidelity = 0.0;
    double odd_input_infidelity = 0.0;
    /// N² / (2N(N+1) + 4σ(n)²) with σ(n)² measured on the input field.
    double lower_bound = 0.0;
};

/// ⟨D²⟩ = ½‖(Πσ_z U − (−1)ᴺ U Πσ_x)(|0ᴺ⟩ + i|1ᴺ⟩)|Φ⟩‖² for A = Πσ_z and the
/// π/2 gate, together with its parity decomposition.
DSquaredReport d_squared_pi2(int n_atoms, const FieldVector& field, const JointEvolution& evolve);
DSquaredReport d_squared_pi2(int n_atoms, double nbar, std::optional<std::int64_t> cutoff = {});

}  // namespace pulseshare
