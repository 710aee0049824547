#include "pulseshare/phase_model.hpp"

#include "pulseshare/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pulseshare {

std::string_view to_string(GateKind kind) { return kind == GateKind::pi ? "pi" : "pi_half"; }

GateKind parse_gate_kind(std::string_view text) {
    if (text == "pi") return GateKind::pi;
    if (text == "pi_half") return GateKind::pi_half;
    throw ConfigError("unknown gate '" + std::string(text) + "' (expected pi or pi_half)");
}

double pulse_area(GateKind kind) {
    return kind == GateKind::pi ? std::numbers::pi / 2.0 : std::numbers::pi / 4.0;
}

PulseSpec PulseSpec::for_gate(GateKind kind) { return PulseSpec{pulseshare::pulse_area(kind), kind}; }

OperatorGate2x2 phase_gate(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    OperatorGate2x2 g;
    g.entries[0][0] = {c, FieldAction::identity};
    g.entries[0][1] = {-s, FieldAction::raise};
    g.entries[1][0] = {s, FieldAction::lower};
    g.entries[1][1] = {c, FieldAction::identity};
    return g;
}

OperatorGate2x2 classical_gate(double theta) {
    OperatorGate2x2 g = phase_gate(theta);
    for (auto& row : g.entries)
        for (auto& e : row) e.action = FieldAction::identity;
    return g;
}

namespace {

JointState apply_to_all(JointState state, const OperatorGate2x2& gate) {
    for (int i = 0; i < state.n_atoms(); ++i) state = apply_atom_gate(state, i, gate);
    return state;
}

JointState with_parity_signs(const JointState& state) {
    JointRows rows = state.rows();
    for (Eigen::Index b = 0; b < rows.rows(); ++b)
        if (popcount(static_cast<std::uint64_t>(b)) % 2 == 1) rows.row(b) *= -1.0;
    return JointState(state.n_atoms(), state.floor(), std::move(rows), state.leakage());
}

AtomicState cat_state(int n_atoms, Complex zeros, Complex ones) {
    AmplitudeVector amps = AmplitudeVector::Zero(Eigen::Index{1} << n_atoms);
    amps[0] = zeros;
    amps[amps.size() - 1] = ones;
    return AtomicState(n_atoms, std::move(amps));
}

void check_leakage(const JointState& state, const PhaseGuard& guard) {
    if (state.leakage() > guard.max_leakage)
        throw NumericalGuardError("phase-model leakage " + std::to_string(state.leakage()) +
                                  " exceeds " + std::to_string(guard.max_leakage));
}

SimulationResult score(const JointState& out, const AtomicState& target, const PhaseGuard& guard) {
    check_leakage(out, guard);
    const double f = fidelity_atomic(out, target);
    return {std::max(0.0, 1.0 - f), out.floor(), out.cutoff(), out.leakage()};
}

}  // namespace

JointState phase_pulse(const JointState& state, const PulseSpec& spec) {
    return apply_to_all(state, phase_gate(spec.pulse_area));
}

JointState classical_pulse(const JointState& state, const PulseSpec& spec) {
    return apply_to_all(state, classical_gate(spec.pulse_area));
}

AtomicState rotate_all(const AtomicState& atoms, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    AmplitudeVector amps = atoms.amplitudes();
    for (int i = 0; i < atoms.n_atoms(); ++i) {
        const std::uint64_t mask = std::uint64_t{1} << i;
        for (std::uint64_t b = 0; b < atoms.dimension(); ++b) {
            if (b & mask) continue;
            const auto i0 = static_cast<Eigen::Index>(b);
            const auto i1 = static_cast<Eigen::Index>(b | mask);
            const Complex a0 = amps[i0];
            const Complex a1 = amps[i1];
            amps[i0] = c * a0 - s * a1;
            amps[i1] = s * a0 + c * a1;
        }
    }
    return AtomicState(atoms.n_atoms(), std::move(amps));
}

AtomicState ideal_gate(const AtomicState& atoms, GateKind kind) {
    return rotate_all(atoms, pulse_area(kind));
}

FieldVector simulation_field(double nbar, std::optional<std::int64_t> cutoff) {
    if (!(nbar > 0.0)) throw ConfigError("nbar must be positive");
    const auto spec = CoherentSpec::from_nbar(nbar);
    if (!cutoff) return coherent_window(spec);
    return coherent_state(spec, *cutoff, std::min(default_floor(nbar), *cutoff - 1));
}

void check_boundary_weight(const FieldVector& field, const PhaseGuard& guard) {
    const double vacuum = std::norm(field[0]);
    const double low_edge = std::norm(field.amplitudes()[0]);
    const double high_edge = std::norm(field.amplitudes()[field.size() - 1]);
    const double worst = std::max({vacuum, low_edge, high_edge});
    if (worst >= guard.boundary_weight)
        throw NumericalGuardError("field boundary weight " + std::to_string(worst) +
                                  " violates the vacuum-weight guard");
}

SimulationResult simulate_phase_pi(int n_atoms, double nbar, double delta,
                                   std::optional<std::int64_t> cutoff, const PhaseGuard& guard) {
    const FieldVector field = simulation_field(nbar, cutoff);
    check_boundary_weight(field, guard);
    const AtomicState input = ghz_atomic(n_atoms, delta);
    const JointState out = phase_pulse(embed(input, field), PulseSpec::for_gate(GateKind::pi));
    return score(out, ideal_gate(input, GateKind::pi), guard);
}

SimulationResult simulate_phase_pi2(int n_atoms, double nbar, std::optional<std::int64_t> cutoff,
                                    const PhaseGuard& guard) {
    const FieldVector field = simulation_field(nbar, cutoff);
    check_boundary_weight(field, guard);
    const AtomicState input = ghz_atomic(n_atoms, std::numbers::pi / 2.0);
    const JointState out = phase_pulse(embed(input, field), PulseSpec::for_gate(GateKind::pi_half));
    return score(out, ideal_gate(input, GateKind::pi_half), guard);
}

double pi_infidelity_sim(int n_atoms, double nbar, double delta, std::optional<std::int64_t> cutoff) {
    return simulate_phase_pi(n_atoms, nbar, delta, cutoff).infidelity;
}

double pi2_infidelity_sim(int n_atoms, double nbar, std::optional<std::int64_t> cutoff) {
    return simulate_phase_pi2(n_atoms, nbar, cutoff).infidelity;
}

DSquaredReport d_squared_pi2(int n_atoms, const FieldVector& field, const JointEvolution& evolve) {
    const double sign = n_atoms % 2 == 0 ? 1.0 : -1.0;
    const Complex i(0.0, 1.0);

    // ½‖v‖² with v built from the unnormalized |0ᴺ⟩ + i|1ᴺ⟩ equals ‖·‖² on the
    // normalized input, so everything below works with unit-norm states.
    const AtomicState psi = cat_state(n_atoms, M_SQRT1_2, i * M_SQRT1_2);
    const AtomicState flipped = cat_state(n_atoms, i * M_SQRT1_2, M_SQRT1_2);  // Πσ_x ψ

    const JointState z_u = with_parity_signs(evolve(embed(psi, field)));
    const JointState u_x = evolve(embed(flipped, field));
    DSquaredReport r;
    r.d_squared = (z_u.rows() - sign * u_x.rows()).squaredNorm();

    const AtomicState even_input = cat_state(n_atoms, M_SQRT1_2, -sign * M_SQRT1_2);
    const AtomicState odd_input = cat_state(n_atoms, M_SQRT1_2, sign * M_SQRT1_2);
    const JointState even_out = evolve(embed(even_input, field));
    const JointState odd_out = evolve(embed(odd_input, field));
    for (Eigen::Index b = 0; b < even_out.rows().rows(); ++b) {
        // factor 2 undoes the 1/√2 normalization of the inputs
        if (popcount(static_cast<std::uint64_t>(b)) % 2 == 0)
            r.even_sum += 2.0 * even_out.rows().row(b).squaredNorm();
        else
            r.odd_sum += 2.0 * odd_out.rows().row(b).squaredNorm();
    }
    r.even_input_infidelity =
        1.0 - fidelity_atomic(even_out, ideal_gate(even_input, GateKind::pi_half));
    r.odd_input_infidelity =
        1.0 - fidelity_atomic(odd_out, ideal_gate(odd_input, GateKind::pi_half));

    const double var_n = number_moments(field).variance;
    const double n = n_atoms;
    r.lower_bound = n * n / (2.0 * n * (n + 1.0) + 4.0 * var_n);
    return r;
}

DSquaredReport d_squared_pi2(int n_atoms, double nbar, std::optional<std::int64_t> cutoff) {
    const FieldVector field = simulation_field(nbar, cutoff);
    check_boundary_weight(field);
    const PhaseGuard guard;
    const PulseSpec spec = PulseSpec::for_gate(GateKind::pi_half);
    return d_squared_pi2(n_atoms, field, [&](const JointState& s) {
        JointState out = phase_pulse(s, spec);
        check_leakage(out, guard);
        return out;
    });
}

}  // namespace pulseshare
