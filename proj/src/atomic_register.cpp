#include "pulseshare/atomic_register.hpp"

#include "pulseshare/errors.hpp"

#include <cmath>
#include <string>

namespace pulseshare {

namespace {

void check_atom_count(int n_atoms, int max_atoms) {
    if (n_atoms < 1 || n_atoms > max_atoms)
        throw ConfigError("atom count " + std::to_string(n_atoms) + " outside [1, " +
                          std::to_string(max_atoms) + "]");
}

// out += coef · A(in) for one field row; returns the amplitude A pushes
// past the lower and upper window edges (before scaling by coef).
struct EdgeSpill {
    Complex below{};
    Complex above{};
};

template <typename Out, typename In>
EdgeSpill accumulate(Out&& out, const In& in, const GateEntry& entry) {
    const Eigen::Index d = in.size();
    const Complex c = entry.coefficient;
    if (c == Complex{}) return {};
    switch (entry.action) {
        case FieldAction::identity:
            out += c * in;
            return {};
        case FieldAction::lower:
            out.head(d - 1) += c * in.tail(d - 1);
            return {c * in(0), {}};
        case FieldAction::raise:
            out.tail(d - 1) += c * in.head(d - 1);
            return {{}, c * in(d - 1)};
    }
    return {};
}

}  // namespace

AtomicState::AtomicState(int n_atoms, AmplitudeVector amplitudes, int max_atoms)
    : n_atoms_(n_atoms), amplitudes_(std::move(amplitudes)) {
    check_atom_count(n_atoms, max_atoms);
    if (static_cast<std::uint64_t>(amplitudes_.size()) != dimension())
        throw ConfigError("atomic amplitude vector must have length 2^N");
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-10)
        throw ConfigError("atomic state is not normalized");
}

AtomicState AtomicState::basis(int n_atoms, std::uint64_t bitstring) {
    check_atom_count(n_atoms, kDefaultMaxAtoms);
    AmplitudeVector amps = AmplitudeVector::Zero(Eigen::Index{1} << n_atoms);
    if (bitstring >= static_cast<std::uint64_t>(amps.size()))
        throw ConfigError("bitstring out of range");
    amps[static_cast<Eigen::Index>(bitstring)] = 1.0;
    return AtomicState(n_atoms, std::move(amps));
}

AtomicState ghz_atomic(int n_atoms, double delta, int max_atoms) {
    check_atom_count(n_atoms, max_atoms);
    const Eigen::Index dim = Eigen::Index{1} << n_atoms;
    AmplitudeVector amps = AmplitudeVector::Zero(dim);
    amps[0] = M_SQRT1_2;
    amps[dim - 1] = std::polar(M_SQRT1_2, delta);
    return AtomicState(n_atoms, std::move(amps), max_atoms);
}

JointState::JointState(int n_atoms, std::int64_t floor, JointRows rows, double leakage,
                       int max_atoms)
    : n_atoms_(n_atoms), floor_(floor), rows_(std::move(rows)), leakage_(leakage) {
    check_atom_count(n_atoms, max_atoms);
    if (static_cast<std::uint64_t>(rows_.rows()) != dimension())
        throw ConfigError("joint state needs one field row per bitstring");
    if (floor < 0 || rows_.cols() < 1 || floor + rows_.cols() - 1 < 1)
        throw ConfigError("joint state field window must satisfy floor >= 0, cutoff >= 1");
}

FieldVector JointState::field(std::uint64_t bitstring) const {
    if (bitstring >= dimension()) throw ConfigError("bitstring out of range");
    return FieldVector(floor_, AmplitudeVector(rows_.row(static_cast<Eigen::Index>(bitstring))));
}

JointState embed(const AtomicState& atoms, const FieldVector& field) {
    if (std::abs(field.squared_norm() - 1.0) > 1e-10)
        throw ConfigError("embed requires a normalized field");
    JointRows rows = atoms.amplitudes() * field.amplitudes().transpose();
    return JointState(atoms.n_atoms(), field.floor(), std::move(rows));
}

OperatorGate2x2 OperatorGate2x2::identity() {
    OperatorGate2x2 g;
    g.entries[0][0] = {1.0, FieldAction::identity};
    g.entries[1][1] = {1.0, FieldAction::identity};
    return g;
}

JointState apply_atom_gate(const JointState& state, int atom_index, const OperatorGate2x2& gate) {
    if (atom_index < 0 || atom_index >= state.n_atoms())
        throw ConfigError("atom index " + std::to_string(atom_index) + " out of range");
    const JointRows& in = state.rows();
    JointRows out = JointRows::Zero(in.rows(), in.cols());
    const std::uint64_t mask = std::uint64_t{1} << atom_index;
    double leaked = 0.0;
    for (std::uint64_t b = 0; b < state.dimension(); ++b) {
        if (b & mask) continue;
        const std::array<Eigen::Index, 2> idx{static_cast<Eigen::Index>(b),
                                              static_cast<Eigen::Index>(b | mask)};
        for (int r = 0; r < 2; ++r) {
            Complex below{}, above{};
            for (int c = 0; c < 2; ++c) {
                const EdgeSpill s = accumulate(out.row(idx[r]), in.row(idx[c]), gate.entries[r][c]);
                below += s.below;
                above += s.above;
            }
            leaked += std::norm(below) + std::norm(above);
        }
    }
    return JointState(state.n_atoms(), state.floor(), std::move(out), state.leakage() + leaked);
}

FieldVector project_atomic(const JointState& state, const AtomicState& target) {
    if (target.n_atoms() != state.n_atoms())
        throw ConfigError("projection target has a different atom count");
    AmplitudeVector f = (target.amplitudes().adjoint() * state.rows()).transpose();
    return FieldVector(state.floor(), std::move(f));
}

double fidelity_atomic(const JointState& state, const AtomicState& target) {
    return project_atomic(state, target).squared_norm();
}

double joint_fidelity(const JointState& state, const AtomicState& target, const FieldVector& field) {
    return std::norm(inner(field, project_atomic(state, target)));
}

JointState bitflip_entangled_state(int n_atoms, const FieldVector& field) {
    if (std::abs(field.squared_norm() - 1.0) > 1e-10)
        throw ConfigError("bitflip_entangled_state requires a normalized field");
    const FieldVector raised = apply_ladder(field, Ladder::create, n_atoms).field;
    const FieldVector lowered = apply_ladder(field, Ladder::annihilate, n_atoms).field;
    JointRows rows = JointRows::Zero(Eigen::Index{1} << n_atoms, field.size());
    rows.row(0) = M_SQRT1_2 / std::sqrt(raised.squared_norm()) * raised.amplitudes().transpose();
    rows.row(rows.rows() - 1) =
        M_SQRT1_2 / std::sqrt(lowered.squared_norm()) * lowered.amplitudes().transpose();
    return JointState(n_atoms, field.floor(), std::move(rows));
}

ConservedParts conserved_L_parts(const JointState& state) {
    ConservedParts parts;
    const JointRows& rows = state.rows();
    const int n = state.n_atoms();
    Eigen::VectorXd photon_numbers(rows.cols());
    for (Eigen::Index k = 0; k < rows.cols(); ++k)
        photon_numbers[k] = static_cast<double>(state.floor() + k);
    for (std::uint64_t b = 0; b < state.dimension(); ++b) {
        const auto row = rows.row(static_cast<Eigen::Index>(b));
        const double weight = row.squaredNorm();
        parts.atomic += 0.5 * (n - 2 * popcount(b)) * weight;
        parts.photons += row.cwiseAbs2().dot(photon_numbers.transpose());
    }
    return parts;
}

double conserved_L_expectation(const JointState& state) {
    const ConservedParts p = conserved_L_parts(state);
    return p.atomic + p.photons;
}

}  // namespace pulseshare
