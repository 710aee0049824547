#include "pulseshare/tavis_cummings.hpp"

#include "pulseshare/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

namespace pulseshare {

TavisCummingsPropagator::TavisCummingsPropagator(int n_atoms, std::int64_t floor,
                                                 std::int64_t cutoff, double coupling)
    : n_atoms_(n_atoms), floor_(floor), cutoff_(cutoff), coupling_(coupling) {
    if (n_atoms < 1 || n_atoms > kDefaultMaxAtoms) throw ConfigError("TC atom count out of range");
    if (!(coupling > 0.0)) throw ConfigError("TC coupling must be positive");
    if (floor < 0 || cutoff <= floor) throw ConfigError("TC photon window is empty");

    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n_atoms);
    std::vector<Eigen::Index> local(static_cast<std::size_t>(dim));
    const Complex ig(0.0, coupling);

    for (std::int64_t m = floor; m <= cutoff + n_atoms; ++m) {
        Sector s;
        std::fill(local.begin(), local.end(), -1);
        for (Eigen::Index b = 0; b < dim; ++b) {
            const std::int64_t excited = n_atoms - popcount(static_cast<std::uint64_t>(b));
            const std::int64_t n = m - excited;
            if (n < 0) continue;
            if (n < floor || n > cutoff) {
                s.complete = false;
                continue;
            }
            local[static_cast<std::size_t>(b)] = static_cast<Eigen::Index>(s.bitstrings.size());
            s.bitstrings.push_back(b);
            s.columns.push_back(static_cast<Eigen::Index>(n - floor));
        }
        if (s.bitstrings.empty()) continue;

        const auto k = static_cast<Eigen::Index>(s.bitstrings.size());
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto b = static_cast<std::uint64_t>(s.bitstrings[j]);
            const double n = static_cast<double>(floor_ + s.columns[j]);
            for (int i = 0; i < n_atoms; ++i) {
                const std::uint64_t mask = std::uint64_t{1} << i;
                if (!(b & mask)) continue;
                // a σ_i†: ground→excited while absorbing one photon
                const Eigen::Index r = local[static_cast<std::size_t>(b & ~mask)];
                if (r < 0) continue;
                h(r, j) = ig * std::sqrt(n);
                h(j, r) = std::conj(h(r, j));
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        if (solver.info() != Eigen::Success)
            throw NumericalGuardError("TC sector diagonalization failed at M=" + std::to_string(m));
        s.energies = solver.eigenvalues();
        s.eigenvectors = solver.eigenvectors();
        sectors_.push_back(std::move(s));
    }
}

Eigen::MatrixXcd TavisCummingsPropagator::sector_propagator(const Sector& s, double duration) const {
    const Eigen::VectorXcd phases =
        (s.energies * (-duration)).unaryExpr([](double x) { return std::polar(1.0, x); });
    return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

JointState TavisCummingsPropagator::evolve(const JointState& state, double duration,
                                           double mass_tolerance) const {
    if (state.n_atoms() != n_atoms_ || state.floor() != floor_ || state.cutoff() != cutoff_)
        throw ConfigError("state does not match the TC propagator's atoms or photon window");
    const JointRows& in = state.rows();
    JointRows out = JointRows::Zero(in.rows(), in.cols());
    double clipped = 0.0;
    for (const Sector& s : sectors_) {
        const auto k = static_cast<Eigen::Index>(s.bitstrings.size());
        Eigen::VectorXcd x(k);
        for (Eigen::Index j = 0; j < k; ++j) x[j] = in(s.bitstrings[j], s.columns[j]);
        if (!s.complete) clipped += x.squaredNorm();
        const Eigen::VectorXcd y = sector_propagator(s, duration) * x;
        for (Eigen::Index j = 0; j < k; ++j) out(s.bitstrings[j], s.columns[j]) = y[j];
    }
    if (clipped > mass_tolerance)
        throw CutoffTooSmall("TC sectors clipped by the photon window carry mass " +
                             std::to_string(clipped));
    return JointState(state.n_atoms(), state.floor(), std::move(out), state.leakage());
}

double TavisCummingsPropagator::max_unitarity_defect(double duration) const {
    double worst = 0.0;
    for (const Sector& s : sectors_) {
        const Eigen::MatrixXcd u = sector_propagator(s, duration);
        const auto k = u.rows();
        const double defect =
            (u.adjoint() * u - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
        worst = std::max(worst, defect);
    }
    return worst;
}

JointState tavis_cummings_pulse(const JointState& state, const TCSpec& spec) {
    if (!(spec.duration >= 0.0)) throw ConfigError("TC duration must be non-negative");
    if (spec.duration == 0.0) return state;
    const TavisCummingsPropagator prop(state.n_atoms(), state.floor(), state.cutoff(), spec.coupling);
    return prop.evolve(state, spec.duration);
}

AtomicState tc_ideal_gate(const AtomicState& atoms, GateKind kind) {
    return rotate_all(atoms, -pulse_area(kind));
}

namespace {

struct SingleAtomDrive {
    FieldVector field;
    TavisCummingsPropagator propagator;
    JointState initial;

    SingleAtomDrive(double nbar, double coupling)
        : field(coherent_window(CoherentSpec::from_nbar(nbar))),
          propagator(1, field.floor(), field.cutoff(), coupling),
          initial(embed(AtomicState::basis(1, 0), field)) {}

    double transfer(double duration) const {
        return propagator.evolve(initial, duration).rows().row(1).squaredNorm();
    }
};

}  // namespace

double tc_transfer_probability(double nbar, double coupling, double duration) {
    return SingleAtomDrive(nbar, coupling).transfer(duration);
}

double calibrate_tc_pulse(GateKind kind, double nbar, double coupling) {
    if (nbar < 16.0) throw ConfigError("TC calibration needs nbar >= 16");
    const SingleAtomDrive drive(nbar, coupling);
    const double rate = coupling * std::sqrt(nbar);
    if (kind == GateKind::pi) {
        const double guess = std::numbers::pi / (2.0 * rate);
        const auto [t, neg_p] = boost::math::tools::brent_find_minima(
            [&](double t) { return -drive.transfer(t); }, 0.7 * guess, 1.3 * guess,
            std::numeric_limits<double>::digits / 2);
        if (!(t > 0.7 * guess && t < 1.3 * guess) || -neg_p < 0.5)
            throw NumericalGuardError("TC pi-pulse calibration did not converge");
        return t;
    }
    const double guess = std::numbers::pi / (4.0 * rate);
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        [&](double t) { return drive.transfer(t) - 0.5; }, 0.5 * guess, 1.5 * guess,
        boost::math::tools::eps_tolerance<double>(40), max_iter);
    if (max_iter >= 200) throw NumericalGuardError("TC pi/2-pulse calibration did not converge");
    return 0.5 * (lo + hi);
}

TcGateResult simulate_tc_gate(GateKind kind, int n_atoms, double nbar, double delta,
                              double coupling, std::optional<std::int64_t> cutoff,
                              std::optional<double> duration) {
    TcGateResult r;
    r.duration = duration ? *duration : calibrate_tc_pulse(kind, nbar, coupling);
    const FieldVector field = simulation_field(nbar, cutoff);
    const AtomicState input = ghz_atomic(n_atoms, delta);
    const JointState initial = embed(input, field);
    const TavisCummingsPropagator prop(n_atoms, field.floor(), field.cutoff(), coupling);
    const JointState out = prop.evolve(initial, r.duration);
    r.infidelity = std::max(0.0, 1.0 - fidelity_atomic(out, tc_ideal_gate(input, kind)));
    r.floor = field.floor();
    r.cutoff = field.cutoff();
    r.l_before = conserved_L_expectation(initial);
    r.l_after = conserved_L_expectation(out);
    r.unitarity_defect = prop.max_unitarity_defect(r.duration);
    return r;
}

}  // namespace pulseshare
