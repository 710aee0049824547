#pragma once

// Resonant single-mode Tavis–Cummings evolution in the interaction picture,
//
//     H = i g Σ_i (a σ_i† − a† σ_i),
//
// propagated exactly inside each sector of fixed total excitation number
// M = n + (number of excited atoms). Each sector holds at most 2ᴺ states,
// one per bitstring, and is diagonalized once per propagator.

#include "pulseshare/atomic_register.hpp"
#include "pulseshare/phase_model.hpp"

#include <vector>

namespace pulseshare {

struct TCSpec {
    double coupling = 1.0;  ///< g
    double duration = 0.0;  ///< T
};

class TavisCummingsPropagator {
public:
    /// Sectors for N atoms over the photon window floor..cutoff.
    TavisCummingsPropagator(int n_atoms, std::int64_t floor, std::int64_t cutoff, double coupling);

    int n_atoms() const { return n_atoms_; }
    double coupling() const { return coupling_; }
    std::size_t sector_count() const { return sectors_.size(); }

    /// e^{−iHT}|state⟩. Throws CutoffTooSmall when sectors clipped by the
    /// window carry more than mass_tolerance of the state.
    JointState evolve(const JointState& state, double duration,
                      double mass_tolerance = 1e-12) const;

    /// max over sectors of max|U†U − I| for U = e^{−iHT}.
    double max_unitarity_defect(double duration) const;

private:
    struct Sector {
        std::vector<Eigen::Index> bitstrings;
        std::vector<Eigen::Index> columns;  // photon slot per member
        Eigen::VectorXd energies;
        Eigen::MatrixXcd eigenvectors;
        bool complete = true;
    };

    Eigen::MatrixXcd sector_propagator(const Sector& s, double duration) const;

    int n_atoms_;
    std::int64_t floor_;
    std::int64_t cutoff_;
    double coupling_;
    std::vector<Sector> sectors_;
};

JointState tavis_cummings_pulse(const JointState& state, const TCSpec& spec);

/// The semiclassical (coherent-amplitude → c-number) limit of the TC pulse
/// on the atoms: every atom rotated by [[cos θ, sin θ], [−sin θ, cos θ]].
AtomicState tc_ideal_gate(const AtomicState& atoms, GateKind kind);

/// Pulse duration for a single atom driven by |√n̄⟩. pi maximizes the
/// excited→ground transfer probability; pi_half puts it at ½ on the first
/// rising edge. Both searches start from π/(2g√n̄) (resp. π/(4g√n̄)).
double calibrate_tc_pulse(GateKind kind, double nbar, double coupling = 1.0);

/// Excited→ground probability for one atom after duration T.
double tc_transfer_probability(double nbar, double coupling, double duration);

struct TcGateResult {
    double infidelity = 0.0;
    double duration = 0.0;
    std::int64_t floor = 0;
    std::int64_t cutoff = 0;
    double l_before = 0.0;
    double l_after = 0.0;
    double unitarity_defect = 0.0;
};

/// GHZ(N, δ) ⊗ |√n̄⟩ through the calibrated TC pulse, scored against
/// tc_ideal_gate. pi_half uses δ as given (π/2 reproduces the phase-model input).
/// A given duration skips the calibration.
TcGateResult simulate_tc_gate(GateKind kind, int n_atoms, double nbar, double delta,
                              double coupling = 1.0, std::optional<std::int64_t> cutoff = {},
                              std::optional<double> duration = {});

}  // namespace pulseshare
