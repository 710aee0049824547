#pragma once

// Closed-form infidelity bounds and exact expressions for N atoms sharing a
// coherent pulse with mean photon number n̄ (α = √n̄ real throughout).

namespace pulseshare {

/// ¼·N² / (2N(N+1) + 4 var_n): worst-case π/2 infidelity from the
/// operator-variance argument. For a coherent field var_n = n̄.
double bound_general_pi2(int n_atoms, double var_n);

/// N² / (2N(N+1) + 4 var_n): lower bound on ⟨D²⟩ for A = Πσ_z.
double bound_d_squared(int n_atoms, double var_n);

/// N(N+1) / (16 n̄)
double bound_phase_pi2(int n_atoms, double nbar);

/// N² / (4 n̄)
double bound_phase_pi(int n_atoms, double nbar);

/// log of ⟨α|aᴺ a†ᴺ|α⟩ = Σ_{n=0}^{N} n̄ⁿ (N!)² / ((n!)² (N−n)!)
double log_n2sq_exact(int n_atoms, double nbar);
/// exp(log_n2sq_exact); +inf past double range.
double n2sq_exact(int n_atoms, double nbar);
/// n2sq_exact / n̄ᴺ, evaluated without forming either factor.
double n2sq_ratio(int n_atoms, double nbar);

/// ½ − (⟨a^{2N}⟩ + ⟨a†^{2N}⟩) / (4𝒩₁𝒩₂) for the entangled bit-flip state,
/// with 𝒩₁ = n̄^{N/2} and 𝒩₂² = n2sq_exact.
double bitflip_infidelity_exact(int n_atoms, double nbar);

struct BoundReport {
    int n_atoms = 0;
    double nbar = 0.0;
    double bound_general_pi2 = 0.0;
    double bound_phase_pi2 = 0.0;
    double bound_phase_pi = 0.0;
    double bitflip_exact = 0.0;
    double n2sq = 0.0;
    double log_n2sq = 0.0;
};

BoundReport bound_report(int n_atoms, double nbar);

/// Free-space failure model parameters.
struct FreeSpaceSpec {
    int n_atoms = 1;
    double nbar = 1.0;
    double emission_prob = 0.0;  ///< p, per atom
    double mode_fraction = 0.0;  ///< λ²/A

    /// Throws ConfigError unless 0 ≤ p ≤ 1, 0 ≤ λ²/A ≤ 1 and p·N ≤ 0.1.
    void validate() const;
};

/// Np(1 − λ²/A) + [1 − p(1 − λ²/A)]ᴺ N²/(4n̄)
double free_space_failure_full(const FreeSpaceSpec& spec);
/// Np(1 − λ²/A) + N²/(4n̄)
double free_space_failure(const FreeSpaceSpec& spec);

/// Order-of-magnitude resonant form (N/(4n̄))(π²A/λ² + N), area_ratio = π²A/λ².
double free_space_failure_resonant(int n_atoms, double nbar, double area_ratio);

/// Per-atom emission probability on resonance, (π²A/4λ²)/n̄.
double resonant_emission_prob(double nbar, double area_ratio);

/// Smallest n̄ with free_space_failure_resonant ≤ Nε: (area_ratio + N)/(4ε).
double min_nbar_free_space(int n_atoms, double area_ratio, double epsilon);
/// Smallest n̄ with the single-mode failure N²/(4n̄) ≤ Nε: N/(4ε).
double min_nbar_single_mode(int n_atoms, double epsilon);

}  // namespace pulseshare
