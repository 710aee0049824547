#pragma once

namespace pulseshare {

/// Collective bit flip on N logical qubits in the |01⟩/|10⟩ code driven by
/// an effective U = cos(g n̂ t) + i sin(g n̂ t) σ_X with g n̄ T = π/2, applied
/// to (|+X⟩⊗N + |−X⟩⊗N)/√2 ⊗ |√n̄⟩:
///
///     1 − F² = ⟨sin²(g N Δn̂ T)⟩ = (1 − Re⟨e^{iλΔn̂}⟩)/2,   λ = πN/n̄.
double encoded_sm_infidelity(int n_logical, double nbar);

}  // namespace pulseshare
