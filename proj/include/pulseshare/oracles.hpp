#pragma once

// Independent reference computations used by the test suites and `verify`.
// None of these go through the fock/register code paths they are compared
// against: coherent amplitudes come from the closed form, operators are
// dense truncated matrices, and expectations are direct Poisson sums.

#include <complex>
#include <cstdint>

namespace pulseshare::oracle {

/// Poisson(n̄) probability of n.
double poisson_pmf(double nbar, std::int64_t n);

/// Σ_{n > cutoff} Poisson(n̄)(n).
double poisson_tail_above(double nbar, std::int64_t cutoff);

/// ‖(a†)ᴺ|α⟩‖² with a dense (cutoff+1)² annihilation matrix.
double n2sq_dense(int n, double nbar, std::int64_t cutoff);

/// Σ_n P(n) e^{iλ(n−n̄)}
std::complex<double> poisson_char_direct(double nbar, double lambda);

/// Σ_n P(n) sin²(πN(n − n̄)/(2n̄))
double encoded_infidelity_direct(int n_logical, double nbar);

}  // namespace pulseshare::oracle
