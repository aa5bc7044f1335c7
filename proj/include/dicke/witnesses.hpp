#pragma once

// Fidelity-based witnesses for genuine multipartite entanglement around
// symmetric Dicke states: Tr(rho |m,n><m,n|) <= C, where C is the largest
// squared Schmidt coefficient of |m,n> over all bipartitions.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/qcore.hpp"
#include "dicke/verdict.hpp"

namespace dicke {

/// Largest squared Schmidt coefficient of |psi> over all 2^(n-1) - 1 splits.
double max_schmidt_overlap(const PureState& psi);

/// Same, restricted to the splits {1..k}|{k+1..n}, k = 1..n/2. Exact for
/// permutation-invariant states.
double max_schmidt_overlap_symmetric(const PureState& psi);

/// C for |m,n> from an SVD sweep over split sizes.
double dicke_fidelity_bound(int n, int m);

/// Closed forms where they are known: n/(2(n-1)) for m = n/2 with even n >= 4,
/// (n-1)/n for m = 1 or m = n-1, 1 for m in {0, n}. nullopt otherwise.
std::optional<double> dicke_fidelity_bound_closed_form(int n, int m);

/// lambda_k^2 = C(n1,k) C(n-n1,m-k) / C(n,m) for the split {1..n1}|{n1+1..n},
/// nonzero values only, descending.
std::vector<double> dicke_schmidt_closed_form(int n, int m, int n1);

WitnessVerdict fidelity_witness_verdict(const DensityMatrix& rho, int n, int m,
                                        const Tolerances& tol = kDefaultTolerances);
WitnessVerdict fidelity_witness_verdict(const PureState& psi, int n, int m,
                                        const Tolerances& tol = kDefaultTolerances);

/// Largest white-noise fraction for which |n/2,n> mixed with noise still
/// violates the fidelity bound: (1/2)(n-2) / ((n-1)(1 - 2^-n)). Even n >= 4.
double fidelity_noise_threshold(int n);

// ---------------------------------------------------------------------------
// Exhaustive check of the binomial inequality
//   C(N1,k) C(n-N1, n/2-k) <= C(2,1) C(n-2, n/2-1)
// behind the half-filled Dicke bound.

using ExactCount = unsigned __int128;

ExactCount exact_binomial(int n, int k);
std::string to_string(ExactCount v);

struct AppendixReport {
  int n = 0;
  std::map<std::pair<int, int>, ExactCount> table;  // (N1, k) -> g
  std::pair<int, int> argmax{0, 0};
  ExactCount max_value = 0;
  std::vector<ExactCount> h_values;  // h_values[N1 - 1] = max_k g(N1, k), N1 = 1..n/2
};

/// Throws InvariantViolation carrying the counterexample if any step of the
/// combinatorial argument fails. n even, 4 <= n <= 64.
AppendixReport verify_appendix_inequality(int n);

}  // namespace dicke
