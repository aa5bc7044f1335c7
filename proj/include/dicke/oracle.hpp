#pragma once

// Brute-force numerics used to check closed-form bounds from the outside:
// seeded random states, dense eigensolves and maximization of operator
// expectations over product, translationally invariant product and
// biseparable pure states.

#include <array>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "dicke/collective.hpp"
#include "dicke/qcore.hpp"

namespace dicke {

inline constexpr int kDefaultRestarts = 64;
inline constexpr int kMaxBiseparableQubits = 8;

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream). Restart r of a run seeded with s
/// always draws from make_stream(s, r), whatever order restarts execute in.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

double max_eigenvalue(const HermitianOperator& op);

struct Eigenpair {
  double value = 0.0;
  CVector<double> vector;
};
Eigenpair top_eigenpair(const HermitianOperator& op);

/// Per-qubit Bloch vectors s^(k) = Tr(rho^(k) sigma) / 2, |s^(k)| <= 1/2.
struct BlochProduct {
  std::vector<std::array<double, 3>> vectors;

  static BlochProduct from_factors(std::span<const Qubit2<double>> factors);
  /// Pure product state with these Bloch vectors; each must have |s| = 1/2.
  PureState to_state() const;
  bool is_pure(double tol = 1e-10) const;
};

Qubit2<double> qubit_from_bloch(const std::array<double, 3>& s);
std::array<double, 3> bloch_of(const Qubit2<double>& q);

struct BiseparableArgument {
  Bipartition split;
  CVector<double> side_a;  // 2^|A| amplitudes, side_a qubits in ascending order
  CVector<double> side_b;

  PureState to_state() const;
};

struct OptimizationResult {
  double value = 0.0;
  std::variant<BlochProduct, BiseparableArgument> argument;
  int restarts_used = 0;
  std::uint64_t seed = 0;
};

/// One run of cyclic single-qubit exact updates from `start`. values[0] is the
/// starting objective, values[k] the objective after sweep k.
struct ProductAscent {
  std::vector<double> values;
  std::vector<Qubit2<double>> factors;
};
ProductAscent ascend_product_state(const HermitianOperator& op, int n,
                                   std::vector<Qubit2<double>> start, int max_sweeps = 10000,
                                   double tol = 1e-12);

OptimizationResult maximize_over_product_states(const HermitianOperator& op, int n,
                                                int restarts = kDefaultRestarts,
                                                std::uint64_t seed = 0);

/// Maximum of the quadratic form over |psi>^{(x) n}: grid over the Bloch sphere
/// followed by monotone ascent from the best grid points.
OptimizationResult maximize_over_ti_product(const QuadraticForm& form, int n);

/// Alternating exact updates of the two sides, every bipartition (one per side
/// size when `op` commutes with qubit transpositions), best over partitions.
OptimizationResult maximize_over_biseparable(const HermitianOperator& op, int n,
                                             int restarts = kDefaultRestarts,
                                             std::uint64_t seed = 0);

/// True when op commutes with every adjacent qubit transposition.
bool is_permutation_invariant(const HermitianOperator& op, int n, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Sampling

enum class SampleKind { pure, product, biseparable, density };

Qubit2<double> haar_qubit(Rng& rng);
CVector<double> haar_vector(Eigen::Index dim, Rng& rng);

/// Deterministic stream of random states; sample i uses substream i.
class StateSampler {
 public:
  StateSampler(SampleKind kind, int n, std::uint64_t seed);

  using Sample = std::variant<PureState, DensityMatrix>;

  SampleKind kind() const { return kind_; }
  int n_qubits() const { return n_; }

  /// pure, product and biseparable kinds.
  PureState next_pure();
  /// density kind (Wishart-style G G^dagger / Tr).
  DensityMatrix next_density();
  Sample next();

 private:
  SampleKind kind_;
  int n_;
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
};

std::vector<StateSampler::Sample> sample_random_states(SampleKind kind, int n, int count,
                                                       std::uint64_t seed);

}  // namespace dicke
