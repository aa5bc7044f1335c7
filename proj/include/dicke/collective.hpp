#pragma once

// Entanglement criteria built from first and second moments of the collective
// spin J = (1/2) sum_k sigma^(k): separable bounds for quadratic forms, the
// <Jx^2> + <Jy^2> family and its variants, genuine-multipartite bounds for
// three and four qubits, and the two-qubit vector-norm bound feeding the
// four-qubit proof.

#include <array>
#include <span>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/qcore.hpp"
#include "dicke/verdict.hpp"

namespace dicke {

inline const double kGenuine3Bound = 2.0 + std::sqrt(5.0) / 2.0;
inline const double kGenuine4Bound = 3.5 + std::sqrt(3.0);
inline constexpr double kLemma2Bound = 16.0 / 3.0;

/// (n/2)(n/2 + 1/2): separable bound on <Jx^2> + <Jy^2>.
inline double theorem2_bound(int n) { return 0.5 * n * (0.5 * n + 0.5); }
/// (n/2)(n/2 + 1): <J^2> in the symmetric sector.
inline double max_total_spin(int n) { return 0.5 * n * (0.5 * n + 1.0); }

// ---------------------------------------------------------------------------
// Separable maximum of a quadratic form

/// Maximizer over translationally invariant pure product states |psi>^{(x) n},
/// parameterized by the Bloch vector s = <sigma>/2 with |s| = 1/2.
struct SphereMaximum {
  double value = 0.0;
  std::array<double, 3> bloch{0, 0, 0};
};

/// Product-state value of the form as a function of one shared Bloch vector:
/// sum_l a_l (n/4 + n(n-1) s_l^2) + b_l n s_l.
double ti_product_objective(const QuadraticForm& form, int n, const std::array<double, 3>& s);

/// Exact maximum of ti_product_objective on |s| = 1/2 by solving the secular
/// equation of the Lagrange conditions (including the degenerate case).
SphereMaximum lemma1_maximizer(const QuadraticForm& form, int n);

/// Maximum of the form over separable states. Closed form
/// (a_x+a_y+a_z) n/4 + max(a) (n/2)(n/2 - 1/2) when b = 0.
double lemma1_bound(const QuadraticForm& form, int n);

// ---------------------------------------------------------------------------
// Criteria

enum class CriterionTag { theorem2, variance, symmetric_jz, crit2, genuine3, genuine4 };

struct CriterionKind {
  CriterionTag tag = CriterionTag::theorem2;
  int m = 0;  // only for crit2: <Jx^2> + <Jy^2> - 2m <Jz>

  static CriterionKind theorem2() { return {CriterionTag::theorem2, 0}; }
  static CriterionKind variance() { return {CriterionTag::variance, 0}; }
  static CriterionKind symmetric_jz() { return {CriterionTag::symmetric_jz, 0}; }
  static CriterionKind crit2(int m) { return {CriterionTag::crit2, m}; }
  static CriterionKind genuine3() { return {CriterionTag::genuine3, 0}; }
  static CriterionKind genuine4() { return {CriterionTag::genuine4, 0}; }

  CriterionId id() const;
};

WitnessVerdict criterion_verdict(const CollectiveMoments<double>& moments, int n,
                                 CriterionKind kind, const Tolerances& tol = kDefaultTolerances);

template <typename State>
WitnessVerdict criterion_verdict(const State& state, CriterionKind kind,
                                 const Tolerances& tol = kDefaultTolerances) {
  return criterion_verdict(collective_moments(state), state.n_qubits(), kind, tol);
}

// ---------------------------------------------------------------------------
// Two-qubit vector norm and the operators of the four-qubit argument

struct Lemma2Operators {
  HermitianOperator m1;  // sx sx + sy sy
  HermitianOperator m2;  // sx (x) 1 + 1 (x) sx
  HermitianOperator m3;  // sy (x) 1 + 1 (x) sy
};
const Lemma2Operators& lemma2_operators();

/// n1 M1 + n2 M2 + n3 M3
HermitianOperator lemma2_direction_operator(const std::array<double, 3>& direction);

/// <M1>^2 + <M2>^2 + <M3>^2 <= 16/3
double lemma2_vector_norm(const DensityMatrix& rho);
double lemma2_vector_norm(const PureState& psi);

struct Theorem3Operators {
  HermitianOperator qx;  // sx on qubits 2,3,4 (here acting on 3 qubits)
  HermitianOperator qy;
  HermitianOperator r;   // sum over pairs and l = x,y of s_l s_l
};
const Theorem3Operators& theorem3_operators();

/// x1 Qx + y1 Qy + R
HermitianOperator theorem3_direction_operator(double x1, double y1);

enum class EigenFamily { lemma2, theorem3 };

/// {0, -2 n1, n1 +/- sqrt(n1^2 + 4 n2^2 + 4 n3^2)}, |n| = 1.
std::vector<double> lemma2_eigenvalues(const std::array<double, 3>& direction);
/// The eight eigenvalues of x1 Qx + y1 Qy + R as functions of X = |(x1, y1)|, 0 <= X <= 1.
std::vector<double> theorem3_eigenvalues(double x);
/// lemma2 takes a unit 3-vector, theorem3 a single X.
std::vector<double> analytic_eigenvalues(EigenFamily family, std::span<const double> params);

struct PartitionBounds {
  double split22_bound = 0.0;  // 2 + (1/2)(16/3 + 1): |v_k|^2 <= 16/3 plus the constant component
  double split13_bound = 0.0;  // 2 + (1/2)(3 + 2 sqrt 3)
  double overall = 0.0;
};
PartitionBounds theorem3_partition_bounds();

// ---------------------------------------------------------------------------

/// I0 <Jx^2 + Jy^2 + Jz>, excited level = +Jz.
double superradiance_intensity(const CollectiveMoments<double>& moments, double i0);

template <typename State>
double superradiance_intensity(const State& state, double i0) {
  return superradiance_intensity(collective_moments(state), i0);
}

enum class NoiseModel { white, psixy };

/// Noise fraction at which the criterion stops detecting |n/2,n> mixed with
/// the given noise. Supports theorem2 (white or psixy) and genuine4 (white, n = 4).
double collective_noise_threshold(int n, CriterionKind kind, NoiseModel noise);

}  // namespace dicke
