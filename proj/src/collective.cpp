#include "dicke/collective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dicke {

namespace {

constexpr double kBlochRadius = 0.5;

HermitianOperator pair_term(int n, int q1, int q2, Axis axis) {
  const auto s = pauli(axis);
  return HermitianOperator(single_qubit_operator(n, q1, s) * single_qubit_operator(n, q2, s));
}

HermitianOperator sum_term(int n, std::initializer_list<int> qubits, Axis axis) {
  const auto d = detail::dense_dim(n);
  CMatrix<double> out = CMatrix<double>::Zero(d, d);
  for (int q : qubits) out += single_qubit_operator(n, q, pauli(axis));
  return HermitianOperator(std::move(out));
}

}  // namespace

double ti_product_objective(const QuadraticForm& form, int n, const std::array<double, 3>& s) {
  double f = 0.0;
  for (std::size_t l = 0; l < 3; ++l)
    f += form.a[l] * (0.25 * n + n * (n - 1.0) * s[l] * s[l]) + form.b[l] * n * s[l];
  return f;
}

SphereMaximum lemma1_maximizer(const QuadraticForm& form, int n) {
  form.validate();
  if (n < 1) throw DomainError("lemma1_maximizer: n must be positive");

  // Maximize sum_l d_l s_l^2 + c_l s_l on |s| = r. Stationary points satisfy
  // s_l = c_l / (2 (mu - d_l)); the global maximum has mu >= max d.
  std::array<double, 3> d{}, c{};
  for (std::size_t l = 0; l < 3; ++l) {
    d[l] = form.a[l] * n * (n - 1.0);
    c[l] = form.b[l] * n;
  }
  const double r2 = kBlochRadius * kBlochRadius;
  const double dmax = *std::max_element(d.begin(), d.end());
  const double cnorm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);

  std::array<double, 3> s{0, 0, 0};
  if (cnorm == 0.0) {
    const auto top = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    s[top] = kBlochRadius;
  } else {
    auto secular = [&](double mu) {
      double acc = 0.0;
      for (std::size_t l = 0; l < 3; ++l) {
        if (c[l] == 0.0) continue;
        const double t = c[l] / (2.0 * (mu - d[l]));
        acc += t * t;
      }
      return acc;
    };
    bool forcing = false;  // some top-curvature axis has a linear term
    double at_dmax = 0.0;
    for (std::size_t l = 0; l < 3; ++l) {
      if (d[l] == dmax && c[l] != 0.0) forcing = true;
      if (d[l] < dmax && c[l] != 0.0) {
        const double t = c[l] / (2.0 * (dmax - d[l]));
        at_dmax += t * t;
      }
    }
    if (forcing || at_dmax > r2) {
      double lo = dmax;
      double hi = dmax + cnorm / (2.0 * kBlochRadius);
      for (int it = 0; it < 2000 && hi > lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (secular(mid) > r2) lo = mid;
        else hi = mid;
      }
      const double mu = hi;
      for (std::size_t l = 0; l < 3; ++l) s[l] = c[l] == 0.0 ? 0.0 : c[l] / (2.0 * (mu - d[l]));
    } else {
      // Degenerate case: mu = max d, the leftover norm goes to a top-curvature axis.
      std::size_t top = 3;
      for (std::size_t l = 0; l < 3; ++l) {
        if (d[l] == dmax) {
          if (top == 3) top = l;
        } else {
          s[l] = c[l] / (2.0 * (dmax - d[l]));
        }
      }
      s[top] = std::sqrt(std::max(0.0, r2 - at_dmax));
    }
    const double norm = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    for (double& v : s) v *= kBlochRadius / norm;
  }
  return {ti_product_objective(form, n, s), s};
}

double lemma1_bound(const QuadraticForm& form, int n) {
  form.validate();
  if (n < 1) throw DomainError("lemma1_bound: n must be positive");
  if (!form.has_linear_part()) {
    const double amax = *std::max_element(form.a.begin(), form.a.end());
    return (form.a[0] + form.a[1] + form.a[2]) * n / 4.0 + amax * (n / 2.0) * (n / 2.0 - 0.5);
  }
  return lemma1_maximizer(form, n).value;
}

// ---------------------------------------------------------------------------

CriterionId CriterionKind::id() const {
  switch (tag) {
    case CriterionTag::theorem2: return CriterionId::theorem2;
    case CriterionTag::variance: return CriterionId::variance;
    case CriterionTag::symmetric_jz: return CriterionId::symmetric_jz;
    case CriterionTag::crit2: return CriterionId::crit2;
    case CriterionTag::genuine3: return CriterionId::genuine3;
    case CriterionTag::genuine4: return CriterionId::genuine4;
  }
  return CriterionId::theorem2;
}

WitnessVerdict criterion_verdict(const CollectiveMoments<double>& mo, int n, CriterionKind kind,
                                 const Tolerances& tol) {
  if (n < 1) throw DomainError("criterion_verdict: n must be positive");
  const double xy = mo.square(Axis::x) + mo.square(Axis::y);
  const double det = tol.detection;
  switch (kind.tag) {
    case CriterionTag::theorem2:
      return make_verdict(kind.id(), xy, theorem2_bound(n), Detection::entangled, det);
    case CriterionTag::variance:
      return make_verdict(kind.id(), mo.variance(Axis::x) + mo.variance(Axis::y),
                          theorem2_bound(n), Detection::entangled, det);
    case CriterionTag::symmetric_jz: {
      const double j2 = mo.total_spin_squared();
      if (!(std::abs(j2 - max_total_spin(n)) <= tol.symmetric_j2))
        throw DomainError("criterion_verdict(symmetric_jz): <J^2> = " + std::to_string(j2) +
                          " but a symmetric state needs " + std::to_string(max_total_spin(n)));
      return make_verdict(kind.id(), n / 4.0 - mo.square(Axis::z), 0.0, Detection::entangled,
                          det);
    }
    case CriterionTag::crit2: {
      const QuadraticForm form{{1, 1, 0}, {0, 0, -2.0 * kind.m}};
      return make_verdict(kind.id(), xy - 2.0 * kind.m * mo.mean(Axis::z),
                          lemma1_bound(form, n), Detection::entangled, det);
    }
    case CriterionTag::genuine3:
      if (n != 3)
        throw DomainError("criterion_verdict(genuine3): requires 3 qubits, got " +
                          std::to_string(n));
      return make_verdict(kind.id(), xy, kGenuine3Bound, Detection::genuine_multipartite, det);
    case CriterionTag::genuine4:
      if (n != 4)
        throw DomainError("criterion_verdict(genuine4): requires 4 qubits, got " +
                          std::to_string(n));
      return make_verdict(kind.id(), xy, kGenuine4Bound, Detection::genuine_multipartite, det);
  }
  throw DomainError("criterion_verdict: unknown criterion");
}

// ---------------------------------------------------------------------------

const Lemma2Operators& lemma2_operators() {
  static const Lemma2Operators ops{
      pair_term(2, 1, 2, Axis::x) + pair_term(2, 1, 2, Axis::y),
      sum_term(2, {1, 2}, Axis::x),
      sum_term(2, {1, 2}, Axis::y),
  };
  return ops;
}

HermitianOperator lemma2_direction_operator(const std::array<double, 3>& n) {
  const auto& ops = lemma2_operators();
  return n[0] * ops.m1 + n[1] * ops.m2 + n[2] * ops.m3;
}

double lemma2_vector_norm(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) throw DomainError("lemma2_vector_norm: requires a two-qubit state");
  const auto& ops = lemma2_operators();
  const double v1 = expectation(rho, ops.m1);
  const double v2 = expectation(rho, ops.m2);
  const double v3 = expectation(rho, ops.m3);
  return v1 * v1 + v2 * v2 + v3 * v3;
}

double lemma2_vector_norm(const PureState& psi) {
  if (psi.n_qubits() != 2) throw DomainError("lemma2_vector_norm: requires a two-qubit state");
  const auto& ops = lemma2_operators();
  const double v1 = expectation(psi, ops.m1);
  const double v2 = expectation(psi, ops.m2);
  const double v3 = expectation(psi, ops.m3);
  return v1 * v1 + v2 * v2 + v3 * v3;
}

const Theorem3Operators& theorem3_operators() {
  static const Theorem3Operators ops = [] {
    HermitianOperator r = pair_term(3, 1, 2, Axis::x);
    for (Axis a : {Axis::x, Axis::y})
      for (auto [p, q] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
        if (a == Axis::x && p == 1 && q == 2) continue;
        r = r + pair_term(3, p, q, a);
      }
    return Theorem3Operators{sum_term(3, {1, 2, 3}, Axis::x), sum_term(3, {1, 2, 3}, Axis::y),
                             std::move(r)};
  }();
  return ops;
}

HermitianOperator theorem3_direction_operator(double x1, double y1) {
  const auto& ops = theorem3_operators();
  return x1 * ops.qx + y1 * ops.qy + ops.r;
}

std::vector<double> lemma2_eigenvalues(const std::array<double, 3>& n) {
  const double norm2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  if (!(std::abs(std::sqrt(norm2) - 1.0) <= 1e-12))
    throw DomainError("lemma2_eigenvalues: direction must be a unit vector");
  const double root = std::sqrt(n[0] * n[0] + 4.0 * n[1] * n[1] + 4.0 * n[2] * n[2]);
  return {0.0, -2.0 * n[0], n[0] + root, n[0] - root};
}

std::vector<double> theorem3_eigenvalues(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("theorem3_eigenvalues: X must lie in [0, 1]");
  const double plus = 2.0 * std::sqrt(1.0 + x + x * x);
  const double minus = 2.0 * std::sqrt(1.0 - x + x * x);
  return {-2.0 + x, -2.0 + x, -2.0 - x, -2.0 - x,
          2.0 + x + plus, 2.0 + x - plus, 2.0 - x + minus, 2.0 - x - minus};
}

std::vector<double> analytic_eigenvalues(EigenFamily family, std::span<const double> params) {
  switch (family) {
    case EigenFamily::lemma2:
      if (params.size() != 3) throw DomainError("analytic_eigenvalues(lemma2): expects 3 values");
      return lemma2_eigenvalues({params[0], params[1], params[2]});
    case EigenFamily::theorem3:
      if (params.size() != 1) throw DomainError("analytic_eigenvalues(theorem3): expects X");
      return theorem3_eigenvalues(params[0]);
  }
  throw DomainError("analytic_eigenvalues: unknown family");
}

PartitionBounds theorem3_partition_bounds() {
  PartitionBounds b;
  b.split22_bound = 2.0 + 0.5 * (kLemma2Bound + 1.0);
  b.split13_bound = 2.0 + 0.5 * (3.0 + 2.0 * std::sqrt(3.0));
  b.overall = std::max(b.split22_bound, b.split13_bound);
  return b;
}

// ---------------------------------------------------------------------------

double superradiance_intensity(const CollectiveMoments<double>& mo, double i0) {
  if (!(i0 > 0.0)) throw DomainError("superradiance_intensity: i0 must be positive");
  return i0 * (mo.square(Axis::x) + mo.square(Axis::y) + mo.mean(Axis::z));
}

double collective_noise_threshold(int n, CriterionKind kind, NoiseModel noise) {
  if (n < 2 || n % 2 != 0)
    throw DomainError("collective_noise_threshold: n must be even, got " + std::to_string(n));
  if (kind.tag == CriterionTag::theorem2 && noise == NoiseModel::white) return 1.0 / n;
  if (kind.tag == CriterionTag::theorem2 && noise == NoiseModel::psixy) return 1.0;
  if (kind.tag == CriterionTag::genuine4 && noise == NoiseModel::white && n == 4)
    return (max_total_spin(4) - kGenuine4Bound) / (max_total_spin(4) - 2.0);
  throw DomainError("collective_noise_threshold: unsupported criterion/noise/n combination");
}

}  // namespace dicke
