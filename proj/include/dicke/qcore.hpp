#pragma once

// Dense and symmetric-sector representations of N-qubit states, collective
// spin operators and the handful of derived quantities (expectations, Schmidt
// spectra, noisy mixtures) everything else is built from.
//
// Conventions
//   * qubit 1 is the most significant bit of the amplitude index;
//   * |1> is the excited level and the +1 eigenvector of sigma_z, so in the
//     (|0>, |1>) ordering sigma_z = diag(-1, +1), sigma_y = [[0, i], [-i, 0]],
//     which keeps [J_x, J_y] = i J_z;
//   * |m,N> has <J_z> = m - N/2.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dicke/config.hpp"
#include "dicke/errors.hpp"

namespace dicke {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using Qubit2 = Eigen::Matrix<Complex<Real>, 2, 1>;
template <typename Real>
using Matrix2 = Eigen::Matrix<Complex<Real>, 2, 2>;

enum class Axis { x, y, z };
inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};

inline const char* to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

namespace detail {

inline void require_dense_qubits(int n, const char* what) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw DomainError(std::string(what) + ": qubit count " + std::to_string(n) +
                      " outside dense backend range 1.." + std::to_string(kMaxDenseQubits));
  }
}

inline void require_symmetric_qubits(int n, const char* what) {
  if (n < 1 || n > kMaxSymmetricQubits) {
    throw DomainError(std::string(what) + ": qubit count " + std::to_string(n) +
                      " outside symmetric backend range 1.." +
                      std::to_string(kMaxSymmetricQubits));
  }
}

inline Eigen::Index dense_dim(int n) { return Eigen::Index{1} << n; }

/// Bit mask of qubit q (1-based, qubit 1 = MSB) in an n-qubit index.
inline std::uint64_t qubit_mask(int n, int q) { return std::uint64_t{1} << (n - q); }

inline int popcount(Eigen::Index i) { return std::popcount(static_cast<std::uint64_t>(i)); }

/// Exact for the dense range; floating point beyond.
inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return n <= 60 ? std::round(r) : r;
}

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

template <class Derived>
auto hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.size() == 0) return Real(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Kronecker product of two dense Eigen expressions.
template <class A, class B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real = double>
Matrix2<Real> pauli(Axis axis) {
  using C = Complex<Real>;
  const C i{0, 1};
  Matrix2<Real> s;
  switch (axis) {
    case Axis::x: s << C(0), C(1), C(1), C(0); break;
    case Axis::y: s << C(0), i, -i, C(0); break;
    case Axis::z: s << C(-1), C(0), C(0), C(1); break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Value types

template <typename Real = double>
class BasicPureState {
 public:
  using Vector = CVector<Real>;

  BasicPureState(int n_qubits, Vector amplitudes, const Tolerances& tol = kDefaultTolerances)
      : n_(n_qubits), amps_(std::move(amplitudes)) {
    detail::require_dense_qubits(n_, "PureState");
    if (amps_.size() != detail::dense_dim(n_))
      throw DomainError("PureState: expected " + std::to_string(detail::dense_dim(n_)) +
                        " amplitudes, got " + std::to_string(amps_.size()));
    const double defect = std::abs(static_cast<double>(amps_.squaredNorm()) - 1.0);
    if (!(defect <= tol.norm))
      throw DomainError("PureState: squared norm differs from 1 by " + std::to_string(defect));
  }

  /// Rescales to unit norm; rejects the zero vector.
  static BasicPureState normalized(int n_qubits, Vector amplitudes) {
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0))) throw DomainError("PureState: cannot normalize a zero vector");
    amplitudes /= norm;
    return BasicPureState(n_qubits, std::move(amplitudes));
  }

  int n_qubits() const { return n_; }
  Eigen::Index dimension() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  Complex<Real> operator[](Eigen::Index i) const { return amps_(i); }

 private:
  int n_;
  Vector amps_;
};

template <typename Real = double>
class BasicDensityMatrix {
 public:
  using Matrix = CMatrix<Real>;

  BasicDensityMatrix(int n_qubits, Matrix matrix, const Tolerances& tol = kDefaultTolerances)
      : BasicDensityMatrix(n_qubits, std::move(matrix), tol, false) {}

  /// Skips the eigenvalue-based positivity check. For builders whose output is
  /// positive by construction (convex mixtures of projectors and identity).
  static BasicDensityMatrix assume_positive(int n_qubits, Matrix matrix,
                                            const Tolerances& tol = kDefaultTolerances) {
    return BasicDensityMatrix(n_qubits, std::move(matrix), tol, true);
  }

  static BasicDensityMatrix projector(const BasicPureState<Real>& psi) {
    return assume_positive(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static BasicDensityMatrix maximally_mixed(int n_qubits) {
    detail::require_dense_qubits(n_qubits, "maximally_mixed");
    const auto d = detail::dense_dim(n_qubits);
    return assume_positive(n_qubits, Matrix::Identity(d, d) / Real(d));
  }

  int n_qubits() const { return n_; }
  Eigen::Index dimension() const { return rho_.rows(); }
  const Matrix& matrix() const { return rho_; }

 private:
  BasicDensityMatrix(int n_qubits, Matrix matrix, const Tolerances& tol, bool trusted)
      : n_(n_qubits), rho_(std::move(matrix)) {
    detail::require_dense_qubits(n_, "DensityMatrix");
    const auto d = detail::dense_dim(n_);
    if (rho_.rows() != d || rho_.cols() != d)
      throw DomainError("DensityMatrix: expected " + std::to_string(d) + "x" +
                        std::to_string(d) + " matrix");
    if (!(detail::hermitian_defect(rho_) <= tol.hermitian))
      throw DomainError("DensityMatrix: matrix is not Hermitian");
    const double tr_defect = std::abs(static_cast<double>(rho_.trace().real()) - 1.0);
    if (!(tr_defect <= tol.trace))
      throw DomainError("DensityMatrix: trace differs from 1 by " + std::to_string(tr_defect));
    if (!trusted) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
      if (es.eigenvalues()(0) < -tol.psd)
        throw DomainError("DensityMatrix: negative eigenvalue " +
                          std::to_string(static_cast<double>(es.eigenvalues()(0))));
    }
  }

  int n_;
  Matrix rho_;
};

/// State in the maximal-J (permutation-symmetric) sector, amplitude m = number
/// of excitations.
template <typename Real = double>
class BasicSymmetricState {
 public:
  using Vector = CVector<Real>;

  BasicSymmetricState(int n_qubits, Vector sector_amplitudes,
                      const Tolerances& tol = kDefaultTolerances)
      : n_(n_qubits), amps_(std::move(sector_amplitudes)) {
    detail::require_symmetric_qubits(n_, "SymmetricState");
    if (amps_.size() != n_ + 1)
      throw DomainError("SymmetricState: expected " + std::to_string(n_ + 1) + " amplitudes");
    const double defect = std::abs(static_cast<double>(amps_.squaredNorm()) - 1.0);
    if (!(defect <= tol.norm))
      throw DomainError("SymmetricState: squared norm differs from 1 by " +
                        std::to_string(defect));
  }

  int n_qubits() const { return n_; }
  const Vector& sector_amplitudes() const { return amps_; }

  /// Dense 2^n representation; each basis label with m ones carries a_m / sqrt(C(n,m)).
  BasicPureState<Real> embed() const {
    detail::require_dense_qubits(n_, "SymmetricState::embed");
    CVector<Real> v(detail::dense_dim(n_));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const int m = detail::popcount(i);
      v(i) = amps_(m) / std::sqrt(Real(detail::binomial(n_, m)));
    }
    return BasicPureState<Real>::normalized(n_, std::move(v));
  }

 private:
  int n_;
  Vector amps_;
};

template <typename Real = double>
class BasicHermitianOperator {
 public:
  using Matrix = CMatrix<Real>;

  explicit BasicHermitianOperator(Matrix matrix, const Tolerances& tol = kDefaultTolerances)
      : m_(std::move(matrix)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw DomainError("HermitianOperator: matrix must be square and nonempty");
    if (!(detail::hermitian_defect(m_) <= tol.hermitian))
      throw DomainError("HermitianOperator: matrix is not Hermitian");
  }

  Eigen::Index dimension() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  friend BasicHermitianOperator operator+(const BasicHermitianOperator& a,
                                          const BasicHermitianOperator& b) {
    if (a.dimension() != b.dimension()) throw DomainError("HermitianOperator: dimension mismatch");
    return BasicHermitianOperator(a.m_ + b.m_);
  }
  friend BasicHermitianOperator operator-(const BasicHermitianOperator& a,
                                          const BasicHermitianOperator& b) {
    if (a.dimension() != b.dimension()) throw DomainError("HermitianOperator: dimension mismatch");
    return BasicHermitianOperator(a.m_ - b.m_);
  }
  friend BasicHermitianOperator operator*(Real s, const BasicHermitianOperator& a) {
    return BasicHermitianOperator(s * a.m_);
  }
  friend BasicHermitianOperator operator*(const BasicHermitianOperator& a,
                                          const BasicHermitianOperator& b) {
    if (a.dimension() != b.dimension()) throw DomainError("HermitianOperator: dimension mismatch");
    // Only Hermitian when the factors commute; the constructor checks.
    return BasicHermitianOperator(a.m_ * b.m_);
  }

 private:
  Matrix m_;
};

/// sum_l a_l <J_l^2> + b_l <J_l>, with a_l >= 0.
template <typename Real = double>
struct BasicQuadraticForm {
  std::array<Real, 3> a{0, 0, 0};
  std::array<Real, 3> b{0, 0, 0};

  void validate() const {
    for (Real v : a)
      if (!(v >= Real(0))) throw DomainError("QuadraticForm: a components must be >= 0");
  }
  bool has_linear_part() const { return b[0] != Real(0) || b[1] != Real(0) || b[2] != Real(0); }
};

/// A nonempty proper subset of the qubits {1..n}.
class Bipartition {
 public:
  Bipartition(int n_qubits, std::vector<int> side_a) : n_(n_qubits), a_(std::move(side_a)) {
    std::sort(a_.begin(), a_.end());
    a_.erase(std::unique(a_.begin(), a_.end()), a_.end());
    if (n_ < 2) throw DomainError("Bipartition: need at least two qubits");
    if (a_.empty() || static_cast<int>(a_.size()) >= n_)
      throw DomainError("Bipartition: side_a must be a nonempty proper subset");
    if (a_.front() < 1 || a_.back() > n_)
      throw DomainError("Bipartition: qubit index outside 1.." + std::to_string(n_));
  }

  /// {1..k} | {k+1..n}
  static Bipartition leading(int n_qubits, int k) {
    std::vector<int> side(static_cast<std::size_t>(std::max(k, 0)));
    for (int i = 0; i < k; ++i) side[static_cast<std::size_t>(i)] = i + 1;
    return Bipartition(n_qubits, std::move(side));
  }

  /// All 2^(n-1) - 1 distinct splits, each listed once with qubit 1 in side_a.
  static std::vector<Bipartition> all(int n_qubits) {
    if (n_qubits < 2 || n_qubits > 30) throw DomainError("Bipartition::all: unsupported n");
    std::vector<Bipartition> out;
    const std::uint64_t rest = std::uint64_t{1} << (n_qubits - 1);
    for (std::uint64_t s = 0; s + 1 < rest; ++s) {
      std::vector<int> side{1};
      for (int q = 2; q <= n_qubits; ++q)
        if (s & (std::uint64_t{1} << (q - 2))) side.push_back(q);
      out.emplace_back(n_qubits, std::move(side));
    }
    return out;
  }

  /// One representative per side size 1..n/2; enough for permutation-invariant states.
  static std::vector<Bipartition> by_size(int n_qubits) {
    std::vector<Bipartition> out;
    for (int k = 1; k <= n_qubits / 2; ++k) out.push_back(leading(n_qubits, k));
    return out;
  }

  int n_qubits() const { return n_; }
  const std::vector<int>& side_a() const { return a_; }
  std::vector<int> side_b() const {
    std::vector<int> b;
    for (int q = 1; q <= n_; ++q)
      if (!contains(q)) b.push_back(q);
    return b;
  }
  bool contains(int q) const { return std::binary_search(a_.begin(), a_.end(), q); }
  int size_a() const { return static_cast<int>(a_.size()); }

  /// Qubit order with side_a first, then side_b, each ascending.
  std::vector<int> ordering() const {
    auto order = a_;
    for (int q : side_b()) order.push_back(q);
    return order;
  }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_;
  std::vector<int> a_;
};

template <typename Real = double>
struct BasicSchmidtSpectrum {
  Bipartition split;
  std::vector<Real> squared_coefficients;  // descending

  Real largest() const { return squared_coefficients.front(); }
};

using PureState = BasicPureState<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using SymmetricState = BasicSymmetricState<double>;
using HermitianOperator = BasicHermitianOperator<double>;
using QuadraticForm = BasicQuadraticForm<double>;
using SchmidtSpectrum = BasicSchmidtSpectrum<double>;

// ---------------------------------------------------------------------------
// Index permutations

/// Index in the basis whose qubit order is `order` (order[0] becomes the MSB).
inline std::uint64_t permuted_index(std::uint64_t index, int n, std::span<const int> order) {
  std::uint64_t out = 0;
  for (int q : order) out = (out << 1) | ((index & detail::qubit_mask(n, q)) ? 1u : 0u);
  return out;
}

/// Reorders amplitudes (or matrix rows/cols) so that qubit order[k] becomes qubit k+1.
template <class Derived>
auto permute_qubits(const Eigen::MatrixBase<Derived>& v, int n, std::span<const int> order) {
  using Scalar = typename Derived::Scalar;
  const auto d = detail::dense_dim(n);
  std::vector<Eigen::Index> map(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i)
    map[static_cast<std::size_t>(i)] =
        static_cast<Eigen::Index>(permuted_index(static_cast<std::uint64_t>(i), n, order));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(v.rows(), v.cols());
  if (v.cols() == 1) {
    for (Eigen::Index i = 0; i < d; ++i) out(map[static_cast<std::size_t>(i)], 0) = v(i, 0);
  } else {
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = v(i, j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// State builders

template <typename Real = double>
BasicPureState<Real> dicke_state(int n, int m) {
  detail::require_dense_qubits(n, "dicke_state");
  if (m < 0 || m > n)
    throw DomainError("dicke_state: excitation count " + std::to_string(m) + " outside 0.." +
                      std::to_string(n));
  CVector<Real> v = CVector<Real>::Zero(detail::dense_dim(n));
  const Real amp = Real(1) / std::sqrt(Real(detail::binomial(n, m)));
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (detail::popcount(i) == m) v(i) = amp;
  return BasicPureState<Real>(n, std::move(v));
}

template <typename Real = double>
BasicSymmetricState<Real> symmetric_dicke(int n, int m) {
  detail::require_symmetric_qubits(n, "symmetric_dicke");
  if (m < 0 || m > n)
    throw DomainError("symmetric_dicke: excitation count " + std::to_string(m) +
                      " outside 0.." + std::to_string(n));
  CVector<Real> v = CVector<Real>::Zero(n + 1);
  v(m) = Real(1);
  return BasicSymmetricState<Real>(n, std::move(v));
}

/// Tensor product of single-qubit states, qubit 1 first.
template <typename Real = double>
BasicPureState<Real> product_state(std::span<const Qubit2<Real>> factors) {
  const int n = static_cast<int>(factors.size());
  detail::require_dense_qubits(n, "product_state");
  CVector<Real> v(1);
  v(0) = Real(1);
  for (const auto& f : factors) v = kron(v, f.normalized());
  return BasicPureState<Real>::normalized(n, std::move(v));
}

/// (|0> + e^{i phi}|1>)^{(x) n} / 2^{n/2}
template <typename Real = double>
BasicPureState<Real> psixy_state(int n, Real phi) {
  detail::require_dense_qubits(n, "psixy_state");
  Qubit2<Real> q;
  q << Complex<Real>(1), std::polar(Real(1), phi);
  q /= std::sqrt(Real(2));
  std::vector<Qubit2<Real>> factors(static_cast<std::size_t>(n), q);
  return product_state<Real>(factors);
}

template <typename Real = double>
BasicSymmetricState<Real> symmetric_psixy(int n, Real phi) {
  detail::require_symmetric_qubits(n, "symmetric_psixy");
  CVector<Real> v(n + 1);
  for (int m = 0; m <= n; ++m) {
    const Real mag = std::exp(Real(0.5) * Real(detail::log_binomial(n, m)) -
                              Real(0.5) * n * std::numbers::ln2_v<Real>);
    v(m) = std::polar(mag, m * phi);
  }
  v /= v.norm();
  return BasicSymmetricState<Real>(n, std::move(v));
}

// ---------------------------------------------------------------------------
// Collective operators

/// I (x) ... (x) op (x) ... (x) I with op on `qubit` (1-based).
template <typename Real = double, class Derived>
CMatrix<Real> single_qubit_operator(int n, int qubit, const Eigen::MatrixBase<Derived>& op) {
  CMatrix<Real> out = CMatrix<Real>::Identity(1, 1);
  for (int q = 1; q <= n; ++q) {
    if (q == qubit) out = kron(out, op);
    else out = kron(out, CMatrix<Real>::Identity(2, 2));
  }
  return out;
}

/// J_axis = (1/2) sum_k sigma_axis^(k), assembled as an explicit sum of Kronecker products.
template <typename Real = double>
BasicHermitianOperator<Real> collective_operator(int n, Axis axis) {
  detail::require_dense_qubits(n, "collective_operator");
  const auto d = detail::dense_dim(n);
  CMatrix<Real> j = CMatrix<Real>::Zero(d, d);
  const Matrix2<Real> s = pauli<Real>(axis);
  for (int q = 1; q <= n; ++q) j += single_qubit_operator<Real>(n, q, s);
  j *= Real(0.5);
  if (!(detail::hermitian_defect(j) <= kDefaultTolerances.hermitian))
    throw InvariantViolation("collective_operator: assembled J is not Hermitian");
  return BasicHermitianOperator<Real>(std::move(j));
}

template <typename Real = double>
BasicHermitianOperator<Real> collective_operator(int n, const BasicQuadraticForm<Real>& form) {
  form.validate();
  detail::require_dense_qubits(n, "collective_operator");
  const auto d = detail::dense_dim(n);
  CMatrix<Real> out = CMatrix<Real>::Zero(d, d);
  for (std::size_t l = 0; l < 3; ++l) {
    if (form.a[l] == Real(0) && form.b[l] == Real(0)) continue;
    const CMatrix<Real> j = collective_operator<Real>(n, kAxes[l]).matrix();
    out += form.a[l] * (j * j) + form.b[l] * j;
  }
  if (!(detail::hermitian_defect(out) <= kDefaultTolerances.hermitian))
    throw InvariantViolation("collective_operator: assembled form is not Hermitian");
  return BasicHermitianOperator<Real>(std::move(out));
}

/// Matrix-free J_axis applied to every column of `v` (dense 2^n rows).
template <class Derived>
auto apply_collective(Axis axis, int n, const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  const auto d = detail::dense_dim(n);
  if (v.rows() != d) throw DomainError("apply_collective: dimension mismatch");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(v.rows(), v.cols());
  const Real half(0.5);
  if (axis == Axis::z) {
    for (Eigen::Index i = 0; i < d; ++i)
      out.row(i) = (Real(detail::popcount(i)) - half * n) * v.row(i);
    return out;
  }
  const Scalar up = axis == Axis::x ? Scalar(half) : Scalar(0, -half);  // |0> -> |1>
  const Scalar down = axis == Axis::x ? Scalar(half) : Scalar(0, half);  // |1> -> |0>
  for (int q = 1; q <= n; ++q) {
    const auto mask = static_cast<Eigen::Index>(detail::qubit_mask(n, q));
    for (Eigen::Index i = 0; i < d; ++i) out.row(i ^ mask) += ((i & mask) ? down : up) * v.row(i);
  }
  return out;
}

/// J_axis in the (n+1)-dimensional symmetric sector, applied to every column of `v`.
template <class Derived>
auto apply_collective_sector(Axis axis, int n, const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  if (v.rows() != n + 1) throw DomainError("apply_collective_sector: dimension mismatch");
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(v.rows(), v.cols());
  if (axis == Axis::z) {
    for (int m = 0; m <= n; ++m) out.row(m) = (Real(m) - Real(0.5) * n) * v.row(m);
    return out;
  }
  // J+ |m> = sqrt((n-m)(m+1)) |m+1>
  for (int m = 0; m < n; ++m) {
    const Real c = Real(0.5) * std::sqrt(Real(n - m) * Real(m + 1));
    const Scalar up = axis == Axis::x ? Scalar(c) : Scalar(0, -c);
    const Scalar down = axis == Axis::x ? Scalar(c) : Scalar(0, c);
    out.row(m + 1) += up * v.row(m);
    out.row(m) += down * v.row(m + 1);
  }
  return out;
}

/// First and second moments <J_l>, <J_l^2> for l = x, y, z.
template <typename Real = double>
struct CollectiveMoments {
  std::array<Real, 3> first{};
  std::array<Real, 3> second{};

  Real mean(Axis a) const { return first[static_cast<std::size_t>(a)]; }
  Real square(Axis a) const { return second[static_cast<std::size_t>(a)]; }
  Real variance(Axis a) const { return square(a) - mean(a) * mean(a); }
  Real total_spin_squared() const { return second[0] + second[1] + second[2]; }
  Real evaluate(const BasicQuadraticForm<Real>& f) const {
    Real s(0);
    for (std::size_t l = 0; l < 3; ++l) s += f.a[l] * second[l] + f.b[l] * first[l];
    return s;
  }
};

template <typename Real>
CollectiveMoments<Real> collective_moments(const BasicPureState<Real>& psi) {
  CollectiveMoments<Real> out;
  for (std::size_t l = 0; l < 3; ++l) {
    const CVector<Real> w = apply_collective(kAxes[l], psi.n_qubits(), psi.amplitudes());
    out.first[l] = psi.amplitudes().dot(w).real();
    out.second[l] = w.squaredNorm();
  }
  return out;
}

template <typename Real>
CollectiveMoments<Real> collective_moments(const BasicSymmetricState<Real>& psi) {
  CollectiveMoments<Real> out;
  for (std::size_t l = 0; l < 3; ++l) {
    const CVector<Real> w =
        apply_collective_sector(kAxes[l], psi.n_qubits(), psi.sector_amplitudes());
    out.first[l] = psi.sector_amplitudes().dot(w).real();
    out.second[l] = w.squaredNorm();
  }
  return out;
}

template <typename Real>
CollectiveMoments<Real> collective_moments(const BasicDensityMatrix<Real>& rho) {
  CollectiveMoments<Real> out;
  for (std::size_t l = 0; l < 3; ++l) {
    const CMatrix<Real> j_rho = apply_collective(kAxes[l], rho.n_qubits(), rho.matrix());
    out.first[l] = j_rho.trace().real();
    // J rho J = J (J rho)^dagger
    const CMatrix<Real> j_rho_j = apply_collective(kAxes[l], rho.n_qubits(), j_rho.adjoint());
    out.second[l] = j_rho_j.trace().real();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expectation values

template <typename Real>
Real expectation(const BasicPureState<Real>& psi, const BasicHermitianOperator<Real>& op) {
  if (op.dimension() != psi.dimension())
    throw DomainError("expectation: operator dimension " + std::to_string(op.dimension()) +
                      " does not match state dimension " + std::to_string(psi.dimension()));
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes()).real();
}

template <typename Real>
Real expectation(const BasicDensityMatrix<Real>& rho, const BasicHermitianOperator<Real>& op) {
  if (op.dimension() != rho.dimension())
    throw DomainError("expectation: operator dimension " + std::to_string(op.dimension()) +
                      " does not match state dimension " + std::to_string(rho.dimension()));
  return rho.matrix().cwiseProduct(op.matrix().transpose()).sum().real();
}

/// Collective form on any state type; the symmetric sector is evaluated in n+1 dimensions.
template <typename State, typename Real>
Real expectation(const State& state, const BasicQuadraticForm<Real>& form) {
  return collective_moments(state).evaluate(form);
}

template <typename State>
auto expectation(const State& state, Axis axis) {
  return collective_moments(state).mean(axis);
}

/// <psi|rho|psi>
template <typename Real>
Real fidelity(const BasicPureState<Real>& target, const BasicDensityMatrix<Real>& rho) {
  if (target.dimension() != rho.dimension()) throw DomainError("fidelity: dimension mismatch");
  return target.amplitudes().dot(rho.matrix() * target.amplitudes()).real();
}

template <typename Real>
Real fidelity(const BasicPureState<Real>& target, const BasicPureState<Real>& psi) {
  if (target.dimension() != psi.dimension()) throw DomainError("fidelity: dimension mismatch");
  return std::norm(target.amplitudes().dot(psi.amplitudes()));
}

// ---------------------------------------------------------------------------
// Schmidt spectrum

/// Amplitudes reshaped into a (2^|A|) x (2^|B|) matrix along the split.
template <typename Real>
CMatrix<Real> split_matrix(const BasicPureState<Real>& psi, const Bipartition& split) {
  const int n = psi.n_qubits();
  if (split.n_qubits() != n) throw DomainError("split_matrix: split is for a different n");
  const auto order = split.ordering();
  const CVector<Real> v = permute_qubits(psi.amplitudes(), n, order);
  const auto db = detail::dense_dim(n - split.size_a());
  const auto da = detail::dense_dim(split.size_a());
  CMatrix<Real> m(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) m(i, j) = v(i * db + j);
  return m;
}

/// Squared singular values of the split matrix, descending. Values below 1e-20
/// (numerically zero Schmidt coefficients) are dropped.
template <typename Real>
BasicSchmidtSpectrum<Real> schmidt_spectrum(const BasicPureState<Real>& psi, const Bipartition& split,
                                            const Tolerances& tol = kDefaultTolerances) {
  const CMatrix<Real> m = split_matrix(psi, split);
  Eigen::JacobiSVD<CMatrix<Real>> svd(m);
  std::vector<Real> sq;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const Real s = svd.singularValues()(k);
    if (s * s > Real(1e-20)) sq.push_back(s * s);
  }
  std::sort(sq.begin(), sq.end(), std::greater<>());
  Real total(0);
  for (Real s : sq) total += s;
  if (!(std::abs(static_cast<double>(total) - 1.0) <= tol.schmidt_sum))
    throw InvariantViolation("schmidt_spectrum: squared coefficients do not sum to 1");
  return {split, std::move(sq)};
}

// ---------------------------------------------------------------------------
// Noise families

/// p * I / 2^n + (1 - p) |target><target|
template <typename Real>
BasicDensityMatrix<Real> white_noise_mix(const BasicPureState<Real>& target, Real p) {
  if (!(p >= Real(0) && p <= Real(1)))
    throw DomainError("white_noise_mix: p = " + std::to_string(static_cast<double>(p)) +
                      " outside [0, 1]");
  const auto d = target.dimension();
  CMatrix<Real> rho = (Real(1) - p) * (target.amplitudes() * target.amplitudes().adjoint());
  rho.diagonal().array() += p / Real(d);
  return BasicDensityMatrix<Real>::assume_positive(target.n_qubits(), std::move(rho));
}

/// p |Psi_xy(phi)><Psi_xy(phi)| + (1 - p) |n/2,n><n/2,n|
template <typename Real = double>
BasicDensityMatrix<Real> psixy_noise_mix(int n, Real p, Real phi) {
  if (n % 2 != 0) throw DomainError("psixy_noise_mix: n must be even, got " + std::to_string(n));
  if (!(p >= Real(0) && p <= Real(1)))
    throw DomainError("psixy_noise_mix: p = " + std::to_string(static_cast<double>(p)) +
                      " outside [0, 1]");
  const auto xy = psixy_state<Real>(n, phi);
  const auto dk = dicke_state<Real>(n, n / 2);
  CMatrix<Real> rho = p * (xy.amplitudes() * xy.amplitudes().adjoint()) +
                      (Real(1) - p) * (dk.amplitudes() * dk.amplitudes().adjoint());
  return BasicDensityMatrix<Real>::assume_positive(n, std::move(rho));
}

}  // namespace dicke
