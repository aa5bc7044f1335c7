#include "dicke/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace dicke {

namespace {

void require_operator_dim(const HermitianOperator& op, int n, const char* what) {
  detail::require_dense_qubits(n, what);
  if (op.dimension() != detail::dense_dim(n))
    throw DomainError(std::string(what) + ": operator dimension " +
                      std::to_string(op.dimension()) + " does not match 2^" + std::to_string(n));
}

Eigenpair top_of(const CMatrix<double>& h) {
  const CMatrix<double> sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(sym);
  const auto last = sym.rows() - 1;
  return {es.eigenvalues()(last), es.eigenvectors().col(last)};
}

/// Amplitudes of the product of all factors except qubit k, with |0>+|1> on k.
CVector<double> rest_product(std::span<const Qubit2<double>> factors, std::size_t k) {
  CVector<double> v = CVector<double>::Ones(1);
  for (std::size_t q = 0; q < factors.size(); ++q)
    v = kron(v, q == k ? Qubit2<double>::Ones() : factors[q]);
  return v;
}

/// Amplitudes in original qubit order of side_a (x) side_b laid out A-first.
CVector<double> assemble_split(const Bipartition& split, const CVector<double>& a,
                               const CVector<double>& b) {
  const int n = split.n_qubits();
  const auto order = split.ordering();
  const CVector<double> ab = kron(a, b);
  CVector<double> v(ab.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = ab(static_cast<Eigen::Index>(permuted_index(static_cast<std::uint64_t>(i), n, order)));
  return v;
}

std::complex<double> complex_normal(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return Rng(seq);
}

double max_eigenvalue(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(op.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Eigenpair top_eigenpair(const HermitianOperator& op) { return top_of(op.matrix()); }

// ---------------------------------------------------------------------------

std::array<double, 3> bloch_of(const Qubit2<double>& q) {
  const Qubit2<double> u = q.normalized();
  std::array<double, 3> s{};
  for (std::size_t l = 0; l < 3; ++l) s[l] = 0.5 * u.dot(pauli(kAxes[l]) * u).real();
  return s;
}

Qubit2<double> qubit_from_bloch(const std::array<double, 3>& s) {
  const double len = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  if (!(len > 0.0)) throw DomainError("qubit_from_bloch: zero Bloch vector");
  Matrix2<double> h = Matrix2<double>::Zero();
  for (std::size_t l = 0; l < 3; ++l) h += (s[l] / len) * pauli(kAxes[l]);
  Eigen::SelfAdjointEigenSolver<Matrix2<double>> es(h);
  return es.eigenvectors().col(1);
}

BlochProduct BlochProduct::from_factors(std::span<const Qubit2<double>> factors) {
  BlochProduct b;
  for (const auto& f : factors) b.vectors.push_back(bloch_of(f));
  return b;
}

bool BlochProduct::is_pure(double tol) const {
  return std::all_of(vectors.begin(), vectors.end(), [tol](const auto& s) {
    return std::abs(std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) - 0.5) <= tol;
  });
}

PureState BlochProduct::to_state() const {
  if (!is_pure()) throw DomainError("BlochProduct::to_state: Bloch vectors must have length 1/2");
  std::vector<Qubit2<double>> factors;
  for (const auto& s : vectors) factors.push_back(qubit_from_bloch(s));
  return product_state<double>(factors);
}

PureState BiseparableArgument::to_state() const {
  return PureState::normalized(split.n_qubits(), assemble_split(split, side_a, side_b));
}

// ---------------------------------------------------------------------------

ProductAscent ascend_product_state(const HermitianOperator& op, int n,
                                   std::vector<Qubit2<double>> start, int max_sweeps,
                                   double tol) {
  require_operator_dim(op, n, "ascend_product_state");
  if (static_cast<int>(start.size()) != n)
    throw DomainError("ascend_product_state: need one starting factor per qubit");
  for (auto& f : start) f.normalize();

  ProductAscent run;
  run.factors = std::move(start);
  run.values.push_back(expectation(product_state<double>(run.factors), op));
  const auto d = detail::dense_dim(n);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double value = run.values.back();
    for (int k = 0; k < n; ++k) {
      const CVector<double> rest = rest_product(run.factors, static_cast<std::size_t>(k));
      const auto mask = static_cast<Eigen::Index>(detail::qubit_mask(n, k + 1));
      CMatrix<double> basis = CMatrix<double>::Zero(d, 2);
      for (Eigen::Index i = 0; i < d; ++i) basis(i, (i & mask) ? 1 : 0) = rest(i);
      const CMatrix<double> effective = basis.adjoint() * (op.matrix() * basis);
      const Eigenpair top = top_of(effective);
      // Exact conditional optimum; never below the current value.
      if (top.value >= value) {
        run.factors[static_cast<std::size_t>(k)] = top.vector;
        value = top.value;
      }
    }
    const double previous = run.values.back();
    run.values.push_back(value);
    if (value - previous < tol) break;
  }
  return run;
}

OptimizationResult maximize_over_product_states(const HermitianOperator& op, int n, int restarts,
                                                std::uint64_t seed) {
  require_operator_dim(op, n, "maximize_over_product_states");
  if (restarts < 1) throw DomainError("maximize_over_product_states: restarts must be >= 1");

  ProductAscent best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(r));
    std::vector<Qubit2<double>> start;
    for (int q = 0; q < n; ++q) start.push_back(haar_qubit(rng));
    ProductAscent run = ascend_product_state(op, n, std::move(start));
    if (run.values.back() > best_value) {
      best_value = run.values.back();
      best = std::move(run);
    }
  }
  OptimizationResult out;
  out.argument = BlochProduct::from_factors(best.factors);
  out.value = expectation(std::get<BlochProduct>(out.argument).to_state(), op);
  out.restarts_used = restarts;
  out.seed = seed;
  return out;
}

OptimizationResult maximize_over_ti_product(const QuadraticForm& form, int n) {
  form.validate();
  if (n < 1) throw DomainError("maximize_over_ti_product: n must be positive");
  constexpr int kGrid = 4096;
  constexpr int kRefine = 16;
  constexpr double kRadius = 0.5;

  // Fibonacci lattice on the sphere of radius 1/2.
  std::vector<std::pair<double, std::array<double, 3>>> grid;
  grid.reserve(kGrid);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < kGrid; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / kGrid;
    const double rho = std::sqrt(1.0 - z * z);
    const double phi = golden * i;
    const std::array<double, 3> s{kRadius * rho * std::cos(phi), kRadius * rho * std::sin(phi),
                                  kRadius * z};
    grid.emplace_back(ti_product_objective(form, n, s), s);
  }
  std::partial_sort(grid.begin(), grid.begin() + kRefine, grid.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  // The objective is convex, so moving to the sphere point that maximizes its
  // linearization never decreases it.
  auto gradient = [&](const std::array<double, 3>& s) {
    std::array<double, 3> g{};
    for (std::size_t l = 0; l < 3; ++l) g[l] = 2.0 * form.a[l] * n * (n - 1.0) * s[l] + form.b[l] * n;
    return g;
  };
  double best_value = -std::numeric_limits<double>::infinity();
  std::array<double, 3> best_s{};
  for (int r = 0; r < kRefine; ++r) {
    auto s = grid[static_cast<std::size_t>(r)].second;
    double f = grid[static_cast<std::size_t>(r)].first;
    for (int it = 0; it < 200000; ++it) {
      const auto g = gradient(s);
      const double gn = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
      if (gn == 0.0) break;
      std::array<double, 3> next{kRadius * g[0] / gn, kRadius * g[1] / gn, kRadius * g[2] / gn};
      const double fn = ti_product_objective(form, n, next);
      const double step = std::abs(next[0] - s[0]) + std::abs(next[1] - s[1]) + std::abs(next[2] - s[2]);
      if (fn < f) break;
      s = next;
      f = fn;
      if (step < 1e-15) break;
    }
    if (f > best_value) {
      best_value = f;
      best_s = s;
    }
  }
  OptimizationResult out;
  out.value = best_value;
  out.argument = BlochProduct{std::vector<std::array<double, 3>>(static_cast<std::size_t>(n), best_s)};
  out.restarts_used = kRefine;
  out.seed = 0;
  return out;
}

bool is_permutation_invariant(const HermitianOperator& op, int n, double tol) {
  require_operator_dim(op, n, "is_permutation_invariant");
  for (int q = 1; q < n; ++q) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    std::swap(order[static_cast<std::size_t>(q - 1)], order[static_cast<std::size_t>(q)]);
    const CMatrix<double> swapped = permute_qubits(op.matrix(), n, order);
    if ((swapped - op.matrix()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

OptimizationResult maximize_over_biseparable(const HermitianOperator& op, int n, int restarts,
                                             std::uint64_t seed) {
  require_operator_dim(op, n, "maximize_over_biseparable");
  if (n < 2 || n > kMaxBiseparableQubits)
    throw DomainError("maximize_over_biseparable: n must lie in 2.." +
                      std::to_string(kMaxBiseparableQubits));
  if (restarts < 1) throw DomainError("maximize_over_biseparable: restarts must be >= 1");

  const auto splits =
      is_permutation_invariant(op, n) ? Bipartition::by_size(n) : Bipartition::all(n);
  const auto d = detail::dense_dim(n);

  double best_value = -std::numeric_limits<double>::infinity();
  std::optional<BiseparableArgument> best;
  std::uint64_t stream = 0;
  for (const auto& split : splits) {
    const auto order = split.ordering();
    const CMatrix<double> permuted = permute_qubits(op.matrix(), n, order);
    const auto da = detail::dense_dim(split.size_a());
    const auto db = d / da;
    for (int r = 0; r < restarts; ++r, ++stream) {
      Rng rng = make_stream(seed, stream);
      CVector<double> a = haar_vector(da, rng);
      CVector<double> b = haar_vector(db, rng);
      double value = -std::numeric_limits<double>::infinity();
      for (int sweep = 0; sweep < 5000; ++sweep) {
        CMatrix<double> ka = CMatrix<double>::Zero(d, da);
        for (Eigen::Index i = 0; i < da; ++i) ka.block(i * db, i, db, 1) = b;
        a = top_of(ka.adjoint() * (permuted * ka)).vector;
        CMatrix<double> kb = CMatrix<double>::Zero(d, db);
        for (Eigen::Index i = 0; i < da; ++i)
          kb.block(i * db, 0, db, db) = a(i) * CMatrix<double>::Identity(db, db);
        const Eigenpair side_b = top_of(kb.adjoint() * (permuted * kb));
        b = side_b.vector;
        const double previous = value;
        value = side_b.value;
        if (value - previous < 1e-12) break;
      }
      if (value > best_value) {
        best_value = value;
        best = BiseparableArgument{split, a, b};
      }
    }
  }
  OptimizationResult out;
  out.value = expectation(best->to_state(), op);
  out.argument = std::move(*best);
  out.restarts_used = restarts;
  out.seed = seed;
  return out;
}

// ---------------------------------------------------------------------------

Qubit2<double> haar_qubit(Rng& rng) {
  Qubit2<double> q;
  q << complex_normal(rng), complex_normal(rng);
  return q.normalized();
}

CVector<double> haar_vector(Eigen::Index dim, Rng& rng) {
  CVector<double> v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal(rng);
  return v.normalized();
}

StateSampler::StateSampler(SampleKind kind, int n, std::uint64_t seed)
    : kind_(kind), n_(n), seed_(seed) {
  detail::require_dense_qubits(n, "StateSampler");
  if (kind == SampleKind::biseparable && n < 2)
    throw DomainError("StateSampler: biseparable states need at least two qubits");
}

PureState StateSampler::next_pure() {
  Rng rng = make_stream(seed_, index_++);
  switch (kind_) {
    case SampleKind::pure:
      return PureState::normalized(n_, haar_vector(detail::dense_dim(n_), rng));
    case SampleKind::product: {
      std::vector<Qubit2<double>> factors;
      for (int q = 0; q < n_; ++q) factors.push_back(haar_qubit(rng));
      return product_state<double>(factors);
    }
    case SampleKind::biseparable: {
      const auto splits = Bipartition::all(n_);
      std::uniform_int_distribution<std::size_t> pick(0, splits.size() - 1);
      const Bipartition& split = splits[pick(rng)];
      CVector<double> a = haar_vector(detail::dense_dim(split.size_a()), rng);
      CVector<double> b = haar_vector(detail::dense_dim(n_ - split.size_a()), rng);
      return BiseparableArgument{split, std::move(a), std::move(b)}.to_state();
    }
    case SampleKind::density: break;
  }
  throw DomainError("StateSampler::next_pure: density sampler yields mixed states");
}

DensityMatrix StateSampler::next_density() {
  if (kind_ != SampleKind::density)
    throw DomainError("StateSampler::next_density: sampler kind is not density");
  Rng rng = make_stream(seed_, index_++);
  const auto d = detail::dense_dim(n_);
  CMatrix<double> g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = complex_normal(rng);
  CMatrix<double> rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(n_, std::move(rho));
}

StateSampler::Sample StateSampler::next() {
  if (kind_ == SampleKind::density) return next_density();
  return next_pure();
}

std::vector<StateSampler::Sample> sample_random_states(SampleKind kind, int n, int count,
                                                       std::uint64_t seed) {
  if (count < 1) throw DomainError("sample_random_states: count must be >= 1");
  StateSampler sampler(kind, n, seed);
  std::vector<StateSampler::Sample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

}  // namespace dicke
