#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "dicke/qcore.hpp"

using namespace dicke;
using C = std::complex<double>;

namespace {

// Dense J_axis assembled from apply_collective on basis vectors (independent of
// the Kronecker-sum assembly in collective_operator).
CMatrix<double> matrix_free_j(Axis axis, int n) {
  const auto d = detail::dense_dim(n);
  return apply_collective(axis, n, CMatrix<double>::Identity(d, d));
}

double entry_defect(const CMatrix<double>& a, const CMatrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("dicke_state examples") {
  SUBCASE("zero excitations is |000>") {
    const auto s = dicke_state(3, 0);
    CHECK(std::abs(s[0] - C(1)) < 1e-15);
    CHECK(s.amplitudes().tail(7).norm() < 1e-15);
  }
  SUBCASE("n=2, m=1") {
    const auto s = dicke_state(2, 1);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s[0]) < 1e-15);
    CHECK(std::abs(s[1] - C(h)) < 1e-15);
    CHECK(std::abs(s[2] - C(h)) < 1e-15);
    CHECK(std::abs(s[3]) < 1e-15);
  }
  SUBCASE("n=4, m=2 has six amplitudes 1/sqrt(6)") {
    const auto s = dicke_state(4, 2);
    int nonzero = 0;
    for (Eigen::Index i = 0; i < s.dimension(); ++i) {
      if (std::abs(s[i]) > 1e-15) {
        ++nonzero;
        CHECK(std::abs(s[i] - C(1.0 / std::sqrt(6.0))) < 1e-15);
      }
    }
    CHECK(nonzero == 6);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(dicke_state(3, 4), DomainError);
    CHECK_THROWS_AS(dicke_state(3, -1), DomainError);
    CHECK_THROWS_AS(dicke_state(13, 2), DomainError);
  }
}

TEST_CASE("dicke_state is invariant under every qubit permutation (n <= 8)") {
  for (int n = 1; n <= 8; ++n) {
    for (int m = 0; m <= n; ++m) {
      const auto s = dicke_state(n, m);
      CHECK(std::abs(s.amplitudes().squaredNorm() - 1.0) < 1e-12);
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 1);
      double worst = 0.0;
      do {
        const CVector<double> p = permute_qubits(s.amplitudes(), n, order);
        worst = std::max(worst, (p - s.amplitudes()).cwiseAbs().maxCoeff());
      } while (std::next_permutation(order.begin(), order.end()));
      CHECK(worst == 0.0);
    }
  }
}

TEST_CASE("single-spin z operator follows the excited-positive convention") {
  const auto jz = collective_operator(1, Axis::z).matrix();
  // |0> precedes |1>, and |1> is the +1/2 eigenvector.
  CHECK(std::abs(jz(0, 0) - C(-0.5)) < 1e-15);
  CHECK(std::abs(jz(1, 1) - C(0.5)) < 1e-15);
  CHECK(std::abs(jz(0, 1)) < 1e-15);
  Qubit2<double> one(0, 1);
  CHECK((jz * one - 0.5 * one).norm() < 1e-15);
}

TEST_CASE("angular momentum algebra [J_a, J_b] = i eps_abc J_c for n <= 6") {
  const C i{0, 1};
  for (int n = 1; n <= 6; ++n) {
    const auto jx = collective_operator(n, Axis::x).matrix();
    const auto jy = collective_operator(n, Axis::y).matrix();
    const auto jz = collective_operator(n, Axis::z).matrix();
    CHECK(entry_defect(jx * jy - jy * jx, i * jz) < 1e-12);
    CHECK(entry_defect(jy * jz - jz * jy, i * jx) < 1e-12);
    CHECK(entry_defect(jz * jx - jx * jz, i * jy) < 1e-12);
  }
}

TEST_CASE("matrix-free and assembled collective operators agree") {
  for (int n = 1; n <= 6; ++n)
    for (Axis a : kAxes)
      CHECK(entry_defect(matrix_free_j(a, n), collective_operator(n, a).matrix()) < 1e-14);
}

TEST_CASE("J^2 form on the symmetric sector of four qubits") {
  // Oracle: exact diagonalization of J^2 = Jx^2 + Jy^2 + Jz^2 on the five-dimensional
  // sector, with the ladder coefficients written out by hand.
  const int n = 4;
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(5, 5);
  for (int m = 0; m < n; ++m) jp(m + 1, m) = std::sqrt(double((n - m) * (m + 1)));
  const Eigen::MatrixXd jx = 0.5 * (jp + jp.transpose());
  const Eigen::MatrixXcd jy = C(0, -0.5) * (jp - jp.transpose()).cast<C>();
  Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(5, 5);
  for (int m = 0; m <= n; ++m) jz(m, m) = m - 2.0;
  const Eigen::MatrixXcd j2 = (jx * jx + jz * jz).cast<C>() + jy * jy;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j2);
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(6.0).epsilon(1e-14));

  const auto form = collective_operator(4, QuadraticForm{{1, 1, 1}, {0, 0, 0}});
  for (int m = 0; m <= 4; ++m) {
    const auto s = dicke_state(4, m);
    const CVector<double> applied = form.matrix() * s.amplitudes();
    CHECK((applied - 6.0 * s.amplitudes()).norm() < 1e-12);
  }
  CHECK_THROWS_AS(collective_operator(4, QuadraticForm{{-1, 0, 0}, {0, 0, 0}}), DomainError);
}

TEST_CASE("expectation examples") {
  const auto d24 = dicke_state(4, 2);
  CHECK(std::abs(expectation(d24, Axis::z)) < 1e-14);
  CHECK(expectation(d24, QuadraticForm{{1, 1, 0}, {}}) == doctest::Approx(6.0).epsilon(1e-14));

  // Oracle: Tr(Jx^2) / 16 from the assembled operator.
  const auto jx = collective_operator(4, Axis::x).matrix();
  const double direct = (jx * jx).trace().real() / 16.0;
  CHECK(direct == doctest::Approx(1.0).epsilon(1e-14));
  const auto mixed = DensityMatrix::maximally_mixed(4);
  CHECK(collective_moments(mixed).square(Axis::x) == doctest::Approx(direct).epsilon(1e-14));

  const auto jz4 = collective_operator(4, Axis::z);
  CHECK_THROWS_AS(expectation(dicke_state(3, 1), jz4), DomainError);
  CHECK_THROWS_AS(expectation(DensityMatrix::maximally_mixed(3), jz4), DomainError);
}

TEST_CASE("density and pure moments agree on projectors") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 5; ++n) {
    CVector<double> v(detail::dense_dim(n));
    for (auto& x : v) x = C(g(rng), g(rng));
    const auto psi = PureState::normalized(n, v);
    const auto a = collective_moments(psi);
    const auto b = collective_moments(DensityMatrix::projector(psi));
    for (std::size_t l = 0; l < 3; ++l) {
      CHECK(a.first[l] == doctest::Approx(b.first[l]).epsilon(1e-12));
      CHECK(a.second[l] == doctest::Approx(b.second[l]).epsilon(1e-12));
    }
  }
}

TEST_CASE("symmetric sector and dense backends agree for n <= 10") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 10; ++n) {
    CVector<double> amps(n + 1);
    for (auto& x : amps) x = C(g(rng), g(rng));
    amps.normalize();
    const SymmetricState sym(n, amps);
    const auto dense = sym.embed();
    const auto ms = collective_moments(sym);
    const auto md = collective_moments(dense);
    for (std::size_t l = 0; l < 3; ++l) {
      CHECK(std::abs(ms.first[l] - md.first[l]) < 1e-10);
      CHECK(std::abs(ms.second[l] - md.second[l]) < 1e-10);
    }
    // Maximal-J sector identity.
    CHECK(std::abs(ms.total_spin_squared() - 0.5 * n * (0.5 * n + 1)) < 1e-10);
    // Embedding is permutation invariant.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.rbegin(), order.rend(), 1);
    CHECK((permute_qubits(dense.amplitudes(), n, order) - dense.amplitudes()).norm() < 1e-14);
  }
  for (int n = 1; n <= 10; ++n)
    for (int m = 0; m <= n; ++m)
      CHECK((symmetric_dicke(n, m).embed().amplitudes() - dicke_state(n, m).amplitudes()).norm() <
            1e-14);
}

TEST_CASE("schmidt_spectrum examples") {
  const auto d24 = dicke_state(4, 2);
  const auto s12 = schmidt_spectrum(d24, Bipartition(4, {1, 2}));
  REQUIRE(s12.squared_coefficients.size() == 3);
  CHECK(s12.squared_coefficients[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s12.squared_coefficients[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(s12.squared_coefficients[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // Oracle: C(1,k) C(3,2-k) / 6 = 3/6, 3/6.
  const auto s1 = schmidt_spectrum(d24, Bipartition(4, {1}));
  REQUIRE(s1.squared_coefficients.size() == 2);
  CHECK(s1.squared_coefficients[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s1.squared_coefficients[1] == doctest::Approx(0.5).epsilon(1e-12));

  for (const auto& split : Bipartition::all(4)) {
    const auto product = schmidt_spectrum(dicke_state(4, 0), split);
    REQUIRE(product.squared_coefficients.size() == 1);
    CHECK(product.squared_coefficients[0] == doctest::Approx(1.0));
  }

  CHECK_THROWS_AS(Bipartition(4, {}), DomainError);
  CHECK_THROWS_AS(Bipartition(4, {1, 2, 3, 4}), DomainError);
  CHECK_THROWS_AS(Bipartition(4, {0, 2}), DomainError);
}

TEST_CASE("Dicke Schmidt spectra match the binomial formula on every split (n <= 8)") {
  for (int n = 2; n <= 8; ++n) {
    for (int m = 0; m <= n; ++m) {
      const auto psi = dicke_state(n, m);
      for (const auto& split : Bipartition::all(n)) {
        const auto spec = schmidt_spectrum(psi, split);
        const int n1 = split.size_a();
        std::vector<double> expected;
        for (int k = 0; k <= std::min(n1, m); ++k) {
          const double v = detail::binomial(n1, k) * detail::binomial(n - n1, m - k) /
                           detail::binomial(n, m);
          if (v > 0) expected.push_back(v);
        }
        std::sort(expected.begin(), expected.end(), std::greater<>());
        REQUIRE(spec.squared_coefficients.size() == expected.size());
        double sum = 0;
        for (std::size_t k = 0; k < expected.size(); ++k) {
          CHECK(std::abs(spec.squared_coefficients[k] - expected[k]) < 1e-10);
          sum += spec.squared_coefficients[k];
        }
        CHECK(std::abs(sum - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("white_noise_mix") {
  const auto d24 = dicke_state(4, 2);
  const auto pure = white_noise_mix(d24, 0.0);
  CHECK((pure.matrix() - d24.amplitudes() * d24.amplitudes().adjoint()).norm() < 1e-15);
  const auto full = white_noise_mix(d24, 1.0);
  for (Eigen::Index i = 0; i < 16; ++i)
    CHECK(std::abs(full.matrix()(i, i) - C(1.0 / 16.0)) < 1e-15);
  // 0.3/16 + 0.7
  CHECK(fidelity(d24, white_noise_mix(d24, 0.3)) == doctest::Approx(0.71875).epsilon(1e-14));
  CHECK_THROWS_AS(white_noise_mix(d24, -0.1), DomainError);
  CHECK_THROWS_AS(white_noise_mix(d24, 1.5), DomainError);

  // Every mixture passes the full (eigenvalue-checked) density validation.
  for (double p : {0.0, 0.25, 0.5, 1.0})
    CHECK_NOTHROW(DensityMatrix(4, white_noise_mix(d24, p).matrix()));
}

TEST_CASE("psixy state and noise family") {
  const auto q = psixy_state(1, 0.0);
  CHECK(std::abs(q[0] - C(1 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(q[1] - C(1 / std::sqrt(2.0))) < 1e-15);

  for (double phi : {0.0, 0.3, 1.7, -2.2})
    CHECK(expectation(psixy_state(4, phi), QuadraticForm{{1, 1, 0}, {}}) ==
          doctest::Approx(5.0).epsilon(1e-13));

  // Per qubit <sigma_y> = -sin(phi) in the right-handed excited-positive frame.
  CHECK(expectation(psixy_state(2, std::numbers::pi / 2), Axis::y) ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(expectation(psixy_state(2, std::numbers::pi / 2), Axis::x) ==
        doctest::Approx(0.0).epsilon(1e-14));

  const auto r0 = psixy_noise_mix(4, 0.0, 0.0);
  const auto d24 = dicke_state(4, 2);
  CHECK((r0.matrix() - d24.amplitudes() * d24.amplitudes().adjoint()).norm() < 1e-15);
  const auto r1 = psixy_noise_mix(2, 1.0, 0.0);
  const CVector<double> pp = CVector<double>::Constant(4, 0.5);
  CHECK((r1.matrix() - pp * pp.adjoint()).norm() < 1e-15);

  // Mixture is linear: 0.5 * 5 + 0.5 * 6.
  const double half = expectation(psixy_noise_mix(4, 0.5, 0.0), QuadraticForm{{1, 1, 0}, {}});
  CHECK(half == doctest::Approx(5.5).epsilon(1e-13));
  CHECK(half > 5.0);
  CHECK_THROWS_AS(psixy_noise_mix(3, 0.5, 0.0), DomainError);

  // Symmetric-sector version matches the dense one.
  for (int n = 1; n <= 8; ++n)
    CHECK((symmetric_psixy(n, 0.7).embed().amplitudes() - psixy_state(n, 0.7).amplitudes()).norm() <
          1e-12);
}

TEST_CASE("validation rejects malformed states") {
  CHECK_THROWS_AS(PureState(2, CVector<double>::Ones(4)), DomainError);
  CHECK_THROWS_AS(PureState(2, CVector<double>::Ones(3).normalized()), DomainError);
  CMatrix<double> bad = CMatrix<double>::Zero(4, 4);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(2, bad), DomainError);
  CMatrix<double> nonherm = CMatrix<double>::Identity(4, 4) / 4.0;
  nonherm(0, 1) = C(0.1, 0);
  CHECK_THROWS_AS(DensityMatrix(2, nonherm), DomainError);
  CHECK_THROWS_AS(HermitianOperator{nonherm}, DomainError);
  CHECK_THROWS_AS(SymmetricState(3, CVector<double>::Ones(4)), DomainError);
  CHECK_NOTHROW(symmetric_dicke(10000, 5000));
  CHECK_THROWS_AS(symmetric_dicke(10001, 5), DomainError);
}
