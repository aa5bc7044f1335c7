#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dicke/oracle.hpp"

using namespace dicke;

namespace {

HermitianOperator xy_operator(int n) { return collective_operator(n, QuadraticForm{{1, 1, 0}, {0, 0, 0}}); }

double reevaluate(const OptimizationResult& r, const HermitianOperator& op) {
  return std::visit([&](const auto& arg) { return expectation(arg.to_state(), op); }, r.argument);
}

QuadraticForm random_form(Rng& rng, bool linear) {
  std::uniform_real_distribution<double> ua(0.0, 2.0), ub(-2.0, 2.0);
  QuadraticForm f;
  for (int l = 0; l < 3; ++l) {
    f.a[l] = ua(rng);
    f.b[l] = linear ? ub(rng) : 0.0;
  }
  return f;
}

}  // namespace

TEST_CASE("max_eigenvalue examples") {
  CHECK(max_eigenvalue(collective_operator(5, Axis::z)) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(max_eigenvalue(xy_operator(4)) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(max_eigenvalue(theorem3_direction_operator(0.6, 0.8)) ==
        doctest::Approx(3 + 2 * std::sqrt(3.0)).epsilon(1e-13));
  const auto top = top_eigenpair(collective_operator(3, Axis::x));
  CHECK(top.value == doctest::Approx(1.5));
  CHECK(std::abs(top.vector.norm() - 1.0) < 1e-12);
  CMatrix<double> bad = CMatrix<double>::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS((HermitianOperator{bad}), DomainError);
}

TEST_CASE("maximize_over_product_states examples") {
  const auto xy = maximize_over_product_states(xy_operator(4), 4, 64, 0);
  CHECK(std::abs(xy.value - 5.0) < 1e-6);
  CHECK(xy.restarts_used == 64);
  CHECK(std::get<BlochProduct>(xy.argument).is_pure());

  const auto jz = collective_operator(3, Axis::z);
  const auto z2 = maximize_over_product_states(HermitianOperator(jz * jz), 3, 16, 1);
  CHECK(std::abs(z2.value - 2.25) < 1e-9);

  const auto all = maximize_over_product_states(
      collective_operator(4, QuadraticForm{{1, 1, 1}, {0, 0, 0}}), 4, 16, 2);
  CHECK(std::abs(all.value - 6.0) < 1e-6);

  CHECK_THROWS_AS(maximize_over_product_states(xy_operator(3), 4), DomainError);
  CHECK_THROWS_AS(maximize_over_product_states(xy_operator(3), 3, 0), DomainError);
}

TEST_CASE("maximize_over_ti_product examples") {
  const auto a = maximize_over_ti_product({{1, 1, 0}, {0, 0, 0}}, 4);
  CHECK(std::abs(a.value - 5.0) < 1e-8);
  const auto& sa = std::get<BlochProduct>(a.argument).vectors;
  REQUIRE(sa.size() == 4);
  CHECK(std::abs(sa[0][2]) < 1e-6);

  const auto b = maximize_over_ti_product({{0, 0, 1}, {0, 0, 1}}, 2);
  CHECK(std::abs(b.value - 2.0) < 1e-8);
  CHECK(std::get<BlochProduct>(b.argument).vectors[0][2] == doctest::Approx(0.5).epsilon(1e-6));

  const auto c = maximize_over_ti_product({{1, 0, 0}, {1, 0, 0}}, 2);
  CHECK(std::abs(c.value - 2.0) < 1e-8);
  CHECK(std::get<BlochProduct>(c.argument).vectors[1][0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("maximize_over_biseparable examples") {
  const auto three = maximize_over_biseparable(xy_operator(3), 3, 64, 0);
  CHECK(std::abs(three.value - (2 + std::sqrt(5.0) / 2)) < 1e-6);

  const auto four = maximize_over_biseparable(xy_operator(4), 4, 64, 0);
  CHECK(std::abs(four.value - (3.5 + std::sqrt(3.0))) < 1e-6);
  const auto& arg = std::get<BiseparableArgument>(four.argument);
  CHECK((arg.split.size_a() == 1 || arg.split.size_a() == 3));

  const auto d = dicke_state(4, 2);
  const HermitianOperator proj(d.amplitudes() * d.amplitudes().adjoint());
  const auto p = maximize_over_biseparable(proj, 4, 64, 0);
  CHECK(p.value >= 2.0 / 3.0 - 1e-6);
  CHECK(p.value <= 2.0 / 3.0 + 1e-9);

  CHECK_THROWS_AS(maximize_over_biseparable(xy_operator(9), 9), DomainError);
  CHECK_THROWS_AS(maximize_over_biseparable(xy_operator(3), 4), DomainError);
}

TEST_CASE("is_permutation_invariant") {
  CHECK(is_permutation_invariant(xy_operator(4), 4));
  CHECK(is_permutation_invariant(collective_operator(3, QuadraticForm{{0, 0, 1}, {0, 0, 1}}), 3));
  CHECK_FALSE(
      is_permutation_invariant(HermitianOperator(single_qubit_operator(4, 1, pauli(Axis::z))), 4));
}

TEST_CASE("results are deterministic and re-evaluate exactly") {
  const auto op = xy_operator(3);
  const auto a = maximize_over_product_states(op, 3, 8, 42);
  const auto b = maximize_over_product_states(op, 3, 8, 42);
  CHECK(a.value == b.value);
  CHECK(a.seed == 42);
  CHECK(std::abs(reevaluate(a, op) - a.value) < 1e-10);

  const auto c = maximize_over_biseparable(op, 3, 8, 42);
  const auto d = maximize_over_biseparable(op, 3, 8, 42);
  CHECK(c.value == d.value);
  CHECK(std::abs(reevaluate(c, op) - c.value) < 1e-10);

  const auto t = maximize_over_ti_product({{0.3, 1.2, 0.7}, {0.5, -0.2, 0.1}}, 5);
  CHECK(std::abs(reevaluate(t, collective_operator(5, QuadraticForm{{0.3, 1.2, 0.7}, {0.5, -0.2, 0.1}})) -
                 t.value) < 1e-10);
}

TEST_CASE("product ascent is monotone") {
  const auto op = collective_operator(5, QuadraticForm{{1, 0.5, 0.2}, {0.3, 0, -0.4}});
  for (std::uint64_t r = 0; r < 10; ++r) {
    Rng rng = make_stream(77, r);
    std::vector<Qubit2<double>> start;
    for (int k = 0; k < 5; ++k) start.push_back(haar_qubit(rng));
    const auto run = ascend_product_state(op, 5, start);
    REQUIRE(run.values.size() >= 2);
    for (std::size_t i = 1; i < run.values.size(); ++i) CHECK(run.values[i] >= run.values[i - 1] - 1e-12);
    CHECK(std::abs(expectation(product_state<double>(run.factors), op) - run.values.back()) < 1e-10);
  }
  CHECK_THROWS_AS(ascend_product_state(op, 5, {Qubit2<double>(1, 0)}), DomainError);
}

TEST_CASE("product and TI maxima agree on quadratic forms") {
  Rng rng = make_stream(5, 0);
  for (int i = 0; i < 20; ++i) {
    const auto form = random_form(rng, i % 2 == 1);
    for (int n = 2; n <= 5; ++n) {
      const auto op = collective_operator(n, form);
      const double prod = maximize_over_product_states(op, n, 8, i).value;
      const double ti = maximize_over_ti_product(form, n).value;
      CHECK(std::abs(prod - ti) < 1e-6);
      if (!form.has_linear_part()) {
        CHECK(prod <= lemma1_bound(form, n) + 1e-9);
        CHECK(std::abs(ti - lemma1_bound(form, n)) < 1e-8);
      }
    }
  }
}

TEST_CASE("J^2 minimization is not attained by TI product states") {
  const auto j2 = collective_operator(2, QuadraticForm{{1, 1, 1}, {0, 0, 0}});
  const auto best = maximize_over_product_states(-1.0 * j2, 2, 16, 0);
  CHECK(std::abs(-best.value - 1.0) < 1e-9);
  const auto& s = std::get<BlochProduct>(best.argument).vectors;
  for (int l = 0; l < 3; ++l) CHECK(std::abs(s[0][l] + s[1][l]) < 1e-5);
  // Every TI product state has <J^2> = 3N/4 + N(N-1)/4 = 2.
  Rng rng = make_stream(1, 1);
  for (int i = 0; i < 50; ++i) {
    const auto q = bloch_of(haar_qubit(rng));
    CHECK(ti_product_objective({{1, 1, 1}, {0, 0, 0}}, 2, q) == doctest::Approx(2.0));
  }
  CHECK(-best.value < 2.0 - 0.5);
}

TEST_CASE("Bloch helpers") {
  const double h = 1.0 / std::sqrt(2.0);
  const auto s = bloch_of(Qubit2<double>(h, h));
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(std::abs(s[1]) < 1e-15);
  CHECK(std::abs(s[2]) < 1e-15);
  CHECK(bloch_of(Qubit2<double>(0, 1))[2] == doctest::Approx(0.5));
  Rng rng = make_stream(3, 3);
  for (int i = 0; i < 20; ++i) {
    const auto q = haar_qubit(rng);
    const auto b = bloch_of(q);
    const auto back = bloch_of(qubit_from_bloch(b));
    for (int l = 0; l < 3; ++l) CHECK(std::abs(back[l] - b[l]) < 1e-12);
  }
  CHECK_THROWS_AS(qubit_from_bloch({0, 0, 0}), DomainError);
  BlochProduct bad{{{0.1, 0, 0}}};
  CHECK_FALSE(bad.is_pure());
  CHECK_THROWS_AS(bad.to_state(), DomainError);
}

TEST_CASE("sample_random_states") {
  const auto one = sample_random_states(SampleKind::product, 4, 1, 7);
  REQUIRE(one.size() == 1);
  const auto& psi = std::get<PureState>(one[0]);
  for (const auto& split : Bipartition::all(4)) {
    const auto sp = schmidt_spectrum(psi, split);
    REQUIRE(sp.squared_coefficients.size() == 1);
    CHECK(sp.squared_coefficients[0] == doctest::Approx(1.0));
  }

  const auto a = sample_random_states(SampleKind::pure, 3, 5, 9);
  const auto b = sample_random_states(SampleKind::pure, 3, 5, 9);
  for (int i = 0; i < 5; ++i)
    CHECK(std::get<PureState>(a[i]).amplitudes() == std::get<PureState>(b[i]).amplitudes());

  StateSampler bis(SampleKind::biseparable, 4, 11);
  StateSampler bis3(SampleKind::biseparable, 3, 12);
  const auto op4 = xy_operator(4);
  const auto op3 = xy_operator(3);
  for (int i = 0; i < 2000; ++i) {
    CHECK(expectation(bis.next_pure(), op4) <= kGenuine4Bound + 1e-9);
    CHECK(expectation(bis3.next_pure(), op3) <= kGenuine3Bound + 1e-9);
  }
  // A biseparable sample has a rank-1 cut somewhere.
  StateSampler b2(SampleKind::biseparable, 4, 13);
  for (int i = 0; i < 20; ++i) {
    const auto s = b2.next_pure();
    bool product_cut = false;
    for (const auto& split : Bipartition::all(4))
      product_cut = product_cut || schmidt_spectrum(s, split).squared_coefficients.size() == 1;
    CHECK(product_cut);
  }

  const auto rhos = sample_random_states(SampleKind::density, 2, 10, 1);
  for (const auto& r : rhos) CHECK(std::get<DensityMatrix>(r).n_qubits() == 2);

  CHECK_THROWS_AS(sample_random_states(SampleKind::pure, 3, 0, 1), DomainError);
  CHECK_THROWS_AS(StateSampler(SampleKind::biseparable, 1, 0), DomainError);
  StateSampler d(SampleKind::density, 2, 0);
  CHECK_THROWS_AS(d.next_pure(), DomainError);
  StateSampler p(SampleKind::pure, 2, 0);
  CHECK_THROWS_AS(p.next_density(), DomainError);
}
