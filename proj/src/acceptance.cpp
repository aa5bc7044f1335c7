#include "dicke/acceptance.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dicke/bisect.hpp"
#include "dicke/collective.hpp"
#include "dicke/oracle.hpp"
#include "dicke/witnesses.hpp"

namespace dicke {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Collects measured values and failed checks for one criterion.
class Report {
 public:
  void note(const std::string& s) { notes_.push_back(s); }
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    require(std::abs(got - want) <= tol,
            what + " = " + num(got) + ", expected " + num(want) + " +/- " + num(tol));
  }
  void time_limit(const std::string& what, double seconds, double budget) {
    require(seconds <= budget, what + " took " + num(seconds) + " s > " + num(budget) + " s");
  }
  bool ok() const { return failures_.empty(); }
  std::string text() const {
    std::string s;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) s += (s.empty() ? "FAILED: " : "; FAILED: ") + f;
    return s;
  }

 private:
  std::vector<std::string> notes_, failures_;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return elapsed(t0);
}

HermitianOperator xy_operator(int n) {
  return collective_operator(n, QuadraticForm{{1, 1, 0}, {0, 0, 0}});
}

double xy_value(const PureState& psi) {
  const auto mo = collective_moments(psi);
  return mo.square(Axis::x) + mo.square(Axis::y);
}

std::vector<double> dense_spectrum(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<CMatrix<double>> es(op.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double max_sorted_gap(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// ---------------------------------------------------------------------------

void fidelity_bounds(Report& r) {
  for (int n : {4, 6, 8}) {
    const double want = n / (2.0 * (n - 1));
    double closed = 0, sweep = 0;
    const double t = timed([&] {
      closed = dicke_fidelity_bound_closed_form(n, n / 2).value_or(-1.0);
      sweep = max_schmidt_overlap(dicke_state(n, n / 2));
    });
    r.near(closed, want, 1e-10, "closed form n=" + std::to_string(n));
    r.near(sweep, want, 1e-10, "SVD sweep n=" + std::to_string(n));
    r.time_limit("n=" + std::to_string(n), t, 1.0);
    r.note("C(" + std::to_string(n) + ")=" + num(sweep));
  }
}

void biseparable_overlap(Report& r) {
  const auto d = dicke_state(4, 2);
  const HermitianOperator proj(d.amplitudes() * d.amplitudes().adjoint());
  const double v = maximize_over_biseparable(proj, 4, 64, 0).value;
  r.require(v >= 2.0 / 3.0 - 1e-3 && v <= 2.0 / 3.0 + 1e-9,
            "biseparable overlap " + num(v) + " outside [2/3 - 1e-3, 2/3 + 1e-9]");
  r.note("max overlap " + num(v));
}

void theorem2_sharpness(Report& r) {
  const double best = maximize_over_product_states(xy_operator(4), 4, 64, 0).value;
  r.near(best, 5.0, 1e-6, "product maximum n=4");
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int n = 2; n <= 8; ++n) {
    StateSampler s(SampleKind::product, n, 1000 + n);
    const double bound = theorem2_bound(n);
    for (int i = 0; i < 10000; ++i) {
      const double excess = xy_value(s.next_pure()) - bound;
      worst_excess = std::max(worst_excess, excess);
      if (excess > 1e-9) {
        r.require(false, "product sample " + std::to_string(i) + " at n=" + std::to_string(n) +
                             " exceeds the bound by " + num(excess));
        return;
      }
    }
  }
  r.note("product max " + num(best) + ", closest random sample " + num(worst_excess));
}

void genuine_bounds(Report& r) {
  const double v3 = maximize_over_biseparable(xy_operator(3), 3, 64, 0).value;
  const double v4 = maximize_over_biseparable(xy_operator(4), 4, 64, 0).value;
  r.near(v3, kGenuine3Bound, 1e-6, "biseparable maximum n=3");
  r.near(v4, kGenuine4Bound, 1e-6, "biseparable maximum n=4");
  const double w = xy_value(dicke_state(3, 1));
  const double d = xy_value(dicke_state(4, 2));
  r.near(w, 3.75, 1e-12, "<Jx^2+Jy^2> on |1,3>");
  r.near(d, 6.0, 1e-12, "<Jx^2+Jy^2> on |2,4>");
  for (int n : {3, 4}) {
    const double bound = n == 3 ? kGenuine3Bound : kGenuine4Bound;
    StateSampler s(SampleKind::biseparable, n, 2000 + n);
    for (int i = 0; i < 10000; ++i) {
      const double v = xy_value(s.next_pure());
      if (v > bound + 1e-9) {
        r.require(false, "biseparable sample exceeds the n=" + std::to_string(n) + " bound: " +
                             num(v));
        break;
      }
    }
  }
  r.note("n=3 " + num(v3) + ", n=4 " + num(v4) + ", |1,3> " + num(w) + ", |2,4> " + num(d));
}

void eigenvalue_formulas(Report& r) {
  Rng rng = make_stream(5, 0);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0), ang(0.0, 2 * std::numbers::pi);
  double gap2 = 0, gap3 = 0, top2 = -1e300;
  for (int i = 0; i < 100; ++i) {
    std::array<double, 3> d{g(rng), g(rng), g(rng)};
    const double len = std::hypot(d[0], d[1], d[2]);
    for (auto& c : d) c /= len;
    const auto a = lemma2_eigenvalues(d);
    gap2 = std::max(gap2, max_sorted_gap(a, dense_spectrum(lemma2_direction_operator(d))));
    top2 = std::max(top2, *std::max_element(a.begin(), a.end()));
    const double x = u(rng), t = ang(rng);
    gap3 = std::max(gap3, max_sorted_gap(theorem3_eigenvalues(x),
                                         dense_spectrum(theorem3_direction_operator(
                                             x * std::cos(t), x * std::sin(t)))));
  }
  r.require(gap2 <= 1e-10, "lemma2 eigenvalues differ from diagonalization by " + num(gap2));
  r.require(gap3 <= 1e-10, "theorem3 eigenvalues differ from diagonalization by " + num(gap3));
  const double root = std::sqrt(16.0 / 3.0);
  r.require(top2 <= root + 1e-12, "random direction exceeds sqrt(16/3)");
  const double n1 = 1 / std::sqrt(3.0);
  const std::array<double, 3> best{n1, std::sqrt(1 - n1 * n1), 0};
  r.near(max_eigenvalue(lemma2_direction_operator(best)), root, 1e-10, "lemma2 maximum");
  const auto t1 = theorem3_eigenvalues(1.0);
  r.near(*std::max_element(t1.begin(), t1.end()), 3 + 2 * std::sqrt(3.0), 1e-12,
         "theorem3 analytic maximum at X=1");
  r.near(max_eigenvalue(theorem3_direction_operator(1.0, 0.0)), 3 + 2 * std::sqrt(3.0), 1e-10,
         "theorem3 dense maximum at X=1");
  r.note("max gap lemma2 " + num(gap2) + ", theorem3 " + num(gap3));
}

void noise_thresholds(Report& r) {
  auto white = [](int n, const std::function<double(const DensityMatrix&)>& margin) {
    const auto target = dicke_state(n, n / 2);
    return margin_crossing([&](double p) { return margin(white_noise_mix(target, p)); }, 0.0, 1.0);
  };
  const double f4 = white(4, [](const DensityMatrix& rho) {
    return fidelity_witness_verdict(rho, 4, 2).margin;
  });
  r.near(f4, 16.0 / 45.0, 1e-9, "fidelity n=4 bisection");
  r.near(fidelity_noise_threshold(4), 16.0 / 45.0, 1e-15, "fidelity n=4 closed form");
  for (int n : {4, 6, 8}) {
    const double t = white(n, [](const DensityMatrix& rho) {
      return criterion_verdict(rho, CriterionKind::theorem2()).margin;
    });
    r.near(t, collective_noise_threshold(n, CriterionKind::theorem2(), NoiseModel::white), 1e-9,
           "theorem2 n=" + std::to_string(n));
  }
  const double g4 = white(4, [](const DensityMatrix& rho) {
    return criterion_verdict(rho, CriterionKind::genuine4()).margin;
  });
  r.near(g4, (2.5 - std::sqrt(3.0)) / 4.0, 1e-9, "genuine4 bisection");
  const auto v = criterion_verdict(psixy_noise_mix(4, 0.999, 0.0), CriterionKind::theorem2());
  r.require(v.detected == Detection::entangled, "psixy noise p=0.999 not detected");
  r.note("fidelity " + num(f4) + ", genuine4 " + num(g4) + ", psixy margin " + num(v.margin));
}

void appendix(Report& r) {
  for (int n = 4; n <= 20; n += 2) {
    try {
      const auto rep = verify_appendix_inequality(n);
      r.require(rep.argmax == std::pair{2, 1}, "argmax differs at n=" + std::to_string(n));
    } catch (const std::exception& e) {
      r.require(false, e.what());
    }
  }
  r.note("even n = 4..20 verified");
}

void lemma2(Report& r) {
  StateSampler s(SampleKind::density, 2, 8);
  double worst = 0;
  for (int i = 0; i < 100000; ++i) worst = std::max(worst, lemma2_vector_norm(s.next_density()));
  r.require(worst <= 16.0 / 3.0 + 1e-9, "random |v|^2 = " + num(worst) + " exceeds 16/3");
  const double n1 = 1 / std::sqrt(3.0);
  const auto top = top_eigenpair(lemma2_direction_operator({n1, std::sqrt(1 - n1 * n1), 0}));
  const double attained = lemma2_vector_norm(PureState(2, top.vector));
  r.require(attained >= 16.0 / 3.0 - 1e-6, "optimal eigenstate gives only " + num(attained));
  r.note("largest random " + num(worst) + ", eigenstate " + num(attained));
}

void lemma1_core(Report& r) {
  Rng rng = make_stream(9, 0);
  std::uniform_real_distribution<double> ua(0.0, 2.0), ub(-2.0, 2.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    QuadraticForm f;
    for (int l = 0; l < 3; ++l) {
      f.a[l] = ua(rng);
      f.b[l] = i % 2 ? ub(rng) : 0.0;
    }
    for (int n = 2; n <= 6; ++n) {
      const double prod =
          maximize_over_product_states(collective_operator(n, f), n, kDefaultRestarts, i).value;
      const double ti = maximize_over_ti_product(f, n).value;
      worst = std::max(worst, std::abs(prod - ti));
      if (!f.has_linear_part()) {
        const double b = lemma1_bound(f, n);
        r.require(prod <= b + 1e-9 && ti <= b + 1e-9,
                  "form " + std::to_string(i) + " n=" + std::to_string(n) + " exceeds lemma1_bound");
      }
    }
  }
  r.require(worst <= 1e-6, "product and TI maxima differ by " + num(worst));

  const auto j2 = collective_operator(2, QuadraticForm{{1, 1, 1}, {0, 0, 0}});
  const auto low = maximize_over_product_states(-1.0 * j2, 2, kDefaultRestarts, 0);
  const auto& s = std::get<BlochProduct>(low.argument).vectors;
  const double anti = std::hypot(s[0][0] + s[1][0], s[0][1] + s[1][1], s[0][2] + s[1][2]);
  const double ti_min = ti_product_objective({{1, 1, 1}, {0, 0, 0}}, 2, {0, 0, 0.5});
  r.near(-low.value, 1.0, 1e-9, "product minimum of J^2 at n=2");
  r.require(anti < 1e-5, "J^2 minimizer is not antiparallel");
  r.require(-low.value < ti_min - 0.5, "product minimum not below the TI minimum");
  r.note("max |product - TI| " + num(worst) + ", J^2 min " + num(-low.value) + " vs TI " +
         num(ti_min));
}

void backends_and_superradiance(Report& r) {
  double worst = 0;
  for (int n = 1; n <= 10; ++n)
    for (int m = 0; m <= n; ++m) {
      const auto a = collective_moments(dicke_state(n, m));
      const auto b = collective_moments(symmetric_dicke(n, m));
      for (int l = 0; l < 3; ++l)
        worst = std::max({worst, std::abs(a.first[l] - b.first[l]),
                          std::abs(a.second[l] - b.second[l])});
    }
  r.require(worst <= 1e-10, "dense and symmetric moments differ by " + num(worst));
  double rel = 0;
  for (int n = 2; n <= 100; n += 2) {
    const double want = max_total_spin(n);
    rel = std::max(rel, std::abs(superradiance_intensity(symmetric_dicke(n, n / 2), 1.0) - want) /
                            want);
  }
  r.require(rel <= 1e-12, "superradiance differs from (n/2)(n/2+1) by relative " + num(rel));
  r.note("backend gap " + num(worst) + ", I(|50,100>) = " +
         num(superradiance_intensity(symmetric_dicke(100, 50), 1.0)));
}

struct Criterion {
  int id;
  const char* title;
  double budget;
  void (*run)(Report&);
};

const Criterion kCriteria[] = {
    {1, "fidelity bounds n/(2(n-1))", 3.0, fidelity_bounds},
    {2, "biseparable overlap with |2,4>", 10.0, biseparable_overlap},
    {3, "product-state bound sharpness and soundness", 60.0, theorem2_sharpness},
    {4, "biseparable bounds for three and four qubits", 120.0, genuine_bounds},
    {5, "analytic eigenvalue families", 5.0, eigenvalue_formulas},
    {6, "noise thresholds", 10.0, noise_thresholds},
    {7, "binomial inequality, exact arithmetic", 1.0, appendix},
    {8, "two-qubit vector norm", 30.0, lemma2},
    {9, "translationally invariant product maxima", 120.0, lemma1_core},
    {10, "backend equivalence and superradiance scaling", 5.0, backends_and_superradiance},
};

}  // namespace

std::string format_outcome(const AcceptanceOutcome& o) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] %2d %s (%.3f s, budget %.0f s)",
                o.passed ? "PASS" : "FAIL", o.id, o.title.c_str(), o.seconds, o.budget_seconds);
  return std::string(head) + ": " + o.detail;
}

std::vector<AcceptanceOutcome> run_acceptance_suite(std::ostream* out) {
  std::vector<AcceptanceOutcome> results;
  for (const auto& c : kCriteria) {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(r);
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    const double t = elapsed(t0);
    r.time_limit("criterion", t, c.budget);
    results.push_back({c.id, c.title, r.ok(), r.text(), t, c.budget});
    if (out) *out << format_outcome(results.back()) << std::endl;
  }
  return results;
}

}  // namespace dicke
