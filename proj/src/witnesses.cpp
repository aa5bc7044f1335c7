#include "dicke/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dicke {

namespace {

void require_dicke_labels(int n, int m, const char* what) {
  if (n < 1 || m < 0 || m > n)
    throw DomainError(std::string(what) + ": invalid Dicke labels (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
}

double largest_over(const PureState& psi, const std::vector<Bipartition>& splits) {
  double best = 0.0;
  for (const auto& split : splits) best = std::max(best, schmidt_spectrum(psi, split).largest());
  return best;
}

}  // namespace

double max_schmidt_overlap(const PureState& psi) {
  if (psi.n_qubits() < 2) throw DomainError("max_schmidt_overlap: need at least two qubits");
  return largest_over(psi, Bipartition::all(psi.n_qubits()));
}

double max_schmidt_overlap_symmetric(const PureState& psi) {
  if (psi.n_qubits() < 2)
    throw DomainError("max_schmidt_overlap_symmetric: need at least two qubits");
  return largest_over(psi, Bipartition::by_size(psi.n_qubits()));
}

double dicke_fidelity_bound(int n, int m) {
  require_dicke_labels(n, m, "dicke_fidelity_bound");
  if (n < 2) throw DomainError("dicke_fidelity_bound: need n >= 2");
  return max_schmidt_overlap_symmetric(dicke_state(n, m));
}

std::optional<double> dicke_fidelity_bound_closed_form(int n, int m) {
  require_dicke_labels(n, m, "dicke_fidelity_bound_closed_form");
  if (n < 2) throw DomainError("dicke_fidelity_bound_closed_form: need n >= 2");
  if (m == 0 || m == n) return 1.0;
  if (m == 1 || m == n - 1) return (n - 1.0) / n;
  if (n % 2 == 0 && n >= 4 && m == n / 2) return 0.5 * n / (n - 1.0);
  return std::nullopt;
}

std::vector<double> dicke_schmidt_closed_form(int n, int m, int n1) {
  require_dicke_labels(n, m, "dicke_schmidt_closed_form");
  if (n1 < 1 || n1 >= n) throw DomainError("dicke_schmidt_closed_form: need 1 <= n1 < n");
  const double total = detail::binomial(n, m);
  std::vector<double> out;
  for (int k = std::max(0, m - (n - n1)); k <= std::min(n1, m); ++k)
    out.push_back(detail::binomial(n1, k) * detail::binomial(n - n1, m - k) / total);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

WitnessVerdict fidelity_witness_verdict(const DensityMatrix& rho, int n, int m,
                                        const Tolerances& tol) {
  if (rho.n_qubits() != n)
    throw DomainError("fidelity_witness_verdict: state has " + std::to_string(rho.n_qubits()) +
                      " qubits, witness expects " + std::to_string(n));
  const auto target = dicke_state(n, m);
  return make_verdict(CriterionId::fidelity, fidelity(target, rho), dicke_fidelity_bound(n, m),
                      Detection::genuine_multipartite, tol.detection);
}

WitnessVerdict fidelity_witness_verdict(const PureState& psi, int n, int m,
                                        const Tolerances& tol) {
  if (psi.n_qubits() != n)
    throw DomainError("fidelity_witness_verdict: state has " + std::to_string(psi.n_qubits()) +
                      " qubits, witness expects " + std::to_string(n));
  const auto target = dicke_state(n, m);
  return make_verdict(CriterionId::fidelity, fidelity(target, psi), dicke_fidelity_bound(n, m),
                      Detection::genuine_multipartite, tol.detection);
}

double fidelity_noise_threshold(int n) {
  if (n < 4 || n % 2 != 0)
    throw DomainError("fidelity_noise_threshold: n must be even and >= 4, got " +
                      std::to_string(n));
  return 0.5 * (n - 2.0) / ((n - 1.0) * (1.0 - std::ldexp(1.0, -n)));
}

// ---------------------------------------------------------------------------

ExactCount exact_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  ExactCount r = 1;
  // r = C(n - k + j, j) after step j, so the division is exact.
  for (int j = 1; j <= k; ++j) r = r * static_cast<ExactCount>(n - k + j) / static_cast<ExactCount>(j);
  return r;
}

std::string to_string(ExactCount v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

AppendixReport verify_appendix_inequality(int n) {
  if (n < 4 || n > 64 || n % 2 != 0)
    throw DomainError("verify_appendix_inequality: n must be even with 4 <= n <= 64, got " +
                      std::to_string(n));
  const int half = n / 2;
  AppendixReport report;
  report.n = n;

  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << "verify_appendix_inequality(n=" << n << "): " << what;
    throw InvariantViolation(os.str());
  };

  for (int n1 = 1; n1 <= half; ++n1) {
    ExactCount h = 0;
    for (int k = std::max(0, half - (n - n1)); k <= std::min(n1, half); ++k) {
      const ExactCount g = exact_binomial(n1, k) * exact_binomial(n - n1, half - k);
      report.table[{n1, k}] = g;
      h = std::max(h, g);
      if (g > report.max_value) {
        report.max_value = g;
        report.argmax = {n1, k};
      }
    }
    // The k-maximum sits at floor(N1/2).
    const ExactCount h_floor = exact_binomial(n1, n1 / 2) * exact_binomial(n - n1, half - n1 / 2);
    if (h_floor != h)
      fail("max over k at N1=" + std::to_string(n1) + " is " + to_string(h) +
           ", floor(N1/2) gives " + to_string(h_floor));
    report.h_values.push_back(h);
  }

  const ExactCount claimed = 2 * exact_binomial(n - 2, half - 1);
  if (report.argmax != std::pair{2, 1} || report.max_value != claimed)
    fail("global maximum " + to_string(report.max_value) + " at (" +
         std::to_string(report.argmax.first) + "," + std::to_string(report.argmax.second) +
         "), expected " + to_string(claimed) + " at (2,1)");
  for (const auto& [key, g] : report.table)
    if (g > claimed)
      fail("g(" + std::to_string(key.first) + "," + std::to_string(key.second) + ") = " +
           to_string(g) + " exceeds " + to_string(claimed));

  auto h_at = [&](int n1) {
    return n1 == 0 ? exact_binomial(n, half) : report.h_values[static_cast<std::size_t>(n1 - 1)];
  };
  for (int n1 = 2; n1 <= half; n1 += 2) {
    // h_{N1} / h_{N1-2} = ((N1-1)/N1) ((n-N1+2)/(n-N1+1)), cross-multiplied.
    const ExactCount lhs = h_at(n1) * static_cast<ExactCount>(n1) * static_cast<ExactCount>(n - n1 + 1);
    const ExactCount rhs =
        h_at(n1 - 2) * static_cast<ExactCount>(n1 - 1) * static_cast<ExactCount>(n - n1 + 2);
    if (lhs != rhs) fail("ratio identity fails at N1=" + std::to_string(n1));
    if (n1 >= 4 && h_at(n1) > h_at(n1 - 2))
      fail("h is not decreasing over even N1 at N1=" + std::to_string(n1));
    if (h_at(n1 - 1) > h_at(n1) || (n1 + 1 <= half && h_at(n1 + 1) > h_at(n1)))
      fail("odd neighbour exceeds h at even N1=" + std::to_string(n1));
  }
  return report;
}

}  // namespace dicke
