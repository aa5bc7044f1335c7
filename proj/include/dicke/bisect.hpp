#pragma once

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

/// Point in [lo, hi] where a margin that is positive at lo stops being
/// positive, by bisection. Returns hi when the margin stays positive throughout.
template <class MarginFn>
double margin_crossing(MarginFn&& margin, double lo, double hi, double tol = 1e-14) {
  if (!(lo < hi)) throw DomainError("margin_crossing: need lo < hi");
  if (!(margin(lo) > 0.0)) throw DomainError("margin_crossing: margin must be positive at lo");
  if (margin(hi) > 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace dicke
