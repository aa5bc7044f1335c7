#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dicke {

enum class CriterionId { fidelity, theorem2, variance, symmetric_jz, crit2, genuine3, genuine4 };

enum class Detection { none, entangled, genuine_multipartite };

/// Outcome of one entanglement criterion on one state. A positive margin means
/// the state is on the detected side of the bound.
struct WitnessVerdict {
  CriterionId criterion_id = CriterionId::theorem2;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  Detection detected = Detection::none;
};

/// margin = value - bound; `on_violation` is reported when margin > detection_tolerance.
inline WitnessVerdict make_verdict(CriterionId id, double value, double bound,
                                   Detection on_violation, double detection_tolerance) {
  WitnessVerdict v{id, value, bound, value - bound, Detection::none};
  if (v.margin > detection_tolerance) v.detected = on_violation;
  return v;
}

std::string_view to_string(CriterionId id);
std::string_view to_string(Detection d);
std::optional<CriterionId> parse_criterion_id(std::string_view s);
std::optional<Detection> parse_detection(std::string_view s);

}  // namespace dicke
