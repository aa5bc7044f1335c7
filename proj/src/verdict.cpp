#include "dicke/verdict.hpp"

#include <array>
#include <utility>

namespace dicke {

namespace {

constexpr std::array<std::pair<CriterionId, std::string_view>, 7> kCriterionNames{{
    {CriterionId::fidelity, "fidelity"},
    {CriterionId::theorem2, "theorem2"},
    {CriterionId::variance, "variance"},
    {CriterionId::symmetric_jz, "symmetric_jz"},
    {CriterionId::crit2, "crit2"},
    {CriterionId::genuine3, "genuine3"},
    {CriterionId::genuine4, "genuine4"},
}};

constexpr std::array<std::pair<Detection, std::string_view>, 3> kDetectionNames{{
    {Detection::none, "none"},
    {Detection::entangled, "entangled"},
    {Detection::genuine_multipartite, "genuine_multipartite"},
}};

}  // namespace

std::string_view to_string(CriterionId id) {
  for (const auto& [k, name] : kCriterionNames)
    if (k == id) return name;
  return "unknown";
}

std::string_view to_string(Detection d) {
  for (const auto& [k, name] : kDetectionNames)
    if (k == d) return name;
  return "unknown";
}

std::optional<CriterionId> parse_criterion_id(std::string_view s) {
  for (const auto& [k, name] : kCriterionNames)
    if (name == s) return k;
  return std::nullopt;
}

std::optional<Detection> parse_detection(std::string_view s) {
  for (const auto& [k, name] : kDetectionNames)
    if (name == s) return k;
  return std::nullopt;
}

}  // namespace dicke
