#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace mdeq {

using Json = nlohmann::ordered_json;

/// Outcome of one named check: what was examined, how far it deviated from
/// the target identity, and where the tolerance came from.
struct VerificationReport {
  std::string check;
  long order = 0;
  std::string max_deviation = "0";
  bool pass = false;
  std::string tolerance_provenance;
  Json details = Json::object();

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["order"] = order;
    j["max_deviation"] = max_deviation;
    j["pass"] = pass;
    j["details"] = details;
    j["details"]["tolerance_provenance"] = tolerance_provenance;
    return j;
  }
};

inline bool all_pass(const std::vector<VerificationReport>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace mdeq
