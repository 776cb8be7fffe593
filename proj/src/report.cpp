#include "orlicz/report.hpp"

#include <cmath>

#include "json.hpp"

namespace orlicz {

InequalityReport make_report(std::string id, double lhs, double rhs, BoundDirection dir,
                             std::string digest) {
  InequalityReport rep;
  rep.id = std::move(id);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.direction = dir;
  rep.slack = dir == BoundDirection::LhsLeqRhs ? rhs - lhs : lhs - rhs;
  rep.ratio = rhs == 0 ? (lhs == 0 ? 1.0 : std::numeric_limits<double>::infinity()) : lhs / rhs;
  rep.holds = rep.slack >= -1e-9 * std::max(1.0, std::abs(rhs));
  rep.instance_digest = std::move(digest);
  return rep;
}

InequalityReport hypothesis_report(std::string id, std::string why, std::string digest) {
  InequalityReport rep;
  rep.id = std::move(id);
  rep.status = ReportStatus::HypothesisViolated;
  rep.note = std::move(why);
  rep.instance_digest = std::move(digest);
  return rep;
}

std::string to_json_line(const InequalityReport& rep) {
  nlohmann::ordered_json j;
  j["id"] = rep.id;
  j["status"] = rep.status == ReportStatus::Verified ? "verified" : "hypothesis-violated";
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["direction"] = rep.direction == BoundDirection::LhsLeqRhs ? "leq" : "geq";
  j["slack"] = rep.slack;
  j["ratio"] = rep.ratio;
  j["holds"] = rep.holds;
  if (rep.empirical_constant) j["empirical_constant"] = *rep.empirical_constant;
  j["instance"] = rep.instance_digest;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j.dump();
}

}  // namespace orlicz
