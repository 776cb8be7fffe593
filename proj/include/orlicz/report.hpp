#pragma once

#include <optional>
#include <string>

namespace orlicz {

enum class ReportStatus { Verified, HypothesisViolated };

/// Which way the verified statement points. slack is always the satisfaction
/// margin (rhs - lhs for upper bounds, lhs - rhs for lower bounds), so
/// holds <=> slack >= -tol with tol = 1e-9 max(1, rhs) in both cases.
enum class BoundDirection { LhsLeqRhs, LhsGeqRhs };

struct InequalityReport {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  BoundDirection direction = BoundDirection::LhsLeqRhs;
  double slack = 0.0;
  double ratio = 0.0;  // lhs / rhs
  bool holds = false;
  ReportStatus status = ReportStatus::Verified;
  std::string instance_digest;
  std::optional<double> empirical_constant;
  std::string note;
};

InequalityReport make_report(std::string id, double lhs, double rhs, BoundDirection dir,
                             std::string digest);

InequalityReport hypothesis_report(std::string id, std::string why, std::string digest);

/// Single JSON line (stable key order, shortest round-trip doubles).
std::string to_json_line(const InequalityReport& rep);

}  // namespace orlicz
