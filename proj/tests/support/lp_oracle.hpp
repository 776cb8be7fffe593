#pragma once

// Independent basis-pursuit oracles for small instances: a dense two-phase
// simplex driving a polyhedral (cutting-plane) relaxation of the complex
// modulus, and exhaustive support enumeration for supports of size <= 2.
// Constraint matrices are built from first principles (direct character
// sums), not from the library's transforms.

#include <optional>
#include <vector>

#include "orlicz/recovery.hpp"

namespace oracles {

struct LpSolution {
  bool feasible = false;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> slack_reduced;  // optimal reduced costs of the slacks
};

/// min c.x  s.t.  A x <= b, x >= 0 (dense two-phase simplex, Bland's rule).
LpSolution simplex_min(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                       const std::vector<double>& b);

struct BasisPursuitValue {
  double value = 0.0;  // l1 norm of the oracle's optimal feasible point
  double gap = 0.0;    // certified distance to the LP lower bound
  int rounds = 0;
};

/// Cutting-plane LP value of min ||u||_1 s.t. uhat = observed off S.
BasisPursuitValue lp_basis_pursuit_value(const orlicz::RecoveryProblem& problem);

/// Best l1 value over signals supported on at most max_support sites that
/// satisfy the constraints (valid optimum when a sparse minimizer exists).
std::optional<double> enumeration_value(const orlicz::RecoveryProblem& problem, int max_support);

}  // namespace oracles
