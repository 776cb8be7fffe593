#pragma once

#include <cstdint>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/report.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

/// One verification instance: signals, sets, Young functions and scalar
/// parameters. Entries read the fields they need.
struct Instance {
  GroupDims dims;
  Signal f, g;
  SiteSet a, e, s;
  YoungFunction phi = YoungFunction::power(2);
  YoungFunction psi = YoungFunction::power(2);
  YoungFunction theta = YoungFunction::power(2);
  double p = 2.0;  // Lebesgue exponent for the x^p-comparison entry
  double r = 2.0;  // derivative growth exponent for the Hausdorff-Young entry
  std::uint64_t seed = 0;
};

/// Registry of the comparison/Hoelder/interpolation inequalities. Constant-free
/// entries must hold on every instance satisfying their hypotheses; the rest
/// record an empirical constant (max observed ratio).
///
///   HOLDER_2C        |fg|_1(mu) <= 2 |f|_Phi(mu) |g|_Phi*(mu)
///   HOLDER_1C        |fg|_1(mu_A) <= |f|_(Phi)(mu_A) |g|_Psi(mu_A)
///   LP_FROM_PHI      |f|_p(A) <= |A|^{1/p} Phi^{-1}(1/|A|) |f|_Phi(A)
///   PHI_FROM_L1      |f|_Phi <= |S| / (N^d Phi^{-1}(|S|/N^d)) |f|_1
///   L1_FROM_MU       |f|_1 <= |E| Phi^{-1}(1) |f|_Phi(mu_E)
///   NORMALIZE        |f|_Phi(A) <= |A| |f|_Phi(mu_A)
///   NORM_VS_MU       |f|_Phi(E) <= |E||S|Phi^{-1}(1)/(N^d Phi^{-1}(|S|/N^d)) |f|_Phi(mu_E)
///   GEN_YOUNG        Phi(xy) <= Psi(x) + Theta(y) when Phi^{-1} >= Psi^{-1} Theta^{-1}
///   GEN_HOLDER       |fg|_Phi(A) <= 2 |f|_Psi(A) |g|_Theta(A), same hypothesis
///   BAK_INTERP       two-sided counting vs normalized comparison; C', D' empirical
///   HAUSDORFF_YOUNG  |fhat|_Psi <= K(Phi) Phi^{-1}(N^{-d}/Phi(1)) |f|_Phi; K empirical
const std::vector<std::string>& registry_ids();
bool is_constant_free(const std::string& id);

InequalityReport verify(const std::string& id, const Instance& inst);

/// Seeded instance family for an entry; trial index selects the RNG stream.
Instance make_instance(const std::string& id, const GroupDims& dims, std::uint64_t master_seed,
                       std::uint64_t trial);

struct SweepSummary {
  std::string id;
  int trials = 0;
  int pass_count = 0;
  int fail_count = 0;
  int hypothesis_failures = 0;
  double worst_slack = kInf;
  std::optional<double> empirical_constant;  // max observed ratio
  InequalityReport worst;
};

SweepSummary sweep(const std::string& id, const GroupDims& dims, int trials,
                   std::uint64_t master_seed);

/// Per-trial reports for the CLI's JSON-lines audit trail.
std::vector<InequalityReport> sweep_reports(const std::string& id, const GroupDims& dims,
                                            int trials, std::uint64_t master_seed);

}  // namespace orlicz
