#pragma once

#include <cstdint>

#include "orlicz/group.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// Counting measure on a site set, or the normalized measure mu_A with
/// weight 1/|A| per site.
struct MeasureSpec {
  SiteSet base;
  bool normalized = false;

  static MeasureSpec counting(SiteSet a) { return {std::move(a), false}; }
  static MeasureSpec normalized_on(SiteSet a) { return {std::move(a), true}; }
  double site_weight() const {
    return normalized ? 1.0 / static_cast<double>(base.members.size()) : 1.0;
  }
  double total_weight() const {
    return normalized ? 1.0 : static_cast<double>(base.members.size());
  }
};

enum class NormMethod { Bisection, Amemiya, DualSup, ClosedForm };

struct NormReport {
  double value = 0.0;
  NormMethod method = NormMethod::ClosedForm;
  double modular_at_value = 0.0;
  int iterations = 0;
};

/// sum_{x in A} w Phi(|f(x)|/k) (compensated summation).
double modular(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu, double k);

/// Luxemburg (gauge) norm inf{k > 0 : modular(k) <= 1} by monotone bisection.
NormReport luxemburg_norm(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu);

/// Orlicz norm via the Amemiya formulation inf_k (1 + sum w Phi(k|f|)) / k,
/// a 1-D quasiconvex minimization over log k.
NormReport orlicz_norm_amemiya(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu);

/// Small-instance oracle (|A| <= 64): maximizes |sum w f g| over the modular
/// unit ball of the conjugate by projected ascent with random restarts; the
/// result is a certified lower bound that pairs with Amemiya for a two-sided
/// check.
NormReport orlicz_norm_dual_sup(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu,
                                std::uint64_t seed = 2024, int restarts = 20);

/// Exact Orlicz norm of an indicator: (|E|/N^d) (Phi*)^{-1}(N^d/|E|).
double indicator_orlicz_norm(const SiteSet& e, const YoungFunction& phi, const GroupDims& dims);

/// J_Phi(f) = inf{k > 0 : N^{-d} sum_x Phi(|f(x)|/k) <= Phi(1)}.
double j_phi(const Signal& f, const YoungFunction& phi, const GroupDims& dims);

/// (sum_A w |f|^p)^{1/p} over the measure's base set.
double lp_norm(const Signal& f, double p, const MeasureSpec& mu);

}  // namespace orlicz
