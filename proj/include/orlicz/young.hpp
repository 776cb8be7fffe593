#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/util.hpp"

namespace orlicz {

enum class YoungFamily { Power, PowerLog, Limonova, Burstein, Composed, Tabulated };

/// A Young function: convex, nondecreasing, Phi(0) = 0, values in [0, +inf].
/// Immutable after construction; all operations are pure, so values are safe
/// to share across worker threads.
///
/// Built-in families (natural log throughout):
///   power(p)            x^p, p >= 1
///   power_log(p, a)     x^p * log(x+1)^a
///   limonova(a)         x^2 * log(e+x)^a / log(e+1/x)^a, with value 0 at x=0
///   burstein(a)         x^2 * log(x)^a for x >= x0(a), c(a) * x^2 below,
///                       x0(a) the smallest point >= e where the upper branch
///                       is convex and increasing, c(a) = log(x0)^a
class YoungFunction {
 public:
  static YoungFunction power(double p);
  static YoungFunction power_log(double p, double alpha);
  static YoungFunction limonova(double alpha);
  static YoungFunction burstein(double alpha);
  /// c * Phi(x); keeps closed-form inverse/conjugate when Phi has them.
  static YoungFunction scaled(const YoungFunction& phi, double c);
  /// Arbitrary pointwise-defined evaluator (caller asserts Young-ness; the
  /// invariant checker below can audit it on a grid).
  static YoungFunction tabulated(std::string name, std::function<double(double)> fn,
                                 double domain_cap = 1e300);

  /// Phi(x). Negative x is a domain error; x past domain_cap returns the
  /// saturating +inf sentinel, which comparisons treat as infinity.
  double operator()(double x) const;

  /// Generalized inverse inf{x >= 0 : Phi(x) >= y}, closed form when known,
  /// otherwise bracketing bisection to 1e-12 relative width.
  double inverse(double y) const;

  YoungFamily family() const;
  const std::vector<double>& params() const;
  double domain_cap() const;
  const std::string& name() const;
  bool has_closed_form_inverse() const;
  bool has_closed_form_conjugate() const;

  /// Sampled check of Phi(x)/x -> 0 at 0 and -> inf at infinity.
  bool is_nice() const;

  // Internal: construct with explicit fields (used by conjugate_of etc.)
  struct Impl;
  explicit YoungFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Midpoint-convexity / monotonicity / Phi(0)=0 audit on a sampled grid.
/// Returns an explanation of the first violation, or nullopt if clean.
std::optional<std::string> young_invariant_violation(const YoungFunction& phi);

enum class ConjugateMode { Auto, Numeric };

/// Convex conjugate Psi(y) = sup_x { x*y - Phi(x) }. Auto uses a closed form
/// when the family has one; Numeric always maximizes x*y - Phi(x) over an
/// adaptively expanded bracket by golden section (1e-12 relative).
YoungFunction conjugate_of(const YoungFunction& phi, ConjugateMode mode = ConjugateMode::Auto);

/// Theta determined by Theta^{-1}(x) = x^{-1/2} * Phi^{-1}(x); requires the
/// map to be nondecreasing (Phi below x^2). Evaluation inverts the map by
/// bisection; inverse() is the defining map itself.
YoungFunction theta_from(const YoungFunction& phi);

/// Psi(x) = Phi(sqrt(x)); requires Phi above x^2 so the composite stays
/// convex (spot-checked on a grid).
YoungFunction sqrt_compose(const YoungFunction& phi);

/// A monotone scalar map with a numeric inverse (not a Young function).
struct MonotoneMap {
  std::function<double(double)> eval;
  std::function<double(double)> inverse;
};

/// The recovery threshold map x -> sqrt(x) * Phi^{-1}(1/x), increasing when
/// the upper Matuszewska index at infinity exceeds 2.
MonotoneMap recovery_psi(const YoungFunction& phi);

enum class GrowthRelation { Precedes, Succeeds, Equivalent, Incomparable };

struct GrowthComparison {
  GrowthRelation relation = GrowthRelation::Incomparable;
  double witness_K = 0.0;   // Phi1(x) <= K * Phi2(x) for grid x >= x0 (or the
  double witness_x0 = 0.0;  // symmetric witness when relation is Succeeds)
  double violating_x = 0.0; // tail point that broke the bounded-ratio test
  std::vector<double> grid;
};

/// Decides the growth order Phi1 vs Phi2 by a log-grid witness search.
GrowthComparison precedes(const YoungFunction& phi1, const YoungFunction& phi2);

inline bool is_precedes(const GrowthComparison& g) {
  return g.relation == GrowthRelation::Precedes || g.relation == GrowthRelation::Equivalent;
}

struct Delta2Report {
  bool in_delta2 = false;
  bool in_nabla2 = false;
  double K1 = 0.0, x0_delta = 0.0;  // Phi(2x) <= K1 Phi(x), x >= x0
  double K2 = 0.0, x0_nabla = 0.0;  // Phi(K2 x) >= 2 K2 Phi(x), x >= x0
  std::string trend;                // diverging-ratio note when a test fails
};

Delta2Report delta2_nabla2(const YoungFunction& phi);

struct IndexEstimate {
  double alpha_a = 0.0, beta_a = 0.0;     // limits of log M_a(t)/log t
  double alpha_inf = 0.0, beta_inf = 0.0; // same for M_infinity
  std::vector<double> grid;               // t samples used
  double residual = 0.0;  // max tail deviation from the reported limits
};

/// Estimates the Matuszewska-Orlicz indices from grid suprema of
/// M(t, Phi) = sup_x Phi(tx)/Phi(x).
IndexEstimate matuszewska(const YoungFunction& phi);

struct BakReport {
  bool hypothesis_ok = false;
  bool surrogate_used = false;  // derivative truncated to vanish on [0,1]
  double C0 = 0.0, C1 = 0.0, c = 0.0, C = 0.0;
  std::string note;
};

/// Searches the interpolation constants for Phi(s) = int_0^s phi with phi
/// nondecreasing and vanishing on [0,1]: smallest C0 with
/// int_1^u phi(t)/t^r dt <= C0 phi(u)/u^{r-1}, smallest C1 with
/// phi(lambda) <= C1 phi(lambda t)/phi(t) for t >= c, and C = max{2, r C0 C1}.
/// Hypothesis failures come back as a report, not an exception.
BakReport bak_constants(const YoungFunction& phi, double r, double c = 2.0);

/// Declarative text form, e.g. "power(p=2)", "powerlog(p=2,alpha=1)",
/// "limonova(alpha=2)", "burstein(alpha=1)".
YoungFunction parse_young(const std::string& text);
std::string to_string(const YoungFunction& phi);

}  // namespace orlicz
