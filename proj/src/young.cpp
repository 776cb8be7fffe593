#include "orlicz/young.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace orlicz {

struct YoungFunction::Impl {
  std::function<double(double)> eval;
  YoungFamily family = YoungFamily::Tabulated;
  std::vector<double> params;
  double cap = 1e300;
  std::string name;
  std::function<double(double)> inverse_cf;     // empty when no closed form
  std::function<YoungFunction()> conjugate_cf;  // empty when no closed form
};

namespace {

std::string fmt_param(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

using ImplPtr = std::shared_ptr<YoungFunction::Impl>;

ImplPtr new_impl() { return std::make_shared<YoungFunction::Impl>(); }

YoungFunction wrap(ImplPtr impl) {
  return YoungFunction(std::shared_ptr<const YoungFunction::Impl>(std::move(impl)));
}

// Maximizes a concave g over [a, b] by golden section; returns argmax.
double golden_max(const std::function<double(double)>& g, double a, double b, double reltol) {
  constexpr double kGr = 0.6180339887498949;
  double x1 = b - kGr * (b - a), x2 = a + kGr * (b - a);
  double f1 = g(x1), f2 = g(x2);
  int guard = 0;
  while (b - a > reltol * std::max(1.0, std::abs(b)) && ++guard < 300) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGr * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGr * (b - a);
      f1 = g(x1);
    }
  }
  return 0.5 * (a + b);
}

double checked_arg(double x) {
  if (std::isnan(x)) throw std::invalid_argument("young function: NaN argument");
  if (x < 0) throw std::domain_error("young function: negative argument");
  return x;
}

// Fits log-log slope of a positive sequence over the tail of a grid; used to
// flag ratios that keep growing toward the edge of the search grid.
bool tail_diverges(const std::vector<double>& xs, const std::vector<double>& rs, double* where) {
  const std::size_t n = xs.size();
  if (n < 50) return false;
  const std::size_t j = n - 1, i = n - 41;
  if (!(rs[i] > 0) || !std::isfinite(rs[i]) || !std::isfinite(rs[j])) return false;
  if (!(rs[j] > 0)) return false;
  const double slope = (std::log(rs[j]) - std::log(rs[i])) / (std::log(xs[j]) - std::log(xs[i]));
  if (slope > 0.02) {
    if (where) *where = xs[j];
    return true;
  }
  return false;
}

}  // namespace

double YoungFunction::operator()(double x) const {
  checked_arg(x);
  if (x > impl_->cap) return kInf;
  const double v = impl_->eval(x);
  return v < 0 && v > -1e-15 ? 0.0 : v;  // guard sub-eps negatives from rounding
}

double YoungFunction::inverse(double y) const {
  if (std::isnan(y)) throw std::invalid_argument("young inverse: NaN argument");
  if (y < 0) throw std::domain_error("young inverse: negative argument");
  if (y == 0) return 0.0;
  if (impl_->inverse_cf) return impl_->inverse_cf(y);
  const auto& self = *this;
  double hi = 1.0;
  int guard = 0;
  while (self(hi) < y) {
    if (hi >= impl_->cap || ++guard > 2100) {
      // Distinguish a genuinely bounded evaluator from overflow saturation:
      // only the former is an unbounded-inverse error.
      const double at_cap = impl_->eval(impl_->cap);
      if (std::isfinite(at_cap) && at_cap < y)
        throw unbounded_inverse_error("young inverse: value above sup of " + impl_->name);
      hi = impl_->cap * 2;
      break;
    }
    hi = std::min(hi * 2, impl_->cap);
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * std::max(hi, 1e-300); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (self(mid) >= y)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

YoungFamily YoungFunction::family() const { return impl_->family; }
const std::vector<double>& YoungFunction::params() const { return impl_->params; }
double YoungFunction::domain_cap() const { return impl_->cap; }
const std::string& YoungFunction::name() const { return impl_->name; }
bool YoungFunction::has_closed_form_inverse() const { return static_cast<bool>(impl_->inverse_cf); }
bool YoungFunction::has_closed_form_conjugate() const {
  return static_cast<bool>(impl_->conjugate_cf);
}

bool YoungFunction::is_nice() const {
  const auto& f = *this;
  double prev = kInf;
  for (double x : {1e-6, 1e-8, 1e-10}) {
    const double r = f(x) / x;
    if (!(r < prev * (1 - 1e-9))) return false;
    prev = r;
  }
  prev = 0.0;
  for (double x : {1e6, 1e8, 1e10}) {
    const double xa = std::min(x, impl_->cap);
    const double r = f(xa) / xa;
    if (!(r > prev * (1 + 1e-9))) return false;
    prev = r;
    if (xa == impl_->cap) break;
  }
  return true;
}

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1)) throw std::invalid_argument("power: need p >= 1");
  auto impl = new_impl();
  impl->family = YoungFamily::Power;
  impl->params = {p};
  impl->cap = std::pow(1e300, 1.0 / p);
  impl->name = "power(p=" + fmt_param(p) + ")";
  impl->eval = [p](double x) { return std::pow(x, p); };
  impl->inverse_cf = [p](double y) { return std::isinf(y) ? kInf : std::pow(y, 1.0 / p); };
  impl->conjugate_cf = [p]() {
    auto conj = new_impl();
    conj->family = YoungFamily::Composed;
    conj->params = {p};
    conj->name = "conjugate(power(p=" + fmt_param(p) + "))";
    if (p == 1.0) {
      conj->eval = [](double y) { return y <= 1.0 ? 0.0 : kInf; };
      conj->inverse_cf = [](double y) { return y == 0.0 ? 0.0 : 1.0; };
    } else {
      const double q = p / (p - 1);
      conj->eval = [p, q](double y) { return (p - 1) * std::pow(y / p, q); };
      conj->inverse_cf = [p, q](double t) {
        return std::isinf(t) ? kInf : p * std::pow(t / (p - 1), 1.0 / q);
      };
      conj->cap = p * std::pow(1e300 / (p - 1), 1.0 / q);
    }
    conj->conjugate_cf = [p]() { return YoungFunction::power(p); };
    return wrap(conj);
  };
  return wrap(impl);
}

YoungFunction YoungFunction::power_log(double p, double alpha) {
  if (!(p >= 1) || !(alpha > 0)) throw std::invalid_argument("power_log: need p >= 1, alpha > 0");
  auto impl = new_impl();
  impl->family = YoungFamily::PowerLog;
  impl->params = {p, alpha};
  impl->cap = std::pow(1e290, 1.0 / p);
  impl->name = "powerlog(p=" + fmt_param(p) + ",alpha=" + fmt_param(alpha) + ")";
  impl->eval = [p, alpha](double x) {
    return x == 0 ? 0.0 : std::pow(x, p) * std::pow(std::log1p(x), alpha);
  };
  return wrap(impl);
}

YoungFunction YoungFunction::limonova(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("limonova: need alpha > 0");
  auto impl = new_impl();
  impl->family = YoungFamily::Limonova;
  impl->params = {alpha};
  impl->cap = 1e145;
  impl->name = "limonova(alpha=" + fmt_param(alpha) + ")";
  // Value at 0 is the continuity limit 0.
  impl->eval = [alpha](double x) {
    if (x == 0) return 0.0;
    const double e = 2.718281828459045235360287;
    return x * x * std::pow(std::log(e + x), alpha) / std::pow(std::log(e + 1.0 / x), alpha);
  };
  return wrap(impl);
}

YoungFunction YoungFunction::burstein(double alpha) {
  if (!(alpha > 0)) throw std::invalid_argument("burstein: need alpha > 0");
  // Smallest x0 >= e where x^2 log^alpha(x) is convex and increasing; scan a
  // fine grid since a closed form is not worth maintaining.
  const double e = 2.718281828459045235360287;
  auto upper = [alpha](double x) { return x * x * std::pow(std::log(x), alpha); };
  double x0 = e;
  for (double x = e; x < 25.0; x *= 1.0009765625) {
    const double h = 1e-4 * x;
    const double d2 = (upper(x + h) - 2 * upper(x) + upper(x - h)) / (h * h);
    const double d1 = (upper(x + h) - upper(x - h)) / (2 * h);
    if (d2 >= 0 && d1 > 0) {
      x0 = x;
      break;
    }
  }
  const double c = std::pow(std::log(x0), alpha);
  auto impl = new_impl();
  impl->family = YoungFamily::Burstein;
  impl->params = {alpha, x0, c};
  impl->cap = 1e145;
  impl->name = "burstein(alpha=" + fmt_param(alpha) + ")";
  impl->eval = [alpha, x0, c, upper](double x) { return x >= x0 ? upper(x) : c * x * x; };
  return wrap(impl);
}

YoungFunction YoungFunction::scaled(const YoungFunction& phi, double cmul) {
  if (!(cmul > 0)) throw std::invalid_argument("scaled: need c > 0");
  auto impl = new_impl();
  impl->family = YoungFamily::Composed;
  impl->params = {cmul};
  impl->cap = phi.domain_cap();
  impl->name = "scaled(" + phi.name() + ",c=" + fmt_param(cmul) + ")";
  impl->eval = [phi, cmul](double x) { return cmul * phi(x); };
  if (phi.has_closed_form_inverse())
    impl->inverse_cf = [phi, cmul](double y) { return phi.inverse(y / cmul); };
  if (phi.has_closed_form_conjugate()) {
    // (c Phi)*(y) = c Phi*(y/c)
    impl->conjugate_cf = [phi, cmul]() {
      const YoungFunction base = conjugate_of(phi);
      auto conj = new_impl();
      conj->family = YoungFamily::Composed;
      conj->name = "conjugate(scaled(" + phi.name() + ",c=" + fmt_param(cmul) + "))";
      conj->cap = base.domain_cap() * cmul;
      conj->eval = [base, cmul](double y) { return cmul * base(y / cmul); };
      if (base.has_closed_form_inverse())
        conj->inverse_cf = [base, cmul](double t) { return cmul * base.inverse(t / cmul); };
      conj->conjugate_cf = [phi, cmul]() { return YoungFunction::scaled(phi, cmul); };
      return wrap(conj);
    };
  }
  return wrap(impl);
}

YoungFunction YoungFunction::tabulated(std::string name, std::function<double(double)> fn,
                                       double domain_cap) {
  auto impl = new_impl();
  impl->family = YoungFamily::Tabulated;
  impl->cap = domain_cap;
  impl->name = std::move(name);
  impl->eval = std::move(fn);
  return wrap(impl);
}

std::optional<std::string> young_invariant_violation(const YoungFunction& phi) {
  if (phi(0.0) != 0.0) return "phi(0) != 0";
  const auto grid = logspace(1e-6, std::min(phi.domain_cap() * 0.5, 1e8), 80);
  double prev = 0.0;
  for (double x : grid) {
    const double v = phi(x);
    if (std::isnan(v)) return "NaN at x=" + fmt_param(x);
    if (v < prev - 1e-12 * std::max(1.0, prev))
      return "not nondecreasing at x=" + fmt_param(x);
    prev = std::isfinite(v) ? v : prev;
  }
  for (std::size_t i = 0; i + 2 < grid.size(); i += 2) {
    const double x = grid[i], y = grid[i + 2], m = 0.5 * (x + y);
    const double fy = phi(y);
    if (!std::isfinite(fy)) continue;
    const double lhs = phi(m), rhs = 0.5 * (phi(x) + fy);
    if (lhs > rhs + 1e-12 * std::max(1.0, fy))
      return "midpoint convexity fails on (" + fmt_param(x) + "," + fmt_param(y) + ")";
  }
  return std::nullopt;
}

YoungFunction conjugate_of(const YoungFunction& phi, ConjugateMode mode) {
  if (mode == ConjugateMode::Auto && phi.has_closed_form_conjugate())
    return phi.impl().conjugate_cf();

  const double cap = phi.domain_cap();
  auto eval = [phi, cap](double y) -> double {
    if (y == 0) return 0.0;
    auto g = [&](double x) { return x * y - phi(x); };
    double hi = std::max(1.0, y);
    double prev = g(0.5 * hi);
    int guard = 0;
    while (std::isfinite(phi(hi)) && g(hi) > prev) {
      prev = g(hi);
      hi *= 2;
      if (hi > cap || ++guard > 1100) return kInf;  // supremum not attained
    }
    const double xstar = golden_max(g, 0.0, hi, 1e-12);
    return std::max(0.0, g(xstar));
  };

  auto impl = std::make_shared<YoungFunction::Impl>();
  impl->family = YoungFamily::Composed;
  impl->name = "conjugate(" + phi.name() + ")";
  impl->eval = eval;
  return YoungFunction(std::shared_ptr<const YoungFunction::Impl>(std::move(impl)));
}

YoungFunction theta_from(const YoungFunction& phi) {
  auto theta_inv = [phi](double x) {
    return x == 0 ? 0.0 : phi.inverse(x) / std::sqrt(x);
  };
  // The defining map must be (strictly) increasing; Phi = x^2 makes it
  // constant, which is the degenerate boundary.
  const auto grid = logspace(1e-8, 1e8, 60);
  double prev = 0.0;
  for (double x : grid) {
    const double v = theta_inv(x);
    if (v < prev * (1 - 1e-9))
      throw precondition_error("theta_from: x^{-1/2} phi^{-1}(x) decreases at x=" + fmt_param(x));
    prev = v;
  }
  if (!(theta_inv(grid.back()) > theta_inv(grid.front()) * (1 + 1e-9)))
    throw precondition_error("theta_from: map is constant (phi at the x^2 boundary)");

  auto impl = std::make_shared<YoungFunction::Impl>();
  impl->family = YoungFamily::Composed;
  impl->name = "theta(" + phi.name() + ")";
  impl->inverse_cf = theta_inv;
  impl->eval = [theta_inv](double t) -> double {
    if (t == 0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (theta_inv(hi) < t) {
      hi *= 2;
      if (++guard > 1100) return kInf;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(hi, 1e-300); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (theta_inv(mid) >= t)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };
  return YoungFunction(std::shared_ptr<const YoungFunction::Impl>(std::move(impl)));
}

YoungFunction sqrt_compose(const YoungFunction& phi) {
  auto eval = [phi](double x) { return phi(std::sqrt(x)); };
  const auto grid = logspace(1e-6, std::min(1e8, phi.domain_cap() * phi.domain_cap() * 0.25), 60);
  for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
    const double x = grid[i], y = grid[i + 2], m = 0.5 * (x + y);
    const double fy = eval(y);
    if (!std::isfinite(fy)) continue;
    if (eval(m) > 0.5 * (eval(x) + fy) + 1e-10 * std::max(1.0, fy))
      throw precondition_error("sqrt_compose: phi(sqrt(x)) not convex near x=" + fmt_param(m));
  }
  auto impl = std::make_shared<YoungFunction::Impl>();
  impl->family = YoungFamily::Composed;
  impl->name = "sqrtcompose(" + phi.name() + ")";
  impl->cap = std::min(1e300, phi.domain_cap() * phi.domain_cap());
  impl->eval = eval;
  if (phi.has_closed_form_inverse()) {
    impl->inverse_cf = [phi](double y) {
      const double r = phi.inverse(y);
      return r * r;
    };
  }
  return YoungFunction(std::shared_ptr<const YoungFunction::Impl>(std::move(impl)));
}

MonotoneMap recovery_psi(const YoungFunction& phi) {
  const IndexEstimate idx = matuszewska(phi);
  if (!(idx.alpha_inf > 2.0 + 1e-9))
    throw precondition_error("recovery_psi: Matuszewska alpha_inf estimate " +
                             fmt_param(idx.alpha_inf) + " is not above 2");
  auto eval = [phi](double x) {
    return x == 0 ? 0.0 : std::sqrt(x) * phi.inverse(1.0 / x);
  };
  const auto grid = logspace(1e-9, 1e9, 60);
  double prev = 0.0;
  for (double x : grid) {
    const double v = eval(x);
    if (v < prev * (1 - 1e-9))
      throw precondition_error("recovery_psi: map decreases at x=" + fmt_param(x));
    prev = v;
  }
  auto inverse = [eval](double y) -> double {
    if (y <= 0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (eval(hi) < y) {
      hi *= 2;
      if (++guard > 2100) return kInf;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(hi, 1e-300); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (eval(mid) >= y)
        hi = mid;
      else
        lo = mid;
    }
    return hi;
  };
  return MonotoneMap{eval, inverse};
}

namespace {

struct DirectionWitness {
  bool ok = false;
  double K = 0.0, x0 = 0.0, violating_x = 0.0;
};

DirectionWitness bounded_ratio(const YoungFunction& a, const YoungFunction& b,
                               const std::vector<double>& grid) {
  const std::size_t n = grid.size();
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double num = a(grid[i]), den = b(grid[i]);
    if (den == 0)
      ratio[i] = num == 0 ? 0.0 : kInf;
    else if (std::isinf(num) && std::isinf(den))
      ratio[i] = 1.0;
    else
      ratio[i] = num / den;
  }
  DirectionWitness w;
  if (tail_diverges(grid, ratio, &w.violating_x)) return w;
  if (std::isinf(ratio.back())) {
    w.violating_x = grid.back();
    return w;
  }
  // Prefer a K = 1 witness when some tail is pointwise dominated.
  std::size_t first_ok = n;
  double running_max = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    running_max = std::max(running_max, ratio[i]);
    if (running_max <= 1.0 + 1e-12) first_ok = i;
  }
  w.ok = true;
  if (first_ok < n) {
    w.K = 1.0;
    w.x0 = grid[first_ok];
    return w;
  }
  std::size_t start = 0;
  while (start + 50 < n && (grid[start] < 1.0 || std::isinf(ratio[start]))) ++start;
  double sup = 0.0;
  for (std::size_t i = start; i < n; ++i) sup = std::max(sup, ratio[i]);
  if (std::isinf(sup)) {
    w.ok = false;
    w.violating_x = grid.back();
    return w;
  }
  w.K = sup * (1 + 1e-12);
  w.x0 = grid[start];
  return w;
}

}  // namespace

GrowthComparison precedes(const YoungFunction& phi1, const YoungFunction& phi2) {
  GrowthComparison out;
  const double hi = std::min({phi1.domain_cap(), phi2.domain_cap(), 1e9});
  out.grid = logspace(1e-3, hi, 240);
  // snap the nearest point to exactly 1 so canonical witnesses read as x0 = 1
  std::size_t near_one = 0;
  for (std::size_t i = 1; i < out.grid.size(); ++i)
    if (std::abs(std::log(out.grid[i])) < std::abs(std::log(out.grid[near_one]))) near_one = i;
  out.grid[near_one] = 1.0;
  const DirectionWitness fwd = bounded_ratio(phi1, phi2, out.grid);
  const DirectionWitness bwd = bounded_ratio(phi2, phi1, out.grid);
  if (fwd.ok && bwd.ok) {
    out.relation = GrowthRelation::Equivalent;
    out.witness_K = fwd.K;
    out.witness_x0 = fwd.x0;
  } else if (fwd.ok) {
    out.relation = GrowthRelation::Precedes;
    out.witness_K = fwd.K;
    out.witness_x0 = fwd.x0;
    out.violating_x = bwd.violating_x;
  } else if (bwd.ok) {
    out.relation = GrowthRelation::Succeeds;
    out.witness_K = bwd.K;
    out.witness_x0 = bwd.x0;
    out.violating_x = fwd.violating_x;
  } else {
    out.relation = GrowthRelation::Incomparable;
    out.violating_x = fwd.violating_x;
  }
  return out;
}

Delta2Report delta2_nabla2(const YoungFunction& phi) {
  Delta2Report rep;
  const double hi = std::min(phi.domain_cap() * 0.5, 1e9);
  const auto grid = logspace(1.0, hi, 200);
  std::vector<double> r2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double den = phi(grid[i]);
    const double num = phi(2 * grid[i]);
    r2[i] = (den == 0 || (std::isinf(num) && std::isinf(den))) ? 1.0 : num / den;
  }
  double where = 0;
  if (tail_diverges(grid, r2, &where)) {
    rep.in_delta2 = false;
    rep.trend = "phi(2x)/phi(x) still growing at x=" + fmt_param(where);
  } else {
    double sup = 0.0;
    for (double v : r2)
      if (std::isfinite(v)) sup = std::max(sup, v);
    rep.in_delta2 = true;
    rep.K1 = std::max(sup, 2.0 * (1 + 1e-12));
    rep.x0_delta = grid.front();
  }

  // nabla_2: smallest K2 > 1 with phi(K2 x) >= 2 K2 phi(x) on the tail grid.
  auto nabla_ok = [&](double K2) {
    for (double x : grid) {
      if (K2 * x > phi.domain_cap()) break;
      const double lhs = phi(K2 * x), rhs = 2 * K2 * phi(x);
      if (std::isinf(lhs)) break;
      if (lhs < rhs * (1 - 1e-12)) return false;
    }
    return true;
  };
  double k_hi = 1.5;
  int guard = 0;
  while (!nabla_ok(k_hi) && k_hi < 1e6 && ++guard < 60) k_hi *= 2;
  if (!nabla_ok(k_hi)) {
    rep.in_nabla2 = false;
    if (!rep.trend.empty()) rep.trend += "; ";
    rep.trend += "no K2 <= 1e6 satisfies phi(K2 x) >= 2 K2 phi(x)";
  } else {
    double k_lo = 1.0;
    for (int it = 0; it < 100 && (k_hi - k_lo) > 1e-12 * k_hi; ++it) {
      const double mid = 0.5 * (k_lo + k_hi);
      if (mid > 1.0 && nabla_ok(mid))
        k_hi = mid;
      else
        k_lo = mid;
    }
    rep.in_nabla2 = true;
    rep.K2 = k_hi;
    rep.x0_nabla = grid.front();
  }
  return rep;
}

IndexEstimate matuszewska(const YoungFunction& phi) {
  IndexEstimate est;
  const double cap = phi.domain_cap();
  const auto t_small = logspace(1e-6, 0.3, 12);
  const auto t_large = logspace(3.0, 1e6, 12);

  auto sup_ratio = [&phi, cap](double t, double x_lo, double x_hi, int n) -> double {
    double sup = -1.0;
    if (!(x_hi > x_lo)) return sup;
    for (double x : logspace(x_lo, x_hi, n)) {
      if (t * x > cap || x > cap) continue;
      const double den = phi(x);
      if (den == 0 || !std::isfinite(den)) continue;
      const double num = phi(t * x);
      if (!std::isfinite(num)) continue;
      sup = std::max(sup, num / den);
    }
    return sup;
  };
  auto index_at = [&](double t, bool at_infinity) -> double {
    const double x_hi = std::min(cap * 0.99, at_infinity ? 1e12 : 1e10);
    const double x_lo = at_infinity ? std::min(1e4, x_hi * 0.01) : 1e-8;
    const double M = sup_ratio(t, x_lo, x_hi, at_infinity ? 100 : 150);
    if (!(M > 0)) return std::numeric_limits<double>::quiet_NaN();
    return std::log(M) / std::log(t);
  };
  auto tail_limit = [&](const std::vector<double>& ts, bool take_front, bool at_infinity,
                        double* residual) -> double {
    std::vector<double> vals;
    for (double t : ts) vals.push_back(index_at(t, at_infinity));
    const double limit = take_front ? vals.front() : vals.back();
    double res = 0.0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t i = take_front ? static_cast<std::size_t>(k) : vals.size() - 1 - k;
      if (std::isnan(vals[i]))
        res = kInf;
      else
        res = std::max(res, std::abs(vals[i] - limit));
    }
    *residual = std::max(*residual, res);
    return limit;
  };

  est.residual = 0.0;
  est.alpha_a = tail_limit(t_small, true, false, &est.residual);
  est.beta_a = tail_limit(t_large, false, false, &est.residual);
  est.alpha_inf = tail_limit(t_small, true, true, &est.residual);
  est.beta_inf = tail_limit(t_large, false, true, &est.residual);
  est.grid = t_small;
  est.grid.insert(est.grid.end(), t_large.begin(), t_large.end());
  return est;
}

BakReport bak_constants(const YoungFunction& phi, double r, double c) {
  if (!(r >= 1)) throw std::invalid_argument("bak_constants: need r >= 1");
  if (!(c > 1)) throw std::invalid_argument("bak_constants: need c > 1");
  BakReport rep;
  rep.c = c;
  auto deriv = [&phi](double t) {
    const double h = 6e-6 * std::max(t, 1e-3);
    return (phi(t + h) - phi(std::max(0.0, t - h))) / (2 * h);
  };
  rep.surrogate_used = deriv(1.0) > 1e-12 * std::max(1.0, phi(2.0));
  auto fi = [&](double t) { return t <= 1.0 ? 0.0 : deriv(t); };

  const double U = std::min(phi.domain_cap() * 0.25, 1e6);
  const auto ugrid = logspace(1.0 + 1e-6, U, 150);
  double prev = 0.0;
  for (double t : ugrid) {
    const double v = fi(t);
    if (v < prev * (1 - 1e-8)) {
      rep.hypothesis_ok = false;
      rep.note = "derivative not nondecreasing at t=" + fmt_param(t);
      return rep;
    }
    prev = v;
  }

  // C0: running integral of phi'(t)/t^r by per-panel Gauss-Legendre.
  static const double gl_x[4] = {0.06943184420297371, 0.33000947820757187,
                                 0.66999052179242813, 0.93056815579702629};
  static const double gl_w[4] = {0.17392742256872693, 0.32607257743127307,
                                 0.32607257743127307, 0.17392742256872693};
  std::vector<double> ratio0(ugrid.size(), 0.0);
  double integral = 0.0, left = 1.0;
  for (std::size_t i = 0; i < ugrid.size(); ++i) {
    const double right = ugrid[i];
    const double w = right - left;
    for (int k = 0; k < 4; ++k) {
      const double t = left + w * gl_x[k];
      integral += w * gl_w[k] * fi(t) / std::pow(t, r);
    }
    left = right;
    const double den = fi(right);
    ratio0[i] = den > 0 ? integral * std::pow(right, r - 1) / den : 0.0;
  }
  double where = 0.0;
  if (tail_diverges(ugrid, ratio0, &where)) {
    rep.hypothesis_ok = false;
    rep.note = "C0 ratio still growing at u=" + fmt_param(where);
    return rep;
  }
  rep.C0 = *std::max_element(ratio0.begin(), ratio0.end());

  // C1 = sup phi'(lambda) phi'(t) / phi'(lambda t) over lambda > 1, t >= c.
  const auto lgrid = logspace(1.001, 1e3, 36);
  const auto tgrid = logspace(c, std::min(1e5, phi.domain_cap() * 1e-3), 64);
  double c1 = 0.0;
  for (double lam : lgrid) {
    for (double t : tgrid) {
      if (lam * t > phi.domain_cap()) continue;
      const double den = fi(lam * t);
      if (!(den > 0) || !std::isfinite(den)) continue;
      c1 = std::max(c1, fi(lam) * fi(t) / den);
    }
  }
  // trend audit on the lambda = 2 slice: the ratio must not keep growing in t
  std::vector<double> trend;
  for (double t : tgrid) {
    const double den = fi(2.0 * t);
    trend.push_back(den > 0 && std::isfinite(den) ? fi(2.0) * fi(t) / den : 0.0);
  }
  if (tail_diverges(tgrid, trend, &where)) {
    rep.hypothesis_ok = false;
    rep.note = "C1 ratio still growing at t=" + fmt_param(where);
    return rep;
  }
  rep.C1 = c1;
  rep.hypothesis_ok = true;
  rep.C = std::max(2.0, r * rep.C0 * rep.C1);
  return rep;
}

namespace {

double parse_kv(const std::string& args, const std::string& key) {
  std::size_t pos = 0;
  while (pos < args.size()) {
    std::size_t eq = args.find('=', pos);
    if (eq == std::string::npos) break;
    std::size_t end = args.find(',', eq);
    if (end == std::string::npos) end = args.size();
    std::string k = args.substr(pos, eq - pos);
    k.erase(std::remove_if(k.begin(), k.end(), [](char ch) { return std::isspace(ch); }), k.end());
    if (k == key) return std::stod(args.substr(eq + 1, end - eq - 1));
    pos = end == args.size() ? end : end + 1;
  }
  throw std::invalid_argument("young spec: missing parameter '" + key + "' in (" + args + ")");
}

}  // namespace

YoungFunction parse_young(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(static_cast<char>(std::tolower(ch)));
  const std::size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw std::invalid_argument("young spec: expected family(args), got '" + text + "'");
  const std::string fam = s.substr(0, open);
  const std::string args = s.substr(open + 1, s.size() - open - 2);
  if (fam == "power") return YoungFunction::power(parse_kv(args, "p"));
  if (fam == "powerlog") return YoungFunction::power_log(parse_kv(args, "p"), parse_kv(args, "alpha"));
  if (fam == "limonova") return YoungFunction::limonova(parse_kv(args, "alpha"));
  if (fam == "burstein") return YoungFunction::burstein(parse_kv(args, "alpha"));
  throw std::invalid_argument("young spec: unknown family '" + fam + "'");
}

std::string to_string(const YoungFunction& phi) { return phi.name(); }

}  // namespace orlicz
