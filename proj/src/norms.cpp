#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

void check_measure(const MeasureSpec& mu) {
  if (mu.base.members.empty()) throw std::invalid_argument("norm: empty measure base set");
}

double modular_abs(const std::vector<double>& a, const std::vector<double>& w,
                   const YoungFunction& phi, double k) {
  KahanSum s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = phi(a[i] / k) * w[i];
    if (std::isinf(v)) return kInf;
    s.add(v);
  }
  return s.value();
}

struct AbsInstance {
  std::vector<double> a, w;
  double amax = 0.0;
  double wtotal = 0.0;
};

AbsInstance abs_instance(const Signal& f, const MeasureSpec& mu) {
  AbsInstance inst;
  const double w = mu.site_weight();
  inst.a.reserve(mu.base.members.size());
  inst.w.reserve(mu.base.members.size());
  for (auto i : mu.base.members) {
    const double m = std::abs(f.values[i]);
    if (!std::isfinite(m)) throw std::invalid_argument("norm: non-finite signal entry");
    inst.a.push_back(m);
    inst.w.push_back(w);
    inst.amax = std::max(inst.amax, m);
    inst.wtotal += w;
  }
  return inst;
}

// Luxemburg bisection on a plain nonnegative vector; shared by the signal
// front end and the dual-sup ascent normalization.
NormReport lux_vec(const std::vector<double>& a, const std::vector<double>& w,
                   const YoungFunction& phi, double amax) {
  NormReport rep;
  if (amax == 0.0) return rep;  // zero vector, ClosedForm 0
  double wtotal = 0.0;
  for (double x : w) wtotal += x;
  double inv = phi.inverse(1.0 / wtotal);
  double hi = inv > 0 && std::isfinite(inv) ? amax / inv : amax;
  int it = 0;
  while (modular_abs(a, w, phi, hi) > 1.0 && ++it < 600) hi *= 2;
  double lo = hi;
  while (modular_abs(a, w, phi, lo) <= 1.0 && ++it < 1200) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) {  // modular stays <= 1 all the way down
      rep.value = 0.0;
      rep.method = NormMethod::Bisection;
      rep.iterations = it;
      return rep;
    }
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
    ++it;
    const double mid = 0.5 * (lo + hi);
    if (modular_abs(a, w, phi, mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  rep.value = hi;
  rep.method = NormMethod::Bisection;
  rep.modular_at_value = modular_abs(a, w, phi, hi);
  rep.iterations = it;
  return rep;
}

}  // namespace

double modular(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu, double k) {
  check_measure(mu);
  const AbsInstance inst = abs_instance(f, mu);
  return modular_abs(inst.a, inst.w, phi, k);
}

NormReport luxemburg_norm(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu) {
  check_measure(mu);
  const AbsInstance inst = abs_instance(f, mu);
  if (inst.amax == 0.0) return NormReport{};  // value 0, ClosedForm
  if (phi.family() == YoungFamily::Power) {
    // the gauge norm of x^p is the plain weighted p-norm
    const double p = phi.params()[0];
    KahanSum s;
    for (std::size_t i = 0; i < inst.a.size(); ++i)
      s.add(inst.w[i] * std::pow(inst.a[i], p));
    NormReport rep;
    rep.value = std::pow(s.value(), 1.0 / p);
    rep.method = NormMethod::ClosedForm;
    rep.modular_at_value = 1.0;
    return rep;
  }
  return lux_vec(inst.a, inst.w, phi, inst.amax);
}

NormReport orlicz_norm_amemiya(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu) {
  check_measure(mu);
  const AbsInstance inst = abs_instance(f, mu);
  NormReport rep;
  rep.method = NormMethod::Amemiya;
  if (inst.amax == 0.0) {
    rep.method = NormMethod::ClosedForm;
    return rep;
  }
  auto cost = [&](double k) {
    KahanSum s;
    for (std::size_t i = 0; i < inst.a.size(); ++i) {
      const double v = phi(k * inst.a[i]) * inst.w[i];
      if (std::isinf(v)) return kInf;
      s.add(v);
    }
    return (1.0 + s.value()) / k;
  };
  // A(k) is quasiconvex: expand a bracket around a decreasing stretch, then
  // golden-section on log k.
  double k_mid = 1.0 / inst.amax;
  double k_lo = k_mid / 4, k_hi = k_mid * 4;
  int it = 0;
  while (cost(k_lo) < cost(k_mid) && ++it < 600) {
    k_hi = k_mid;
    k_mid = k_lo;
    k_lo /= 4;
    if (k_lo < 1e-300) break;
  }
  while (cost(k_hi) < cost(k_mid) && ++it < 1200) {
    k_lo = k_mid;
    k_mid = k_hi;
    k_hi *= 4;
    if (k_hi > 1e300) break;
  }
  double a = std::log(k_lo), b = std::log(k_hi);
  constexpr double kGr = 0.6180339887498949;
  double x1 = b - kGr * (b - a), x2 = a + kGr * (b - a);
  double f1 = cost(std::exp(x1)), f2 = cost(std::exp(x2));
  while (b - a > 1e-13 && ++it < 2000) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGr * (b - a);
      f2 = cost(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGr * (b - a);
      f1 = cost(std::exp(x1));
    }
  }
  const double kstar = std::exp(0.5 * (a + b));
  rep.value = cost(kstar);
  rep.modular_at_value = rep.value * kstar - 1.0;
  rep.iterations = it;
  return rep;
}

NormReport orlicz_norm_dual_sup(const Signal& f, const YoungFunction& phi, const MeasureSpec& mu,
                                std::uint64_t seed, int restarts) {
  check_measure(mu);
  if (mu.base.members.size() > 64)
    throw oracle_scope_error("orlicz_norm_dual_sup: oracle capped at |A| <= 64");
  const AbsInstance inst = abs_instance(f, mu);
  NormReport rep;
  rep.method = NormMethod::DualSup;
  if (inst.amax == 0.0) return rep;
  const YoungFunction psi = conjugate_of(phi);
  const std::size_t n = inst.a.size();

  // Best value of sum w |f| g after scaling g to the modular boundary.
  auto score = [&](std::vector<double> g) -> double {
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, v);
    if (gmax == 0.0) return 0.0;
    const double t = lux_vec(g, inst.w, psi, gmax).value;
    if (!(t > 0)) return 0.0;
    KahanSum s;
    for (std::size_t i = 0; i < n; ++i) s.add(inst.w[i] * inst.a[i] * g[i] / t);
    return s.value();
  };

  double best = 0.0;
  auto consider = [&](const std::vector<double>& g) { best = std::max(best, score(g)); };

  // Deterministic seeds: the indicator extremal of the exact-norm lemma, the
  // signal profile itself, and a KKT stationary profile g = dPhi(|f|/lambda).
  {
    std::vector<double> g(n, 0.0);
    const double level = psi.inverse(1.0 / inst.wtotal);
    for (std::size_t i = 0; i < n; ++i)
      if (inst.a[i] > 0) g[i] = std::isfinite(level) ? level : 1.0;
    consider(g);
    consider(inst.a);
    auto dphi = [&phi](double x) {
      const double h = 6e-6 * std::max(x, 1e-6);
      const double right = phi(x + h), left = phi(std::max(0.0, x - h));
      return std::isfinite(right) ? (right - left) / (2 * h) : kInf;
    };
    // KKT stationary profile g = Phi'(|f|/lambda); the multiplier solves
    // sum w Psi(g(lambda)) = 1, monotone in lambda, so bisect it.
    auto kkt_profile = [&](double lam, std::vector<double>* g) -> double {
      KahanSum s;
      for (std::size_t i = 0; i < n; ++i) {
        (*g)[i] = dphi(inst.a[i] / lam);
        if (!std::isfinite((*g)[i])) return kInf;
        const double term = psi((*g)[i]) * inst.w[i];
        if (std::isinf(term)) return kInf;
        s.add(term);
      }
      return s.value();
    };
    std::vector<double> gk(n, 0.0);
    double lam_hi = inst.amax;
    int guard = 0;
    while (kkt_profile(lam_hi, &gk) > 1.0 && ++guard < 100) lam_hi *= 4;
    if (kkt_profile(lam_hi, &gk) <= 1.0) {
      double lam_lo = lam_hi;
      while (kkt_profile(lam_lo, &gk) <= 1.0 && lam_lo > inst.amax * 1e-18 && ++guard < 300)
        lam_lo /= 4;
      if (kkt_profile(lam_lo, &gk) > 1.0) {
        for (int it = 0; it < 100 && (lam_hi - lam_lo) > 1e-13 * lam_hi; ++it) {
          const double mid = 0.5 * (lam_lo + lam_hi);
          if (kkt_profile(mid, &gk) <= 1.0)
            lam_hi = mid;
          else
            lam_lo = mid;
        }
        kkt_profile(lam_hi, &gk);
        consider(gk);
      }
    }
  }

  // Projected ascent: the objective is linear, so push along the gradient,
  // clip to the nonnegative orthant, and rescale to the modular boundary.
  Rng rng(seed);
  const int iters = 60;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> g(n);
    for (auto& v : g) v = -std::log(1.0 - rng.uniform());  // exponential spread
    double cur = score(g);
    double step = 1.0;
    int stale = 0;
    for (int itx = 0; itx < iters && stale < 10; ++itx) {
      std::vector<double> trial = g;
      double gnorm = 0.0;
      for (std::size_t i = 0; i < n; ++i) gnorm = std::max(gnorm, inst.a[i]);
      if (gnorm == 0) break;
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(0.0, g[i] + step * inst.a[i] / gnorm);
      const double v = score(trial);
      if (v > cur * (1 + 1e-12)) {
        g = std::move(trial);
        cur = v;
        step *= 1.3;
        stale = 0;
      } else {
        step *= 0.5;
        ++stale;
      }
    }
    best = std::max(best, cur);
  }
  rep.value = best;
  rep.iterations = restarts;
  return rep;
}

double indicator_orlicz_norm(const SiteSet& e, const YoungFunction& phi, const GroupDims& dims) {
  if (e.members.empty()) throw std::invalid_argument("indicator_orlicz_norm: empty set");
  const double frac = static_cast<double>(e.members.size()) / static_cast<double>(dims.size);
  const YoungFunction conj = conjugate_of(phi);
  return frac * conj.inverse(1.0 / frac);
}

double j_phi(const Signal& f, const YoungFunction& phi, const GroupDims& dims) {
  const double target = phi(1.0);
  if (!(target > 0) || !std::isfinite(target))
    throw std::invalid_argument("j_phi: need Phi(1) finite and positive");
  double amax = 0.0;
  for (const auto& v : f.values) amax = std::max(amax, std::abs(v));
  if (amax == 0.0) return 0.0;
  const double w = 1.0 / static_cast<double>(dims.size);
  auto mod = [&](double k) {
    KahanSum s;
    for (const auto& v : f.values) {
      const double t = phi(std::abs(v) / k) * w;
      if (std::isinf(t)) return kInf;
      s.add(t);
    }
    return s.value();
  };
  double inv = phi.inverse(target / w);
  double hi = std::isfinite(inv) && inv > 0 ? amax / inv : amax;
  int it = 0;
  while (mod(hi) > target && ++it < 600) hi *= 2;
  double lo = hi;
  while (mod(lo) <= target && ++it < 1200) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) return 0.0;
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mod(mid) <= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double lp_norm(const Signal& f, double p, const MeasureSpec& mu) {
  check_measure(mu);
  const double w = mu.site_weight();
  KahanSum s;
  for (auto i : mu.base.members) s.add(w * std::pow(std::abs(f.values[i]), p));
  return std::pow(s.value(), 1.0 / p);
}

}  // namespace orlicz
