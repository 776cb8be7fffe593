#include "orlicz/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace orlicz {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string digest_of(const Instance& inst, const std::string& extra = "") {
  std::ostringstream os;
  os << "seed=" << inst.seed << ";N=" << inst.dims.n << ";d=" << inst.dims.d
     << ";phi=" << inst.phi.name();
  if (!extra.empty()) os << ";" << extra;
  return os.str();
}

Signal pointwise_product(const Signal& f, const Signal& g) {
  Signal out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= g.values[i];
  return out;
}

double weighted_l1(const Signal& f, const MeasureSpec& mu) {
  KahanSum s;
  const double w = mu.site_weight();
  for (auto i : mu.base.members) s.add(w * std::abs(f.values[i]));
  return s.value();
}

// Memoized Bak hypothesis audit; Young functions are immutable so the name
// keys the result.
bool bak_hypothesis_ok(const YoungFunction& phi) {
  static std::map<std::string, bool> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(phi.name());
    if (it != cache.end()) return it->second;
  }
  const bool ok = bak_constants(phi, 1.0).hypothesis_ok;
  std::lock_guard<std::mutex> lock(mtx);
  cache[phi.name()] = ok;
  return ok;
}

// ---- entry handlers ------------------------------------------------------

InequalityReport verify_holder_2c(const Instance& inst) {
  const MeasureSpec mu = MeasureSpec::normalized_on(SiteSet::full(inst.dims));
  const YoungFunction conj = conjugate_of(inst.phi);
  const double lhs = weighted_l1(pointwise_product(inst.f, inst.g), mu);
  const double rhs =
      2.0 * luxemburg_norm(inst.f, inst.phi, mu).value * luxemburg_norm(inst.g, conj, mu).value;
  return make_report("HOLDER_2C", lhs, rhs, BoundDirection::LhsLeqRhs, digest_of(inst));
}

InequalityReport verify_holder_1c(const Instance& inst) {
  const MeasureSpec mu = MeasureSpec::normalized_on(inst.a);
  const YoungFunction conj = conjugate_of(inst.phi);
  const double lhs = weighted_l1(pointwise_product(inst.f, inst.g), mu);
  const double rhs = orlicz_norm_amemiya(inst.f, inst.phi, mu).value *
                     luxemburg_norm(inst.g, conj, mu).value;
  return make_report("HOLDER_1C", lhs, rhs, BoundDirection::LhsLeqRhs,
                     digest_of(inst, "|A|=" + std::to_string(inst.a.count())));
}

InequalityReport verify_lp_from_phi(const Instance& inst) {
  const std::string digest =
      digest_of(inst, "p=" + std::to_string(inst.p) + ";|A|=" + std::to_string(inst.a.count()));
  if (!is_precedes(precedes(YoungFunction::power(inst.p), inst.phi)))
    return hypothesis_report("LP_FROM_PHI", "x^p does not precede phi", digest);
  const MeasureSpec on_a = MeasureSpec::counting(inst.a);
  const double cardA = static_cast<double>(inst.a.count());
  const double lux = luxemburg_norm(inst.f, inst.phi, on_a).value;
  const double lhs = lp_norm(inst.f, inst.p, on_a);
  const double rhs = std::pow(cardA, 1.0 / inst.p) * inst.phi.inverse(1.0 / cardA) * lux;
  InequalityReport rep = make_report("LP_FROM_PHI", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
  if (inst.a.count() == inst.dims.size) {
    // full-group corollary over the normalized measure
    const MeasureSpec mu = MeasureSpec::normalized_on(inst.a);
    const double lhs_c = lp_norm(inst.f, inst.p, mu);
    const double rhs_c = inst.phi.inverse(1.0) * luxemburg_norm(inst.f, inst.phi, mu).value;
    InequalityReport cor =
        make_report("LP_FROM_PHI", lhs_c, rhs_c, BoundDirection::LhsLeqRhs, digest);
    cor.note = "normalized corollary branch";
    if (cor.slack < rep.slack) rep = cor;
  }
  return rep;
}

InequalityReport verify_phi_from_l1(const Instance& inst) {
  const Signal fhat = dft(inst.f);
  const std::string digest = digest_of(inst, "|S|=" + std::to_string(inst.s.count()));
  double off = 0.0, peak = 0.0;
  for (std::uint32_t m = 0; m < inst.dims.size; ++m) {
    const double a = std::abs(fhat.values[m]);
    peak = std::max(peak, a);
    if (!inst.s.contains(m)) off = std::max(off, a);
  }
  if (off > 1e-12 * peak)
    return hypothesis_report("PHI_FROM_L1", "spectrum leaks outside S", digest);
  const double cardS = static_cast<double>(inst.s.count());
  const double nd = static_cast<double>(inst.dims.size);
  const MeasureSpec full = MeasureSpec::counting(SiteSet::full(inst.dims));
  const double lhs = luxemburg_norm(inst.f, inst.phi, full).value;
  const double rhs = cardS / (nd * inst.phi.inverse(cardS / nd)) * l1_norm(inst.f);
  return make_report("PHI_FROM_L1", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
}

InequalityReport verify_l1_from_mu(const Instance& inst) {
  const double cardE = static_cast<double>(inst.e.count());
  const MeasureSpec mu = MeasureSpec::normalized_on(inst.e);
  const double lhs = l1_norm(inst.f);
  const double rhs = cardE * inst.phi.inverse(1.0) * luxemburg_norm(inst.f, inst.phi, mu).value;
  return make_report("L1_FROM_MU", lhs, rhs, BoundDirection::LhsLeqRhs,
                     digest_of(inst, "|E|=" + std::to_string(inst.e.count())));
}

InequalityReport verify_normalize(const Instance& inst) {
  const double cardA = static_cast<double>(inst.a.count());
  const double lhs = luxemburg_norm(inst.f, inst.phi, MeasureSpec::counting(inst.a)).value;
  const double rhs =
      cardA * luxemburg_norm(inst.f, inst.phi, MeasureSpec::normalized_on(inst.a)).value;
  return make_report("NORMALIZE", lhs, rhs, BoundDirection::LhsLeqRhs,
                     digest_of(inst, "|A|=" + std::to_string(inst.a.count())));
}

InequalityReport verify_norm_vs_mu(const Instance& inst) {
  const SiteSet e = support(inst.f, 1e-10);
  const SiteSet s = support(dft(inst.f), 1e-10);
  const std::string digest = digest_of(
      inst, "|E|=" + std::to_string(e.count()) + ";|S|=" + std::to_string(s.count()));
  if (e.members.empty()) return hypothesis_report("NORM_VS_MU", "zero signal", digest);
  const double cardE = static_cast<double>(e.count());
  const double cardS = static_cast<double>(s.count());
  const double nd = static_cast<double>(inst.dims.size);
  const double lhs = luxemburg_norm(inst.f, inst.phi, MeasureSpec::counting(e)).value;
  const double coeff = cardE * cardS * inst.phi.inverse(1.0) /
                       (nd * inst.phi.inverse(cardS / nd));
  const double rhs =
      coeff * luxemburg_norm(inst.f, inst.phi, MeasureSpec::normalized_on(e)).value;
  return make_report("NORM_VS_MU", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
}

bool gen_young_hypothesis(const YoungFunction& phi, const YoungFunction& psi,
                          const YoungFunction& theta) {
  for (double x : logspace(1e-9, 1e9, 80)) {
    const double lhs = phi.inverse(x);
    const double rhs = psi.inverse(x) * theta.inverse(x);
    if (lhs < rhs * (1 - 1e-9)) return false;
  }
  return true;
}

InequalityReport verify_gen_young(const Instance& inst) {
  const std::string digest =
      digest_of(inst, "psi=" + inst.psi.name() + ";theta=" + inst.theta.name());
  if (!gen_young_hypothesis(inst.phi, inst.psi, inst.theta))
    return hypothesis_report("GEN_YOUNG", "phi^{-1} < psi^{-1} theta^{-1} on the grid", digest);
  // scalar grid: report the tightest pair
  InequalityReport worst;
  bool first = true;
  for (double x : logspace(1e-2, 1e2, 25)) {
    for (double y : logspace(1e-2, 1e2, 25)) {
      const double lhs = inst.phi(x * y);
      if (!std::isfinite(lhs)) continue;
      const double rhs = inst.psi(x) + inst.theta(y);
      InequalityReport rep = make_report("GEN_YOUNG", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
      if (first || rep.slack < worst.slack) {
        worst = rep;
        first = false;
      }
    }
  }
  // summed corollary form over A
  KahanSum sl, sr;
  for (auto i : inst.a.members) {
    sl.add(inst.phi(std::abs(inst.f.values[i] * inst.g.values[i])));
    sr.add(inst.psi(std::abs(inst.f.values[i])) + inst.theta(std::abs(inst.g.values[i])));
  }
  InequalityReport summed =
      make_report("GEN_YOUNG", sl.value(), sr.value(), BoundDirection::LhsLeqRhs, digest);
  summed.note = "summed corollary branch";
  return summed.slack < worst.slack ? summed : worst;
}

InequalityReport verify_gen_holder(const Instance& inst) {
  const std::string digest =
      digest_of(inst, "psi=" + inst.psi.name() + ";theta=" + inst.theta.name() +
                          ";|A|=" + std::to_string(inst.a.count()));
  if (!gen_young_hypothesis(inst.phi, inst.psi, inst.theta))
    return hypothesis_report("GEN_HOLDER", "phi^{-1} < psi^{-1} theta^{-1} on the grid", digest);
  const MeasureSpec on_a = MeasureSpec::counting(inst.a);
  const double lhs = luxemburg_norm(pointwise_product(inst.f, inst.g), inst.phi, on_a).value;
  const double rhs = 2.0 * luxemburg_norm(inst.f, inst.psi, on_a).value *
                     luxemburg_norm(inst.g, inst.theta, on_a).value;
  return make_report("GEN_HOLDER", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
}

InequalityReport verify_bak_interp(const Instance& inst) {
  const std::string digest = digest_of(inst, "|E|=" + std::to_string(inst.e.count()));
  if (!bak_hypothesis_ok(inst.phi))
    return hypothesis_report("BAK_INTERP", "phi fails the interpolation hypotheses", digest);
  const double cardE = static_cast<double>(inst.e.count());
  const double counting = luxemburg_norm(inst.f, inst.phi, MeasureSpec::counting(inst.e)).value;
  const double normalized =
      luxemburg_norm(inst.f, inst.phi, MeasureSpec::normalized_on(inst.e)).value;
  if (counting == 0) return hypothesis_report("BAK_INTERP", "zero signal on E", digest);
  const double c_prime = counting / (inst.phi.inverse(cardE) * normalized);
  const double d_prime = normalized / (inst.phi.inverse(1.0 / cardE) * counting);
  InequalityReport rep = make_report("BAK_INTERP", counting, inst.phi.inverse(cardE) * normalized,
                                     BoundDirection::LhsLeqRhs, digest);
  rep.holds = true;  // empirical-constant entry: the ratio is the result
  rep.empirical_constant = std::max(c_prime, d_prime);
  std::ostringstream os;
  os << "C'=" << c_prime << ";D'=" << d_prime;
  rep.note = os.str();
  return rep;
}

InequalityReport verify_hausdorff_young(const Instance& inst) {
  const YoungFunction psi = conjugate_of(inst.phi);
  const std::string digest = digest_of(inst, "r=" + std::to_string(inst.r));
  if (!is_precedes(precedes(inst.phi, YoungFunction::power(2))))
    return hypothesis_report("HAUSDORFF_YOUNG", "phi does not precede x^2", digest);
  // differentiability surrogate: central finite differences of psi vs x^r
  const YoungFunction dpsi = YoungFunction::tabulated(
      "derivative(" + psi.name() + ")",
      [psi](double x) {
        const double h = 1e-6 * std::max(x, 1e-3);
        const double right = psi(x + h), left = psi(std::max(0.0, x - h));
        return std::isfinite(right) ? (right - left) / (2 * h) : kInf;
      },
      1e200);
  if (!is_precedes(precedes(dpsi, YoungFunction::power(std::max(1.0, inst.r)))))
    return hypothesis_report("HAUSDORFF_YOUNG", "psi' does not precede x^r", digest);

  const MeasureSpec full = MeasureSpec::counting(SiteSet::full(inst.dims));
  const Signal fhat = dft(inst.f);
  const double lhs = luxemburg_norm(fhat, psi, full).value;
  const double nd = static_cast<double>(inst.dims.size);
  const double coeff = inst.phi.inverse(1.0 / (nd * inst.phi(1.0)));
  const double base = luxemburg_norm(inst.f, inst.phi, full).value;
  InequalityReport rep =
      make_report("HAUSDORFF_YOUNG", lhs, coeff * base, BoundDirection::LhsLeqRhs, digest);
  rep.holds = true;  // empirical-constant entry
  rep.empirical_constant = base > 0 ? lhs / (coeff * base) : 0.0;
  std::ostringstream os;
  os.precision(12);
  if (std::abs(inst.phi(1.0) + psi(1.0) - 1.0) <= 1e-9) {
    Signal scaled_hat = fhat;
    for (auto& v : scaled_hat.values) v *= nd;
    const double jp = j_phi(inst.f, inst.phi, inst.dims);
    const double jq = j_phi(scaled_hat, psi, inst.dims);
    os << "k0=" << (jp > 0 ? jq / jp : 0.0);
  } else {
    os << "J-form out of hypothesis: Phi(1)+Psi(1)=" << inst.phi(1.0) + psi(1.0);
  }
  rep.note = os.str();
  return rep;
}

// ---- instance generators --------------------------------------------------

YoungFunction pool_nice(Rng& rng) {
  switch (rng.below(8)) {
    case 0: return YoungFunction::power(1.25);
    case 1: return YoungFunction::power(1.5);
    case 2: return YoungFunction::power(2);
    case 3: return YoungFunction::power(2.5);
    case 4: return YoungFunction::power(3);
    case 5: return YoungFunction::power(4);
    case 6: return YoungFunction::power_log(2, 1);
    default: return YoungFunction::burstein(1);
  }
}

SiteSet nonempty_subset(const GroupDims& dims, Rng& rng, double density) {
  SiteSet s = sample_subset_bernoulli(dims, density, rng);
  if (s.members.empty()) s = SiteSet::of(dims, {static_cast<std::uint32_t>(rng.below(dims.size))});
  return s;
}

}  // namespace

const std::vector<std::string>& registry_ids() {
  static const std::vector<std::string> ids = {
      "HOLDER_2C",  "HOLDER_1C", "LP_FROM_PHI", "PHI_FROM_L1",    "L1_FROM_MU", "NORMALIZE",
      "NORM_VS_MU", "GEN_YOUNG", "GEN_HOLDER",  "BAK_INTERP",     "HAUSDORFF_YOUNG"};
  return ids;
}

bool is_constant_free(const std::string& id) {
  return id != "BAK_INTERP" && id != "HAUSDORFF_YOUNG";
}

InequalityReport verify(const std::string& id, const Instance& inst) {
  if (id == "HOLDER_2C") return verify_holder_2c(inst);
  if (id == "HOLDER_1C") return verify_holder_1c(inst);
  if (id == "LP_FROM_PHI") return verify_lp_from_phi(inst);
  if (id == "PHI_FROM_L1") return verify_phi_from_l1(inst);
  if (id == "L1_FROM_MU") return verify_l1_from_mu(inst);
  if (id == "NORMALIZE") return verify_normalize(inst);
  if (id == "NORM_VS_MU") return verify_norm_vs_mu(inst);
  if (id == "GEN_YOUNG") return verify_gen_young(inst);
  if (id == "GEN_HOLDER") return verify_gen_holder(inst);
  if (id == "BAK_INTERP") return verify_bak_interp(inst);
  if (id == "HAUSDORFF_YOUNG") return verify_hausdorff_young(inst);
  throw std::invalid_argument("unknown registry id: " + id);
}

Instance make_instance(const std::string& id, const GroupDims& dims, std::uint64_t master_seed,
                       std::uint64_t trial) {
  Rng rng(master_seed ^ fnv1a(id), trial);
  Instance inst;
  inst.dims = dims;
  inst.seed = trial;
  inst.f = make_gaussian(SiteSet::full(dims), rng.next_u64());
  inst.g = make_gaussian(SiteSet::full(dims), rng.next_u64());
  inst.a = nonempty_subset(dims, rng, 0.5);
  inst.e = nonempty_subset(dims, rng, 0.35);
  inst.s = nonempty_subset(dims, rng, 0.35);
  inst.phi = pool_nice(rng);

  if (id == "LP_FROM_PHI") {
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    inst.p = ps[rng.below(4)];
    inst.phi = rng.below(3) == 0 ? YoungFunction::power_log(inst.p, 1)
                                 : YoungFunction::power(inst.p * (1.0 + rng.uniform()));
  } else if (id == "PHI_FROM_L1") {
    inst.f = make_spectral(inst.s, rng.next_u64());
  } else if (id == "L1_FROM_MU" || id == "BAK_INTERP" || id == "NORM_VS_MU") {
    inst.f = make_gaussian(inst.e, rng.next_u64());
    if (id == "BAK_INTERP" && inst.phi.family() != YoungFamily::Power)
      inst.phi = YoungFunction::power(1.5 + 2.5 * rng.uniform());
  } else if (id == "GEN_YOUNG" || id == "GEN_HOLDER") {
    if (rng.below(2) == 0) {
      double a = 1.5 + 2.5 * rng.uniform();
      double b = 1.5 + 2.5 * rng.uniform();
      while (1.0 / a + 1.0 / b > 1.0) {
        a += 0.5;
        b += 0.5;
      }
      inst.psi = YoungFunction::power(a);
      inst.theta = YoungFunction::power(b);
      inst.phi = YoungFunction::power(1.0 / (1.0 / a + 1.0 / b));
    } else {
      const double p = 1.0 + 0.9 * rng.uniform();
      inst.phi = YoungFunction::power(p);
      inst.psi = YoungFunction::power(2);
      inst.theta = theta_from(inst.phi);
    }
  } else if (id == "HAUSDORFF_YOUNG") {
    const double p = 1.2 + 0.8 * rng.uniform();
    inst.phi = rng.below(2) == 0 ? YoungFunction::scaled(YoungFunction::power(p), 1.0 / p)
                                 : YoungFunction::power(p);
    inst.r = std::max(1.0, p / (p - 1.0) - 1.0);
  }
  return inst;
}

SweepSummary sweep(const std::string& id, const GroupDims& dims, int trials,
                   std::uint64_t master_seed) {
  const auto reports = sweep_reports(id, dims, trials, master_seed);
  SweepSummary sum;
  sum.id = id;
  sum.trials = trials;
  bool have_worst = false;
  for (const auto& rep : reports) {
    if (rep.status == ReportStatus::HypothesisViolated) {
      ++sum.hypothesis_failures;
      continue;
    }
    if (rep.holds)
      ++sum.pass_count;
    else
      ++sum.fail_count;
    if (rep.empirical_constant) {
      const double c = *rep.empirical_constant;
      sum.empirical_constant = sum.empirical_constant ? std::max(*sum.empirical_constant, c) : c;
    }
    if (!have_worst || rep.slack < sum.worst.slack) {
      sum.worst = rep;
      have_worst = true;
    }
  }
  if (have_worst) sum.worst_slack = sum.worst.slack;
  return sum;
}

std::vector<InequalityReport> sweep_reports(const std::string& id, const GroupDims& dims,
                                            int trials, std::uint64_t master_seed) {
  if (trials < 0) throw std::invalid_argument("sweep: trials must be >= 0");
  std::vector<InequalityReport> reports(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    reports[t] = verify(id, make_instance(id, dims, master_seed, t));
  });
  return reports;
}

}  // namespace orlicz
