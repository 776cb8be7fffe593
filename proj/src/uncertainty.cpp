#include "orlicz/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlicz/restriction.hpp"

namespace orlicz {

namespace {

double l2_on(const Signal& f, const SiteSet& a) {
  KahanSum s;
  for (auto i : a.members) s.add(std::norm(f.values[i]));
  return std::sqrt(s.value());
}

Signal restrict_to(const Signal& f, const SiteSet& e) {
  Signal out{f.dims, std::vector<cplx>(f.dims.size, cplx(0, 0))};
  for (auto i : e.members) out.values[i] = f.values[i];
  return out;
}

bool is_zero(const Signal& f) {
  for (const auto& v : f.values)
    if (v != cplx(0, 0)) return false;
  return true;
}

std::string base_digest(const UPInstance& inst) {
  std::ostringstream os;
  os << "N=" << inst.f.dims.n << ";d=" << inst.f.dims.d << ";|E|=" << inst.e.count()
     << ";|S|=" << inst.s.count() << ";phi=" << inst.phi.name() << ";psi=" << inst.psi.name();
  return os.str();
}

double lux_c(const Signal& f, const YoungFunction& phi, const SiteSet& a) {
  return luxemburg_norm(f, phi, MeasureSpec::counting(a)).value;
}
double lux_mu(const Signal& f, const YoungFunction& phi, const SiteSet& a) {
  return luxemburg_norm(f, phi, MeasureSpec::normalized_on(a)).value;
}

}  // namespace

UPInstance make_up_instance(Signal f, YoungFunction phi, YoungFunction psi, double tol) {
  UPInstance inst;
  inst.e = support(f, tol);
  inst.s = support(dft(f), tol);
  inst.f = std::move(f);
  inst.phi = std::move(phi);
  inst.psi = std::move(psi);
  inst.support_tol = tol;
  return inst;
}

UPInstance make_ap_instance(Signal f, SiteSet e, SiteSet s, YoungFunction phi, YoungFunction psi) {
  UPInstance inst;
  inst.f = std::move(f);
  inst.e = std::move(e);
  inst.s = std::move(s);
  inst.phi = std::move(phi);
  inst.psi = std::move(psi);
  return inst;
}

InequalityReport classical_up(const UPInstance& inst) {
  if (is_zero(inst.f)) throw std::invalid_argument("classical_up: zero signal");
  const double lhs = static_cast<double>(inst.e.count()) * static_cast<double>(inst.s.count());
  const double rhs = static_cast<double>(inst.f.dims.size);
  return make_report("UP_CLASSICAL", lhs, rhs, BoundDirection::LhsGeqRhs, base_digest(inst));
}

namespace displays {

double up_I_rhs(const YoungFunction& phi, const YoungFunction& psi, double c, double cardS,
                double nd) {
  return phi.inverse(cardS / nd) * (nd / cardS) * (nd / cardS) / (psi.inverse(1.0) * c);
}

double up_II_a_lhs(const YoungFunction& phi, double cardE, double cardS, double nd) {
  const double inv = phi.inverse(cardS / nd);
  return cardE * cardS * cardS * cardS / (inv * inv);
}

double up_II_a_rhs(const YoungFunction& phi, double c, double nd) {
  const double inv1 = phi.inverse(1.0);
  return nd * nd * nd / (inv1 * inv1 * c * c);
}

double up_II_b_lhs(const YoungFunction& phi, double cardE, double cardS) {
  const double inv = phi.inverse(cardE);
  return inv * inv / cardE * cardS;
}

double up_II_b_rhs(double c, double c_prime, double nd) {
  return nd / ((c * c_prime) * (c * c_prime));
}

double up_II_ii_lhs(const YoungFunction& phi, const YoungFunction& psi,
                    const YoungFunction& psistar, double cardE, double cardS) {
  return phi.inverse(cardE) * psistar.inverse(1.0 / cardE) * psi.inverse(cardS);
}

double up_II_ii_rhs(const YoungFunction& psi, double c, double k_psi, double c_psi, double c_phi,
                    double d_psistar, double nd) {
  return 1.0 / (psi.inverse(1.0 / (nd * psi(1.0))) * c) / (c_psi * k_psi * c_phi * d_psistar);
}

double lambda_up_rhs_exact(const YoungFunction& phi, double k, double cardE, double nd) {
  const double inv = phi.inverse(nd / cardE);
  return 1.0 / (k * k * inv * inv);
}

double lambda_up_rhs_display(const YoungFunction& phi, double k, double cardE, double nd) {
  return 1.0 / (k * k * phi.inverse(nd * nd / (cardE * cardE)));
}

}  // namespace displays

InequalityReport up_restriction_I(const UPInstance& inst) {
  if (is_zero(inst.f)) throw std::invalid_argument("up_restriction_I: zero signal");
  const std::string digest = base_digest(inst);
  if (!is_precedes(precedes(YoungFunction::power(1), inst.phi)) ||
      !is_precedes(precedes(inst.phi, inst.psi)))
    return hypothesis_report("UP_RESTRICTION_I", "needs x < phi < psi in growth order", digest);
  const double nd = static_cast<double>(inst.f.dims.size);
  const double cardS = static_cast<double>(inst.s.count());
  const double c =
      inst.c_restriction ? *inst.c_restriction : restriction_ratio(inst.f, inst.s, inst.phi, inst.psi);
  InequalityReport rep =
      make_report("UP_RESTRICTION_I", static_cast<double>(inst.e.count()),
                  displays::up_I_rhs(inst.phi, inst.psi, c, cardS, nd),
                  BoundDirection::LhsGeqRhs, digest);
  rep.empirical_constant = c;
  rep.note = inst.c_restriction ? "supplied constant" : "instance-measured constant";
  return rep;
}

InequalityReport up_restriction_II(const UPInstance& inst, PsiBranch branch) {
  if (is_zero(inst.f)) throw std::invalid_argument("up_restriction_II: zero signal");
  const std::string digest = base_digest(inst);
  if (!is_precedes(precedes(YoungFunction::power(1), inst.phi)) ||
      !is_precedes(precedes(inst.phi, inst.psi)))
    return hypothesis_report("UP_RESTRICTION_II", "needs x < phi < psi in growth order", digest);

  const double nd = static_cast<double>(inst.f.dims.size);
  const double cardE = static_cast<double>(inst.e.count());
  const double cardS = static_cast<double>(inst.s.count());
  const Signal fhat = dft(inst.f);
  const double c =
      inst.c_restriction ? *inst.c_restriction : restriction_ratio(inst.f, inst.s, inst.phi, inst.psi);

  if (branch == PsiBranch::PsiAboveX2) {
    if (!is_precedes(precedes(YoungFunction::power(2), inst.psi)))
      return hypothesis_report("UP_RESTRICTION_II", "psi does not succeed x^2", digest);
    // the proof's two norm-comparison steps, checked on this very instance
    const double l2mu_s = l2_on(fhat, inst.s) / std::sqrt(cardS);
    if (l2mu_s > lux_mu(fhat, inst.psi, inst.s) * (1 + 1e-9))
      return hypothesis_report("UP_RESTRICTION_II", "L2(mu_S) <= L^Psi(mu_S) fails", digest);
    const double l2mu_e = l2_on(inst.f, inst.e) / std::sqrt(cardE);
    if (lux_mu(inst.f, inst.phi, inst.e) > l2mu_e * (1 + 1e-9))
      return hypothesis_report("UP_RESTRICTION_II", "L^Phi(mu_E) <= L2(mu_E) fails", digest);

    InequalityReport rep_a = make_report(
        "UP_RESTRICTION_II", displays::up_II_a_lhs(inst.phi, cardE, cardS, nd),
        displays::up_II_a_rhs(inst.phi, c, nd), BoundDirection::LhsGeqRhs, digest);
    const double c_prime =
        lux_c(inst.f, inst.phi, inst.e) / (inst.phi.inverse(cardE) * lux_mu(inst.f, inst.phi, inst.e));
    InequalityReport rep_b = make_report(
        "UP_RESTRICTION_II", displays::up_II_b_lhs(inst.phi, cardE, cardS),
        displays::up_II_b_rhs(c, c_prime, nd), BoundDirection::LhsGeqRhs, digest);
    InequalityReport rep = rep_a.slack <= rep_b.slack ? rep_a : rep_b;
    rep.holds = rep_a.holds && rep_b.holds;
    std::ostringstream os;
    os << "branch (i); tighter display: " << (rep_a.slack <= rep_b.slack ? "a" : "b")
       << "; other lhs=" << (rep_a.slack <= rep_b.slack ? rep_b.lhs : rep_a.lhs)
       << " rhs=" << (rep_a.slack <= rep_b.slack ? rep_b.rhs : rep_a.rhs);
    rep.note = os.str();
    rep.empirical_constant = c;
    return rep;
  }

  // branch (ii): Psi below x^2
  if (!is_precedes(precedes(inst.psi, YoungFunction::power(2))))
    return hypothesis_report("UP_RESTRICTION_II", "psi does not precede x^2", digest);
  const YoungFunction psistar = conjugate_of(inst.psi);
  const YoungFunction dpsistar = YoungFunction::tabulated(
      "derivative(" + psistar.name() + ")",
      [psistar](double x) {
        const double h = 1e-6 * std::max(x, 1e-3);
        const double right = psistar(x + h), left = psistar(std::max(0.0, x - h));
        return std::isfinite(right) ? (right - left) / (2 * h) : kInf;
      },
      1e200);
  if (!is_precedes(precedes(dpsistar, YoungFunction::power(std::max(1.0, inst.r)))))
    return hypothesis_report("UP_RESTRICTION_II", "(psi*)' does not precede x^r", digest);

  const double c_psi =
      lux_c(fhat, inst.psi, inst.s) / (inst.psi.inverse(cardS) * lux_mu(fhat, inst.psi, inst.s));
  const double k_psi = luxemburg_norm(dft(fhat), psistar,
                                      MeasureSpec::counting(SiteSet::full(inst.f.dims)))
                           .value /
                       (inst.psi.inverse(1.0 / (nd * inst.psi(1.0))) *
                        lux_c(fhat, inst.psi, SiteSet::full(inst.f.dims)));
  // C'(Phi) D'(Psi*) is measured as one composite: the chain's last segment
  // |f|_Phi <= C'(Phi) D'(Psi*) Phi^{-1}(|E|) (Psi*)^{-1}(1/|E|) |f|_Psi*(E)
  // carries the mu_E comparison between the two families inside it.
  const double cd = lux_c(inst.f, inst.phi, SiteSet::full(inst.f.dims)) /
                    (inst.phi.inverse(cardE) * psistar.inverse(1.0 / cardE) *
                     lux_c(inst.f, psistar, inst.e));
  InequalityReport rep = make_report(
      "UP_RESTRICTION_II", displays::up_II_ii_lhs(inst.phi, inst.psi, psistar, cardE, cardS),
      displays::up_II_ii_rhs(inst.psi, c, k_psi, c_psi, cd, 1.0, nd),
      BoundDirection::LhsGeqRhs, digest);
  std::ostringstream os;
  os << "branch (ii); C=" << c << ";K(Psi)=" << k_psi << ";C'(Psi)=" << c_psi
     << ";C'(Phi)D'(Psi*)=" << cd;
  rep.note = os.str();
  rep.empirical_constant = c;
  return rep;
}

InequalityReport annihilating_pair(const UPInstance& inst, PsiBranch branch) {
  const std::string digest = base_digest(inst);
  const double nd = static_cast<double>(inst.f.dims.size);
  const double cardE = static_cast<double>(inst.e.count());
  const double cardS = static_cast<double>(inst.s.count());
  const SiteSet ec = inst.e.complement(), sc = inst.s.complement();
  const Signal fhat = dft(inst.f);
  const double lhs = l2_on(inst.f, SiteSet::full(inst.f.dims));
  const double tail = l2_on(inst.f, ec) + l2_on(fhat, sc);
  if (lhs == 0.0)
    return make_report("ANNIHILATING_PAIR", 0.0, 0.0, BoundDirection::LhsLeqRhs, digest);

  const Signal w = restrict_to(inst.f, inst.e);
  const Signal what = dft(w);
  const bool degenerate = inst.e.members.empty() || inst.s.members.empty() || is_zero(w);

  if (branch == PsiBranch::PsiAboveX2) {
    if (!is_precedes(precedes(YoungFunction::power(2), inst.psi)))
      return hypothesis_report("ANNIHILATING_PAIR", "psi does not succeed x^2", digest);
    double q = 0.0;
    if (!degenerate) {
      const double c = inst.c_restriction
                           ? *inst.c_restriction
                           : nd * lux_mu(what, inst.psi, inst.s) / lux_c(w, inst.phi, SiteSet::full(inst.f.dims));
      const double l2mu_s = l2_on(what, inst.s) / std::sqrt(cardS);
      if (l2mu_s > inst.psi.inverse(1.0) * lux_mu(what, inst.psi, inst.s) * (1 + 1e-9))
        return hypothesis_report("ANNIHILATING_PAIR", "L2(mu_S) <= Psi^{-1}(1) L^Psi(mu_S) fails",
                                 digest);
      const double inv = inst.phi.inverse(1.0 / cardE);
      q = 4 * c * c * inst.psi.inverse(1.0) * inst.psi.inverse(1.0) * cardS /
          (inv * inv * cardE * nd);
      if (!(q < 1.0))
        return hypothesis_report(
            "ANNIHILATING_PAIR",
            "smallness condition |S| Phi^{-1}(1/|E|)^{-2} |E|^{-1} < N^d/(4C^2 Psi^{-1}(1)^2) fails",
            digest);
    }
    const double rhs = (1.0 + std::pow(nd, 0.5) / (1.0 - std::sqrt(q))) * tail;
    InequalityReport rep = make_report("ANNIHILATING_PAIR", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
    rep.note = "branch (i)";
    return rep;
  }

  // branch (ii)
  if (!is_precedes(precedes(inst.psi, YoungFunction::power(2))))
    return hypothesis_report("ANNIHILATING_PAIR", "psi does not precede x^2", digest);
  if (sc.members.empty() || degenerate)
    return hypothesis_report("ANNIHILATING_PAIR", "degenerate pair (empty E, S or S^c)", digest);
  const YoungFunction psistar = conjugate_of(inst.psi);
  const double c = inst.c_restriction
                       ? *inst.c_restriction
                       : nd * lux_mu(what, inst.psi, inst.s) / lux_c(w, inst.phi, SiteSet::full(inst.f.dims));
  const double k_psi =
      luxemburg_norm(dft(what), psistar, MeasureSpec::counting(SiteSet::full(inst.f.dims))).value /
      (inst.psi.inverse(1.0 / (nd * inst.psi(1.0))) * lux_c(what, inst.psi, SiteSet::full(inst.f.dims)));
  // Lemma step |w|_2(E) <= |E|^{1/2} (Psi*)^{-1}(1/|E|) |w|_{Psi*}(E), checked
  const double lam2 = l2_on(w, inst.e) /
                      (std::sqrt(cardE) * psistar.inverse(1.0 / cardE) * lux_c(w, psistar, inst.e));
  if (lam2 > 1 + 1e-9)
    return hypothesis_report("ANNIHILATING_PAIR", "p=2 comparison lemma fails on the instance",
                             digest);
  const double smallness_lhs = cardS * psistar.inverse(1.0 / cardE) / inst.phi.inverse(1.0 / cardE);
  const double hy_coeff = inst.psi.inverse(1.0 / (nd * inst.psi(1.0)));
  const double smallness_rhs = nd / (2 * c * hy_coeff * k_psi);
  if (!(smallness_lhs < smallness_rhs))
    return hypothesis_report("ANNIHILATING_PAIR", "branch (ii) smallness condition fails", digest);
  const double denom =
      1.0 / (k_psi * hy_coeff * psistar.inverse(1.0 / cardE)) - 2 * c * cardS / inst.phi.inverse(1.0 / cardE);
  if (!(denom > 0))
    return hypothesis_report(
        "ANNIHILATING_PAIR",
        "constant denominator nonpositive despite the stated smallness condition", digest);
  const double cardSc = static_cast<double>(sc.count());
  const double cbig = 2 * nd * std::sqrt(cardE) /
                      (inst.psi.inverse(1.0 / cardSc) * std::sqrt(cardSc) * denom);
  const double rhs = (1.0 + cbig) * tail;
  InequalityReport rep = make_report("ANNIHILATING_PAIR", lhs, rhs, BoundDirection::LhsLeqRhs, digest);
  std::ostringstream os;
  os << "branch (ii); C=" << c << ";K(Psi)=" << k_psi;
  rep.note = os.str();
  return rep;
}

InequalityReport lambda_phi_up(const UPInstance& inst) {
  if (is_zero(inst.f)) throw std::invalid_argument("lambda_phi_up: zero signal");
  const std::string digest = base_digest(inst);
  try {
    (void)sqrt_compose(inst.phi);
  } catch (const precondition_error& e) {
    return hypothesis_report("UP_LAMBDA_PHI", std::string("phi(sqrt(x)) not convex: ") + e.what(),
                             digest);
  }
  const SiteSet full = SiteSet::full(inst.f.dims);
  const double nd = static_cast<double>(inst.f.dims.size);
  const double cardE = static_cast<double>(inst.e.count());
  const double k = inst.k_lambda ? *inst.k_lambda
                                 : lux_mu(inst.f, inst.phi, full) /
                                       (l2_on(inst.f, full) / std::sqrt(nd));
  InequalityReport rep = make_report("UP_LAMBDA_PHI", cardE / nd,
                                     displays::lambda_up_rhs_exact(inst.phi, k, cardE, nd),
                                     BoundDirection::LhsGeqRhs, digest);
  rep.empirical_constant = k;
  std::ostringstream os;
  os << "display form rhs=" << displays::lambda_up_rhs_display(inst.phi, k, cardE, nd)
     << " (coincides with the exact form for power laws)";
  rep.note = os.str();
  return rep;
}

InequalityReport burstein_up(const UPInstance& inst, double alpha) {
  const double nd = static_cast<double>(inst.f.dims.size);
  if (!(nd > 2.718281828459045))
    throw std::domain_error("burstein_up: need N^d > e for log log");
  if (is_zero(inst.f)) throw std::invalid_argument("burstein_up: zero signal");
  const YoungFunction phi_a = YoungFunction::burstein(alpha);
  const SiteSet full = SiteSet::full(inst.f.dims);
  const double loglog = std::log(std::log(nd));
  const double cardE = static_cast<double>(inst.e.count());
  double c = lux_mu(inst.f, phi_a, full) /
             (std::pow(loglog, alpha) * l2_on(inst.f, full) / std::sqrt(nd));
  std::string warn;
  if (c < 1e-300) {
    c = 2.220446049250313e-16;
    warn = "; measured C clipped at machine epsilon";
  }
  const double k = c * std::pow(loglog, alpha);
  InequalityReport rep =
      make_report("UP_BURSTEIN", cardE / nd, displays::lambda_up_rhs_exact(phi_a, k, cardE, nd),
                  BoundDirection::LhsGeqRhs, base_digest(inst));
  rep.empirical_constant = c;
  std::ostringstream os;
  os << "asymptotic display rhs=" << std::exp(-std::pow(c, 4.0 / alpha) / 2.0 * std::pow(loglog, 4.0))
     << warn;
  rep.note = os.str();
  return rep;
}

}  // namespace orlicz
