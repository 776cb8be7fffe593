#include <cmath>

#include "doctest.h"
#include "orlicz/rng.hpp"
#include "orlicz/young.hpp"
#include "support/oracles.hpp"

using namespace orlicz;

namespace {
const YoungFunction kP2 = YoungFunction::power(2);
const YoungFunction kP3 = YoungFunction::power(3);

double power_conjugate(double p, double y) {  // analytic Legendre form
  return (p - 1) * std::pow(y / p, p / (p - 1));
}
}  // namespace

TEST_CASE("evaluation basics") {
  CHECK(kP2(3.0) == doctest::Approx(9.0).epsilon(1e-14));
  for (double p : {1.0, 1.5, 2.0, 4.0}) CHECK(YoungFunction::power(p)(0.0) == 0.0);
  CHECK(YoungFunction::power_log(2, 1)(1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(kP2(-1.0), std::domain_error);
  CHECK(std::isinf(kP2(1e200)));  // past domain cap -> saturating sentinel
  CHECK(YoungFunction::limonova(2)(0.0) == 0.0);
}

TEST_CASE("generalized inverse") {
  CHECK(kP3.inverse(8.0) == doctest::Approx(2.0).epsilon(1e-13));
  for (auto phi : {kP2, YoungFunction::power_log(2, 1), YoungFunction::burstein(1)})
    CHECK(phi.inverse(0.0) == 0.0);

  // bisection cross-checked against a dense grid scan
  const YoungFunction pl = YoungFunction::power_log(2, 1);
  const double inv = pl.inverse(1.0);
  const double scan = oracles::dense_inverse_scan(pl, 1.0, 2.0, 2000000);
  CHECK(inv == doctest::Approx(scan).epsilon(1e-5));
  CHECK(pl(inv) == doctest::Approx(1.0).epsilon(1e-10));

  const YoungFunction bounded =
      YoungFunction::tabulated("bounded", [](double x) { return std::min(x * x, 5.0); }, 1e300);
  CHECK_THROWS_AS(bounded.inverse(10.0), unbounded_inverse_error);

  // round trip and monotonicity on a grid
  Rng rng(7);
  for (auto phi : {kP2, kP3, YoungFunction::power_log(3, 2), YoungFunction::limonova(2),
                   YoungFunction::burstein(1)}) {
    double prev = 0.0;
    for (double y : logspace(1e-6, 1e6, 40)) {
      const double x = phi.inverse(y);
      CHECK(x >= prev - 1e-15);
      prev = x;
      const double back = phi(x);
      CHECK(back >= y * (1 - 1e-10));
      CHECK(back <= y * (1 + 1e-10));
    }
  }
}

TEST_CASE("conjugate matches the grid Legendre oracle and analytic form") {
  CHECK(conjugate_of(kP2)(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(conjugate_of(kP2)(2.0) ==
        doctest::Approx(oracles::grid_legendre(kP2, 2.0, 10.0)).epsilon(1e-8));

  const YoungFunction conj3 = conjugate_of(kP3, ConjugateMode::Numeric);
  CHECK(conj3(1.0) == doctest::Approx(power_conjugate(3, 1.0)).epsilon(1e-11));
  CHECK(conj3(1.0) == doctest::Approx(oracles::grid_legendre(kP3, 1.0, 5.0)).epsilon(1e-8));

  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const YoungFunction num = conjugate_of(YoungFunction::power(p), ConjugateMode::Numeric);
    const YoungFunction cf = conjugate_of(YoungFunction::power(p));
    for (double y : logspace(1e-3, 1e3, 25)) {
      CHECK(num(y) == doctest::Approx(power_conjugate(p, y)).epsilon(1e-9));
      CHECK(cf(y) == doctest::Approx(power_conjugate(p, y)).epsilon(1e-12));
    }
  }

  // conjugate of x is the indicator-style function
  const YoungFunction c1 = conjugate_of(YoungFunction::power(1));
  CHECK(c1(0.5) == 0.0);
  CHECK(c1(1.0) == 0.0);
  CHECK(std::isinf(c1(1.5)));
  CHECK(c1.inverse(3.0) == doctest::Approx(1.0));

  const YoungFunction c1n = conjugate_of(YoungFunction::power(1), ConjugateMode::Numeric);
  CHECK(c1n(0.5) == 0.0);
  CHECK(std::isinf(c1n(2.0)));
}

TEST_CASE("biconjugacy and Young's inequality") {
  for (auto phi : {YoungFunction::power(1.5), YoungFunction::power_log(2, 1),
                   YoungFunction::limonova(2), YoungFunction::burstein(1)}) {
    const YoungFunction psi = conjugate_of(phi, ConjugateMode::Numeric);
    const YoungFunction back = conjugate_of(psi, ConjugateMode::Numeric);
    for (double x : logspace(1e-2, 1e2, 20))
      CHECK(back(x) == doctest::Approx(phi(x)).epsilon(1e-8));

    for (double x : logspace(1e-3, 10.0, 12)) {
      for (double y : logspace(1e-3, 10.0, 12)) {
        const double slack = phi(x) + psi(y) - x * y;
        CHECK(slack >= -1e-9);
      }
    }
  }
}

TEST_CASE("scaled keeps closed forms consistent") {
  const YoungFunction half = YoungFunction::scaled(kP2, 0.5);
  const YoungFunction conj_cf = conjugate_of(half);
  const YoungFunction conj_num = conjugate_of(half, ConjugateMode::Numeric);
  for (double y : logspace(1e-2, 1e2, 15))
    CHECK(conj_cf(y) == doctest::Approx(conj_num(y)).epsilon(1e-10));
  CHECK(half.inverse(2.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("theta_from") {
  const YoungFunction t1 = theta_from(YoungFunction::power(1));
  for (double t : logspace(1e-2, 1e2, 15))
    CHECK(t1(t) == doctest::Approx(t * t).epsilon(1e-10));
  for (double x : logspace(1e-2, 1e2, 15))
    CHECK(t1(t1.inverse(x)) == doctest::Approx(x).epsilon(1e-10));

  CHECK_THROWS_AS(theta_from(kP2), precondition_error);  // degenerate boundary

  const YoungFunction t43 = theta_from(YoungFunction::power(4.0 / 3.0));
  for (double t : logspace(1e-1, 1e1, 9))
    CHECK(t43(t) == doctest::Approx(std::pow(t, 4.0)).epsilon(1e-9));
}

TEST_CASE("sqrt_compose") {
  const YoungFunction s4 = sqrt_compose(YoungFunction::power(4));
  for (double x : logspace(1e-2, 1e2, 9))
    CHECK(s4(x) == doctest::Approx(x * x).epsilon(1e-12));

  const YoungFunction s2 = sqrt_compose(kP2);  // boundary: becomes x, not nice
  CHECK(s2(3.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_FALSE(s2.is_nice());

  const YoungFunction spl = sqrt_compose(YoungFunction::power_log(4, 1));
  for (double x : {0.5, 2.0, 7.0})
    CHECK(spl(x) == doctest::Approx(x * x * std::log1p(std::sqrt(x))).epsilon(1e-12));
  CHECK_THROWS_AS(sqrt_compose(YoungFunction::power(1.5)), precondition_error);
}

TEST_CASE("recovery_psi") {
  const MonotoneMap m4 = recovery_psi(YoungFunction::power(4));
  for (double x : logspace(1e-3, 1e3, 9))
    CHECK(m4.eval(x) == doctest::Approx(std::pow(x, 0.25)).epsilon(1e-10));
  CHECK(m4.eval(1.0) == doctest::Approx(YoungFunction::power(4).inverse(1.0)).epsilon(1e-12));

  const MonotoneMap m3 = recovery_psi(kP3);
  CHECK(m3.eval(2.0) == doctest::Approx(std::pow(2.0, 1.0 / 6)).epsilon(1e-10));
  CHECK(m3.inverse(2.0) == doctest::Approx(64.0).epsilon(1e-10));
  CHECK(m3.eval(m3.inverse(2.0)) == doctest::Approx(2.0).epsilon(1e-10));

  CHECK_THROWS_AS(recovery_psi(kP2), precondition_error);  // alpha_inf = 2 gate
}

TEST_CASE("precedes") {
  const GrowthComparison a = precedes(kP2, kP3);
  CHECK(a.relation == GrowthRelation::Precedes);
  CHECK(a.witness_K == doctest::Approx(1.0));
  CHECK(a.witness_x0 == doctest::Approx(1.0));
  for (double x : a.grid)
    if (x >= a.witness_x0) CHECK(kP2(x) <= a.witness_K * kP3(x) * (1 + 1e-12));

  CHECK(precedes(kP3, kP2).relation == GrowthRelation::Succeeds);

  const GrowthComparison c = precedes(kP2, YoungFunction::power_log(2, 1));
  CHECK(c.relation == GrowthRelation::Precedes);
  CHECK(c.witness_K == doctest::Approx(1.0));
  CHECK(c.witness_x0 >= 1.6);
  CHECK(c.witness_x0 <= 1.9);  // log(x+1) >= 1 from e-1 on

  CHECK(precedes(YoungFunction::power_log(2, 1), kP2).relation == GrowthRelation::Succeeds);
  CHECK(precedes(kP2, YoungFunction::scaled(kP2, 3)).relation == GrowthRelation::Equivalent);
  CHECK(is_precedes(precedes(YoungFunction::power(1), YoungFunction::limonova(2))));
}

TEST_CASE("delta2 and nabla2") {
  for (double p : {1.5, 2.0, 3.0}) {
    const Delta2Report rep = delta2_nabla2(YoungFunction::power(p));
    CHECK(rep.in_delta2);
    CHECK(rep.K1 == doctest::Approx(std::pow(2.0, p)).epsilon(1e-9));
    CHECK(rep.in_nabla2);
    CHECK(rep.K2 == doctest::Approx(std::pow(2.0, 1.0 / (p - 1))).epsilon(1e-9));
  }
  const YoungFunction expf = YoungFunction::tabulated(
      "expgrowth", [](double x) { return std::expm1(x) - x; }, 700.0);
  const Delta2Report rep = delta2_nabla2(expf);
  CHECK_FALSE(rep.in_delta2);
  CHECK(rep.trend.find("phi(2x)/phi(x)") != std::string::npos);
}

TEST_CASE("matuszewska indices") {
  const IndexEstimate p4 = matuszewska(YoungFunction::power(4));
  for (double v : {p4.alpha_a, p4.beta_a, p4.alpha_inf, p4.beta_inf})
    CHECK(v == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(p4.residual <= 1e-9);
  CHECK(p4.alpha_a <= p4.beta_a + 1e-12);
  CHECK(p4.alpha_inf <= p4.beta_inf + 1e-12);

  const IndexEstimate pl = matuszewska(YoungFunction::power_log(3, 1));
  CHECK(pl.alpha_inf >= 2.9);
  CHECK(pl.alpha_inf <= 3.1);

  const IndexEstimate p2 = matuszewska(kP2);
  CHECK(p2.alpha_inf == doctest::Approx(2.0).epsilon(1e-6));  // fails the > 2 gate
}

TEST_CASE("bak interpolation constants") {
  const BakReport rep = bak_constants(kP2, 1.0);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.surrogate_used);  // x^2 has phi(1) > 0, so the truncated derivative is used
  CHECK(rep.C0 == doctest::Approx(1.0).epsilon(0.02));  // sup (1 - 1/u) -> 1/(p-1) = 1
  CHECK(rep.C1 == doctest::Approx(2.0).epsilon(0.02));  // p for a power family
  CHECK(rep.C >= 2.0);

  const YoungFunction relu =
      YoungFunction::tabulated("relu", [](double x) { return std::max(0.0, x - 1.0); }, 1e300);
  const BakReport bad = bak_constants(relu, 1.0);
  CHECK_FALSE(bad.hypothesis_ok);  // flat derivative: C0 ratio grows like log u
  CHECK(bad.note.find("C0") != std::string::npos);
}

TEST_CASE("family invariants and niceness") {
  for (auto phi : {YoungFunction::power(1.5), kP2, YoungFunction::power_log(2, 1),
                   YoungFunction::limonova(2), YoungFunction::burstein(1),
                   conjugate_of(kP3), conjugate_of(YoungFunction::power_log(2, 1))}) {
    const auto viol = young_invariant_violation(phi);
    CHECK_MESSAGE(!viol.has_value(), phi.name(), ": ", viol.value_or(""));
  }
  CHECK(kP2.is_nice());
  CHECK(YoungFunction::power_log(2, 1).is_nice());
  CHECK_FALSE(YoungFunction::power(1).is_nice());
}

TEST_CASE("declarative parse and serialize") {
  for (const char* s : {"power(p=2)", "powerlog(p=2,alpha=1)", "limonova(alpha=2)",
                        "burstein(alpha=1)"}) {
    const YoungFunction phi = parse_young(s);
    CHECK(to_string(phi) == s);
    CHECK(to_string(parse_young(to_string(phi))) == s);
  }
  CHECK(parse_young(" Power( p = 2 ) ")(3.0) == doctest::Approx(9.0));
  CHECK_THROWS_AS(parse_young("gaussian(s=1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_young("power(q=2)"), std::invalid_argument);
}
