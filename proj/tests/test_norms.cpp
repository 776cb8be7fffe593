#include <cmath>

#include "doctest.h"
#include "orlicz/norms.hpp"
#include "orlicz/rng.hpp"

using namespace orlicz;

namespace {

MeasureSpec counting_full(const GroupDims& g) { return MeasureSpec::counting(SiteSet::full(g)); }
MeasureSpec mu_full(const GroupDims& g) { return MeasureSpec::normalized_on(SiteSet::full(g)); }

}  // namespace

TEST_CASE("luxemburg closed forms for indicators") {
  const GroupDims g = GroupDims::make(4, 2);
  const SiteSet e = SiteSet::of(g, {0, 3, 5, 9});
  const Signal f = make_indicator(e);

  const NormReport p2 = luxemburg_norm(f, YoungFunction::power(2), MeasureSpec::counting(e));
  CHECK(p2.value == doctest::Approx(2.0).epsilon(1e-12));  // 4/k^2 = 1

  for (auto phi : {YoungFunction::power(3), YoungFunction::power_log(2, 1),
                   YoungFunction::burstein(1)}) {
    const double viaInverse = 1.0 / phi.inverse(1.0 / 4.0);
    const NormReport rep = luxemburg_norm(f, phi, MeasureSpec::counting(e));
    CHECK(rep.value == doctest::Approx(viaInverse).epsilon(1e-10));
    const NormReport mu = luxemburg_norm(f, phi, MeasureSpec::normalized_on(e));
    CHECK(mu.value == doctest::Approx(1.0 / phi.inverse(1.0)).epsilon(1e-10));
  }
}

TEST_CASE("luxemburg bisection invariants") {
  const GroupDims g = GroupDims::make(8, 1);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Signal f = make_gaussian(SiteSet::full(g), seed);
    for (auto phi : {YoungFunction::power(1.7), YoungFunction::power_log(2, 1)}) {
      const NormReport rep = luxemburg_norm(f, phi, counting_full(g));
      CHECK(rep.method ==
            (phi.family() == YoungFamily::Power ? NormMethod::ClosedForm : NormMethod::Bisection));
      // the modular sits on the unit level either way
      const double mod = modular(f, phi, counting_full(g), rep.value);
      CHECK(mod >= 1 - 1e-9);
      CHECK(mod <= 1 + 1e-9);

      // scaling: ||c f|| = |c| ||f||
      Signal scaled = f;
      for (auto& v : scaled.values) v *= cplx(-2.5, 1.0);
      const double mag = std::abs(cplx(-2.5, 1.0));
      const NormReport srep = luxemburg_norm(scaled, phi, counting_full(g));
      CHECK(srep.value == doctest::Approx(mag * rep.value).epsilon(1e-10));
    }
  }
  const Signal zero{g, std::vector<cplx>(8, cplx(0, 0))};
  const NormReport zrep = luxemburg_norm(zero, YoungFunction::power(2), counting_full(g));
  CHECK(zrep.value == 0.0);
  CHECK(zrep.method == NormMethod::ClosedForm);

  Signal bad = zero;
  bad.values[3] = cplx(kInf, 0);
  CHECK_THROWS_AS(luxemburg_norm(bad, YoungFunction::power(2), counting_full(g)),
                  std::invalid_argument);
}

TEST_CASE("amemiya agrees with hand value and sandwiches luxemburg") {
  const GroupDims g4 = GroupDims::make(4, 1);
  Signal f{g4, std::vector<cplx>(4, cplx(0, 0))};
  f.values[0] = f.values[1] = cplx(1, 0);
  const NormReport am = orlicz_norm_amemiya(f, YoungFunction::power(2), mu_full(g4));
  CHECK(am.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));  // exact-norm lemma value

  const GroupDims g = GroupDims::make(16, 1);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Signal h = make_gaussian(SiteSet::full(g), seed);
    for (auto phi : {YoungFunction::power(1.5), YoungFunction::power(3)}) {
      const double lux = luxemburg_norm(h, phi, mu_full(g)).value;
      const double ame = orlicz_norm_amemiya(h, phi, mu_full(g)).value;
      CHECK(ame >= lux * (1 - 1e-9));
      CHECK(ame <= 2 * lux * (1 + 1e-9));
    }
  }
}

TEST_CASE("dual-sup oracle vs amemiya and the indicator lemma") {
  const GroupDims g4 = GroupDims::make(4, 1);
  const Signal d0 = make_delta(g4, 0);
  const double ds = orlicz_norm_dual_sup(d0, YoungFunction::power(2), counting_full(g4)).value;
  const double am = orlicz_norm_amemiya(d0, YoungFunction::power(2), counting_full(g4)).value;
  CHECK(ds == doctest::Approx(am).epsilon(1e-6));

  const Signal zero{g4, std::vector<cplx>(4, cplx(0, 0))};
  CHECK(orlicz_norm_dual_sup(zero, YoungFunction::power(2), counting_full(g4)).value == 0.0);

  Rng rng(505);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(13));
    const GroupDims g = GroupDims::make(n, 1);
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < g.size; ++i)
      if (rng.uniform() < 0.5) idx.push_back(i);
    if (idx.empty()) idx.push_back(0);
    const SiteSet e = SiteSet::of(g, idx);
    const YoungFunction phi =
        trial % 3 == 0 ? YoungFunction::power_log(2, 1) : YoungFunction::power(1.3 + 0.4 * (trial % 5));
    const double lemma = indicator_orlicz_norm(e, phi, g);
    const double oracle =
        orlicz_norm_dual_sup(make_indicator(e), phi, mu_full(g), 900 + trial).value;
    CHECK(oracle == doctest::Approx(lemma).epsilon(1e-6));
  }

  const GroupDims big = GroupDims::make(3, 4);  // 81 sites, beyond the oracle cap
  CHECK_THROWS_AS(
      orlicz_norm_dual_sup(make_delta(big, 0), YoungFunction::power(2), counting_full(big)),
      oracle_scope_error);
}

TEST_CASE("indicator orlicz norm closed form") {
  const GroupDims g4 = GroupDims::make(4, 1);
  CHECK(indicator_orlicz_norm(SiteSet::of(g4, {0, 2}), YoungFunction::power(2), g4) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const double full = indicator_orlicz_norm(SiteSet::full(g4), YoungFunction::power(2), g4);
  CHECK(full == doctest::Approx(2.0).epsilon(1e-12));  // (Phi*)^{-1}(1) = 2 sqrt(1)
  CHECK_THROWS_AS(indicator_orlicz_norm(SiteSet::of(g4, {}), YoungFunction::power(2), g4),
                  std::invalid_argument);
}

TEST_CASE("j_phi") {
  const GroupDims g = GroupDims::make(8, 1);
  Signal c{g, std::vector<cplx>(8, cplx(1.7, 0))};
  for (auto phi : {YoungFunction::power(2), YoungFunction::power_log(2, 1),
                   YoungFunction::burstein(1)})
    CHECK(j_phi(c, phi, g) == doctest::Approx(1.7).epsilon(1e-10));

  const Signal zero{g, std::vector<cplx>(8, cplx(0, 0))};
  CHECK(j_phi(zero, YoungFunction::power(2), g) == 0.0);

  const Signal f = make_gaussian(SiteSet::full(g), 3);
  const double expect = std::sqrt(1.0 / 8) * l2_norm(f);
  CHECK(j_phi(f, YoungFunction::power(2), g) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("lp norm helper") {
  const GroupDims g = GroupDims::make(4, 1);
  Signal f{g, {cplx(3, 4), cplx(0, 0), cplx(1, 0), cplx(0, -2)}};
  CHECK(lp_norm(f, 1.0, counting_full(g)) == doctest::Approx(8.0));
  CHECK(lp_norm(f, 2.0, mu_full(g)) == doctest::Approx(std::sqrt(30.0 / 4)));
}
