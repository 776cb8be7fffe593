#include <cmath>
#include <sstream>

#include "doctest.h"
#include "orlicz/group.hpp"
#include "support/oracles.hpp"

using namespace orlicz;

namespace {

double rel_l2_err(const Signal& a, const Signal& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace

TEST_CASE("dims and index encoding") {
  const GroupDims g = GroupDims::make(3, 2);
  CHECK(g.size == 9);
  CHECK_THROWS_AS(GroupDims::make(2, 21), std::invalid_argument);  // past 2^20 cap
  CHECK_THROWS_AS(GroupDims::make(1, 1), std::invalid_argument);

  CHECK(encode_index(g, {1, 2}) == 5);
  CHECK(decode_index(g, 5) == std::vector<int>{1, 2});
  CHECK(encode_index(g, {-1, 5}) == encode_index(g, {2, 2}));  // mod-N wrap
}

TEST_CASE("dft closed-form examples") {
  const GroupDims g4 = GroupDims::make(4, 1);
  const Signal dhat = dft(make_delta(g4, 0));
  for (const auto& v : dhat.values) CHECK(std::abs(v - cplx(0.25, 0)) <= 1e-15);

  Signal ones{g4, std::vector<cplx>(4, cplx(1, 0))};
  const Signal ohat = dft(ones);
  CHECK(std::abs(ohat.values[0] - cplx(1, 0)) <= 1e-14);
  for (std::size_t m = 1; m < 4; ++m) CHECK(std::abs(ohat.values[m]) <= 1e-14);

  const GroupDims g33 = GroupDims::make(3, 2);
  const Signal fhat = dft(make_delta(g33, encode_index(g33, {1, 0})));
  constexpr double kTwoPi = 6.283185307179586476925287;
  for (std::uint32_t m = 0; m < 9; ++m) {
    const auto mc = decode_index(g33, m);
    const cplx expect = std::polar(1.0 / 9, -kTwoPi * mc[0] / 3.0);
    CHECK(std::abs(fhat.values[m] - expect) <= 1e-14);
  }
}

TEST_CASE("inversion, Plancherel, covariance") {
  const GroupDims g8 = GroupDims::make(8, 1);
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Signal f = make_gaussian(SiteSet::full(g8), seed);
    worst = std::max(worst, rel_l2_err(idft(dft(f)), f));
  }
  CHECK(worst <= 1e-12);

  Signal chat{g8, std::vector<cplx>(8, cplx(0, 0))};
  chat.values[0] = cplx(2.5, -1);
  const Signal c = idft(chat);
  for (const auto& v : c.values) CHECK(std::abs(v - cplx(2.5, -1)) <= 1e-14);

  const GroupDims g4 = GroupDims::make(4, 1);
  Signal ind{g4, std::vector<cplx>(4, cplx(0, 0))};
  ind.values[0] = ind.values[1] = cplx(1, 0);
  const Signal t = idft(ind);
  constexpr double kTwoPi = 6.283185307179586476925287;
  for (int x = 0; x < 4; ++x)
    CHECK(std::abs(t.values[x] - (cplx(1, 0) + std::polar(1.0, kTwoPi * x / 4))) <= 1e-14);

  for (auto [n, d] : {std::pair{8, 2}, {5, 3}, {16, 1}}) {
    const GroupDims g = GroupDims::make(n, d);
    const Signal f = make_gaussian(SiteSet::full(g), 42);
    const Signal fh = dft(f);
    double lhs = 0, rhs = 0;
    for (const auto& v : f.values) lhs += std::norm(v);
    for (const auto& v : fh.values) rhs += std::norm(v);
    CHECK(lhs == doctest::Approx(static_cast<double>(g.size) * rhs).epsilon(1e-12));
  }

  // translation/modulation covariance on a random instance
  const GroupDims g = GroupDims::make(6, 2);
  const Signal f = make_gaussian(SiteSet::full(g), 9);
  const int a0 = 2, a1 = 5;
  Signal shifted{g, std::vector<cplx>(g.size)};
  for (std::uint32_t x = 0; x < g.size; ++x) {
    auto c2 = decode_index(g, x);
    shifted.values[x] = f.values[encode_index(g, {c2[0] - a0, c2[1] - a1})];
  }
  const Signal lhs = dft(shifted), base = dft(f);
  for (std::uint32_t m = 0; m < g.size; ++m) {
    const auto mc = decode_index(g, m);
    const cplx mod = std::polar(1.0, -kTwoPi * ((a0 * mc[0] + a1 * mc[1]) % g.n) / g.n);
    CHECK(std::abs(lhs.values[m] - mod * base.values[m]) <= 1e-13);
  }
}

TEST_CASE("transform magnitude bound: |fhat| <= l1 mass / N^d") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GroupDims g = GroupDims::make(9, 2);
    const Signal f = make_gaussian(SiteSet::full(g), seed);
    const double cap = l1_norm(f) / static_cast<double>(g.size);
    const Signal fhat = dft(f);
    for (const auto& v : fhat.values) CHECK(std::abs(v) <= cap * (1 + 1e-12));
  }
}

TEST_CASE("separable transform vs naive double-sum oracle") {
  for (auto [n, d] : {std::pair{16, 1}, {4, 2}, {2, 8}, {3, 4}, {5, 2}, {6, 2}, {7, 1}, {12, 1}}) {
    const GroupDims g = GroupDims::make(n, d);
    const Signal f = make_gaussian(SiteSet::full(g), 1234 + static_cast<std::uint64_t>(n));
    const Signal fast = dft(f);
    const Signal slow = oracles::dft_naive(f);
    CHECK(rel_l2_err(fast, slow) <= 1e-12);
  }
}

TEST_CASE("support") {
  const GroupDims g8 = GroupDims::make(8, 1);
  CHECK(support(make_delta(g8, 0), 0.0).members == std::vector<std::uint32_t>{0});
  const Signal zero{g8, std::vector<cplx>(8, cplx(0, 0))};
  CHECK(support(zero, 0.0).members.empty());

  Signal comb_hat{g8, std::vector<cplx>(8, cplx(0, 0))};
  comb_hat.values[0] = comb_hat.values[4] = cplx(1, 0);
  const SiteSet s = support(idft(comb_hat), 1e-10);
  CHECK(s.members == std::vector<std::uint32_t>{0, 2, 4, 6});
  CHECK_THROWS_AS(support(zero, -1.0), std::invalid_argument);
}

TEST_CASE("signal constructors") {
  const GroupDims g = GroupDims::make(4, 2);
  const SiteSet e = SiteSet::of(g, {1, 3, 7, 9});
  CHECK(l1_norm(make_indicator(e)) == doctest::Approx(4.0));

  const Signal sp = make_spectral(SiteSet::of(g, {0, 5}), 11);
  const Signal sp_hat = dft(sp);
  double off = 0, peak = 0;
  for (std::uint32_t m = 0; m < g.size; ++m) {
    const double a = std::abs(sp_hat.values[m]);
    if (m == 0 || m == 5)
      peak = std::max(peak, a);
    else
      off = std::max(off, a);
  }
  CHECK(off <= 1e-12 * peak);

  const Signal g1 = make_gaussian(e, 77), g2 = make_gaussian(e, 77);
  for (std::size_t i = 0; i < g.size; ++i) CHECK(g1.values[i] == g2.values[i]);  // bitwise

  CHECK_THROWS_AS(make_gaussian(SiteSet::of(g, {}), 1), std::invalid_argument);
  CHECK_THROWS_AS(make_spectral(SiteSet::of(g, {}), 1), std::invalid_argument);
}

TEST_CASE("csv and binary io round-trip") {
  const GroupDims g = GroupDims::make(5, 2);
  const Signal f = make_gaussian(SiteSet::full(g), 31);

  std::stringstream csv;
  write_csv(f, csv);
  const Signal fc = read_csv(g, csv);
  for (std::size_t i = 0; i < g.size; ++i) CHECK(fc.values[i] == f.values[i]);

  std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
  write_binary(f, bin);
  const Signal fb = read_binary(bin);
  CHECK(fb.dims == g);
  for (std::size_t i = 0; i < g.size; ++i) CHECK(fb.values[i] == f.values[i]);

  std::stringstream sites;
  const SiteSet s = SiteSet::of(g, {2, 24, 7});
  write_sites_csv(s, sites);
  CHECK(read_sites_csv(g, sites).members == s.members);
}
