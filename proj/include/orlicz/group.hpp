#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "orlicz/rng.hpp"
#include "orlicz/util.hpp"

namespace orlicz {

using cplx = std::complex<double>;

/// Z_N^d. Indices are row-major mixed radix: x = sum_i x_i N^{d-1-i}.
struct GroupDims {
  int n = 0;
  int d = 0;
  std::size_t size = 0;

  static GroupDims make(int n, int d);
  bool operator==(const GroupDims&) const = default;
};

struct Signal {
  GroupDims dims;
  std::vector<cplx> values;
};

/// Sorted duplicate-free site (or frequency) index set.
struct SiteSet {
  GroupDims dims;
  std::vector<std::uint32_t> members;

  static SiteSet of(GroupDims dims, std::vector<std::uint32_t> idx);
  static SiteSet full(GroupDims dims);
  SiteSet complement() const;
  bool contains(std::uint32_t i) const;
  std::size_t count() const { return members.size(); }
};

std::vector<int> decode_index(const GroupDims& dims, std::uint32_t idx);
std::uint32_t encode_index(const GroupDims& dims, const std::vector<int>& coords);

/// fhat(m) = N^{-d} sum_x chi(-x.m) f(x), chi(t) = exp(2 pi i t / N).
/// Dimension-separable; radix-2 FFT fast path when N is a power of two.
Signal dft(const Signal& f);

/// f(x) = sum_m chi(x.m) fhat(m).
Signal idft(const Signal& fhat);

/// Sites with |f(x)| > tol * max|f|; tol = 0 means exact nonzero.
SiteSet support(const Signal& f, double tol);

Signal make_delta(const GroupDims& dims, std::uint32_t x0);
Signal make_indicator(const SiteSet& e);
/// I.i.d. standard complex normal on E, zero elsewhere; bitwise reproducible
/// per seed.
Signal make_gaussian(const SiteSet& e, std::uint64_t seed);
/// Draws spectrum coefficients on S and inverts, so supp(fhat) lies in S.
Signal make_spectral(const SiteSet& s, std::uint64_t seed);

double l1_norm(const Signal& f);
double l2_norm(const Signal& f);
double linf_norm(const Signal& f);

/// Independent Bernoulli(p) inclusion per index.
SiteSet sample_subset_bernoulli(const GroupDims& dims, double p, Rng& rng);
/// Uniform subset of exact size k (partial Fisher-Yates).
SiteSet sample_subset_exact(const GroupDims& dims, std::size_t k, Rng& rng);

// CSV rows are "index,re,im"; the binary layout is uint32 N, uint32 d, then
// N^d little-endian f64 (re, im) pairs.
void write_csv(const Signal& f, std::ostream& os);
Signal read_csv(const GroupDims& dims, std::istream& is);
void write_binary(const Signal& f, std::ostream& os);
Signal read_binary(std::istream& is);

void write_sites_csv(const SiteSet& s, std::ostream& os);
SiteSet read_sites_csv(const GroupDims& dims, std::istream& is);

}  // namespace orlicz
