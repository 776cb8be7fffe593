#include "orlicz/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace orlicz {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
constexpr std::size_t kSizeCap = std::size_t{1} << 20;
}  // namespace

GroupDims GroupDims::make(int n, int d) {
  if (n < 2) throw std::invalid_argument("GroupDims: need N >= 2");
  if (d < 1) throw std::invalid_argument("GroupDims: need d >= 1");
  std::size_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= static_cast<std::size_t>(n);
    if (size > kSizeCap) throw std::invalid_argument("GroupDims: N^d exceeds the desk-scale cap 2^20");
  }
  return GroupDims{n, d, size};
}

SiteSet SiteSet::of(GroupDims dims, std::vector<std::uint32_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (!idx.empty() && idx.back() >= dims.size)
    throw std::invalid_argument("SiteSet: index out of range");
  return SiteSet{dims, std::move(idx)};
}

SiteSet SiteSet::full(GroupDims dims) {
  std::vector<std::uint32_t> all(dims.size);
  for (std::size_t i = 0; i < dims.size; ++i) all[i] = static_cast<std::uint32_t>(i);
  return SiteSet{dims, std::move(all)};
}

SiteSet SiteSet::complement() const {
  std::vector<std::uint32_t> out;
  out.reserve(dims.size - members.size());
  std::size_t j = 0;
  for (std::uint32_t i = 0; i < dims.size; ++i) {
    if (j < members.size() && members[j] == i)
      ++j;
    else
      out.push_back(i);
  }
  return SiteSet{dims, std::move(out)};
}

bool SiteSet::contains(std::uint32_t i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

std::vector<int> decode_index(const GroupDims& dims, std::uint32_t idx) {
  std::vector<int> coords(static_cast<std::size_t>(dims.d));
  std::uint32_t rest = idx;
  for (int i = dims.d - 1; i >= 0; --i) {
    coords[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint32_t>(dims.n));
    rest /= static_cast<std::uint32_t>(dims.n);
  }
  return coords;
}

std::uint32_t encode_index(const GroupDims& dims, const std::vector<int>& coords) {
  std::uint32_t idx = 0;
  for (int c : coords) {
    int r = c % dims.n;
    if (r < 0) r += dims.n;
    idx = idx * static_cast<std::uint32_t>(dims.n) + static_cast<std::uint32_t>(r);
  }
  return idx;
}

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT on one line; sign -1 forward, +1 inverse (no scaling).
void fft_line(cplx* a, int n, int sign) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / len;
    const cplx wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// Naive O(N^2) line transform through a length-N twiddle table.
void naive_line(const cplx* in, cplx* out, int n, const std::vector<cplx>& tw) {
  for (int k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    int t = 0;
    for (int j = 0; j < n; ++j) {
      acc += tw[static_cast<std::size_t>(t)] * in[j];
      t += k;
      if (t >= n) t -= n;
    }
    out[k] = acc;
  }
}

Signal transform(const Signal& f, int sign) {
  const GroupDims& dims = f.dims;
  if (f.values.size() != dims.size) throw std::invalid_argument("transform: signal/dims mismatch");
  Signal out = f;
  const int n = dims.n;
  const bool pow2 = is_pow2(n);
  std::vector<cplx> tw;
  if (!pow2) {
    tw.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
      tw[static_cast<std::size_t>(t)] = cplx(std::cos(sign * kTwoPi * t / n), std::sin(sign * kTwoPi * t / n));
  }
  std::vector<cplx> line(static_cast<std::size_t>(n)), res(static_cast<std::size_t>(n));
  std::size_t stride = dims.size / static_cast<std::size_t>(n);  // axis 0 first
  for (int axis = 0; axis < dims.d; ++axis) {
    const std::size_t block = stride * static_cast<std::size_t>(n);
    for (std::size_t base = 0; base < dims.size; base += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t start = base + inner;
        for (int j = 0; j < n; ++j) line[static_cast<std::size_t>(j)] = out.values[start + static_cast<std::size_t>(j) * stride];
        if (pow2) {
          fft_line(line.data(), n, sign);
          for (int j = 0; j < n; ++j) out.values[start + static_cast<std::size_t>(j) * stride] = line[static_cast<std::size_t>(j)];
        } else {
          naive_line(line.data(), res.data(), n, tw);
          for (int j = 0; j < n; ++j) out.values[start + static_cast<std::size_t>(j) * stride] = res[static_cast<std::size_t>(j)];
        }
      }
    }
    stride /= static_cast<std::size_t>(n);
  }
  return out;
}

}  // namespace

Signal dft(const Signal& f) {
  Signal out = transform(f, -1);
  const double scale = 1.0 / static_cast<double>(f.dims.size);
  for (auto& v : out.values) v *= scale;
  return out;
}

Signal idft(const Signal& fhat) { return transform(fhat, +1); }

SiteSet support(const Signal& f, double tol) {
  if (tol < 0) throw std::invalid_argument("support: tol must be nonnegative");
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  const double thresh = tol * m;
  std::vector<std::uint32_t> idx;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (std::abs(f.values[i]) > thresh) idx.push_back(static_cast<std::uint32_t>(i));
  return SiteSet{f.dims, std::move(idx)};
}

Signal make_delta(const GroupDims& dims, std::uint32_t x0) {
  if (x0 >= dims.size) throw std::invalid_argument("make_delta: index out of range");
  Signal f{dims, std::vector<cplx>(dims.size, cplx(0, 0))};
  f.values[x0] = cplx(1, 0);
  return f;
}

Signal make_indicator(const SiteSet& e) {
  Signal f{e.dims, std::vector<cplx>(e.dims.size, cplx(0, 0))};
  for (auto i : e.members) f.values[i] = cplx(1, 0);
  return f;
}

Signal make_gaussian(const SiteSet& e, std::uint64_t seed) {
  if (e.members.empty()) throw std::invalid_argument("make_gaussian: empty site set");
  Signal f{e.dims, std::vector<cplx>(e.dims.size, cplx(0, 0))};
  Rng rng(seed);
  for (auto i : e.members) f.values[i] = rng.cnormal();
  return f;
}

Signal make_spectral(const SiteSet& s, std::uint64_t seed) {
  if (s.members.empty()) throw std::invalid_argument("make_spectral: empty frequency set");
  Signal spec{s.dims, std::vector<cplx>(s.dims.size, cplx(0, 0))};
  Rng rng(seed);
  for (auto i : s.members) spec.values[i] = rng.cnormal();
  return idft(spec);
}

double l1_norm(const Signal& f) {
  KahanSum s;
  for (const auto& v : f.values) s.add(std::abs(v));
  return s.value();
}

double l2_norm(const Signal& f) {
  KahanSum s;
  for (const auto& v : f.values) s.add(std::norm(v));
  return std::sqrt(s.value());
}

double linf_norm(const Signal& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

SiteSet sample_subset_bernoulli(const GroupDims& dims, double p, Rng& rng) {
  if (!(p >= 0) || !(p <= 1)) throw std::invalid_argument("sample_subset_bernoulli: need p in [0,1]");
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < dims.size; ++i)
    if (rng.uniform() < p) idx.push_back(i);
  return SiteSet{dims, std::move(idx)};
}

SiteSet sample_subset_exact(const GroupDims& dims, std::size_t k, Rng& rng) {
  if (k > dims.size) throw std::invalid_argument("sample_subset_exact: k > N^d");
  std::vector<std::uint32_t> all(dims.size);
  for (std::size_t i = 0; i < dims.size; ++i) all[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < k; ++i)
    std::swap(all[i], all[i + rng.below(dims.size - i)]);
  all.resize(k);
  return SiteSet::of(dims, std::move(all));
}

void write_csv(const Signal& f, std::ostream& os) {
  os << "index,re,im\n";
  char buf[80];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, f.values[i].real(), f.values[i].imag());
    os << buf;
  }
}

Signal read_csv(const GroupDims& dims, std::istream& is) {
  Signal f{dims, std::vector<cplx>(dims.size, cplx(0, 0))};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.rfind("index", 0) == 0) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    const std::size_t idx = std::stoul(cell);
    if (idx >= dims.size) throw std::invalid_argument("signal csv: index out of range");
    std::getline(row, cell, ',');
    const double re = std::stod(cell);
    std::getline(row, cell, ',');
    const double im = std::stod(cell);
    f.values[idx] = cplx(re, im);
  }
  return f;
}

void write_binary(const Signal& f, std::ostream& os) {
  const std::uint32_t n = static_cast<std::uint32_t>(f.dims.n);
  const std::uint32_t d = static_cast<std::uint32_t>(f.dims.d);
  os.write(reinterpret_cast<const char*>(&n), 4);
  os.write(reinterpret_cast<const char*>(&d), 4);
  for (const auto& v : f.values) {
    const double re = v.real(), im = v.imag();
    os.write(reinterpret_cast<const char*>(&re), 8);
    os.write(reinterpret_cast<const char*>(&im), 8);
  }
}

Signal read_binary(std::istream& is) {
  std::uint32_t n = 0, d = 0;
  is.read(reinterpret_cast<char*>(&n), 4);
  is.read(reinterpret_cast<char*>(&d), 4);
  if (!is) throw std::invalid_argument("signal binary: truncated header");
  const GroupDims dims = GroupDims::make(static_cast<int>(n), static_cast<int>(d));
  Signal f{dims, std::vector<cplx>(dims.size)};
  for (auto& v : f.values) {
    double re = 0, im = 0;
    is.read(reinterpret_cast<char*>(&re), 8);
    is.read(reinterpret_cast<char*>(&im), 8);
    if (!is) throw std::invalid_argument("signal binary: truncated payload");
    v = cplx(re, im);
  }
  return f;
}

void write_sites_csv(const SiteSet& s, std::ostream& os) {
  os << "index\n";
  for (auto i : s.members) os << i << "\n";
}

SiteSet read_sites_csv(const GroupDims& dims, std::istream& is) {
  std::vector<std::uint32_t> idx;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.rfind("index", 0) == 0) continue;
    idx.push_back(static_cast<std::uint32_t>(std::stoul(line)));
  }
  return SiteSet::of(dims, std::move(idx));
}

}  // namespace orlicz
