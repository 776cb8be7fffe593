#include "orlicz/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orlicz {

namespace {

// Forward-difference ascent with multiplicative line search; step_scale is
// relative to the parameter magnitude (1e-6 of scale for the differences).
void fd_ascent(std::vector<double>& params, const std::function<double(const std::vector<double>&)>& score,
               int max_iters) {
  double cur = score(params);
  double step = 0.5;
  for (int it = 0; it < max_iters; ++it) {
    double scale = 1e-12;
    for (double v : params) scale = std::max(scale, std::abs(v));
    const double h = 1e-6 * scale;
    std::vector<double> grad(params.size());
    std::vector<double> probe = params;
    double gmax = 1e-300;
    for (std::size_t i = 0; i < params.size(); ++i) {
      probe[i] = params[i] + h;
      grad[i] = (score(probe) - cur) / h;
      probe[i] = params[i];
      gmax = std::max(gmax, std::abs(grad[i]));
    }
    bool improved = false;
    for (int ls = 0; ls < 6; ++ls) {
      std::vector<double> trial = params;
      const double t = step * scale / gmax;
      for (std::size_t i = 0; i < params.size(); ++i) trial[i] += t * grad[i];
      const double v = score(trial);
      if (v > cur * (1 + 1e-12)) {
        const double gain = (v - cur) / std::max(cur, 1e-300);
        params = std::move(trial);
        cur = v;
        improved = true;
        step *= 1.5;
        if (gain < 1e-10) return;  // relative improvement stop
        break;
      }
      step *= 0.25;
    }
    if (!improved) return;
  }
}

Signal embed_spectrum(const SiteSet& s, const std::vector<double>& coeffs) {
  Signal spec{s.dims, std::vector<cplx>(s.dims.size, cplx(0, 0))};
  for (std::size_t i = 0; i < s.members.size(); ++i)
    spec.values[s.members[i]] = cplx(coeffs[2 * i], coeffs[2 * i + 1]);
  return idft(spec);
}

std::vector<double> signal_params(const Signal& f) {
  std::vector<double> p(2 * f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    p[2 * i] = f.values[i].real();
    p[2 * i + 1] = f.values[i].imag();
  }
  return p;
}

Signal params_signal(const GroupDims& dims, const std::vector<double>& p) {
  Signal f{dims, std::vector<cplx>(dims.size)};
  for (std::size_t i = 0; i < dims.size; ++i) f.values[i] = cplx(p[2 * i], p[2 * i + 1]);
  return f;
}

}  // namespace

double restriction_ratio(const Signal& f, const SiteSet& s, const YoungFunction& phi,
                         const YoungFunction& psi) {
  const double den = luxemburg_norm(f, phi, MeasureSpec::counting(SiteSet::full(f.dims))).value;
  if (den == 0) return 0.0;
  const double num = luxemburg_norm(dft(f), psi, MeasureSpec::normalized_on(s)).value;
  return static_cast<double>(f.dims.size) * num / den;
}

double lambda_ratio(const Signal& f, const YoungFunction& phi) {
  const MeasureSpec mu = MeasureSpec::normalized_on(SiteSet::full(f.dims));
  const double den = lp_norm(f, 2.0, mu);
  if (den == 0) return 0.0;
  return luxemburg_norm(f, phi, mu).value / den;
}

RestrictionEstimate estimate_restriction_constant(const SiteSet& s, const YoungFunction& phi,
                                                  const YoungFunction& psi, int budget,
                                                  std::uint64_t seed) {
  if (s.members.empty())
    throw std::invalid_argument("estimate_restriction_constant: empty frequency set");
  if (!is_precedes(precedes(YoungFunction::power(1), phi)))
    throw precondition_error("estimate_restriction_constant: x does not precede phi");
  if (!is_precedes(precedes(phi, psi)))
    throw precondition_error("estimate_restriction_constant: phi does not precede psi");

  const GroupDims dims = s.dims;
  RestrictionEstimate est;
  est.s = s;
  est.trials = budget;
  est.witness = make_delta(dims, 0);
  est.c_lower = -1.0;

  auto consider = [&](const Signal& f, SearchMethod method) {
    const double r = restriction_ratio(f, s, phi, psi);
    if (r > est.c_lower) {
      est.c_lower = r;
      est.witness = f;
      est.method = method;
    }
  };

  // deterministic scan: deltas, structured indicators, the flat S-spectrum
  consider(make_delta(dims, 0), SearchMethod::DeltaScan);
  consider(make_delta(dims, static_cast<std::uint32_t>(dims.size / 2)), SearchMethod::DeltaScan);
  consider(make_indicator(SiteSet::full(dims)), SearchMethod::DeltaScan);
  consider(make_indicator(s), SearchMethod::DeltaScan);
  for (std::size_t len = 2; len < dims.size; len *= 2) {
    std::vector<std::uint32_t> prefix(len);
    for (std::size_t i = 0; i < len; ++i) prefix[i] = static_cast<std::uint32_t>(i);
    consider(make_indicator(SiteSet::of(dims, prefix)), SearchMethod::DeltaScan);
  }
  {
    Signal flat{dims, std::vector<cplx>(dims.size, cplx(0, 0))};
    for (auto m : s.members) flat.values[m] = cplx(1, 0);
    consider(idft(flat), SearchMethod::DeltaScan);
  }

  for (int b = 0; b < budget; ++b)
    consider(make_gaussian(SiteSet::full(dims), Rng(seed, static_cast<std::uint64_t>(b)).next_u64()),
             SearchMethod::RandomSample);

  if (budget > 0) {
    // polish the best candidate; normalize |f|_Phi = 1 each rescore
    auto score = [&](const std::vector<double>& p) {
      Signal f = params_signal(dims, p);
      const double n = luxemburg_norm(f, phi, MeasureSpec::counting(SiteSet::full(dims))).value;
      if (n == 0) return 0.0;
      for (auto& v : f.values) v /= n;
      return restriction_ratio(f, s, phi, psi);
    };
    std::vector<double> p = signal_params(est.witness);
    fd_ascent(p, score, 200);
    Signal f = params_signal(dims, p);
    const double n = luxemburg_norm(f, phi, MeasureSpec::counting(SiteSet::full(dims))).value;
    if (n > 0) {
      for (auto& v : f.values) v /= n;
      const double r = restriction_ratio(f, s, phi, psi);
      if (r > est.c_lower) {
        est.c_lower = r;
        est.witness = f;
        est.method = SearchMethod::ProjectedAscent;
      }
    }
  }
  est.c_lower = restriction_ratio(est.witness, s, phi, psi);  // recompute, auditable
  return est;
}

LambdaEstimate estimate_lambda_constant(const SiteSet& s, const YoungFunction& phi, int budget,
                                        std::uint64_t seed) {
  if (s.members.empty()) throw std::invalid_argument("estimate_lambda_constant: empty set");
  // p = 2 is the degenerate boundary where the ratio is identically 1; it is
  // admitted so the L2 sanity case stays runnable.
  const bool power_gate = phi.family() == YoungFamily::Power && phi.params()[0] >= 2;
  if (!power_gate && !(matuszewska(phi).alpha_inf > 2 + 1e-9))
    throw precondition_error("estimate_lambda_constant: Matuszewska alpha_inf gate (> 2) fails");

  const GroupDims dims = s.dims;
  const std::size_t k = s.members.size();
  LambdaEstimate est;
  est.s = s;
  est.k_lower = -1.0;
  est.witness = make_delta(dims, 0);

  std::vector<double> best_coeffs(2 * k, 0.0);
  auto consider = [&](const std::vector<double>& coeffs) {
    const Signal f = embed_spectrum(s, coeffs);
    const double r = lambda_ratio(f, phi);
    if (r > est.k_lower) {
      est.k_lower = r;
      est.witness = f;
      best_coeffs = coeffs;
    }
  };

  {
    std::vector<double> flat(2 * k, 0.0);
    for (std::size_t i = 0; i < k; ++i) flat[2 * i] = 1.0;
    consider(flat);
    std::vector<double> single(2 * k, 0.0);
    single[0] = 1.0;
    consider(single);
  }
  for (int b = 0; b < budget; ++b) {
    Rng rng(seed, static_cast<std::uint64_t>(b));
    std::vector<double> coeffs(2 * k);
    for (auto& c : coeffs) c = rng.normal();
    consider(coeffs);
  }
  if (budget > 0) {
    auto score = [&](const std::vector<double>& coeffs) {
      return lambda_ratio(embed_spectrum(s, coeffs), phi);
    };
    std::vector<double> p = best_coeffs;
    fd_ascent(p, score, 60);
    consider(p);
    est.restarts = 1;
  }
  est.k_lower = lambda_ratio(est.witness, phi);  // recompute, auditable
  return est;
}

SiteSet sample_generic_set(const GroupDims& dims, double expected_size, std::uint64_t seed) {
  if (!(expected_size > 0) || expected_size > static_cast<double>(dims.size))
    throw std::invalid_argument("sample_generic_set: expected size out of range");
  Rng rng(seed);
  const double p = std::min(1.0, expected_size / static_cast<double>(dims.size));
  return sample_subset_bernoulli(dims, p, rng);
}

InequalityReport lambda_to_restriction(const SiteSet& s, const YoungFunction& phi,
                                       double lambda_K, double d_prime_conjugate, int trials,
                                       std::uint64_t seed) {
  if (s.members.empty()) throw std::invalid_argument("lambda_to_restriction: empty set");
  if (!is_precedes(precedes(YoungFunction::power(2), phi)))
    throw precondition_error("lambda_to_restriction: phi does not succeed x^2");
  const GroupDims dims = s.dims;
  const double nd = static_cast<double>(dims.size);
  const double cardS = static_cast<double>(s.count());
  const YoungFunction conj = conjugate_of(phi);
  const double coeff =
      lambda_K * d_prime_conjugate * conj.inverse(1.0 / nd) / std::sqrt(cardS);

  InequalityReport worst;
  bool first = true;
  for (int t = 0; t < trials; ++t) {
    const Signal f = make_spectral(s, Rng(seed, static_cast<std::uint64_t>(t)).next_u64());
    const Signal fhat = dft(f);
    KahanSum sum;
    for (auto m : s.members) sum.add(std::norm(fhat.values[m]));
    const double lhs = std::sqrt(sum.value() / cardS);
    // the constant-1 Hoelder behind the transfer pairs the Orlicz (dual) norm
    // of f with a gauge norm, so the Amemiya form is the right-hand side here
    const double rhs =
        coeff * orlicz_norm_amemiya(f, conj, MeasureSpec::counting(SiteSet::full(dims))).value;
    std::ostringstream digest;
    digest << "seed=" << seed << ";trial=" << t << ";|S|=" << s.count() << ";phi=" << phi.name();
    InequalityReport rep =
        make_report("LAMBDA_TO_RESTRICTION", lhs, rhs, BoundDirection::LhsLeqRhs, digest.str());
    if (first || rep.slack < worst.slack) {
      worst = rep;
      first = false;
    }
  }
  return worst;
}

}  // namespace orlicz
