#pragma once

#include <cstdint>

#include "orlicz/norms.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

enum class SearchMethod { DeltaScan, RandomSample, ProjectedAscent };

/// Lower-bound estimate of the (Phi,Psi)-restriction constant of S: the best
/// ratio N^d |fhat|_Psi(mu_S) / |f|_Phi found by search, with the witness.
struct RestrictionEstimate {
  SiteSet s;
  double c_lower = 0.0;
  Signal witness;
  int trials = 0;
  SearchMethod method = SearchMethod::DeltaScan;
};

/// Lower-bound estimate of the Lambda_Phi constant of S: the best ratio
/// |f|_Phi(mu) / |f|_2(mu) over signals with spectrum supported in S.
struct LambdaEstimate {
  SiteSet s;
  double k_lower = 0.0;
  Signal witness;
  int restarts = 0;
};

/// The ratio the restriction definition bounds, evaluated on one signal.
double restriction_ratio(const Signal& f, const SiteSet& s, const YoungFunction& phi,
                         const YoungFunction& psi);

/// The Lambda_Phi ratio for a spectrum vector supported on S.
double lambda_ratio(const Signal& f, const YoungFunction& phi);

/// Budget counts the random samples; ascent restarts grow with it. budget = 0
/// runs the deterministic delta/indicator scan only.
RestrictionEstimate estimate_restriction_constant(const SiteSet& s, const YoungFunction& phi,
                                                  const YoungFunction& psi, int budget,
                                                  std::uint64_t seed);

LambdaEstimate estimate_lambda_constant(const SiteSet& s, const YoungFunction& phi, int budget,
                                        std::uint64_t seed);

/// Bernoulli model with inclusion probability expected_size / N^d.
SiteSet sample_generic_set(const GroupDims& dims, double expected_size, std::uint64_t seed);

/// Checks the Lambda-to-restriction transfer bound
///   |fhat|_{L2(mu_S)} <= K (Phi*)^{-1}(N^{-d}) |S|^{-1/2} |f|_{Phi*}
/// with K = lambda_K * d_prime_conjugate on seeded S-spectral signals;
/// returns the worst-slack report.
InequalityReport lambda_to_restriction(const SiteSet& s, const YoungFunction& phi,
                                       double lambda_K, double d_prime_conjugate, int trials,
                                       std::uint64_t seed);

}  // namespace orlicz
