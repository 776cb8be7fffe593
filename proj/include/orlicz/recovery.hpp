#pragma once

#include <optional>

#include "orlicz/norms.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

/// Erased-frequency recovery problem: the spectrum is observed exactly on the
/// complement of S. observed is full-length; entries on S are ignored.
struct RecoveryProblem {
  GroupDims dims;
  SiteSet s;
  std::vector<cplx> observed;
  std::optional<Signal> truth;
};

RecoveryProblem make_problem(const Signal& truth, const SiteSet& erased);

struct SolverParams {
  double step = 1.0;       // Douglas-Rachford step, relative to the data scale
  int max_iters = 50000;
  double tol = 1e-10;      // relative iterate-change stop
  std::uint64_t init_seed = 0;
  bool random_init = false;
};

struct Certificate {
  std::string name;
  bool predicted_success = false;
  double margin = 0.0;
};

struct RecoveryResult {
  Signal recovered;
  double objective = 0.0;  // l1 norm of the recovered signal
  int solver_iters = 0;
  double residual = 0.0;   // max constraint violation on S^c
  bool converged = false;
  std::optional<bool> success;  // vs truth at relative L2 1e-6, when truth known
  std::vector<Certificate> certificates;
};

/// min sum_x |u(x)| subject to uhat = observed off S, by Douglas-Rachford
/// splitting: modulus soft-thresholding against exact Fourier-constraint
/// projection, with a final exact projection polish.
RecoveryResult basis_pursuit(const RecoveryProblem& problem, const SolverParams& params = {});

/// |E| |S| < N^d / 2.
Certificate certificate_classical(const RecoveryProblem& problem);

/// |E| <= N^{4d} Phi^{-1}(|S|/N^d)^2 / (4 C^2 |S|^3).
Certificate certificate_restriction(const RecoveryProblem& problem, const YoungFunction& phi,
                                    const YoungFunction& psi, double c);

/// |E| < (1/2) Psi^{-1}(1/(Psi(N^{-d}) D)) with Psi(x) = sqrt(x) Phi^{-1}(1/x).
Certificate certificate_random(const RecoveryProblem& problem, const YoungFunction& phi,
                               double d_const);

struct PhaseCell {
  int e_size = 0;
  int s_size = 0;
  int trials = 0;
  double success_rate = 0.0;
  double cert_classical_rate = 0.0;
  double cert_restriction_rate = 0.0;
  double cert_random_rate = 0.0;
};

struct PhaseConfig {
  std::vector<int> e_sizes;
  std::vector<int> s_sizes;
  int trials = 20;
  std::uint64_t seed = 1;
  YoungFunction phi = YoungFunction::power(1.5);
  YoungFunction psi = YoungFunction::power(3);
  double c_restriction = 1.0;
  YoungFunction phi_random = YoungFunction::power(4);
  double d_random = 1.0;
};

/// Seeded success-rate table over (|E|, |S|) cells; deterministic per seed.
std::vector<PhaseCell> phase_experiment(const GroupDims& dims, const PhaseConfig& cfg);

namespace displays {
/// Thm-5.1-style bound on |E| and the random-model threshold of Thm 5.3.
double recovery_restriction_bound(const YoungFunction& phi, double c, double cardS, double nd);
double recovery_random_threshold(const YoungFunction& phi, double d_const, double nd);
}  // namespace displays

}  // namespace orlicz
