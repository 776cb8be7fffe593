#include "orlicz/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace orlicz {

namespace {

double rel_l2_gap(const Signal& a, const Signal& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

// Exact projection onto {u : uhat = observed off S}.
Signal project_constraints(const Signal& u, const RecoveryProblem& p) {
  Signal uhat = dft(u);
  for (std::uint32_t m = 0; m < p.dims.size; ++m)
    if (!p.s.contains(m)) uhat.values[m] = p.observed[m];
  return idft(uhat);
}

Signal soft_threshold(const Signal& z, double gamma) {
  Signal out = z;
  for (auto& v : out.values) {
    const double a = std::abs(v);
    v = a <= gamma ? cplx(0, 0) : v * ((a - gamma) / a);
  }
  return out;
}

double constraint_residual(const Signal& u, const RecoveryProblem& p) {
  const Signal uhat = dft(u);
  double worst = 0;
  for (std::uint32_t m = 0; m < p.dims.size; ++m)
    if (!p.s.contains(m)) worst = std::max(worst, std::abs(uhat.values[m] - p.observed[m]));
  return worst;
}

}  // namespace

RecoveryProblem make_problem(const Signal& truth, const SiteSet& erased) {
  RecoveryProblem p;
  p.dims = truth.dims;
  p.s = erased;
  const Signal spec = dft(truth);
  p.observed.assign(truth.dims.size, cplx(0, 0));
  for (std::uint32_t m = 0; m < truth.dims.size; ++m)
    if (!erased.contains(m)) p.observed[m] = spec.values[m];
  p.truth = truth;
  return p;
}

RecoveryResult basis_pursuit(const RecoveryProblem& problem, const SolverParams& params) {
  if (problem.s.count() == problem.dims.size)
    throw std::invalid_argument("basis_pursuit: nothing observed (S is the whole group)");
  if (problem.observed.size() != problem.dims.size)
    throw std::invalid_argument("basis_pursuit: observed spectrum has the wrong length");

  RecoveryResult res;
  Signal u0{problem.dims, problem.observed};
  for (std::uint32_t m = 0; m < problem.dims.size; ++m)
    if (problem.s.contains(m)) u0.values[m] = cplx(0, 0);
  const Signal base = idft(u0);

  if (problem.s.members.empty()) {
    // fully observed: one exact projection determines the signal
    res.recovered = base;
    res.objective = l1_norm(base);
    res.solver_iters = 1;
    res.converged = true;
  } else {
    double scale = 0.0;
    for (const auto& v : base.values) scale += std::abs(v);
    scale = std::max(scale / static_cast<double>(problem.dims.size), 1e-12);
    const double gamma = params.step * scale;

    Signal z{problem.dims, std::vector<cplx>(problem.dims.size, cplx(0, 0))};
    if (params.random_init) {
      Rng rng(params.init_seed);
      for (auto& v : z.values) v = rng.cnormal();
    }
    Signal x = soft_threshold(z, gamma);
    int it = 0;
    for (; it < params.max_iters; ++it) {
      // y = P_C(2x - z); z += y - x; x = prox(z)
      Signal refl = z;
      for (std::size_t i = 0; i < refl.values.size(); ++i)
        refl.values[i] = 2.0 * x.values[i] - z.values[i];
      const Signal y = project_constraints(refl, problem);
      double change = 0, norm = 0;
      for (std::size_t i = 0; i < z.values.size(); ++i) {
        z.values[i] += y.values[i] - x.values[i];
        change += std::norm(y.values[i] - x.values[i]);
        norm += std::norm(x.values[i]);
      }
      x = soft_threshold(z, gamma);
      if (std::sqrt(change) <= params.tol * std::max(1.0, std::sqrt(norm))) {
        res.converged = true;
        ++it;
        break;
      }
    }
    res.solver_iters = it;
    res.recovered = project_constraints(x, problem);  // final exact polish
    res.objective = l1_norm(res.recovered);
  }
  res.residual = constraint_residual(res.recovered, problem);
  if (problem.truth) res.success = rel_l2_gap(res.recovered, *problem.truth) <= 1e-6;
  return res;
}

Certificate certificate_classical(const RecoveryProblem& problem) {
  if (!problem.truth) throw std::invalid_argument("certificate_classical: needs the truth signal");
  const double cardE = static_cast<double>(support(*problem.truth, 0.0).count());
  const double cardS = static_cast<double>(problem.s.count());
  const double half = static_cast<double>(problem.dims.size) / 2.0;
  return Certificate{"classical", cardE * cardS < half, half - cardE * cardS};
}

namespace displays {

double recovery_restriction_bound(const YoungFunction& phi, double c, double cardS, double nd) {
  const double inv = phi.inverse(cardS / nd);
  return nd * nd * nd * nd * inv * inv / (4 * c * c * cardS * cardS * cardS);
}

double recovery_random_threshold(const YoungFunction& phi, double d_const, double nd) {
  const MonotoneMap psi = recovery_psi(phi);
  return 0.5 * psi.inverse(1.0 / (psi.eval(1.0 / nd) * d_const));
}

}  // namespace displays

Certificate certificate_restriction(const RecoveryProblem& problem, const YoungFunction& phi,
                                    const YoungFunction& psi, double c) {
  if (!problem.truth) throw std::invalid_argument("certificate_restriction: needs the truth signal");
  if (!is_precedes(precedes(YoungFunction::power(1), phi)) || !is_precedes(precedes(phi, psi)))
    throw precondition_error("certificate_restriction: needs x < phi < psi in growth order");
  const double cardE = static_cast<double>(support(*problem.truth, 0.0).count());
  const double cardS = static_cast<double>(problem.s.count());
  const double nd = static_cast<double>(problem.dims.size);
  if (cardS == 0) return Certificate{"restriction", true, nd};
  const double bound = displays::recovery_restriction_bound(phi, c, cardS, nd);
  return Certificate{"restriction", cardE <= bound, bound - cardE};
}

Certificate certificate_random(const RecoveryProblem& problem, const YoungFunction& phi,
                               double d_const) {
  if (!problem.truth) throw std::invalid_argument("certificate_random: needs the truth signal");
  if (!delta2_nabla2(phi).in_delta2)
    throw precondition_error("certificate_random: phi is not in Delta_2");
  const double cardE = static_cast<double>(support(*problem.truth, 0.0).count());
  const double nd = static_cast<double>(problem.dims.size);
  const double threshold = displays::recovery_random_threshold(phi, d_const, nd);
  return Certificate{"random", cardE < threshold, threshold - cardE};
}

std::vector<PhaseCell> phase_experiment(const GroupDims& dims, const PhaseConfig& cfg) {
  std::vector<PhaseCell> table;
  if (cfg.trials <= 0) return table;
  for (int e : cfg.e_sizes)
    for (int s : cfg.s_sizes) {
      if (e < 0 || s < 0 || static_cast<std::size_t>(e) > dims.size ||
          static_cast<std::size_t>(s) >= dims.size)
        throw std::invalid_argument("phase_experiment: cell outside the group");
    }

  std::size_t cell_index = 0;
  for (int e_size : cfg.e_sizes) {
    for (int s_size : cfg.s_sizes) {
      PhaseCell cell;
      cell.e_size = e_size;
      cell.s_size = s_size;
      cell.trials = cfg.trials;
      std::vector<double> succ(static_cast<std::size_t>(cfg.trials), 0.0);
      std::vector<double> c1(succ), c2(succ), c3(succ);
      parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t t) {
        Rng rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * (cell_index + 1)), t);
        const SiteSet e = sample_subset_exact(dims, static_cast<std::size_t>(e_size), rng);
        const SiteSet s = sample_subset_exact(dims, static_cast<std::size_t>(s_size), rng);
        const Signal truth = e.members.empty()
                                 ? Signal{dims, std::vector<cplx>(dims.size, cplx(0, 0))}
                                 : make_gaussian(e, rng.next_u64());
        const RecoveryProblem prob = make_problem(truth, s);
        RecoveryResult res = basis_pursuit(prob);
        res.certificates.push_back(certificate_classical(prob));
        res.certificates.push_back(certificate_restriction(prob, cfg.phi, cfg.psi, cfg.c_restriction));
        res.certificates.push_back(certificate_random(prob, cfg.phi_random, cfg.d_random));
        succ[t] = res.success.value_or(false) ? 1.0 : 0.0;
        c1[t] = res.certificates[0].predicted_success ? 1.0 : 0.0;
        c2[t] = res.certificates[1].predicted_success ? 1.0 : 0.0;
        c3[t] = res.certificates[2].predicted_success ? 1.0 : 0.0;
      });
      for (int t = 0; t < cfg.trials; ++t) {
        cell.success_rate += succ[static_cast<std::size_t>(t)];
        cell.cert_classical_rate += c1[static_cast<std::size_t>(t)];
        cell.cert_restriction_rate += c2[static_cast<std::size_t>(t)];
        cell.cert_random_rate += c3[static_cast<std::size_t>(t)];
      }
      cell.success_rate /= cfg.trials;
      cell.cert_classical_rate /= cfg.trials;
      cell.cert_restriction_rate /= cfg.trials;
      cell.cert_random_rate /= cfg.trials;
      table.push_back(cell);
      ++cell_index;
    }
  }
  return table;
}

}  // namespace orlicz
