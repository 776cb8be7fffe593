#pragma once

#include <optional>

#include "orlicz/norms.hpp"
#include "orlicz/report.hpp"

namespace orlicz {

enum class PsiBranch { PsiAboveX2, PsiBelowX2 };

/// One uncertainty/annihilating-pair instance. For uncertainty checks E and S
/// are the computed supports of f and fhat; for annihilating pairs they are
/// the given concentration sets (no support assumption). Constants left unset
/// are measured on the instance itself, which is the sound mode: every named
/// constant becomes the exact ratio of the proof step it tags, so a verified
/// bound can only fail through an implementation bug.
struct UPInstance {
  Signal f;
  SiteSet e, s;
  YoungFunction phi = YoungFunction::power(1.5);
  YoungFunction psi = YoungFunction::power(3);
  double support_tol = 1e-10;
  double r = 3.0;  // derivative growth exponent for the below-x^2 branches
  std::optional<double> c_restriction;
  std::optional<double> k_lambda;
};

/// Computes E = supp(f), S = supp(fhat) at the relative tolerance.
UPInstance make_up_instance(Signal f, YoungFunction phi, YoungFunction psi, double tol = 1e-10);

/// Keeps the given pair (E, S); used by the annihilating-pair verifier.
UPInstance make_ap_instance(Signal f, SiteSet e, SiteSet s, YoungFunction phi, YoungFunction psi);

/// |E| |S| >= N^d.
InequalityReport classical_up(const UPInstance& inst);

/// |E| >= Phi^{-1}(|S|/N^d) (N^d/|S|)^2 / (Psi^{-1}(1) C).
InequalityReport up_restriction_I(const UPInstance& inst);

/// Branch (i), Psi above x^2: both displays, the binding one reported.
/// Branch (ii), Psi below x^2: the five-constant display.
InequalityReport up_restriction_II(const UPInstance& inst, PsiBranch branch);

/// Quantitative annihilating-pair bounds for arbitrary signals.
InequalityReport annihilating_pair(const UPInstance& inst, PsiBranch branch);

/// |E|/N^d >= K^{-2} (Phi^{-1}(N^d/|E|))^{-2}, the proof's exact form; the
/// statement's Phi^{-1}(N^{2d}/|E|^2) display is evaluated alongside (they
/// coincide for power laws).
InequalityReport lambda_phi_up(const UPInstance& inst);

/// Burstein-form lower bound on |E|/N^d; holds is judged on the exact
/// intermediate, with the asymptotic exp(-C^{4/alpha}/2 log^4 log N^d)
/// display recorded for reference.
InequalityReport burstein_up(const UPInstance& inst, double alpha);

/// Display evaluators shared by the verifiers and the power-law
/// specialization cross-checks.
namespace displays {

double up_I_rhs(const YoungFunction& phi, const YoungFunction& psi, double c, double cardS,
                double nd);
double up_II_a_lhs(const YoungFunction& phi, double cardE, double cardS, double nd);
double up_II_a_rhs(const YoungFunction& phi, double c, double nd);
double up_II_b_lhs(const YoungFunction& phi, double cardE, double cardS);
double up_II_b_rhs(double c, double c_prime, double nd);
double up_II_ii_lhs(const YoungFunction& phi, const YoungFunction& psi,
                    const YoungFunction& psistar, double cardE, double cardS);
double up_II_ii_rhs(const YoungFunction& psi, double c, double k_psi, double c_psi, double c_phi,
                    double d_psistar, double nd);
double lambda_up_rhs_exact(const YoungFunction& phi, double k, double cardE, double nd);
double lambda_up_rhs_display(const YoungFunction& phi, double k, double cardE, double nd);

}  // namespace displays

}  // namespace orlicz
