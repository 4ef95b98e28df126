#ifndef ABREP_FIELD_PHYSICS_HPP
#define ABREP_FIELD_PHYSICS_HPP

#include <cstdint>
#include <string>

#include "abrep/spin_sums.hpp"

namespace abrep {

/// Momentum-space verification record for psi^{AB} = Pi^{AB,CD}(-i d) psi^{CD}.
struct FieldEquationReport {
  std::string rep_left;
  std::string rep_right;
  HalfInt j;
  double m = 1.0;
  MatrixPolynomial op;       // the Pi polynomial
  double u_residual = 0.0;   // max_p ||u^AB(p) - Pi(p) u^CD(p)||
  double v_residual = 0.0;   // same for the v part, phases included
  bool phases_cancel = false;
  std::string degree_summary;
  std::string canonical_form;  // recognizable rendering when one exists
  std::string rendering;
};

/// Samples on-shell momenta (seeded), evaluates both halves of the field
/// equation and the (-1)^{2B+2D} phase bookkeeping. An optional frame word
/// transforms every sampled momentum; residuals are covariant under it.
/// Throws when a residual exceeds 1e-8.
FieldEquationReport verify_field_equation(const SpinSumJob& job, int samples,
                                          std::uint64_t seed,
                                          const LorentzWord* frame = nullptr);

/// The massive spin-1 pipeline in the vector representation: rest-frame
/// spin sum, transversality of the coefficient functions, and the field
/// equation in divergence form.
struct ProcaReport {
  double m = 1.0;
  double pi0_residual = 0.0;            // || pi(0) - 2m diag(0,1,1,1) ||
  double transversality_residual = 0.0; // max |p^mu u_mu(p, sigma)|
  double double_divergence_residual = 0.0;
  FieldEquationReport field_equation;
  std::string rendering;
};

ProcaReport proca_report(double m, int samples = 100, std::uint64_t seed = 42);

struct StatisticsReport {
  HalfInt a, b, j;
  int required_sign = 0;  // +1 commutator, -1 anticommutator
  std::string statistics; // "Bose" or "Fermi"
  std::string kappa_lambda_constraint;
};

/// Solves sign * (-1)^{2A+2B} = +1 and classifies Bose/Fermi by the parity
/// of 2j; the two agree because 2j and 2A+2B share parity.
StatisticsReport statistics_for(HalfInt a, HalfInt b, HalfInt j);

/// Exact phase evaluation of the equal-time vanishing condition under the
/// convention lambda = (-1)^{2B} kappa with unit kappa. The P coefficient
/// [kappa kappa* -+ (-1)^{2A+2D} lambda lambda*] is an exact integer.
struct CausalityEval {
  HalfInt a, b, c, d;
  int sign = 0;
  int p_coefficient = 0;  // multiplies the spatially-even distribution part
  int q_coefficient = 0;  // multiplies the contact part
  bool ratio_consistent = false;
  bool holds = false;     // p_coefficient == 0
};

CausalityEval causality_constraint(HalfInt a, HalfInt b, HalfInt c, HalfInt d, int sign);

}  // namespace abrep

#endif
