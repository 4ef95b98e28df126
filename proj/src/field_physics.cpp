#include "abrep/field_physics.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace abrep {

namespace {

// True when the polynomial equals -sigma^mu p_mu / m for the given Pauli
// set (sign_spatial = -1 for sigma, +1 for sigma-bar).
bool matches_weyl_operator(const MatrixPolynomial& poly, double m, double sign_spatial) {
  if (poly.dim_left != 2 || poly.dim_right != 2) return false;
  CMatrix sigma0 = CMatrix::Identity(2, 2);
  CMatrix sigma1{{0, 1}, {1, 0}};
  CMatrix sigma2{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
  CMatrix sigma3{{1, 0}, {0, -1}};
  std::array<CMatrix, 4> sigma{sigma0, sigma1, sigma2, sigma3};
  if (poly.terms.size() != 4) return false;
  for (const auto& [exp, coeff] : poly.terms) {
    int degree = exp[0] + exp[1] + exp[2] + exp[3];
    if (degree != 1) return false;
    int mu = 0;
    while (exp[mu] == 0) ++mu;
    double expect_sign = mu == 0 ? 1.0 : -sign_spatial;
    if (max_abs(coeff - expect_sign / m * sigma[mu]) > 1e-9) return false;
  }
  return true;
}

std::string degree_summary_of(const MatrixPolynomial& poly) {
  std::set<int> degrees;
  for (const auto& [exp, coeff] : poly.terms) degrees.insert(exp[0] + exp[1] + exp[2] + exp[3]);
  std::ostringstream os;
  os << "degrees {";
  bool first = true;
  for (int d : degrees) {
    if (!first) os << ", ";
    os << d;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

FieldEquationReport verify_field_equation(const SpinSumJob& job, int samples,
                                          std::uint64_t seed, const LorentzWord* frame) {
  if (!job.rep_left.label || !job.rep_right.label)
    throw std::invalid_argument("verify_field_equation: labeled representations required");
  HalfInt b = job.rep_left.label->second;
  HalfInt d = job.rep_right.label->second;

  FieldEquationReport rep;
  rep.rep_left = job.rep_left.name;
  rep.rep_right = job.rep_right.name;
  rep.j = job.j;
  rep.m = job.m;
  rep.op = spin_sum_polynomial(job, TwistKind::Inverse);
  rep.degree_summary = degree_summary_of(rep.op);

  // The (-)^{2A+2C} parity phase and the (-)^{2B+2D} mode phase cancel in
  // the combined equation; both fields contain the same spin j.
  HalfInt a = job.rep_left.label->first;
  HalfInt c = job.rep_right.label->first;
  rep.phases_cancel = phase_two(a + c) * phase_two(b + d) == 1;

  double vphase = phase_two(b + d);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    FourVector p = random_on_shell(rng, job.m);
    if (frame) p = apply_vector(*frame, p);
    CMatrix pi = poly_eval(rep.op, p);
    rep.u_residual = std::max(rep.u_residual,
                              max_abs(u_at(job.cs_left, p) - pi * u_at(job.cs_right, p)));
    CMatrix v_lhs = static_cast<double>(phase_two(b)) * v_at(job.cs_left, p);
    CMatrix v_rhs = vphase * pi * static_cast<double>(phase_two(d)) * v_at(job.cs_right, p);
    rep.v_residual = std::max(rep.v_residual, max_abs(v_lhs - v_rhs));
  }
  if (rep.u_residual > 1e-8 || rep.v_residual > 1e-8)
    throw std::runtime_error("verify_field_equation: residual failure for " + rep.rep_left +
                             " <- " + rep.rep_right + " (u " + std::to_string(rep.u_residual) +
                             ", v " + std::to_string(rep.v_residual) + ")");

  std::ostringstream os;
  os << "psi[" << rep.rep_left << "](x) = Pi(-i d) psi[" << rep.rep_right << "](x), "
     << rep.degree_summary;
  if (rep.op.max_degree() == 0) {
    rep.canonical_form = "psi = psi";
  } else if (matches_weyl_operator(rep.op, job.m, -1.0)) {
    rep.canonical_form = "m φ = i σ^μ ∂_μ χ";
  } else if (matches_weyl_operator(rep.op, job.m, +1.0)) {
    rep.canonical_form = "m χ = i σ̄^μ ∂_μ φ";
  }
  if (!rep.canonical_form.empty()) os << "; " << rep.canonical_form;
  rep.rendering = os.str();
  return rep;
}

ProcaReport proca_report(double m, int samples, std::uint64_t seed) {
  if (m <= 0.0) throw std::invalid_argument("proca_report: mass must be positive");
  FieldRep vec = vector_field_rep();
  SpinSumJob job = make_job(vec, vec, HalfInt::from_int(1), m);

  ProcaReport out;
  out.m = m;

  CMatrix expected = CMatrix::Zero(4, 4);
  expected(1, 1) = expected(2, 2) = expected(3, 3) = 2.0 * m;
  out.pi0_residual = max_abs(spin_sum(job, FourVector::rest(m)) - expected);

  RMatrix eta = RMatrix::Zero(4, 4);
  for (int mu = 0; mu < 4; ++mu) eta(mu, mu) = kMetricDiag[mu];

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    FourVector p = random_on_shell(rng, m);
    CMatrix u = u_at(job.cs_left, p);
    Eigen::RowVector4cd pvec;
    for (int mu = 0; mu < 4; ++mu) pvec(mu) = p[mu];
    Eigen::RowVector3cd div = pvec * eta * u;  // p^mu u_mu(p, sigma) per column
    out.transversality_residual = std::max(out.transversality_residual, div.cwiseAbs().maxCoeff());
    // p^nu p^mu u_mu = 0: the divergence-of-divergence form of the equation.
    double pmax = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2]), std::abs(p[3])});
    out.double_divergence_residual =
        std::max(out.double_divergence_residual, pmax * div.cwiseAbs().maxCoeff());
  }

  out.field_equation = verify_field_equation(job, samples, seed);
  std::ostringstream os;
  os << "d^nu d^mu B_mu = 0 (on shell p.p = -m^2, the Klein-Gordon condition); "
     << "transversality d^mu B_mu = 0";
  out.rendering = os.str();
  return out;
}

StatisticsReport statistics_for(HalfInt a, HalfInt b, HalfInt j) {
  bool triangle = half_abs(a - b) <= j && j <= a + b;
  bool parity = ((a + b).twice - j.twice) % 2 == 0;
  if (!triangle || !parity)
    throw std::invalid_argument("statistics_for: spin " + j.str() + " is not contained in (" +
                                a.str() + "," + b.str() + ")");
  StatisticsReport rep;
  rep.a = a;
  rep.b = b;
  rep.j = j;
  rep.required_sign = phase_two(a + b);  // solves sign * (-1)^{2A+2B} = +1
  rep.statistics = phase_two(j) == 1 ? "Bose" : "Fermi";
  rep.kappa_lambda_constraint =
      std::string("lambda = ") + (phase_two(b) == 1 ? "+" : "-") + "kappa (c = 1)";
  return rep;
}

CausalityEval causality_constraint(HalfInt a, HalfInt b, HalfInt c, HalfInt d, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("causality_constraint: sign must be +1 or -1");
  if (phase_two(a + b) != phase_two(c + d))
    throw std::invalid_argument("causality_constraint: field parities are inconsistent");

  CausalityEval ev;
  ev.a = a;
  ev.b = b;
  ev.c = c;
  ev.d = d;
  ev.sign = sign;
  // lambda^{XY} = (-1)^{2Y} kappa^{XY} with |kappa| = 1 makes
  // lambda^{AB} lambda^{CD*} = (-1)^{2B+2D}, and (-1)^{2A+2D}(-1)^{2B+2D}
  // collapses to (-1)^{2A+2B}.
  ev.p_coefficient = 1 - sign * phase_two(a + b);
  ev.q_coefficient = 1 + sign * phase_two(a + b);
  // kappa^{AB}/kappa^{CD} = (-1)^{2A-2C} lambda^{AB}/lambda^{CD} with the
  // same convention: both sides reduce to +1 under the parity precondition.
  ev.ratio_consistent = phase_two(a - c) * phase_two(b - d) == 1;
  ev.holds = ev.p_coefficient == 0;
  return ev;
}

}  // namespace abrep
