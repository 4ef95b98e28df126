#include "abrep/spin_sums.hpp"

#include <cmath>
#include <stdexcept>

namespace abrep {

namespace {

constexpr std::uint64_t kPolynomialCheckSeed = 0xab5e11ull;

}  // namespace

SpinSumJob make_job(const FieldRep& left, const FieldRep& right, HalfInt j, double m) {
  SpinSumJob job;
  job.rep_left = left;
  job.rep_right = right;
  job.j = j;
  job.m = m;
  job.cs_left = build_coefficients(left, j, m);
  job.cs_right = build_coefficients(right, j, m);
  return job;
}

CMatrix spin_sum(const SpinSumJob& job, const FourVector& p) {
  return 2.0 * p[0] * u_at(job.cs_left, p) * u_at(job.cs_right, p).adjoint();
}

CMatrix spin_sum_from_v(const SpinSumJob& job, const FourVector& p) {
  return 2.0 * p[0] * v_at(job.cs_left, p) * v_at(job.cs_right, p).adjoint();
}

namespace {

CMatrix twisted_impl(const SpinSumJob& job, const FourVector& p, const CMatrix& rest_l,
                     const CMatrix& rest_r) {
  if (!p.is_on_shell(job.m))
    throw std::invalid_argument("twisted_spin_sum: momentum is off shell");
  LorentzWord lp = standard_boost(p, job.m);
  return rep_matrix(job.rep_left, lp) * rest_l * rest_r.adjoint() *
         rep_matrix(job.rep_right, lp.inverse());
}

}  // namespace

CMatrix twisted_spin_sum(const SpinSumJob& job, const FourVector& p) {
  return twisted_impl(job, p, job.cs_left.u0, job.cs_right.u0);
}

CMatrix twisted_spin_sum_from_v(const SpinSumJob& job, const FourVector& p) {
  return twisted_impl(job, p, job.cs_left.v0, job.cs_right.v0);
}

XiTable xi_extract(const SpinSumJob& job, TwistKind twist,
                   const std::vector<InvariantSeed>& seeds) {
  if (seeds.empty()) throw std::invalid_argument("xi_extract: empty seed basis");
  CMatrix rest = job.cs_left.u0 * job.cs_right.u0.adjoint();
  if (twist == TwistKind::Hermitian) rest *= 2.0 * job.m;

  int dv = job.rep_left.dim * job.rep_right.dim;
  CMatrix basis(dv, static_cast<int>(seeds.size()));
  CMatrix target(dv, 1);
  for (int r = 0; r < job.rep_left.dim; ++r)
    for (int c = 0; c < job.rep_right.dim; ++c) {
      int flat = r * job.rep_right.dim + c;
      target(flat, 0) = rest(r, c);
      for (std::size_t s = 0; s < seeds.size(); ++s) basis(flat, s) = seeds[s].seed(r, c);
    }

  auto [coeffs, residual] = lstsq(basis, target);
  XiTable table;
  table.residual = residual;
  if (residual > 1e-10 * std::max(1.0, rest.norm()))
    throw std::runtime_error("xi_extract: rest value is not in the seed span, residual " +
                             std::to_string(residual));
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    // The on-shell expansion carries m^{-2K} p_mu... factors; at rest each
    // lowered p_0 contributes -m, so the plain seed coefficient picks up (-1)^{2K}.
    table.xi[seeds[s].k.twice] = static_cast<double>(phase_two(seeds[s].k)) * coeffs(s, 0);
  }
  return table;
}

MatrixPolynomial spin_sum_polynomial(const SpinSumJob& job, TwistKind twist) {
  auto seeds = invariant_seeds(job.rep_left, job.rep_right, twist);
  XiTable table = xi_extract(job, twist, seeds);

  MatrixPolynomial poly;
  poly.dim_left = job.rep_left.dim;
  poly.dim_right = job.rep_right.dim;

  for (const auto& s : seeds) {
    SymTensorMatrix t = build_T(job.rep_left, job.rep_right, twist, s.k, s.seed);
    Complex xi = table.xi.at(s.k.twice);
    double mass_power = std::pow(job.m, -s.k.twice);
    for (const auto& [idx, mat] : t.components) {
      std::array<int, 4> exp{0, 0, 0, 0};
      for (int mu : idx) exp[mu]++;
      double lower_sign = exp[0] % 2 == 0 ? 1.0 : -1.0;  // each p_0 = -p^0
      double scale = mass_power * static_cast<double>(multiplicity(idx)) * lower_sign;
      poly.add_term(exp, xi * scale * mat);
    }
  }

  // On-shell agreement with the direct evaluation.
  Rng rng(kPolynomialCheckSeed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    FourVector p = random_on_shell(rng, job.m);
    CMatrix direct = twist == TwistKind::Hermitian ? spin_sum(job, p) : twisted_spin_sum(job, p);
    double err = max_abs(poly_eval(poly, p) - direct) / std::max(1.0, max_abs(direct));
    worst = std::max(worst, err);
  }
  if (worst > 1e-8)
    throw std::runtime_error("spin_sum_polynomial: on-shell mismatch " + std::to_string(worst));

  // Parity theorem: all monomial degrees are 2K for admitted K, so the
  // parity is read off any seed and must match the label prediction.
  int parity_sign = phase_two(seeds.front().k);
  for (const auto& s : seeds)
    if (phase_two(s.k) != parity_sign)
      throw std::runtime_error("spin_sum_polynomial: inconsistent seed parities");
  if (poly_parity_defect(poly, parity_sign) != 0.0)
    throw std::runtime_error("spin_sum_polynomial: parity defect");
  if (job.rep_left.label && job.rep_right.label) {
    HalfInt a = job.rep_left.label->first;
    HalfInt other = twist == TwistKind::Hermitian ? job.rep_right.label->second
                                                  : job.rep_right.label->first;
    if (phase_two(a + other) != parity_sign)
      throw std::runtime_error("spin_sum_polynomial: parity disagrees with labels");

    if (twist == TwistKind::Inverse) {
      auto range = predicted_k_range(job.rep_left.label->first, job.rep_left.label->second,
                                     job.rep_right.label->first, job.rep_right.label->second,
                                     TwistKind::Inverse);
      int dmin = range.front().twice, dmax = range.back().twice;
      for (const auto& [exp, coeff] : poly.terms) {
        int degree = exp[0] + exp[1] + exp[2] + exp[3];
        if (degree < dmin || degree > dmax)
          throw std::runtime_error("spin_sum_polynomial: degree bound violated");
      }
    }
  }
  return poly;
}

CMatrix omega(HalfInt c, HalfInt d) {
  int nc = c.twice + 1, nd = d.twice + 1;
  CMatrix out = CMatrix::Zero(nc * nd, nc * nd);
  for (int ic = 0; ic < nc; ++ic)
    for (int id = 0; id < nd; ++id) out(id * nc + ic, ic * nd + id) = 1.0;
  return out;
}

double twist_relation_residual(const SpinSumJob& job_ab_dc, const SpinSumJob& job_ab_cd,
                               const FourVector& p) {
  if (job_ab_dc.j != job_ab_cd.j || job_ab_dc.m != job_ab_cd.m ||
      job_ab_dc.rep_left.name != job_ab_cd.rep_left.name)
    throw std::invalid_argument("twist_relation_residual: jobs must share (A,B), j and m");
  if (!job_ab_cd.rep_right.label)
    throw std::invalid_argument("twist_relation_residual: right representation must be labeled");
  auto [c, d] = *job_ab_cd.rep_right.label;
  CMatrix lhs = twisted_spin_sum(job_ab_dc, p);
  CMatrix rhs = spin_sum(job_ab_cd, p) * omega(c, d).adjoint() / (2.0 * job_ab_cd.m);
  return max_abs(lhs - rhs);
}

double omega_intertwine_residual(HalfInt c, HalfInt d, Rng& rng, int nwords) {
  FieldRep rep_cd = ab_rep(c, d), rep_dc = ab_rep(d, c);
  CMatrix om = omega(c, d);
  double worst = 0.0;
  for (int i = 0; i < nwords; ++i) {
    LorentzWord w = random_word(rng);
    CMatrix lhs = rep_matrix(rep_dc, w.inverse()).adjoint() * om;
    CMatrix rhs = om * rep_matrix(rep_cd, w);
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

double omega_u_swap_residual(const CoefficientSet& cs_cd, const CoefficientSet& cs_dc) {
  if (!cs_cd.rep.label || !cs_dc.rep.label)
    throw std::invalid_argument("omega_u_swap_residual: labeled representations required");
  auto [c, d] = *cs_cd.rep.label;
  return max_abs(omega(c, d) * cs_cd.u0 - cs_dc.u0);
}

}  // namespace abrep
