#ifndef ABREP_SPIN_SUMS_HPP
#define ABREP_SPIN_SUMS_HPP

#include <map>
#include <string>

#include "abrep/gamma_tensors.hpp"
#include "abrep/intertwiners.hpp"

namespace abrep {

/// A pair of representations sharing a spin-j particle of mass m, with
/// their rest-frame coefficient sets built once.
struct SpinSumJob {
  FieldRep rep_left;
  FieldRep rep_right;
  HalfInt j;
  double m = 1.0;
  CoefficientSet cs_left;
  CoefficientSet cs_right;
};

SpinSumJob make_job(const FieldRep& left, const FieldRep& right, HalfInt j, double m);

/// pi(p) = 2 p^0 u^L(p) u^R(p)†.
CMatrix spin_sum(const SpinSumJob& job, const FourVector& p);
/// Same value computed through the v coefficients; equality is a theorem.
CMatrix spin_sum_from_v(const SpinSumJob& job, const FourVector& p);

/// Pi(p) = D^L(L(p)) u0^L u0^R† D^R(L(p))^{-1}.
CMatrix twisted_spin_sum(const SpinSumJob& job, const FourVector& p);
CMatrix twisted_spin_sum_from_v(const SpinSumJob& job, const FourVector& p);

/// Expansion coefficients of the rest-frame (twisted) spin sum over the
/// invariant seeds, normalized so that the on-shell polynomial reads
/// sum_K xi_K T^{mu...} m^{-2K} p_mu ... p_mu. Values depend on the seed
/// normalization; the convention tag travels with them.
struct XiTable {
  std::map<int, Complex> xi;  // key: twice(K)
  std::string convention = "seed-norm-v1";
  double residual = 0.0;
};

XiTable xi_extract(const SpinSumJob& job, TwistKind twist,
                   const std::vector<InvariantSeed>& seeds);

/// The on-shell polynomial form of the (twisted) spin sum. Verifies
/// agreement with the direct evaluation at random on-shell momenta, the
/// parity theorem, and (Inverse twist) the monomial degree bounds.
MatrixPolynomial spin_sum_polynomial(const SpinSumJob& job, TwistKind twist);

/// Tensor-factor swap V^C (x) V^D -> V^D (x) V^C in the descending,
/// left-major basis; a permutation matrix.
CMatrix omega(HalfInt c, HalfInt d);

/// Max-norm of Pi^{AB,DC}(p) - (1/2m) pi^{AB,CD}(p) Omega_CD†.
double twist_relation_residual(const SpinSumJob& job_ab_dc, const SpinSumJob& job_ab_cd,
                               const FourVector& p);

/// Max-norm of D^{DC}(w)^{-†} Omega_CD - Omega_CD D^{CD}(w) over the words.
double omega_intertwine_residual(HalfInt c, HalfInt d, Rng& rng, int nwords);

/// Max-norm of Omega_CD u^{CD}(0) - u^{DC}(0).
double omega_u_swap_residual(const CoefficientSet& cs_cd, const CoefficientSet& cs_dc);

}  // namespace abrep

#endif
