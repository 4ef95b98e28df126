#ifndef ABREP_GAMMA_TENSORS_HPP
#define ABREP_GAMMA_TENSORS_HPP

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "abrep/halfint.hpp"
#include "abrep/linalg.hpp"
#include "abrep/lorentz.hpp"

namespace abrep {

/// How the right representation enters the transformation of a matrix
/// M between two field representations:
///   Hermitian: M -> D^L(w) M D^R(w)†   (spin-sum case)
///   Inverse:   M -> D^L(w) M D^R(w)^{-1} (twisted case)
enum class TwistKind { Hermitian, Inverse };

const char* twist_name(TwistKind t);

/// Right-side factor of the twisted action for a word.
CMatrix twist_right(const FieldRep& rep, const LorentzWord& w, TwistKind twist);

/// Sorted multi-index (mu_1 <= ... <= mu_{2K}, each in 0..3).
using MultiIndex = std::vector<int>;

std::vector<MultiIndex> sorted_multi_indices(int rank);
/// Number of distinct orderings of a sorted multi-index.
long multiplicity(const MultiIndex& idx);

/// Matrix-valued symmetric traceless Lorentz tensor of rank 2K; only
/// sorted multi-indices are stored.
struct SymTensorMatrix {
  int rank = 0;
  int dim_left = 0;
  int dim_right = 0;
  std::map<MultiIndex, CMatrix> components;
  double fit_residual = 0.0;
  double fit_condition = 0.0;

  const CMatrix& at(MultiIndex idx) const;  // accepts unsorted indices
};

/// The six generators of the twisted action on the space of dimL x dimR
/// matrices, flattened row-major to dense operators.
struct VAction {
  int dim_left = 0;
  int dim_right = 0;
  std::array<CMatrix, 3> jop;
  std::array<CMatrix, 3> kop;
};

VAction v_action(const FieldRep& left, const FieldRep& right, TwistKind twist);

struct InvariantSeed {
  HalfInt k;
  CMatrix seed;  // dimL x dimR, largest-magnitude entry normalized to +1
};

/// Rotation-invariant matrices classified by the Casimir of the action's
/// left su(2); K values ascend. For labeled representations the K set is
/// checked against the closed-form range.
std::vector<InvariantSeed> invariant_seeds(const FieldRep& left, const FieldRep& right,
                                           TwistKind twist);

/// The K values admitted between labeled representations (A,B) and (C,D):
/// Hermitian: max{|A-D|, |B-C|} <= K <= min{A+D, B+C};
/// Inverse: the same with C and D interchanged. Empty when the parity
/// condition cannot be met.
std::vector<HalfInt> predicted_k_range(HalfInt a, HalfInt b, HalfInt c, HalfInt d,
                                       TwistKind twist);

/// Builds the rank-2K tensor with T^{0...0} = seed by least-squares fit
/// over boosted samples of the transformation law, with tracelessness
/// imposed as weighted constraint rows.
SymTensorMatrix build_T(const FieldRep& left, const FieldRep& right, TwistKind twist,
                        HalfInt k, const CMatrix& seed);

/// Polynomial in the four momentum components p^mu with dense matrix
/// coefficients, keyed by exponent 4-tuples (e0, e1, e2, e3).
struct MatrixPolynomial {
  int dim_left = 0;
  int dim_right = 0;
  std::map<std::array<int, 4>, CMatrix> terms;

  void add_term(const std::array<int, 4>& exp, const CMatrix& coeff);
  int max_degree() const;
};

CMatrix poly_eval(const MatrixPolynomial& poly, const FourVector& p);

/// Zero iff every monomial's total degree has the parity demanded by sign;
/// deviations are weighted by the coefficient norm.
double poly_parity_defect(const MatrixPolynomial& poly, int sign);

/// Eliminates powers of p^0 above 1 via (p^0)^2 = |p|^2 + m^2; on-shell
/// values are unchanged.
MatrixPolynomial poly_reduce_p0(const MatrixPolynomial& poly, double m);

/// Splits a reduced polynomial as P(p) + 2 p^0 Q(p) with P, Q spatial.
std::pair<MatrixPolynomial, MatrixPolynomial> poly_pq_split(const MatrixPolynomial& reduced);

}  // namespace abrep

#endif
