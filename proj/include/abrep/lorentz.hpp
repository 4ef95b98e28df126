#ifndef ABREP_LORENTZ_HPP
#define ABREP_LORENTZ_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "abrep/halfint.hpp"
#include "abrep/linalg.hpp"

namespace abrep {

/// Metric signature used throughout: eta = diag(-1, +1, +1, +1).
inline constexpr std::array<double, 4> kMetricDiag{-1.0, 1.0, 1.0, 1.0};

struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};  // (p^0, p^1, p^2, p^3)

  double& operator[](int mu) { return c[mu]; }
  double operator[](int mu) const { return c[mu]; }
  double spatial_norm() const;

  /// eta_{mu nu} p^mu q^nu.
  static double dot(const FourVector& p, const FourVector& q);
  /// Positive-energy mass-shell point for spatial momentum (px, py, pz).
  static FourVector on_shell(double px, double py, double pz, double m);
  static FourVector rest(double m) { return FourVector{{m, 0.0, 0.0, 0.0}}; }

  bool is_on_shell(double m, double tol = 1e-9) const;
};

enum class PrimitiveKind { Rotation, Boost };

struct LorentzPrimitive {
  PrimitiveKind kind;
  std::array<double, 3> axis;  // unit vector
  double parameter;            // angle [rad] or rapidity
};

/// A Lorentz-group element as a finite word of primitive rotations and
/// boosts. Words compose by concatenation and invert exactly (reverse
/// order, negated parameters), so no matrix logarithm is ever needed.
struct LorentzWord {
  std::vector<LorentzPrimitive> primitives;

  static LorentzWord identity() { return {}; }
  static LorentzWord rotation(const std::array<double, 3>& axis, double angle);
  static LorentzWord boost(const std::array<double, 3>& axis, double rapidity);

  LorentzWord inverse() const;
  LorentzWord then(const LorentzWord& right) const;  // this acting after right
  bool empty() const { return primitives.empty(); }
};

/// A concrete finite-dimensional representation: rotation generators J
/// (Hermitian) and boost generators K, satisfying the Lorentz algebra.
/// Validated on construction.
struct FieldRep {
  int dim = 0;
  std::array<CMatrix, 3> j;
  std::array<CMatrix, 3> k;
  std::optional<std::pair<HalfInt, HalfInt>> label;  // (A, B) when known
  std::string name;

  void validate(double tol = 1e-9) const;
};

/// The (A, B) representation: J = J^A (x) I + I (x) J^B,
/// K = -i (J^A (x) I - I (x) J^B), left factor major.
FieldRep ab_rep(HalfInt a, HalfInt b);

/// The defining 4x4 vector representation (equivalent to (1/2, 1/2)).
FieldRep vector_field_rep();

/// Product over primitives of exp(-i angle axis.J) / exp(-i rapidity axis.K),
/// leftmost primitive outermost.
CMatrix rep_matrix(const FieldRep& rep, const LorentzWord& w);

/// The word's 4x4 matrix lambda^mu_nu in the vector representation.
RMatrix vector_matrix(const LorentzWord& w);

/// Index placement Lambda_nu^mu = eta_{nu alpha} lambda^alpha_beta eta^{beta mu},
/// the form entering the tensor transformation law.
RMatrix lambda_lower_upper(const RMatrix& lam);

FourVector apply_vector(const LorentzWord& w, const FourVector& p);

/// Standard boost L(p): the pure boost along p-hat with rapidity
/// arcsinh(|p|/m), carrying (m, 0, 0, 0) to p. Empty word at rest.
LorentzWord standard_boost(const FourVector& p, double m);

/// D(L(w p)^{-1} w L(p)): the little-group rotation accompanying w at p.
CMatrix wigner_rotation(const FieldRep& rep, const LorentzWord& w, const FourVector& p, double m);

/// Random word for property tests: 1..3 primitives, angles in [0, 2pi),
/// boost rapidities in [0, 2] with the per-word total capped at 2.
LorentzWord random_word(Rng& rng, int max_primitives = 3);

FourVector random_on_shell(Rng& rng, double m, double max_rapidity = 2.0);

}  // namespace abrep

#endif
