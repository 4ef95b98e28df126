#ifndef ABREP_INTERTWINERS_HPP
#define ABREP_INTERTWINERS_HPP

#include "abrep/halfint.hpp"
#include "abrep/linalg.hpp"
#include "abrep/lorentz.hpp"

namespace abrep {

/// Rest-frame coefficient matrices for a spin-j particle housed in a field
/// representation: u0 embeds the spin-j multiplet (u0† u0 = I), and
/// v0 = u0 K_j solves the conjugate intertwiner condition.
struct CoefficientSet {
  FieldRep rep;
  HalfInt j;
  double m = 1.0;
  CMatrix u0;  // dim x (2j+1)
  CMatrix v0;  // dim x (2j+1)
};

/// Requires the spin-j multiplicity in rep to be exactly one.
CoefficientSet build_coefficients(const FieldRep& rep, HalfInt j, double m);

/// u(p) = (m/p^0)^{1/2} D(L(p)) u0. p must be on shell for cs.m.
CMatrix u_at(const CoefficientSet& cs, const FourVector& p);

/// v(p) = (m/p^0)^{1/2} D(L(p)) v0.
CMatrix v_at(const CoefficientSet& cs, const FourVector& p);

}  // namespace abrep

#endif
