#include "abrep/intertwiners.hpp"

#include <cmath>
#include <stdexcept>

#include "abrep/su2.hpp"

namespace abrep {

CoefficientSet build_coefficients(const FieldRep& rep, HalfInt j, double m) {
  if (m <= 0.0) throw std::invalid_argument("build_coefficients: mass must be positive");
  CoefficientSet cs;
  cs.rep = rep;
  cs.j = j;
  cs.m = m;
  cs.u0 = extract_multiplet(rep.j, j);
  cs.v0 = cs.u0 * conjugation_matrix(j);
  return cs;
}

namespace {

CMatrix boosted(const CoefficientSet& cs, const FourVector& p, const CMatrix& rest) {
  if (!p.is_on_shell(cs.m))
    throw std::invalid_argument("coefficient functions: momentum is off shell");
  double prefactor = std::sqrt(cs.m / p[0]);
  return prefactor * rep_matrix(cs.rep, standard_boost(p, cs.m)) * rest;
}

}  // namespace

CMatrix u_at(const CoefficientSet& cs, const FourVector& p) { return boosted(cs, p, cs.u0); }

CMatrix v_at(const CoefficientSet& cs, const FourVector& p) { return boosted(cs, p, cs.v0); }

}  // namespace abrep
