#ifndef ABREP_SU2_HPP
#define ABREP_SU2_HPP

#include <array>

#include "abrep/halfint.hpp"
#include "abrep/linalg.hpp"

namespace abrep {

/// Spin-j generators in the descending-sigma basis: Jz diagonal with
/// entries j, j-1, ..., -j; Jx, Jy Hermitian; [Jx,Jy] = i Jz and cyclic.
struct SpinTriple {
  HalfInt j;
  CMatrix jx, jy, jz;
};

SpinTriple spin_generators(HalfInt j);

/// exp(-i * angle * (axis . J)) in the spin-j representation.
/// The axis must be unit length to 1e-12.
CMatrix rotation_matrix(HalfInt j, const std::array<double, 3>& axis, double angle);

/// Clebsch-Gordan intertwiner for spin j inside A (x) B, shape
/// (2A+1)(2B+1) x (2j+1). Row index is (a, b) with a-major ordering,
/// both factors descending; columns are descending sigma. Real entries,
/// Condon-Shortley phases. Built by highest-weight construction with
/// exact rational arithmetic, converted to double at the boundary.
CMatrix clebsch_gordan(HalfInt a, HalfInt b, HalfInt j);

/// K_j with (K_j)_{sigma', sigma} = (-1)^{j - sigma} delta_{sigma', -sigma};
/// intertwines the conjugate rotation matrices: D^j(R)* = K† D^j(R) K.
CMatrix conjugation_matrix(HalfInt j);

/// Orthonormal spin-j multiplet inside an arbitrary representation given
/// by three generators: columns satisfy Jz col_s = s col_s and the ladder
/// relations, highest weight first. The spin-j multiplicity must be one.
/// Phase convention: the largest-magnitude entry of the highest-weight
/// column (smallest row index on ties) is made real positive.
CMatrix extract_multiplet(const std::array<CMatrix, 3>& gens, HalfInt j);

}  // namespace abrep

#endif
