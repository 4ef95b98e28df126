#include "abrep/su2.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace abrep {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

constexpr Complex kI{0.0, 1.0};

int dim_of(HalfInt j) { return j.twice + 1; }

// sigma at row r of the descending basis, as a twice-value.
int sigma_twice(HalfInt j, int r) { return j.twice - 2 * r; }

double ladder_lower(HalfInt j, HalfInt sigma) {
  // <j, sigma-1| J- |j, sigma> = sqrt(j(j+1) - sigma(sigma-1)), from twice-values.
  double jj = 0.25 * j.twice * (j.twice + 2);
  double ss = 0.25 * sigma.twice * (sigma.twice - 2);
  return std::sqrt(jj - ss);
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Basis weight w_m = (2X)! (X-m)! / (X+m)! relating the scaled ladder basis
// (in which J- is a plain shift and J+ has integer coefficients) to the
// orthonormal one: |m> = sqrt(w_m)^{-1} ... see to_double conversion below.
BigRat basis_weight(HalfInt x, int m_twice) {
  int xm_minus = (x.twice - m_twice) / 2;  // X - m
  int xm_plus = (x.twice + m_twice) / 2;   // X + m
  return BigRat(factorial(x.twice) * factorial(xm_minus), factorial(xm_plus));
}

}  // namespace

SpinTriple spin_generators(HalfInt j) {
  if (j.twice < 0) throw std::invalid_argument("spin_generators: j must be >= 0");
  int n = dim_of(j);
  CMatrix jz = CMatrix::Zero(n, n), jp = CMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) jz(r, r) = 0.5 * sigma_twice(j, r);
  for (int r = 1; r < n; ++r) {
    HalfInt sigma = HalfInt::from_twice(sigma_twice(j, r));
    jp(r - 1, r) = ladder_lower(j, HalfInt::from_twice(sigma.twice + 2));
  }
  CMatrix jm = jp.adjoint();
  SpinTriple out;
  out.j = j;
  out.jx = (jp + jm) / 2.0;
  out.jy = (jp - jm) / (2.0 * kI);
  out.jz = jz;
  return out;
}

CMatrix rotation_matrix(HalfInt j, const std::array<double, 3>& axis, double angle) {
  double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument("rotation_matrix: axis is not unit length");
  SpinTriple g = spin_generators(j);
  return mat_exp(-kI * angle * (axis[0] * g.jx + axis[1] * g.jy + axis[2] * g.jz));
}

CMatrix clebsch_gordan(HalfInt a, HalfInt b, HalfInt j) {
  if (a.twice < 0 || b.twice < 0 || j.twice < 0)
    throw std::invalid_argument("clebsch_gordan: negative spin label");
  bool triangle = half_abs(a - b) <= j && j <= a + b;
  bool parity = ((a + b).twice - j.twice) % 2 == 0;
  if (!triangle || !parity)
    throw std::invalid_argument("clebsch_gordan: j=" + j.str() + " is not contained in " +
                                a.str() + " (x) " + b.str());

  int na = dim_of(a), nb = dim_of(b), nj = dim_of(j);
  auto row_of = [&](int ra, int rb) { return ra * nb + rb; };

  // Components in the scaled product basis; one column per sigma.
  std::vector<std::vector<BigRat>> scaled(nj, std::vector<BigRat>(na * nb, BigRat(0)));

  // Highest weight (sigma = j): the J+ kernel within the weight space is a
  // two-term recurrence over a. Starting from the a = A component with
  // coefficient 1 fixes the Condon-Shortley sign.
  {
    auto& top = scaled[0];
    BigRat cur(1);
    int at = a.twice;                 // current a, twice-value
    int bt = j.twice - at;            // b = j - a
    top[row_of(0, (b.twice - bt) / 2)] = cur;
    while (true) {
      int at_next = at - 2, bt_next = bt + 2;
      if (at_next < -a.twice || bt_next > b.twice) break;
      // (A - a)(A + a + 2)/4 and (B - b + ...)/4 in twice-values; the /4's cancel.
      BigInt raise_a = BigInt(a.twice - at_next) * BigInt(a.twice + at_next + 2);
      BigInt raise_b = BigInt(b.twice - bt) * BigInt(b.twice + bt + 2);
      cur *= BigRat(-raise_b, raise_a);
      at = at_next;
      bt = bt_next;
      top[row_of((a.twice - at) / 2, (b.twice - bt) / 2)] = cur;
    }
  }

  // Lowering in the scaled basis is a pair of unit shifts.
  for (int c = 1; c < nj; ++c) {
    const auto& prev = scaled[c - 1];
    auto& cur = scaled[c];
    for (int ra = 0; ra < na; ++ra)
      for (int rb = 0; rb < nb; ++rb) {
        const BigRat& s = prev[row_of(ra, rb)];
        if (s == 0) continue;
        if (ra + 1 < na) cur[row_of(ra + 1, rb)] += s;
        if (rb + 1 < nb) cur[row_of(ra, rb + 1)] += s;
      }
  }

  // Boundary: exact squared entries (s^2 * w_a * w_b / norm^2) -> double.
  CMatrix out = CMatrix::Zero(na * nb, nj);
  for (int c = 0; c < nj; ++c) {
    BigRat norm2(0);
    std::vector<BigRat> weighted(na * nb, BigRat(0));
    for (int ra = 0; ra < na; ++ra)
      for (int rb = 0; rb < nb; ++rb) {
        const BigRat& s = scaled[c][row_of(ra, rb)];
        if (s == 0) continue;
        BigRat w = s * s * basis_weight(a, sigma_twice(a, ra)) * basis_weight(b, sigma_twice(b, rb));
        weighted[row_of(ra, rb)] = w;
        norm2 += w;
      }
    for (int r = 0; r < na * nb; ++r) {
      if (weighted[r] == 0) continue;
      double mag = std::sqrt((weighted[r] / norm2).convert_to<double>());
      out(r, c) = scaled[c][r] < 0 ? -mag : mag;
    }
  }
  return out;
}

CMatrix conjugation_matrix(HalfInt j) {
  if (j.twice < 0) throw std::invalid_argument("conjugation_matrix: j must be >= 0");
  int n = dim_of(j);
  CMatrix k = CMatrix::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    HalfInt sigma = HalfInt::from_twice(sigma_twice(j, c));
    int r = (j.twice + sigma.twice) / 2;  // row of -sigma in the descending basis
    k(r, c) = phase_int(j - sigma);
  }
  return k;
}

CMatrix extract_multiplet(const std::array<CMatrix, 3>& gens, HalfInt j) {
  const CMatrix &jx = gens[0], &jy = gens[1], &jz = gens[2];
  Eigen::Index d = jx.rows();
  if (jx.cols() != d || jy.rows() != d || jy.cols() != d || jz.rows() != d || jz.cols() != d)
    throw std::invalid_argument("extract_multiplet: generators must be square of equal size");

  double scale = std::max({jx.norm(), jy.norm(), jz.norm(), 1.0});
  double defect = std::max({(jx * jy - jy * jx - kI * jz).norm(),
                            (jy * jz - jz * jy - kI * jx).norm(),
                            (jz * jx - jx * jz - kI * jy).norm()});
  if (defect > 1e-9 * scale * scale)
    throw std::invalid_argument("extract_multiplet: generators do not satisfy the rotation algebra");

  // Highest weight: joint kernel of (J^2 - j(j+1)) and (Jz - j).
  CMatrix j2 = jx * jx + jy * jy + jz * jz;
  double jj = 0.25 * j.twice * (j.twice + 2);
  CMatrix stacked(2 * d, d);
  stacked.topRows(d) = j2 - jj * CMatrix::Identity(d, d);
  stacked.bottomRows(d) = jz - (0.5 * j.twice) * CMatrix::Identity(d, d);
  CMatrix hw = nullspace(stacked, Tolerance{1e-7 * scale, 1e-7});
  if (hw.cols() == 0)
    throw std::invalid_argument("extract_multiplet: spin " + j.str() + " is not contained");
  if (hw.cols() > 1)
    throw std::invalid_argument("extract_multiplet: spin " + j.str() + " has multiplicity " +
                                std::to_string(hw.cols()));

  CVector top = hw.col(0);
  // Fix the phase: largest-magnitude entry (first on ties) real positive.
  Eigen::Index pick = 0;
  double best = 0.0;
  for (Eigen::Index r = 0; r < d; ++r) {
    double m = std::abs(top(r));
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      pick = r;
    }
  }
  top *= std::abs(top(pick)) / top(pick);
  top.normalize();

  int nj = dim_of(j);
  CMatrix jm = (jx - kI * jy);  // lowering operator
  CMatrix out(d, nj);
  out.col(0) = top;
  for (int c = 1; c < nj; ++c) {
    HalfInt sigma = HalfInt::from_twice(sigma_twice(j, c - 1));
    out.col(c) = (jm * out.col(c - 1)) / ladder_lower(j, sigma);
    out.col(c).normalize();
  }
  return out;
}

}  // namespace abrep
