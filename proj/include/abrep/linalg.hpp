#ifndef ABREP_LINALG_HPP
#define ABREP_LINALG_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace abrep {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Comparison scale: x ~ y iff |x - y| <= abs + rel * max(|x|, |y|).
struct Tolerance {
  double abs = 1e-9;
  double rel = 1e-9;

  bool close(double x, double y) const;
  double threshold(double scale) const { return abs + rel * scale; }
};

/// exp(M) for square M, scaling-and-squaring with Pade approximant.
CMatrix mat_exp(const CMatrix& m);

/// Minimum-norm least-squares solution of A X = B (SVD based).
/// Returns the minimizer and the attained Frobenius residual ||A X - B||.
std::pair<CMatrix, double> lstsq(const CMatrix& a, const CMatrix& b);

/// Orthonormal basis of the (numerical) kernel of M: columns v with
/// ||M v|| below tol, one per singular value under the threshold.
CMatrix nullspace(const CMatrix& m, const Tolerance& tol = Tolerance{});

/// Eigendecomposition of a Hermitian matrix: ascending eigenvalues and
/// a unitary matrix of eigenvectors. Rejects non-Hermitian input.
std::pair<RVector, CMatrix> eig_hermitian(const CMatrix& m);

CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& m);

/// Deterministic PRNG used by every sampling loop; the seed is recorded
/// in reports so failures can be replayed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Uniform in [0, 1). splitmix64 stream; identical across platforms.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::array<double, 3> unit_vector();

 private:
  std::uint64_t next_u64();
  std::uint64_t state_;
};

}  // namespace abrep

#endif
