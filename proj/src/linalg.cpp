#include "abrep/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace abrep {

bool Tolerance::close(double x, double y) const {
  return std::abs(x - y) <= abs + rel * std::max(std::abs(x), std::abs(y));
}

namespace {

void require_finite(const CMatrix& m, const char* who) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

}  // namespace

CMatrix mat_exp(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("mat_exp: matrix must be square");
  require_finite(m, "mat_exp");
  return m.exp();
}

std::pair<CMatrix, double> lstsq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("lstsq: row count mismatch between A and B");
  require_finite(a, "lstsq");
  require_finite(b, "lstsq");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  CMatrix x = svd.solve(b);
  double residual = (a * x - b).norm();
  return {std::move(x), residual};
}

CMatrix nullspace(const CMatrix& m, const Tolerance& tol) {
  require_finite(m, "nullspace");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = sv.size() > 0 ? sv(0) : 0.0;
  double cut = tol.threshold(scale);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

std::pair<RVector, CMatrix> eig_hermitian(const CMatrix& m) {
  require_finite(m, "eig_hermitian");
  double defect = (m - m.adjoint()).norm();
  if (defect > 1e-10 * std::max(1.0, m.norm()))
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::uint64_t Rng::next_u64() {
  // splitmix64 (Vigna); state advances by the golden-gamma increment.
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::array<double, 3> Rng::unit_vector() {
  // Marsaglia rejection on the unit ball, then normalize.
  while (true) {
    double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0), z = uniform(-1.0, 1.0);
    double r2 = x * x + y * y + z * z;
    if (r2 > 1e-12 && r2 <= 1.0) {
      double r = std::sqrt(r2);
      return {x / r, y / r, z / r};
    }
  }
}

}  // namespace abrep
