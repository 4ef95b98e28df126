#include "abrep/gamma_tensors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abrep {

namespace {

constexpr Complex kI{0.0, 1.0};

// Seed for the supplementary fit directions; fixed so that T tensors are
// bitwise reproducible across runs and cacheable.
constexpr std::uint64_t kFitDirectionSeed = 0x5eedf17u;

Eigen::Map<const CVector> vec_of(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, int rows, int cols) {
  // CMatrix is column-major; the flattened operators below are built for
  // row-major stacking, so reshape accordingly.
  CMatrix out(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = v(r * cols + c);
  return out;
}

CVector vec_rowmajor(const CMatrix& m) {
  CVector out(m.size());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r * m.cols() + c) = m(r, c);
  return out;
}

// Flattened operator for M -> X M (row-major vec).
CMatrix left_mul_op(const CMatrix& x, int dim_right) {
  return kron(x, CMatrix::Identity(dim_right, dim_right));
}

// Flattened operator for M -> M Y (row-major vec).
CMatrix right_mul_op(const CMatrix& y, int dim_left) {
  return kron(CMatrix::Identity(dim_left, dim_left), y.transpose());
}

void normalize_seed(CMatrix& seed) {
  double best = 0.0;
  Complex pivot{1.0, 0.0};
  for (int r = 0; r < seed.rows(); ++r)
    for (int c = 0; c < seed.cols(); ++c) {
      double mag = std::abs(seed(r, c));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        pivot = seed(r, c);
      }
    }
  if (best == 0.0) throw std::runtime_error("invariant_seeds: zero seed vector");
  seed /= pivot;
}

}  // namespace

const char* twist_name(TwistKind t) {
  return t == TwistKind::Hermitian ? "hermitian" : "inverse";
}

CMatrix twist_right(const FieldRep& rep, const LorentzWord& w, TwistKind twist) {
  if (twist == TwistKind::Hermitian) return rep_matrix(rep, w).adjoint();
  return rep_matrix(rep, w.inverse());
}

std::vector<MultiIndex> sorted_multi_indices(int rank) {
  std::vector<MultiIndex> out;
  if (rank == 0) {
    out.push_back({});
    return out;
  }
  MultiIndex idx(rank, 0);
  while (true) {
    out.push_back(idx);
    int pos = rank - 1;
    while (pos >= 0 && idx[pos] == 3) --pos;
    if (pos < 0) break;
    int v = idx[pos] + 1;
    for (int i = pos; i < rank; ++i) idx[i] = v;
  }
  return out;
}

long multiplicity(const MultiIndex& idx) {
  std::array<long, 4> counts{0, 0, 0, 0};
  for (int mu : idx) counts[mu]++;
  long result = 1;
  long placed = 0;
  // Product of binomials C(placed + count, count) equals rank! / prod(count!).
  for (long count : counts) {
    for (long i = 1; i <= count; ++i) {
      ++placed;
      result = result * placed / i;
    }
  }
  return result;
}

const CMatrix& SymTensorMatrix::at(MultiIndex idx) const {
  std::sort(idx.begin(), idx.end());
  auto it = components.find(idx);
  if (it == components.end()) throw std::out_of_range("SymTensorMatrix: bad multi-index");
  return it->second;
}

VAction v_action(const FieldRep& left, const FieldRep& right, TwistKind twist) {
  left.validate();
  right.validate();
  double scale = 1.0;
  for (int a = 0; a < 3; ++a)
    scale = std::max({scale, left.k[a].norm(), right.k[a].norm()});
  for (int a = 0; a < 3; ++a) {
    if ((left.k[a] + left.k[a].adjoint()).norm() > 1e-9 * scale ||
        (right.k[a] + right.k[a].adjoint()).norm() > 1e-9 * scale)
      throw std::invalid_argument("v_action: boost generators must be anti-Hermitian");
  }

  VAction va;
  va.dim_left = left.dim;
  va.dim_right = right.dim;
  double ksign = twist == TwistKind::Hermitian ? 1.0 : -1.0;
  for (int a = 0; a < 3; ++a) {
    va.jop[a] = left_mul_op(left.j[a], right.dim) - right_mul_op(right.j[a], left.dim);
    va.kop[a] = left_mul_op(left.k[a], right.dim) + ksign * right_mul_op(right.k[a], left.dim);
  }

  // The six flattened operators must close the Lorentz algebra themselves.
  double opscale = 1.0;
  for (int a = 0; a < 3; ++a) opscale = std::max({opscale, va.jop[a].norm(), va.kop[a].norm()});
  double lim = 1e-9 * opscale * opscale;
  auto comm = [](const CMatrix& x, const CMatrix& y) { return x * y - y * x; };
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    if ((comm(va.jop[a], va.jop[b]) - kI * va.jop[c]).norm() > lim ||
        (comm(va.jop[a], va.kop[b]) - kI * va.kop[c]).norm() > lim ||
        (comm(va.kop[a], va.kop[b]) + kI * va.jop[c]).norm() > lim)
      throw std::runtime_error("v_action: twisted action does not close the Lorentz algebra");
  }
  return va;
}

std::vector<HalfInt> predicted_k_range(HalfInt a, HalfInt b, HalfInt c, HalfInt d,
                                       TwistKind twist) {
  if (twist == TwistKind::Inverse) std::swap(c, d);
  HalfInt lo = half_max(half_abs(a - d), half_abs(b - c));
  HalfInt hi = half_min(a + d, b + c);
  std::vector<HalfInt> out;
  if (((a + d).twice - (b + c).twice) % 2 != 0) return out;  // parity obstruction
  for (HalfInt k = lo; k <= hi; k = k + HalfInt::from_int(1)) out.push_back(k);
  return out;
}

std::vector<InvariantSeed> invariant_seeds(const FieldRep& left, const FieldRep& right,
                                           TwistKind twist) {
  VAction va = v_action(left, right, twist);
  int dv = va.dim_left * va.dim_right;

  CMatrix stacked(3 * dv, dv);
  for (int a = 0; a < 3; ++a) stacked.middleRows(a * dv, dv) = va.jop[a];
  CMatrix kernel = nullspace(stacked, Tolerance{1e-9, 1e-9});
  int kdim = static_cast<int>(kernel.cols());

  std::vector<InvariantSeed> out;
  if (kdim == 0) {
    if (left.label && right.label) {
      auto pred = predicted_k_range(left.label->first, left.label->second, right.label->first,
                                    right.label->second, twist);
      if (!pred.empty())
        throw std::runtime_error("invariant_seeds: no rotation-invariant matrix found but the "
                                 "label range predicts " + std::to_string(pred.size()));
    }
    return out;
  }

  CMatrix casimir = CMatrix::Zero(dv, dv);
  for (int a = 0; a < 3; ++a) {
    CMatrix aa = (va.jop[a] + kI * va.kop[a]) / 2.0;
    casimir += aa * aa;
  }
  auto [evals, evecs] = eig_hermitian(kernel.adjoint() * casimir * kernel);

  for (int i = 0; i < kdim; ++i) {
    double lambda = evals(i);
    double kval = 0.5 * (-1.0 + std::sqrt(std::max(0.0, 1.0 + 4.0 * lambda)));
    int twice = static_cast<int>(std::lround(2.0 * kval));
    double expected = 0.25 * twice * (twice + 2);
    if (twice < 0 || std::abs(lambda - expected) > 1e-6)
      throw std::runtime_error("invariant_seeds: Casimir eigenvalue " + std::to_string(lambda) +
                               " is not K(K+1) for a half-integer K");
    if (i + 1 < kdim && std::abs(evals(i + 1) - lambda) < 1e-6)
      throw std::runtime_error("invariant_seeds: degenerate Casimir clustering at eigenvalue " +
                               std::to_string(lambda));
    InvariantSeed s;
    s.k = HalfInt::from_twice(twice);
    CVector flat = kernel * evecs.col(i);
    s.seed = unvec(flat, va.dim_left, va.dim_right);
    normalize_seed(s.seed);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const InvariantSeed& x, const InvariantSeed& y) { return x.k < y.k; });

  if (left.label && right.label) {
    auto pred = predicted_k_range(left.label->first, left.label->second, right.label->first,
                                  right.label->second, twist);
    bool match = pred.size() == out.size();
    for (std::size_t i = 0; match && i < pred.size(); ++i) match = pred[i] == out[i].k;
    if (!match)
      throw std::runtime_error("invariant_seeds: seed K set does not fill the predicted range for " +
                               left.name + " & " + right.name);
  }
  return out;
}

namespace {

std::vector<LorentzWord> fit_sample_words(int min_samples) {
  std::vector<LorentzWord> words;
  words.push_back(LorentzWord::identity());

  std::vector<std::array<double, 3>> dirs;
  for (int a = 0; a < 3; ++a)
    for (double s : {1.0, -1.0}) {
      std::array<double, 3> d{0.0, 0.0, 0.0};
      d[a] = s;
      dirs.push_back(d);
    }
  double inv = 1.0 / std::sqrt(3.0);
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0})
      for (double sz : {1.0, -1.0}) dirs.push_back({sx * inv, sy * inv, sz * inv});

  const std::array<double, 3> rapidities{0.3, 0.7, 1.1};
  for (const auto& d : dirs)
    for (double phi : rapidities) words.push_back(LorentzWord::boost(d, phi));

  Rng rng(kFitDirectionSeed);
  std::size_t next_rap = 0;
  while (static_cast<int>(words.size()) < min_samples) {
    words.push_back(LorentzWord::boost(rng.unit_vector(), rapidities[next_rap]));
    next_rap = (next_rap + 1) % rapidities.size();
  }
  return words;
}

}  // namespace

SymTensorMatrix build_T(const FieldRep& left, const FieldRep& right, TwistKind twist,
                        HalfInt k, const CMatrix& seed) {
  if (k.twice < 0) throw std::invalid_argument("build_T: K must be >= 0");
  if (seed.rows() != left.dim || seed.cols() != right.dim)
    throw std::invalid_argument("build_T: seed has wrong shape");

  int rank = k.twice;  // tensor rank 2K
  auto indices = sorted_multi_indices(rank);
  int ncomp = static_cast<int>(indices.size());

  SymTensorMatrix t;
  t.rank = rank;
  t.dim_left = left.dim;
  t.dim_right = right.dim;

  if (rank == 0) {
    t.components[{}] = seed;
    return t;
  }

  auto words = fit_sample_words(3 * ncomp);
  int nsamp = static_cast<int>(words.size());
  if (nsamp < 3 * ncomp) throw std::runtime_error("build_T: under-determined sampling");

  // Trace constraints: one row per sorted multi-index of rank - 2.
  auto trace_targets = rank >= 2 ? sorted_multi_indices(rank - 2) : std::vector<MultiIndex>{};
  int ntrace = static_cast<int>(trace_targets.size());

  std::map<MultiIndex, int> column_of;
  for (int i = 0; i < ncomp; ++i) column_of[indices[i]] = i;

  CMatrix a = CMatrix::Zero(nsamp + ntrace, ncomp);
  CMatrix b = CMatrix::Zero(nsamp + ntrace, left.dim * right.dim);

  for (int s = 0; s < nsamp; ++s) {
    RMatrix lam_lu = lambda_lower_upper(vector_matrix(words[s]));
    for (int i = 0; i < ncomp; ++i) {
      double coeff = multiplicity(indices[i]);
      for (int mu : indices[i]) coeff *= lam_lu(mu, 0);
      a(s, i) = coeff;
    }
    CMatrix g = rep_matrix(left, words[s]) * seed * twist_right(right, words[s], twist);
    b.row(s) = vec_rowmajor(g).transpose();
  }
  for (int r = 0; r < ntrace; ++r) {
    for (int mu = 0; mu < 4; ++mu) {
      MultiIndex idx = trace_targets[r];
      idx.push_back(mu);
      idx.push_back(mu);
      std::sort(idx.begin(), idx.end());
      a(nsamp + r, column_of.at(idx)) += kMetricDiag[mu];
    }
  }

  auto [x, residual] = lstsq(a, b);
  double scale = std::max(1.0, b.norm());
  t.fit_residual = residual / scale;
  if (t.fit_residual > 1e-8)
    throw std::runtime_error("build_T: fit residual " + std::to_string(t.fit_residual) +
                             " above tolerance for " + left.name + " & " + right.name);

  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  t.fit_condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;

  for (int i = 0; i < ncomp; ++i)
    t.components[indices[i]] = unvec(x.row(i).transpose(), left.dim, right.dim);

  double seed_err = max_abs(t.components.at(MultiIndex(rank, 0)) - seed);
  if (seed_err > 1e-6)
    throw std::runtime_error("build_T: seed recovery failed, error " + std::to_string(seed_err));
  return t;
}

void MatrixPolynomial::add_term(const std::array<int, 4>& exp, const CMatrix& coeff) {
  auto it = terms.find(exp);
  if (it == terms.end())
    terms[exp] = coeff;
  else
    it->second += coeff;
}

int MatrixPolynomial::max_degree() const {
  int deg = 0;
  for (const auto& [exp, coeff] : terms) deg = std::max(deg, exp[0] + exp[1] + exp[2] + exp[3]);
  return deg;
}

CMatrix poly_eval(const MatrixPolynomial& poly, const FourVector& p) {
  CMatrix out = CMatrix::Zero(poly.dim_left, poly.dim_right);
  for (const auto& [exp, coeff] : poly.terms) {
    double mono = 1.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int e = 0; e < exp[mu]; ++e) mono *= p[mu];
    out += mono * coeff;
  }
  return out;
}

double poly_parity_defect(const MatrixPolynomial& poly, int sign) {
  double defect = 0.0;
  for (const auto& [exp, coeff] : poly.terms) {
    int degree = exp[0] + exp[1] + exp[2] + exp[3];
    int mono_sign = degree % 2 == 0 ? 1 : -1;
    defect = std::max(defect, coeff.norm() * std::abs(1.0 - sign * mono_sign));
  }
  return defect;
}

MatrixPolynomial poly_reduce_p0(const MatrixPolynomial& poly, double m) {
  MatrixPolynomial out;
  out.dim_left = poly.dim_left;
  out.dim_right = poly.dim_right;
  std::map<std::array<int, 4>, CMatrix> pending(poly.terms);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    auto exp = node.key();
    const CMatrix& coeff = node.mapped();
    if (exp[0] <= 1) {
      out.add_term(exp, coeff);
      continue;
    }
    // (p^0)^2 -> m^2 + (p^1)^2 + (p^2)^2 + (p^3)^2
    auto base = exp;
    base[0] -= 2;
    auto push = [&](const std::array<int, 4>& e, const CMatrix& c) {
      auto it = pending.find(e);
      if (it == pending.end())
        pending[e] = c;
      else
        it->second += c;
    };
    push(base, m * m * coeff);
    for (int i = 1; i < 4; ++i) {
      auto e = base;
      e[i] += 2;
      push(e, coeff);
    }
  }
  return out;
}

std::pair<MatrixPolynomial, MatrixPolynomial> poly_pq_split(const MatrixPolynomial& reduced) {
  MatrixPolynomial p, q;
  p.dim_left = q.dim_left = reduced.dim_left;
  p.dim_right = q.dim_right = reduced.dim_right;
  for (const auto& [exp, coeff] : reduced.terms) {
    if (exp[0] == 0) {
      p.add_term(exp, coeff);
    } else if (exp[0] == 1) {
      auto spatial = exp;
      spatial[0] = 0;
      q.add_term(spatial, coeff / 2.0);
    } else {
      throw std::invalid_argument("poly_pq_split: polynomial not reduced in p^0");
    }
  }
  return {std::move(p), std::move(q)};
}

}  // namespace abrep
