#include "abrep/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "abrep/su2.hpp"

namespace abrep {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_unit_axis(const std::array<double, 3>& axis, const char* who) {
  double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(who) + ": axis is not unit length");
}

}  // namespace

double FourVector::spatial_norm() const {
  return std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
}

double FourVector::dot(const FourVector& p, const FourVector& q) {
  return -p.c[0] * q.c[0] + p.c[1] * q.c[1] + p.c[2] * q.c[2] + p.c[3] * q.c[3];
}

FourVector FourVector::on_shell(double px, double py, double pz, double m) {
  return FourVector{{std::sqrt(px * px + py * py + pz * pz + m * m), px, py, pz}};
}

bool FourVector::is_on_shell(double m, double tol) const {
  double scale = m * m + c[0] * c[0];
  return c[0] > 0.0 && std::abs(dot(*this, *this) + m * m) <= tol * std::max(1.0, scale);
}

LorentzWord LorentzWord::rotation(const std::array<double, 3>& axis, double angle) {
  require_unit_axis(axis, "LorentzWord::rotation");
  return LorentzWord{{LorentzPrimitive{PrimitiveKind::Rotation, axis, angle}}};
}

LorentzWord LorentzWord::boost(const std::array<double, 3>& axis, double rapidity) {
  require_unit_axis(axis, "LorentzWord::boost");
  return LorentzWord{{LorentzPrimitive{PrimitiveKind::Boost, axis, rapidity}}};
}

LorentzWord LorentzWord::inverse() const {
  LorentzWord out;
  out.primitives.reserve(primitives.size());
  for (auto it = primitives.rbegin(); it != primitives.rend(); ++it)
    out.primitives.push_back(LorentzPrimitive{it->kind, it->axis, -it->parameter});
  return out;
}

LorentzWord LorentzWord::then(const LorentzWord& right) const {
  LorentzWord out = *this;
  out.primitives.insert(out.primitives.end(), right.primitives.begin(), right.primitives.end());
  return out;
}

void FieldRep::validate(double tol) const {
  if (dim <= 0) throw std::invalid_argument("FieldRep: dimension must be positive");
  auto check_dims = [&](const CMatrix& m) {
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("FieldRep: generator dimension mismatch");
  };
  double scale = 1.0;
  for (int a = 0; a < 3; ++a) {
    check_dims(j[a]);
    check_dims(k[a]);
    scale = std::max({scale, j[a].norm(), k[a].norm()});
  }
  double lim = tol * scale * scale;
  auto comm = [](const CMatrix& x, const CMatrix& y) { return x * y - y * x; };
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3, c = (a + 2) % 3;
    if ((comm(j[a], j[b]) - kI * j[c]).norm() > lim ||
        (comm(j[a], k[b]) - kI * k[c]).norm() > lim ||
        (comm(k[a], j[b]) - kI * k[c]).norm() > lim ||
        (comm(k[a], k[b]) + kI * j[c]).norm() > lim)
      throw std::invalid_argument("FieldRep '" + name + "': Lorentz algebra violated");
    if ((j[a] - j[a].adjoint()).norm() > lim)
      throw std::invalid_argument("FieldRep '" + name + "': rotation generators not Hermitian");
  }
}

FieldRep ab_rep(HalfInt a, HalfInt b) {
  if (a.twice < 0 || b.twice < 0) throw std::invalid_argument("ab_rep: negative spin label");
  SpinTriple ga = spin_generators(a), gb = spin_generators(b);
  int da = a.twice + 1, db = b.twice + 1;
  CMatrix ia = CMatrix::Identity(da, da), ib = CMatrix::Identity(db, db);
  std::array<CMatrix, 3> ja{ga.jx, ga.jy, ga.jz}, jb{gb.jx, gb.jy, gb.jz};

  FieldRep rep;
  rep.dim = da * db;
  for (int i = 0; i < 3; ++i) {
    rep.j[i] = kron(ja[i], ib) + kron(ia, jb[i]);
    rep.k[i] = -kI * (kron(ja[i], ib) - kron(ia, jb[i]));
  }
  rep.label = std::make_pair(a, b);
  rep.name = "ab(" + a.str() + "," + b.str() + ")";
  rep.validate();
  return rep;
}

FieldRep vector_field_rep() {
  auto e = [](int r, int c) {
    CMatrix m = CMatrix::Zero(4, 4);
    m(r, c) = 1.0;
    return m;
  };
  FieldRep rep;
  rep.dim = 4;
  rep.j[0] = -kI * (e(2, 3) - e(3, 2));
  rep.j[1] = -kI * (e(3, 1) - e(1, 3));
  rep.j[2] = -kI * (e(1, 2) - e(2, 1));
  for (int a = 0; a < 3; ++a) rep.k[a] = kI * (e(0, a + 1) + e(a + 1, 0));
  rep.label = std::make_pair(HalfInt::from_twice(1), HalfInt::from_twice(1));
  rep.name = "vector";
  rep.validate();
  return rep;
}

CMatrix rep_matrix(const FieldRep& rep, const LorentzWord& w) {
  CMatrix out = CMatrix::Identity(rep.dim, rep.dim);
  for (const auto& prim : w.primitives) {
    const auto& gen = prim.kind == PrimitiveKind::Rotation ? rep.j : rep.k;
    CMatrix g = prim.axis[0] * gen[0] + prim.axis[1] * gen[1] + prim.axis[2] * gen[2];
    out = out * mat_exp(-kI * prim.parameter * g);
  }
  return out;
}

RMatrix vector_matrix(const LorentzWord& w) {
  static const FieldRep vec = vector_field_rep();
  return rep_matrix(vec, w).real();
}

RMatrix lambda_lower_upper(const RMatrix& lam) {
  RMatrix eta = RMatrix::Zero(4, 4);
  for (int mu = 0; mu < 4; ++mu) eta(mu, mu) = kMetricDiag[mu];
  return eta * lam * eta;
}

FourVector apply_vector(const LorentzWord& w, const FourVector& p) {
  RMatrix lam = vector_matrix(w);
  FourVector out;
  for (int mu = 0; mu < 4; ++mu)
    out[mu] = lam(mu, 0) * p[0] + lam(mu, 1) * p[1] + lam(mu, 2) * p[2] + lam(mu, 3) * p[3];
  return out;
}

LorentzWord standard_boost(const FourVector& p, double m) {
  if (m <= 0.0) throw std::invalid_argument("standard_boost: mass must be positive");
  if (!p.is_on_shell(m)) throw std::invalid_argument("standard_boost: momentum is off shell");
  double pn = p.spatial_norm();
  if (pn == 0.0) return LorentzWord::identity();
  return LorentzWord::boost({p[1] / pn, p[2] / pn, p[3] / pn}, std::asinh(pn / m));
}

CMatrix wigner_rotation(const FieldRep& rep, const LorentzWord& w, const FourVector& p, double m) {
  FourVector q = apply_vector(w, p);
  LorentzWord word = standard_boost(q, m).inverse().then(w).then(standard_boost(p, m));
  return rep_matrix(rep, word);
}

LorentzWord random_word(Rng& rng, int max_primitives) {
  int n = 1 + static_cast<int>(rng.uniform() * max_primitives);
  n = std::min(n, max_primitives);
  LorentzWord w;
  double total_rapidity = 0.0;
  std::vector<std::size_t> boost_slots;
  for (int i = 0; i < n; ++i) {
    auto axis = rng.unit_vector();
    if (rng.uniform() < 0.5) {
      w.primitives.push_back({PrimitiveKind::Rotation, axis, rng.uniform(0.0, 2.0 * M_PI)});
    } else {
      double phi = rng.uniform(0.0, 2.0);
      boost_slots.push_back(w.primitives.size());
      w.primitives.push_back({PrimitiveKind::Boost, axis, phi});
      total_rapidity += phi;
    }
  }
  // Cap the total rapidity so representation norms stay bounded across spins.
  if (total_rapidity > 2.0)
    for (auto idx : boost_slots) w.primitives[idx].parameter *= 2.0 / total_rapidity;
  return w;
}

FourVector random_on_shell(Rng& rng, double m, double max_rapidity) {
  auto axis = rng.unit_vector();
  double phi = rng.uniform(0.0, max_rapidity);
  double pn = m * std::sinh(phi);
  return FourVector::on_shell(pn * axis[0], pn * axis[1], pn * axis[2], m);
}

}  // namespace abrep
