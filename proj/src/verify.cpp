#include "abrep/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "abrep/su2.hpp"

namespace abrep {

namespace {

constexpr const char* kAnchorGamma = "docs/theory.md#gamma-tensors";
constexpr const char* kAnchorSpinSum = "docs/theory.md#spin-sums";
constexpr const char* kAnchorIntertwiner = "docs/theory.md#intertwiners";
constexpr const char* kAnchorOmega = "docs/theory.md#omega-swap";
constexpr const char* kAnchorFieldEq = "docs/theory.md#field-equations";
constexpr const char* kAnchorStatistics = "docs/theory.md#spin-statistics";

std::array<CMatrix, 4> pauli() {
  CMatrix s0 = CMatrix::Identity(2, 2);
  CMatrix s1{{0, 1}, {1, 0}};
  CMatrix s2{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
  CMatrix s3{{1, 0}, {0, -1}};
  return {s0, s1, s2, s3};
}

class Checker {
 public:
  explicit Checker(const RunConfig& cfg) : cfg_(cfg) {}

  /// body returns a residual; the check passes when residual <= tolerance.
  /// Exceptions fail the check with the message as replay detail.
  void run(const std::string& name, const std::string& anchor, double tolerance,
           const std::function<double(std::string&)>& body) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    rec.tolerance = tolerance;
    auto start = std::chrono::steady_clock::now();
    try {
      rec.residual = body(rec.detail);
      rec.passed = rec.residual <= tolerance;
    } catch (const std::exception& e) {
      rec.passed = false;
      rec.residual = std::numeric_limits<double>::infinity();
      rec.detail = e.what();
    }
    if (cfg_.timings)
      rec.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    if (!rec.passed) {
      rec.detail += (rec.detail.empty() ? "" : "; ") + std::string("replay: seed=") +
                    std::to_string(cfg_.seed) + " samples=" + std::to_string(cfg_.samples);
    }
    records_.push_back(std::move(rec));
  }

  void run_flag(const std::string& name, const std::string& anchor,
                const std::function<bool(std::string&)>& body) {
    run(name, anchor, 0.5, [&](std::string& detail) { return body(detail) ? 0.0 : 1.0; });
  }

  Rng rng_for(const std::string& name) const {
    return Rng(cfg_.seed ^ static_cast<std::uint64_t>(std::hash<std::string>{}(name)));
  }

  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  const RunConfig& cfg_;
  std::vector<CheckRecord> records_;
};

std::string pair_tag(const FieldRep& l, const FieldRep& r) { return l.name + "&" + r.name; }

// ------------------------------------------------------------------ gamma

double tensor_covariance_residual(const FieldRep& l, const FieldRep& r, TwistKind twist,
                                  const SymTensorMatrix& t, Rng& rng, int nwords) {
  double worst = 0.0;
  auto tuples = [&](int rank) {
    std::vector<MultiIndex> out;
    MultiIndex idx(rank, 0);
    while (true) {
      out.push_back(idx);
      int pos = rank - 1;
      while (pos >= 0 && idx[pos] == 3) idx[pos--] = 0;
      if (pos < 0) break;
      idx[pos]++;
    }
    return out;
  };
  auto all_tuples = tuples(t.rank);
  for (int i = 0; i < nwords; ++i) {
    LorentzWord w = random_word(rng);
    RMatrix lu = lambda_lower_upper(vector_matrix(w));
    CMatrix dl = rep_matrix(l, w);
    CMatrix tr = twist_right(r, w, twist);
    for (const auto& [mu, comp] : t.components) {
      CMatrix lhs = dl * comp * tr;
      CMatrix rhs = CMatrix::Zero(t.dim_left, t.dim_right);
      for (const auto& nu : all_tuples) {
        double c = 1.0;
        for (std::size_t q = 0; q < nu.size(); ++q) c *= lu(nu[q], mu[q]);
        if (c != 0.0) rhs += c * t.at(nu);
      }
      worst = std::max(worst, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));
    }
  }
  return worst;
}

double tensor_trace_residual(const SymTensorMatrix& t) {
  if (t.rank < 2) return 0.0;
  double worst = 0.0;
  for (const auto& beta : sorted_multi_indices(t.rank - 2)) {
    CMatrix tr = CMatrix::Zero(t.dim_left, t.dim_right);
    for (int mu = 0; mu < 4; ++mu) {
      MultiIndex idx = beta;
      idx.push_back(mu);
      idx.push_back(mu);
      tr += kMetricDiag[mu] * t.at(idx);
    }
    worst = std::max(worst, max_abs(tr));
  }
  return worst;
}

void gamma_suite(Checker& ck, const RunConfig& cfg) {
  auto reps = standard_rep_set();
  struct Built {
    FieldRep l, r;
    TwistKind twist;
    HalfInt k;
    CMatrix seed;
  };
  std::vector<Built> built_list;

  for (const auto& l : reps)
    for (const auto& r : reps)
      for (TwistKind twist : {TwistKind::Hermitian, TwistKind::Inverse}) {
        std::string base = "gamma/" + pair_tag(l, r) + "/" + twist_name(twist);
        auto pred = predicted_k_range(l.label->first, l.label->second, r.label->first,
                                      r.label->second, twist);
        std::vector<InvariantSeed> seeds;
        ck.run(base + "/k-range", kAnchorGamma, 0.0, [&](std::string& detail) {
          seeds = invariant_seeds(l, r, twist);
          std::ostringstream os;
          os << "K set {";
          for (const auto& s : seeds) os << " " << s.k.str();
          os << " }, predicted " << pred.size();
          detail = os.str();
          return std::abs(static_cast<double>(seeds.size()) - static_cast<double>(pred.size()));
        });
        if (seeds.empty()) continue;

        std::vector<SymTensorMatrix> tensors;
        ck.run(base + "/fit", kAnchorGamma, 1e-8, [&](std::string&) {
          double worst = 0.0;
          for (const auto& s : seeds) {
            tensors.push_back(build_T_cached(l, r, twist, s.k, s.seed, cfg.cache_dir));
            built_list.push_back(Built{l, r, twist, s.k, s.seed});
            worst = std::max(worst, tensors.back().fit_residual);
          }
          return worst;
        });
        if (tensors.size() != seeds.size()) continue;

        ck.run(base + "/seed-recovery", kAnchorGamma, 1e-9, [&](std::string&) {
          double worst = 0.0;
          for (std::size_t i = 0; i < seeds.size(); ++i)
            worst = std::max(worst, max_abs(tensors[i].at(MultiIndex(tensors[i].rank, 0)) -
                                            seeds[i].seed));
          return worst;
        });
        ck.run(base + "/traceless", kAnchorGamma, 1e-8, [&](std::string&) {
          double worst = 0.0;
          for (const auto& t : tensors) worst = std::max(worst, tensor_trace_residual(t));
          return worst;
        });
        ck.run(base + "/covariance", kAnchorGamma, 1e-8, [&](std::string&) {
          Rng rng = ck.rng_for(base + "/covariance");
          double worst = 0.0;
          for (const auto& t : tensors)
            worst = std::max(worst, tensor_covariance_residual(l, r, twist, t, rng, 3));
          return worst;
        });
      }

  // Pinned low-spin values: the Pauli set and its conjugate partner.
  auto sigma = pauli();
  ck.run("gamma/pauli-sigma", kAnchorGamma, 1e-9, [&](std::string&) {
    FieldRep rep = ab_rep(HalfInt::from_twice(1), HalfInt::from_twice(0));
    auto seeds = invariant_seeds(rep, rep, TwistKind::Hermitian);
    SymTensorMatrix t = build_T(rep, rep, TwistKind::Hermitian, seeds.at(0).k, seeds.at(0).seed);
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) worst = std::max(worst, max_abs(t.at({mu}) - sigma[mu]));
    return worst;
  });
  ck.run("gamma/pauli-sigmabar", kAnchorGamma, 1e-9, [&](std::string&) {
    FieldRep rep = ab_rep(HalfInt::from_twice(0), HalfInt::from_twice(1));
    auto seeds = invariant_seeds(rep, rep, TwistKind::Hermitian);
    SymTensorMatrix t = build_T(rep, rep, TwistKind::Hermitian, seeds.at(0).k, seeds.at(0).seed);
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      CMatrix expect = mu == 0 ? sigma[0] : CMatrix(-sigma[mu]);
      worst = std::max(worst, max_abs(t.at({mu}) - expect));
    }
    return worst;
  });

  ck.run("gamma/sigma-covariance", kAnchorGamma, 1e-9, [&](std::string& detail) {
    FieldRep rep = ab_rep(HalfInt::from_twice(1), HalfInt::from_twice(0));
    Rng rng = ck.rng_for("gamma/sigma-covariance");
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      LorentzWord w = random_word(rng);
      RMatrix lam = vector_matrix(w);
      RMatrix lu = cfg.inject_wrong_metric ? lam : lambda_lower_upper(lam);
      CMatrix d = rep_matrix(rep, w);
      for (int mu = 0; mu < 4; ++mu) {
        CMatrix rhs = CMatrix::Zero(2, 2);
        for (int nu = 0; nu < 4; ++nu) rhs += lu(nu, mu) * sigma[nu];
        worst = std::max(worst, max_abs(d * sigma[mu] * d.adjoint() - rhs));
      }
    }
    if (cfg.inject_wrong_metric) detail = "negative control: metric lowering disabled";
    return worst;
  });

  // The displayed spin-1 rank-2 family: eta^{mu sigma} eta^{nu rho} is
  // covariant for the vector pair, and the canonical traceless tensor is
  // its symmetrized, detraced projection.
  ck.run("gamma/vector-eta-family", kAnchorGamma, 1e-9, [&](std::string&) {
    FieldRep vec = vector_field_rep();
    std::array<std::array<CMatrix, 4>, 4> w;
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho) {
        w[mu][rho] = CMatrix::Zero(4, 4);
        w[mu][rho](rho, mu) = kMetricDiag[mu] * kMetricDiag[rho];
      }
    Rng rng = ck.rng_for("gamma/vector-eta-family");
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      LorentzWord word = random_word(rng);
      RMatrix lu = lambda_lower_upper(vector_matrix(word));
      CMatrix dl = rep_matrix(vec, word);
      CMatrix tr = twist_right(vec, word, TwistKind::Hermitian);
      for (int mu = 0; mu < 4; ++mu)
        for (int rho = 0; rho < 4; ++rho) {
          CMatrix lhs = dl * w[mu][rho] * tr;
          CMatrix rhs = CMatrix::Zero(4, 4);
          for (int nu = 0; nu < 4; ++nu)
            for (int tau = 0; tau < 4; ++tau) rhs += lu(nu, mu) * lu(tau, rho) * w[nu][tau];
          worst = std::max(worst, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));
        }
    }
    return worst;
  });
  ck.run("gamma/vector-k1-projection", kAnchorGamma, 1e-9, [&](std::string& detail) {
    FieldRep vec = vector_field_rep();
    auto seeds = invariant_seeds(vec, vec, TwistKind::Hermitian);
    const InvariantSeed* k1 = nullptr;
    for (const auto& s : seeds)
      if (s.k.twice == 2) k1 = &s;
    if (!k1) throw std::runtime_error("vector pair has no K=1 seed");
    SymTensorMatrix t = build_T(vec, vec, TwistKind::Hermitian, k1->k, k1->seed);

    // Symmetrize and detrace eta^{mu sigma} eta^{nu rho}, then match the
    // seed normalization.
    std::array<std::array<CMatrix, 4>, 4> proj;
    CMatrix trace = CMatrix::Zero(4, 4);
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho) {
        CMatrix wmr = CMatrix::Zero(4, 4), wrm = CMatrix::Zero(4, 4);
        wmr(rho, mu) = kMetricDiag[mu] * kMetricDiag[rho];
        wrm(mu, rho) = kMetricDiag[mu] * kMetricDiag[rho];
        proj[mu][rho] = 0.5 * (wmr + wrm);
      }
    for (int mu = 0; mu < 4; ++mu) trace += kMetricDiag[mu] * proj[mu][mu];
    for (int mu = 0; mu < 4; ++mu) proj[mu][mu] -= 0.25 * kMetricDiag[mu] * trace;

    double pivot = proj[0][0].real().maxCoeff();
    double worst = 0.0;
    for (const auto& [idx, comp] : t.components)
      worst = std::max(worst, max_abs(comp - proj[idx[0]][idx[1]] / pivot));
    detail = "canonical tensor vs detraced eta (x) eta";
    return worst;
  });

  if (!cfg.cache_dir.empty() && !built_list.empty()) {
    ck.run_flag("gamma/cache-coherence", kAnchorGamma, [&](std::string& detail) {
      Rng rng = ck.rng_for("gamma/cache-coherence");
      const auto& pick = built_list[static_cast<std::size_t>(rng.uniform() * built_list.size()) %
                                    built_list.size()];
      std::string key = tensor_cache_key(pick.l, pick.r, pick.twist, pick.k, "seed-norm-v1");
      SymTensorMatrix cached;
      if (!tensor_cache_load(cfg.cache_dir, key, cached)) {
        detail = "cache entry missing: " + key;
        return false;
      }
      SymTensorMatrix fresh = build_T(pick.l, pick.r, pick.twist, pick.k, pick.seed);
      detail = "revalidated " + key;
      return to_json(cached).dump() == to_json(fresh).dump();
    });
  }
}

// ---------------------------------------------------------------- spinsum

void spinsum_suite(Checker& ck, const RunConfig& cfg) {
  auto reps = standard_rep_set();
  const double m = 1.0;

  // Intertwiner conditions for every representation and admissible spin.
  for (const auto& rep : reps)
    for (HalfInt j : admissible_j(rep)) {
      std::string base = "spinsum/intertwiners/" + rep.name + "/j=" + j.str();
      CoefficientSet cs = build_coefficients(rep, j, m);
      ck.run(base + "/orthonormal", kAnchorIntertwiner, 1e-12, [&](std::string&) {
        return max_abs(cs.u0.adjoint() * cs.u0 - CMatrix::Identity(j.twice + 1, j.twice + 1));
      });
      ck.run(base + "/u-rotation", kAnchorIntertwiner, 1e-10, [&](std::string&) {
        Rng rng = ck.rng_for(base + "/u-rotation");
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
          auto axis = rng.unit_vector();
          double angle = rng.uniform(0.0, 2.0 * M_PI);
          CMatrix dj = rotation_matrix(j, axis, angle);
          CMatrix d = rep_matrix(rep, LorentzWord::rotation(axis, angle));
          worst = std::max(worst, max_abs(cs.u0 * dj - d * cs.u0));
        }
        return worst;
      });
      ck.run(base + "/v-conjugate-rotation", kAnchorIntertwiner, 1e-10, [&](std::string&) {
        Rng rng = ck.rng_for(base + "/v-conjugate-rotation");
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
          auto axis = rng.unit_vector();
          double angle = rng.uniform(0.0, 2.0 * M_PI);
          CMatrix dj = rotation_matrix(j, axis, angle);
          CMatrix d = rep_matrix(rep, LorentzWord::rotation(axis, angle));
          worst = std::max(worst, max_abs(cs.v0 * dj.conjugate() - d * cs.v0));
        }
        return worst;
      });
      ck.run(base + "/wigner-covariance", kAnchorIntertwiner, 1e-9, [&](std::string&) {
        Rng rng = ck.rng_for(base + "/wigner-covariance");
        FieldRep spin_j = ab_rep(j, HalfInt::from_twice(0));
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
          LorentzWord w = random_word(rng);
          FourVector p = random_on_shell(rng, m);
          FourVector q = apply_vector(w, p);
          CMatrix dj_w = wigner_rotation(spin_j, w, p, m);
          CMatrix lhs = u_at(cs, q) * dj_w;
          CMatrix rhs = std::sqrt(p[0] / q[0]) * rep_matrix(rep, w) * u_at(cs, p);
          worst = std::max(worst, max_abs(lhs - rhs));
        }
        return worst;
      });
      ck.run(base + "/multiplet-vs-cg", kAnchorIntertwiner, 1e-10, [&](std::string&) {
        CMatrix cg = clebsch_gordan(rep.label->first, rep.label->second, j);
        // Remove the global phase via the largest CG entry.
        Eigen::Index rr = 0, cc = 0;
        cg.cwiseAbs().maxCoeff(&rr, &cc);
        Complex phase = cs.u0(rr, cc) / cg(rr, cc);
        double worst = max_abs(cs.u0 - phase * cg);
        return std::max(worst, std::abs(std::abs(phase) - 1.0));
      });
    }

  for (const auto& l : reps)
    for (const auto& r : reps)
      for (HalfInt j : common_j(l, r)) {
        std::string base = "spinsum/" + pair_tag(l, r) + "/j=" + j.str();
        SpinSumJob job = make_job(l, r, j, m);

        ck.run(base + "/uv-equality", kAnchorSpinSum, 1e-9, [&](std::string&) {
          Rng rng = ck.rng_for(base + "/uv-equality");
          double worst = 0.0;
          for (int i = 0; i < cfg.samples; ++i) {
            FourVector p = random_on_shell(rng, m);
            worst = std::max(worst, max_abs(spin_sum(job, p) - spin_sum_from_v(job, p)));
            worst = std::max(worst,
                             max_abs(twisted_spin_sum(job, p) - twisted_spin_sum_from_v(job, p)));
          }
          return worst;
        });

        ck.run(base + "/covariance", kAnchorSpinSum, 1e-8, [&](std::string&) {
          Rng rng = ck.rng_for(base + "/covariance");
          double worst = 0.0;
          for (int i = 0; i < 20; ++i) {
            LorentzWord w = random_word(rng);
            FourVector p = random_on_shell(rng, m);
            CMatrix base_val = spin_sum(job, p);
            CMatrix lhs = spin_sum(job, apply_vector(w, p));
            CMatrix rhs = rep_matrix(l, w) * base_val * rep_matrix(r, w).adjoint();
            worst = std::max(worst, max_abs(lhs - rhs) / std::max(1e-12, base_val.norm()));
          }
          return worst;
        });
        ck.run(base + "/twisted-covariance", kAnchorSpinSum, 1e-8, [&](std::string&) {
          Rng rng = ck.rng_for(base + "/twisted-covariance");
          double worst = 0.0;
          for (int i = 0; i < 20; ++i) {
            LorentzWord w = random_word(rng);
            FourVector p = random_on_shell(rng, m);
            CMatrix base_val = twisted_spin_sum(job, p);
            CMatrix lhs = twisted_spin_sum(job, apply_vector(w, p));
            CMatrix rhs = rep_matrix(l, w) * base_val * rep_matrix(r, w.inverse());
            worst = std::max(worst, max_abs(lhs - rhs) / std::max(1e-12, base_val.norm()));
          }
          return worst;
        });

        for (TwistKind twist : {TwistKind::Hermitian, TwistKind::Inverse}) {
          std::string tbase = base + "/" + twist_name(twist);
          MatrixPolynomial poly;
          ck.run(tbase + "/poly-direct", kAnchorSpinSum, 1e-8, [&](std::string&) {
            poly = spin_sum_polynomial(job, twist);
            Rng rng = ck.rng_for(tbase + "/poly-direct");
            double worst = 0.0;
            for (int i = 0; i < cfg.samples; ++i) {
              FourVector p = random_on_shell(rng, m);
              CMatrix direct =
                  twist == TwistKind::Hermitian ? spin_sum(job, p) : twisted_spin_sum(job, p);
              worst = std::max(worst, max_abs(poly_eval(poly, p) - direct) /
                                          std::max(1.0, max_abs(direct)));
            }
            return worst;
          });
          if (poly.dim_left == 0) continue;  // build failed; already reported

          HalfInt a = l.label->first;
          HalfInt partner = twist == TwistKind::Hermitian ? r.label->second : r.label->first;
          int sign = phase_two(a + partner);
          ck.run(tbase + "/parity", kAnchorSpinSum, 0.0, [&](std::string& detail) {
            detail = std::string("sign ") + (sign == 1 ? "+1" : "-1");
            return poly_parity_defect(poly, sign);
          });
          ck.run(tbase + "/xi-residual", kAnchorSpinSum, 1e-10, [&](std::string&) {
            auto seeds = invariant_seeds(l, r, twist);
            return xi_extract(job, twist, seeds).residual;
          });

          if (twist == TwistKind::Inverse) {
            ck.run_flag(tbase + "/degree-bounds", kAnchorSpinSum, [&](std::string& detail) {
              auto range = predicted_k_range(l.label->first, l.label->second, r.label->first,
                                             r.label->second, TwistKind::Inverse);
              int dmin = range.front().twice, dmax = range.back().twice;
              std::ostringstream os;
              os << "degrees within [" << dmin << ", " << dmax << "]";
              detail = os.str();
              for (const auto& [exp, coeff] : poly.terms) {
                int deg = exp[0] + exp[1] + exp[2] + exp[3];
                if (deg < dmin || deg > dmax) return false;
              }
              return true;
            });
          } else {
            ck.run(tbase + "/pq-split", kAnchorSpinSum, 1e-8, [&](std::string&) {
              MatrixPolynomial reduced = poly_reduce_p0(poly, m);
              auto [pp, qq] = poly_pq_split(reduced);
              if (poly_parity_defect(pp, sign) != 0.0) return 1.0;
              if (poly_parity_defect(qq, -sign) != 0.0) return 1.0;
              Rng rng = ck.rng_for(tbase + "/pq-split");
              double worst = 0.0;
              for (int i = 0; i < 25; ++i) {
                FourVector p = random_on_shell(rng, m);
                CMatrix rebuilt = poly_eval(pp, p) + 2.0 * p[0] * poly_eval(qq, p);
                CMatrix direct = spin_sum(job, p);
                worst = std::max(worst,
                                 max_abs(rebuilt - direct) / std::max(1.0, max_abs(direct)));
              }
              return worst;
            });
          }
        }
      }

  // Omega swap map: intertwining, multiplet swap parity, twist relation.
  struct OmegaCase {
    HalfInt c, d, j;
  };
  auto h = [](int t) { return HalfInt::from_twice(t); };
  std::vector<OmegaCase> symmetric{{h(1), h(1), h(2)}, {h(1), h(0), h(1)}, {h(0), h(1), h(1)},
                                   {h(2), h(0), h(2)}, {h(2), h(1), h(3)}, {h(0), h(0), h(0)}};
  std::vector<OmegaCase> antisymmetric{{h(1), h(1), h(0)}, {h(2), h(1), h(1)}};

  for (const auto& pair : std::vector<std::pair<HalfInt, HalfInt>>{
           {h(1), h(1)}, {h(1), h(0)}, {h(2), h(1)}}) {
    std::string name =
        "spinsum/omega/intertwine/(" + pair.first.str() + "," + pair.second.str() + ")";
    ck.run(name, kAnchorOmega, 1e-9, [&](std::string&) {
      Rng rng = ck.rng_for(name);
      return omega_intertwine_residual(pair.first, pair.second, rng, 20);
    });
  }

  for (const auto& oc : symmetric) {
    std::string name = "spinsum/omega/swap/(" + oc.c.str() + "," + oc.d.str() + ")/j=" + oc.j.str();
    ck.run(name, kAnchorOmega, 1e-10, [&](std::string&) {
      CoefficientSet cd = build_coefficients(ab_rep(oc.c, oc.d), oc.j, m);
      CoefficientSet dc = build_coefficients(ab_rep(oc.d, oc.c), oc.j, m);
      return omega_u_swap_residual(cd, dc);
    });
  }
  for (const auto& oc : antisymmetric) {
    std::string name = "spinsum/omega/swap-antisymmetric/(" + oc.c.str() + "," + oc.d.str() +
                       ")/j=" + oc.j.str();
    ck.run(name, kAnchorOmega, 1e-10, [&](std::string& detail) {
      detail = "swap acts as -1 on this multiplet: (-1)^{C+D-j} = -1";
      CoefficientSet cd = build_coefficients(ab_rep(oc.c, oc.d), oc.j, m);
      CoefficientSet dc = build_coefficients(ab_rep(oc.d, oc.c), oc.j, m);
      return max_abs(omega(oc.c, oc.d) * cd.u0 + dc.u0);
    });
  }

  // Twist relation Pi^{AB,DC} = (1/2m) pi^{AB,CD} Omega† at sampled momenta,
  // for the multiplets on which the factor swap acts trivially.
  struct RelationCase {
    HalfInt a, b, c, d, j;
  };
  std::vector<RelationCase> relations{{h(1), h(1), h(1), h(1), h(2)},
                                      {h(1), h(0), h(0), h(1), h(1)},
                                      {h(0), h(1), h(1), h(0), h(1)},
                                      {h(2), h(0), h(2), h(0), h(2)}};
  for (const auto& rc : relations) {
    std::string name = "spinsum/omega/relation/(" + rc.a.str() + "," + rc.b.str() + ")&(" +
                       rc.c.str() + "," + rc.d.str() + ")/j=" + rc.j.str();
    ck.run(name, kAnchorOmega, 1e-8, [&](std::string&) {
      FieldRep ab = ab_rep(rc.a, rc.b);
      SpinSumJob job_dc = make_job(ab, ab_rep(rc.d, rc.c), rc.j, m);
      SpinSumJob job_cd = make_job(ab, ab_rep(rc.c, rc.d), rc.j, m);
      Rng rng = ck.rng_for(name);
      double worst = 0.0;
      for (int i = 0; i < 50; ++i)
        worst = std::max(worst,
                         twist_relation_residual(job_dc, job_cd, random_on_shell(rng, m)));
      return worst;
    });
  }
  // The antisymmetric multiplet picks up the swap sign; the corrected
  // identity is pinned as a diagnostic of the sign's origin.
  ck.run("spinsum/omega/relation-antisymmetric/(1/2,1/2)/j=0", kAnchorOmega, 1e-8,
         [&](std::string& detail) {
           detail = "2m Pi + pi Omega† = 0 on the j=0 multiplet";
           FieldRep v = ab_rep(h(1), h(1));
           SpinSumJob job = make_job(v, v, h(0), m);
           CMatrix om = omega(h(1), h(1));
           Rng rng = ck.rng_for("spinsum/omega/relation-antisymmetric/(1/2,1/2)/j=0");
           double worst = 0.0;
           for (int i = 0; i < 50; ++i) {
             FourVector p = random_on_shell(rng, m);
             CMatrix lhs = 2.0 * m * twisted_spin_sum(job, p);
             CMatrix rhs = spin_sum(job, p) * om.adjoint();
             worst = std::max(worst, max_abs(lhs + rhs));
           }
           return worst;
         });
}

// ---------------------------------------------------------------- fieldeq

void fieldeq_suite(Checker& ck, const RunConfig& cfg) {
  auto reps = standard_rep_set();
  const double m = 1.0;

  for (const auto& l : reps)
    for (const auto& r : reps)
      for (HalfInt j : common_j(l, r)) {
        std::string base = "fieldeq/" + pair_tag(l, r) + "/j=" + j.str();
        SpinSumJob job = make_job(l, r, j, m);
        FieldEquationReport rep;
        ck.run(base + "/residuals", kAnchorFieldEq, 1e-8, [&](std::string& detail) {
          rep = verify_field_equation(job, cfg.samples, cfg.seed);
          detail = rep.degree_summary + (rep.phases_cancel ? "; phases cancel" : "; PHASES FAIL");
          if (!rep.phases_cancel) return 1.0;
          return std::max(rep.u_residual, rep.v_residual);
        });
        ck.run(base + "/frame-invariance", kAnchorFieldEq, 2e-8, [&](std::string&) {
          Rng rng = ck.rng_for(base + "/frame-invariance");
          LorentzWord frame = random_word(rng);
          FieldEquationReport framed = verify_field_equation(job, cfg.samples, cfg.seed, &frame);
          return std::max(framed.u_residual, framed.v_residual);
        });
      }

  ck.run_flag("fieldeq/weyl-canonical-form", kAnchorFieldEq, [&](std::string& detail) {
    auto h = [](int t) { return HalfInt::from_twice(t); };
    SpinSumJob job = make_job(ab_rep(h(1), h(0)), ab_rep(h(0), h(1)), h(1), m);
    FieldEquationReport rep = verify_field_equation(job, cfg.samples, cfg.seed);
    detail = rep.canonical_form;
    return rep.canonical_form == "m φ = i σ^μ ∂_μ χ";
  });
  ck.run_flag("fieldeq/weyl-conjugate-form", kAnchorFieldEq, [&](std::string& detail) {
    auto h = [](int t) { return HalfInt::from_twice(t); };
    SpinSumJob job = make_job(ab_rep(h(0), h(1)), ab_rep(h(1), h(0)), h(1), m);
    FieldEquationReport rep = verify_field_equation(job, cfg.samples, cfg.seed);
    detail = rep.canonical_form;
    return rep.canonical_form == "m χ = i σ̄^μ ∂_μ φ";
  });
  ck.run_flag("fieldeq/weyl-self-trivial", kAnchorFieldEq, [&](std::string& detail) {
    auto h = [](int t) { return HalfInt::from_twice(t); };
    SpinSumJob job = make_job(ab_rep(h(1), h(0)), ab_rep(h(1), h(0)), h(1), m);
    FieldEquationReport rep = verify_field_equation(job, cfg.samples, cfg.seed);
    detail = rep.canonical_form + "; " + rep.degree_summary;
    return rep.canonical_form == "psi = psi" && rep.op.max_degree() == 0;
  });

  ProcaReport proca;
  ck.run("fieldeq/proca/pi0", kAnchorFieldEq, 1e-10, [&](std::string&) {
    proca = proca_report(m, cfg.samples, cfg.seed);
    return proca.pi0_residual;
  });
  ck.run("fieldeq/proca/transversality", kAnchorFieldEq, 1e-9,
         [&](std::string&) { return proca.transversality_residual; });
  ck.run("fieldeq/proca/field-equation", kAnchorFieldEq, 1e-8, [&](std::string& detail) {
    detail = proca.rendering;
    return std::max(proca.field_equation.u_residual, proca.field_equation.v_residual);
  });
}

// ------------------------------------------------------------- statistics

void statistics_suite(Checker& ck, const RunConfig&) {
  auto reps = standard_rep_set();

  for (const auto& rep : reps)
    for (HalfInt j : admissible_j(rep)) {
      std::string base = "statistics/" + rep.name + "/j=" + j.str();
      ck.run_flag(base, kAnchorStatistics, [&](std::string& detail) {
        StatisticsReport sr = statistics_for(rep.label->first, rep.label->second, j);
        detail = sr.statistics + ", required_sign " + std::to_string(sr.required_sign) + ", " +
                 sr.kappa_lambda_constraint;
        bool fermi_expected = phase_two(j) == -1;
        bool sign_solves = sr.required_sign * phase_two(rep.label->first + rep.label->second) == 1;
        return (sr.statistics == (fermi_expected ? "Fermi" : "Bose")) && sign_solves;
      });
    }

  // The worked examples: scalar and vector are Bose, the Weyl pair is Fermi.
  ck.run_flag("statistics/examples", kAnchorStatistics, [&](std::string& detail) {
    auto h = [](int t) { return HalfInt::from_twice(t); };
    bool ok = statistics_for(h(0), h(0), h(0)).statistics == "Bose" &&
              statistics_for(h(1), h(0), h(1)).statistics == "Fermi" &&
              statistics_for(h(0), h(1), h(1)).statistics == "Fermi" &&
              statistics_for(h(1), h(1), h(2)).statistics == "Bose";
    detail = "scalar Bose, Weyl Fermi, vector Bose";
    return ok;
  });

  for (const auto& l : reps)
    for (const auto& r : reps) {
      auto js = common_j(l, r);
      if (js.empty()) continue;
      HalfInt j = js.front();
      std::string base = "statistics/causality/" + pair_tag(l, r);
      ck.run_flag(base, kAnchorStatistics, [&](std::string& detail) {
        int good = phase_two(j);
        CausalityEval with = causality_constraint(l.label->first, l.label->second,
                                                  r.label->first, r.label->second, good);
        CausalityEval against = causality_constraint(l.label->first, l.label->second,
                                                     r.label->first, r.label->second, -good);
        detail = std::string("sign ") + (good == 1 ? "+1" : "-1") + ": P coefficient " +
                 std::to_string(with.p_coefficient) + ", opposite " +
                 std::to_string(against.p_coefficient);
        return with.holds && with.ratio_consistent && !against.holds &&
               against.p_coefficient != 0;
      });
    }
}

}  // namespace

std::vector<FieldRep> standard_rep_set() {
  auto h = [](int t) { return HalfInt::from_twice(t); };
  std::vector<std::pair<HalfInt, HalfInt>> labels{{h(0), h(0)}, {h(1), h(0)}, {h(0), h(1)},
                                                  {h(1), h(1)}, {h(2), h(0)}, {h(0), h(2)},
                                                  {h(2), h(1)}, {h(3), h(0)}};
  std::vector<FieldRep> reps;
  reps.reserve(labels.size());
  for (const auto& [a, b] : labels) reps.push_back(ab_rep(a, b));
  return reps;
}

std::vector<HalfInt> admissible_j(const FieldRep& rep) {
  if (!rep.label) throw std::invalid_argument("admissible_j: representation has no (A,B) label");
  std::vector<HalfInt> out;
  HalfInt lo = half_abs(rep.label->first - rep.label->second);
  HalfInt hi = rep.label->first + rep.label->second;
  for (HalfInt j = lo; j <= hi; j = j + HalfInt::from_int(1)) out.push_back(j);
  return out;
}

std::vector<HalfInt> common_j(const FieldRep& left, const FieldRep& right) {
  std::vector<HalfInt> out;
  auto lj = admissible_j(left);
  auto rj = admissible_j(right);
  for (HalfInt j : lj)
    for (HalfInt k : rj)
      if (j == k) out.push_back(j);
  return out;
}

VerificationReport run_verification(const std::string& suite, const RunConfig& config) {
  if (config.samples < 10) throw std::invalid_argument("run_verification: samples must be >= 10");
  VerificationReport report;
  report.suite = suite;
  report.config = config;

  Checker ck(config);
  bool any = false;
  if (suite == "all" || suite == "gamma") gamma_suite(ck, config), any = true;
  if (suite == "all" || suite == "spinsum") spinsum_suite(ck, config), any = true;
  if (suite == "all" || suite == "fieldeq") fieldeq_suite(ck, config), any = true;
  if (suite == "all" || suite == "statistics") statistics_suite(ck, config), any = true;
  if (!any) throw std::invalid_argument("run_verification: unknown suite '" + suite + "'");

  report.checks = ck.take();
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
  for (const auto& c : report.checks) report.all_passed = report.all_passed && c.passed;
  return report;
}

Json report_to_json(const VerificationReport& report) {
  Json cfg{{"seed", report.config.seed},
           {"samples", report.config.samples},
           {"tol", Json{{"abs", report.config.tol.abs}, {"rel", report.config.tol.rel}}},
           {"cache_dir", report.config.cache_dir},
           {"format", report.config.format},
           {"timings", report.config.timings},
           {"inject_wrong_metric", report.config.inject_wrong_metric}};
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json rec{{"name", c.name},
             {"anchor", c.anchor},
             {"passed", c.passed},
             {"residual", c.residual},
             {"tolerance", c.tolerance},
             {"detail", c.detail}};
    if (report.config.timings) rec["runtime_ms"] = c.runtime_ms;
    checks.push_back(std::move(rec));
  }
  return Json{{"version", report.version},
              {"suite", report.suite},
              {"config", std::move(cfg)},
              {"all_passed", report.all_passed},
              {"checks", std::move(checks)}};
}

std::string report_to_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "abrep " << report.version << " verification suite '" << report.suite << "'\n";
  int passed = 0;
  for (const auto& c : report.checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  residual " << c.residual << " (tol "
       << c.tolerance << ")";
    if (!c.detail.empty()) os << "  -- " << c.detail;
    if (report.config.timings) os << "  [" << c.runtime_ms << " ms]";
    os << "\n";
    if (c.passed) ++passed;
  }
  os << passed << "/" << report.checks.size() << " checks passed\n";
  return os.str();
}

std::string tensor_cache_key(const FieldRep& left, const FieldRep& right, TwistKind twist,
                             HalfInt k, const std::string& convention) {
  auto clean = [](std::string s) {
    for (auto& ch : s)
      if (ch == '/') ch = ':';
    return s;
  };
  return "T__" + clean(left.name) + "__" + clean(right.name) + "__" + twist_name(twist) +
         "__K" + std::to_string(k.twice) + "__" + convention;
}

bool tensor_cache_load(const std::string& dir, const std::string& key, SymTensorMatrix& out) {
  std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  std::ifstream in(path);
  if (!in) return false;
  try {
    Json j = Json::parse(in);
    out = sym_tensor_from_json(j);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void tensor_cache_store(const std::string& dir, const std::string& key,
                        const SymTensorMatrix& tensor) {
  std::filesystem::create_directories(dir);
  std::filesystem::path path = std::filesystem::path(dir) / (key + ".json");
  std::ofstream out(path);
  out << to_json(tensor).dump();
}

SymTensorMatrix build_T_cached(const FieldRep& left, const FieldRep& right, TwistKind twist,
                               HalfInt k, const CMatrix& seed, const std::string& cache_dir,
                               const std::string& convention) {
  if (cache_dir.empty()) return build_T(left, right, twist, k, seed);
  std::string key = tensor_cache_key(left, right, twist, k, convention);
  SymTensorMatrix cached;
  if (tensor_cache_load(cache_dir, key, cached) && cached.dim_left == left.dim &&
      cached.dim_right == right.dim && cached.rank == k.twice)
    return cached;
  SymTensorMatrix fresh = build_T(left, right, twist, k, seed);
  tensor_cache_store(cache_dir, key, fresh);
  return fresh;
}

}  // namespace abrep
