// Command-line front end: gamma tensors, spin sums, and the verification
// suite, with JSON output and an on-disk tensor cache.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "abrep/verify.hpp"

namespace {

using namespace abrep;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::string default_cache_dir() {
  if (const char* env = std::getenv("ABREP_CACHE_DIR")) return env;
  return ".abrep-cache";
}

void emit(const RunConfig& cfg, const std::string& payload) {
  if (cfg.output.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw std::runtime_error("cannot open output file: " + cfg.output);
  out << payload << "\n";
}

FieldRep rep_from_labels(const std::string& a, const std::string& b) {
  return ab_rep(parse_half_int(a), parse_half_int(b));
}

TwistKind twist_from_name(const std::string& name) {
  if (name == "hermitian") return TwistKind::Hermitian;
  if (name == "inverse") return TwistKind::Inverse;
  throw CLI::ValidationError("--twist", "must be 'hermitian' or 'inverse'");
}

int run_gamma(const RunConfig& cfg, const std::string& a, const std::string& b,
              const std::string& c, const std::string& d, const std::string& twist_str,
              const std::optional<std::string>& k_str) {
  FieldRep left = rep_from_labels(a, b);
  FieldRep right = rep_from_labels(c, d);
  TwistKind twist = twist_from_name(twist_str);

  auto range = predicted_k_range(left.label->first, left.label->second, right.label->first,
                                 right.label->second, twist);
  std::optional<HalfInt> requested;
  if (k_str) {
    requested = parse_half_int(*k_str);
    bool in_range = false;
    for (HalfInt k : range) in_range = in_range || k == *requested;
    if (!in_range) {
      std::cerr << "error: K=" << requested->str() << " is outside the admitted range\n";
      return kExitUsage;
    }
  }

  auto seeds = invariant_seeds(left, right, twist);
  Json tensors = Json::array();
  for (const auto& s : seeds) {
    if (requested && !(s.k == *requested)) continue;
    SymTensorMatrix t = build_T_cached(left, right, twist, s.k, s.seed, cfg.cache_dir);
    Json entry{{"k", to_json(s.k)}, {"tensor", to_json(t)}};
    tensors.push_back(std::move(entry));
  }
  Json out{{"command", "gamma"},
           {"left", to_json(left)},
           {"right", to_json(right)},
           {"twist", twist_str},
           {"convention", "seed-norm-v1"},
           {"tensors", std::move(tensors)}};
  emit(cfg, cfg.format == "json" ? out.dump(2) : out.dump(2));
  return kExitOk;
}

int run_spinsum(const RunConfig& cfg, const std::string& a, const std::string& b,
                const std::string& c, const std::string& d, const std::string& j_str, double m,
                const std::optional<std::vector<double>>& momentum, bool twisted) {
  FieldRep left = rep_from_labels(a, b);
  FieldRep right = rep_from_labels(c, d);
  HalfInt j = parse_half_int(j_str);
  SpinSumJob job = make_job(left, right, j, m);
  TwistKind twist = twisted ? TwistKind::Inverse : TwistKind::Hermitian;

  FourVector p = FourVector::rest(m);
  if (momentum) {
    if (momentum->size() != 3) throw CLI::ValidationError("--p", "expects px,py,pz");
    p = FourVector::on_shell((*momentum)[0], (*momentum)[1], (*momentum)[2], m);
  }

  CMatrix value = twisted ? twisted_spin_sum(job, p) : spin_sum(job, p);
  auto seeds = invariant_seeds(left, right, twist);
  XiTable xi = xi_extract(job, twist, seeds);
  MatrixPolynomial poly = spin_sum_polynomial(job, twist);

  HalfInt partner = twisted ? right.label->first : right.label->second;
  int parity_sign = phase_two(left.label->first + partner);

  Json out{{"command", "spinsum"},
           {"left", to_json(left)},
           {"right", to_json(right)},
           {"j", to_json(j)},
           {"m", m},
           {"twist", twist_name(twist)},
           {"momentum", to_json(p)},
           {"value", to_json(value)},
           {"xi", to_json(xi)},
           {"polynomial", to_json(poly)},
           {"parity", Json{{"sign", parity_sign}, {"defect", poly_parity_defect(poly, parity_sign)}}}};
  emit(cfg, out.dump(2));
  return kExitOk;
}

int run_verify(const RunConfig& cfg, const std::string& suite) {
  VerificationReport report = run_verification(suite, cfg);
  emit(cfg, cfg.format == "text" ? report_to_text(report) : report_to_json(report).dump(2));
  return report.all_passed ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abrep: Lorentz representation toolkit for massive fields"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();
  app.add_option("--seed", cfg.seed, "PRNG seed for sampled checks");
  app.add_option("--samples", cfg.samples, "on-shell sample count (>= 10)");
  app.add_option("--tol-abs", cfg.tol.abs, "absolute tolerance");
  app.add_option("--tol-rel", cfg.tol.rel, "relative tolerance");
  app.add_option("--cache-dir", cfg.cache_dir, "tensor cache directory ('' disables)");
  app.add_option("--output,-o", cfg.output, "write output to a file instead of stdout");
  app.add_option("--format", cfg.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timings", cfg.timings, "include per-check runtimes (breaks byte-stability)");
  app.add_flag("--inject-wrong-metric", cfg.inject_wrong_metric,
               "testing hook: skips index lowering in the covariance check")
      ->group("");  // hidden

  std::string a = "0", b = "0", c = "0", d = "0", j_str = "0", twist_str = "hermitian";
  std::string k_str, suite = "all";
  double mass = 1.0;
  std::vector<double> momentum;
  bool twisted = false;

  CLI::App* gamma = app.add_subcommand("gamma", "build generalized gamma tensors");
  gamma->add_option("--A", a)->required();
  gamma->add_option("--B", b)->required();
  gamma->add_option("--C", c)->required();
  gamma->add_option("--D", d)->required();
  gamma->add_option("--twist", twist_str)->check(CLI::IsMember({"hermitian", "inverse"}));
  gamma->add_option("--K", k_str, "restrict to one K (half-integer)");

  CLI::App* spinsum = app.add_subcommand("spinsum", "evaluate spin sums and their polynomials");
  spinsum->add_option("--A", a)->required();
  spinsum->add_option("--B", b)->required();
  spinsum->add_option("--C", c)->required();
  spinsum->add_option("--D", d)->required();
  spinsum->add_option("--j", j_str)->required();
  spinsum->add_option("--m", mass);
  spinsum->add_option("--p", momentum, "spatial momentum px,py,pz")->delimiter(',');
  spinsum->add_flag("--twisted", twisted, "use the inverse-twist spin sum");

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"all", "gamma", "spinsum", "fieldeq", "statistics"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gamma->parsed())
      return run_gamma(cfg, a, b, c, d, twist_str,
                       k_str.empty() ? std::nullopt : std::optional<std::string>(k_str));
    if (spinsum->parsed())
      return run_spinsum(cfg, a, b, c, d, j_str, mass,
                         momentum.empty() ? std::nullopt
                                          : std::optional<std::vector<double>>(momentum),
                         twisted);
    if (verify->parsed()) return run_verify(cfg, suite);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
