#ifndef ABREP_VERIFY_HPP
#define ABREP_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "abrep/serialize.hpp"

namespace abrep {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::uint64_t seed = 42;
  int samples = 100;
  Tolerance tol{1e-8, 1e-8};
  std::string cache_dir;      // empty disables the on-disk tensor cache
  std::string output;         // empty means standard output
  std::string format = "json";
  bool timings = false;       // runtimes are opt-in so default reports are byte-stable
  bool inject_wrong_metric = false;  // negative-control hook for the covariance check
};

struct CheckRecord {
  std::string name;
  std::string anchor;  // pointer into docs/theory.md
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;  // replay inputs when the check failed
  double runtime_ms = 0.0;
};

struct VerificationReport {
  std::string version = kVersion;
  std::string suite;
  RunConfig config;
  std::vector<CheckRecord> checks;  // sorted by name
  bool all_passed = true;
};

/// The representations every suite runs over.
std::vector<FieldRep> standard_rep_set();

/// Particle spins contained in a labeled representation: |A-B| .. A+B.
std::vector<HalfInt> admissible_j(const FieldRep& rep);
std::vector<HalfInt> common_j(const FieldRep& left, const FieldRep& right);

/// suite: one of "all", "gamma", "spinsum", "fieldeq", "statistics".
VerificationReport run_verification(const std::string& suite, const RunConfig& config);

Json report_to_json(const VerificationReport& report);
std::string report_to_text(const VerificationReport& report);

// On-disk cache of fitted tensors, keyed by representations, twist, K and
// the normalization convention version.
std::string tensor_cache_key(const FieldRep& left, const FieldRep& right, TwistKind twist,
                             HalfInt k, const std::string& convention);
bool tensor_cache_load(const std::string& dir, const std::string& key, SymTensorMatrix& out);
void tensor_cache_store(const std::string& dir, const std::string& key,
                        const SymTensorMatrix& tensor);

/// Cached wrapper around build_T; falls back to a fresh fit when dir is
/// empty or the entry is missing.
SymTensorMatrix build_T_cached(const FieldRep& left, const FieldRep& right, TwistKind twist,
                               HalfInt k, const CMatrix& seed, const std::string& cache_dir,
                               const std::string& convention = "seed-norm-v1");

}  // namespace abrep

#endif
