#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace diagcorr {

// Thresholds for the acceptance suite. Defaults are the release gates; `verify`
// can load overrides from a JSON file.
struct Tolerances {
  double sigma = 3.0;  // band width, in standard errors, for statistical checks
  std::uint64_t volume_samples = 1'000'000;
  std::uint64_t moment_volume_samples = 20'000;  // crossing volumes for k >= 6 at c = 0
  double k4_ratio_gap = 0.05;
  int k4_ratio_n = 40;
  double k6_ratio_gap = 0.1;
  int k6_ratio_n = 10;
  double concentration_slope = 2.5;
  double numerics = 1e-8;
  double limiting_c2 = 0.916813956124163;  // high-precision bisection of m = tanh(2m)
  double limiting_c2_tol = 1e-9;
  double exact_cn_tol = 1e-12;
  double cn_gap_at_1600 = 0.05;
};

struct EnsembleScale {
  int n = 1000;
  int realizations = 100;
  int curie_weiss_n = 500;
  int concentration_realizations = 200;
};

struct AcceptanceConfig {
  Tolerances tol;
  EnsembleScale scale;
  std::uint64_t seed = 20240601;
  std::string histogram_dir;     // empty: do not write histogram CSVs
  std::vector<int> criteria;     // empty: run all
};

struct Check {
  std::string description;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool pass() const;
  /// "PASS  [3] moment formula (12/12 checks, 0.4 s)".
  std::string summary() const;
};

inline constexpr int kAcceptanceCriteria = 9;

/// Runs the requested criteria in order, reporting each as soon as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace diagcorr
