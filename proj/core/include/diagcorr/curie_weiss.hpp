#pragma once

#include <cstdint>
#include <vector>

#include "diagcorr/rng.hpp"

namespace diagcorr {

struct CurieWeissParams {
  double beta = 1.0;  // inverse temperature, > 0
  int n = 1;          // number of spins, >= 1

  /// Throws std::invalid_argument on beta <= 0, non-finite beta, or n < 1.
  void validate() const;
};

inline constexpr int kMaxCurieWeissSpins = 100000;

// Law of the number j of +1 spins (total spin s = 2j - n) under the Gibbs
// weight exp(beta * s^2 / (2n)). Level j has probability proportional to
// binomial(n, j) * exp(beta * (2j - n)^2 / (2n)); weights are formed in the log
// domain with the maximum subtracted before exponentiating.
class MagnetizationLaw {
 public:
  explicit MagnetizationLaw(const CurieWeissParams& params);

  int n() const noexcept { return n_; }
  double beta() const noexcept { return beta_; }
  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  static int total_spin(int n, int j) noexcept { return 2 * j - n; }

  /// E[m_n^2] with m_n = s / n.
  double mean_square_magnetization() const;

  /// Inverse-CDF lookup of a level for u in [0, 1).
  int level_for(double u) const;

 private:
  int n_;
  double beta_;
  std::vector<double> probabilities_;
  std::vector<double> cdf_;
};

MagnetizationLaw magnetization_levels(const CurieWeissParams& params);

/// Cov(x(1), x(2)) = n/(n-1) E[m_n^2] - 1/(n-1). Requires n >= 2.
double exact_cn(const CurieWeissParams& params);
double exact_cn(const MagnetizationLaw& law);

/// Positive root of m = tanh(beta * m) for beta > 1, 0 otherwise.
double spontaneous_magnetization(double beta);

/// lim c_n: 0 for beta <= 1, m(beta)^2 above.
double limiting_c(double beta);

/// Exact draw: a level j from the law, then a uniformly random set of j
/// coordinates set to +1.
std::vector<int> sample_spins(const MagnetizationLaw& law, Rng& rng);
std::vector<int> sample_spins(const CurieWeissParams& params, std::uint64_t seed);

}  // namespace diagcorr
