#include "diagcorr/curie_weiss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace diagcorr {

void CurieWeissParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("Curie-Weiss beta must be positive and finite");
  }
  if (n < 1) throw std::invalid_argument("Curie-Weiss n must be at least 1");
  if (n > kMaxCurieWeissSpins) {
    throw std::invalid_argument("Curie-Weiss n exceeds " + std::to_string(kMaxCurieWeissSpins));
  }
}

MagnetizationLaw::MagnetizationLaw(const CurieWeissParams& params) : n_(params.n), beta_(params.beta) {
  params.validate();
  const auto levels = static_cast<std::size_t>(n_) + 1;
  std::vector<double> log_weight(levels);
  const double log_n_factorial = std::lgamma(n_ + 1.0);
  for (int j = 0; j <= n_; ++j) {
    const double s = 2.0 * j - n_;
    log_weight[static_cast<std::size_t>(j)] =
        log_n_factorial - std::lgamma(j + 1.0) - std::lgamma(n_ - j + 1.0) + beta_ * s * s / (2.0 * n_);
  }
  const double top = *std::max_element(log_weight.begin(), log_weight.end());
  probabilities_.resize(levels);
  for (std::size_t j = 0; j < levels; ++j) probabilities_[j] = std::exp(log_weight[j] - top);

  // Neumaier summation for the normalizer.
  double sum = 0.0;
  double carry = 0.0;
  for (double w : probabilities_) {
    const double t = sum + w;
    carry += std::abs(sum) >= std::abs(w) ? (sum - t) + w : (w - t) + sum;
    sum = t;
  }
  const double total = sum + carry;
  for (double& w : probabilities_) w /= total;

  cdf_.resize(levels);
  std::partial_sum(probabilities_.begin(), probabilities_.end(), cdf_.begin());
  cdf_.back() = 1.0;
}

double MagnetizationLaw::mean_square_magnetization() const {
  double acc = 0.0;
  for (int j = 0; j <= n_; ++j) {
    const double m = static_cast<double>(total_spin(n_, j)) / n_;
    acc += probabilities_[static_cast<std::size_t>(j)] * m * m;
  }
  return acc;
}

int MagnetizationLaw::level_for(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) return n_;
  return static_cast<int>(it - cdf_.begin());
}

MagnetizationLaw magnetization_levels(const CurieWeissParams& params) { return MagnetizationLaw(params); }

double exact_cn(const MagnetizationLaw& law) {
  const int n = law.n();
  if (n < 2) throw std::invalid_argument("exact_cn: covariance needs two spins (n >= 2)");
  const double nd = n;
  return nd / (nd - 1.0) * law.mean_square_magnetization() - 1.0 / (nd - 1.0);
}

double exact_cn(const CurieWeissParams& params) {
  if (params.n < 2) throw std::invalid_argument("exact_cn: covariance needs two spins (n >= 2)");
  return exact_cn(MagnetizationLaw(params));
}

namespace {

double bisect_magnetization(double beta) {
  double lo = 0.0;  // tanh(beta m) - m > 0 just above 0 when beta > 1
  double hi = 1.0;  // tanh(beta) - 1 < 0
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::tanh(beta * mid) - mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double spontaneous_magnetization(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("spontaneous_magnetization: beta must be positive");
  if (beta <= 1.0) return 0.0;

  // Damped fixed-point iteration from m = 1; the map is a contraction near the
  // positive root with rate beta * (1 - m^2). Close to beta = 1 the rate
  // approaches 1 and bisection takes over.
  constexpr double damping = 0.5;
  double m = 1.0;
  for (int it = 0; it < 10000; ++it) {
    const double next = (1.0 - damping) * m + damping * std::tanh(beta * m);
    const double step = std::abs(next - m);
    m = next;
    const double rate = (1.0 - damping) + damping * beta * (1.0 - m * m);
    if (rate < 1.0 && step * rate / (1.0 - rate) < 1e-14) return m;
  }
  return bisect_magnetization(beta);
}

double limiting_c(double beta) {
  const double m = spontaneous_magnetization(beta);
  return m * m;
}

std::vector<int> sample_spins(const MagnetizationLaw& law, Rng& rng) {
  const int n = law.n();
  const int plus = law.level_for(rng.uniform());
  std::vector<int> spins(static_cast<std::size_t>(n), -1);
  // Partial Fisher-Yates over positions: the first `plus` picks become +1.
  std::vector<int> positions(static_cast<std::size_t>(n));
  std::iota(positions.begin(), positions.end(), 0);
  for (int i = 0; i < plus; ++i) {
    const auto pick = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(n - i));
    std::swap(positions[static_cast<std::size_t>(i)], positions[pick]);
    spins[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] = 1;
  }
  return spins;
}

std::vector<int> sample_spins(const CurieWeissParams& params, std::uint64_t seed) {
  Rng rng(seed);
  return sample_spins(MagnetizationLaw(params), rng);
}

}  // namespace diagcorr
