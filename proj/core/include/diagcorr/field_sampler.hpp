#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diagcorr/curie_weiss.hpp"
#include "diagcorr/rng.hpp"

namespace diagcorr {

enum class GeneratorKind { independent, equicorrelated, curie_weiss, toeplitz };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& text);

// Law of one diagonal process {a(p, p + r)}. Every kind produces mean-0,
// variance-1 entries; `parameter` is c for equicorrelated and beta for
// Curie-Weiss, and unused otherwise.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::independent;
  double parameter = 0.0;
  std::uint64_t seed = 0;

  static GeneratorSpec independent(std::uint64_t seed);
  static GeneratorSpec equicorrelated(double c, std::uint64_t seed);
  static GeneratorSpec curie_weiss(double beta, std::uint64_t seed);
  static GeneratorSpec toeplitz(std::uint64_t seed);

  /// Throws std::invalid_argument for c outside [0, 1] or beta <= 0.
  void validate() const;

  /// Limit of the same-diagonal covariance: 0, c, limiting_c(beta) or 1.
  double limiting_correlation() const;

  /// "equicorrelated(c=0.5)" and similar.
  std::string describe() const;
};

/// Seed of diagonal r of realization `realization`:
/// derive_seed(base, {realization, r}).
std::uint64_t diagonal_seed(std::uint64_t base, std::uint64_t realization, std::uint64_t offset);

// Samples diagonals of any length up to max_length. Curie-Weiss magnetization
// laws for every length are built on construction and shared read-only, so one
// sampler can serve many threads.
class DiagonalSampler {
 public:
  DiagonalSampler(const GeneratorSpec& spec, int max_length);

  const GeneratorSpec& spec() const noexcept { return spec_; }
  int max_length() const noexcept { return max_length_; }

  /// One draw of a diagonal of the given length from a private stream.
  std::vector<double> sample(int length, std::uint64_t stream_seed) const;

  /// Exact same-diagonal covariance for a diagonal of this length.
  double covariance(int length) const;

 private:
  GeneratorSpec spec_;
  int max_length_;
  std::vector<std::shared_ptr<const MagnetizationLaw>> laws_;  // index = length
};

/// Convenience wrapper: diagonal offset r of an n x n matrix (length n - r).
std::vector<double> sample_diagonal(const GeneratorSpec& spec, int length, std::uint64_t stream_seed);

// Real symmetric n x n matrix stored as its packed upper triangle (row-major),
// so symmetry holds by construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n);
  static SymmetricMatrix from_dense(const Eigen::MatrixXd& dense);

  int n() const noexcept { return n_; }
  double operator()(int p, int q) const { return data_[index(p, q)]; }
  void set(int p, int q, double value) { data_[index(p, q)] = value; }

  const std::vector<double>& packed() const noexcept { return data_; }
  Eigen::MatrixXd dense() const;
  double trace() const;
  double frobenius_squared() const;

  /// Raw little-endian doubles of the packed upper triangle, row-major.
  void write_binary(std::ostream& out) const;
  /// One row per line: p, then entries (p, p) .. (p, n-1).
  void write_csv(std::ostream& out) const;

 private:
  std::size_t index(int p, int q) const;

  int n_;
  std::vector<double> data_;
};

/// X(p, q) = a(p, q) / sqrt(n), diagonal r drawn from diagonal_seed(seed, realization, r).
SymmetricMatrix build_matrix(int n, const DiagonalSampler& sampler, std::uint64_t realization);
SymmetricMatrix build_matrix(int n, const GeneratorSpec& spec, std::uint64_t realization);

struct ConditionsReport {
  GeneratorSpec spec;
  int n = 0;
  int draws = 0;
  double z_threshold = 4.0;

  double mean = 0.0;  // pooled over the main diagonal
  double mean_se = 0.0;
  double variance = 0.0;  // E[a^2]
  double variance_se = 0.0;
  double same_diagonal_cov = 0.0;  // pairwise covariance on the main diagonal
  double same_diagonal_cov_se = 0.0;
  double expected_cov = 0.0;       // exact c_n for length n
  double cross_diagonal_cov = 0.0;  // a(p, p) * a(p, p + 1), pooled over p
  double cross_diagonal_cov_se = 0.0;

  bool mean_ok = false;
  bool variance_ok = false;
  bool covariance_ok = false;
  bool cross_ok = false;

  bool all_ok() const noexcept { return mean_ok && variance_ok && covariance_ok && cross_ok; }
};

/// Empirical moment checks over `draws` independent realizations of the main
/// diagonal (length n) and the first off-diagonal (length n - 1). Flags use
/// |estimate - target| < z_threshold * SE; the mean flag uses 4 / sqrt(draws).
ConditionsReport validate_conditions(const GeneratorSpec& spec, int n, int draws, double z_threshold = 4.0);

}  // namespace diagcorr
