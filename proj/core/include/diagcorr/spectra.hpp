#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "diagcorr/field_sampler.hpp"

namespace diagcorr {

/// Sorted (ascending) eigenvalues of one matrix realization.
struct SpectralSample {
  int n = 0;
  std::vector<double> eigenvalues;
};

/// Throws std::invalid_argument on a non-finite entry.
SpectralSample eigenvalues_symmetric(const SymmetricMatrix& m);

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns
};
EigenDecomposition eigen_decompose(const SymmetricMatrix& m);

/// Largest ||M v - lambda v|| / ||M||_F over `count` randomly chosen eigenpairs.
double max_relative_residual(const SymmetricMatrix& m, const EigenDecomposition& eig, int count,
                             std::uint64_t seed);

/// m_k = (1/n) sum lambda^k for k = 1..max_k (index k - 1).
std::vector<double> empirical_moments(const SpectralSample& s, int max_k);

inline constexpr int kMaxTracePower = 12;
inline constexpr int kMaxTraceDimension = 500;

/// (1/n) tr(M^k) by repeated matrix products. Limited to k <= 12, n <= 500.
double trace_moment_direct(const SymmetricMatrix& m, int k);

// Equal-width histogram on [lo, hi) with separate underflow/overflow counts.
// The last bin is closed on the right.
class Histogram {
 public:
  Histogram(double lo, double hi, int bins);

  void add(double x);
  void add(std::span<const double> xs);
  void merge(const Histogram& other);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  int bins() const noexcept { return static_cast<int>(counts_.size()); }
  double bin_left(int i) const;
  double bin_right(int i) const;
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t underflow() const noexcept { return underflow_; }
  std::uint64_t overflow() const noexcept { return overflow_; }
  std::uint64_t total() const noexcept;

  /// Count / (total * width), so in-range densities integrate to the in-range mass.
  double density(int i) const;

  /// bin_left,bin_right,count,density; under/overflow appended as rows with
  /// infinite edges.
  void write_csv(std::ostream& out) const;

 private:
  double lo_;
  double hi_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

struct MomentEstimate {
  int k = 0;
  double mean = 0.0;
  double std_error = 0.0;  // across realizations
};

struct EnsembleOptions {
  int n = 100;
  int realizations = 1;
  int max_moment = kMaxTracePower;
  int bins = 100;
  double lo = -5.0;
  double hi = 5.0;
};

struct EnsembleStats {
  GeneratorSpec spec;
  EnsembleOptions options;
  std::vector<MomentEstimate> moments;  // k = 1..max_moment
  Histogram histogram{-5.0, 5.0, 100};

  const MomentEstimate& moment(int k) const { return moments.at(static_cast<std::size_t>(k - 1)); }
};

/// Realization i uses build_matrix(n, spec, i). Per-realization results are
/// combined in index order, so the output does not depend on the thread count.
EnsembleStats run_ensemble(const GeneratorSpec& spec, const EnsembleOptions& options);

struct ConcentrationReport {
  int k = 0;
  std::vector<int> sizes;
  std::vector<double> fourth_central_moments;  // of tr(X^k)
  double slope = 0.0;                          // least-squares log-log slope
  double max_slope = 2.5;
  bool pass = false;
};

/// Estimates E[(tr X^k - mean)^4] for each n from `realizations` independent
/// matrices and fits log M4 against log n.
ConcentrationReport concentration_probe(std::span<const int> sizes, const GeneratorSpec& spec, int k,
                                        int realizations, double max_slope = 2.5);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace diagcorr
