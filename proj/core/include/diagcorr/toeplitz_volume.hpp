#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "diagcorr/partitions.hpp"

namespace diagcorr {

/// Integer affine combination of the free variables of a SolvedSystem.
struct AffineForm {
  std::vector<std::int64_t> coefficients;  // aligned with SolvedSystem::free_vars
  std::int64_t constant = 0;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

// Solution of the cycle system attached to a pair partition. Variables are
// x_0, ..., x_k; each block {i, j}, i < j, contributes
//   x_i - x_{i-1} + x_j - x_{j-1} = 0
// and is solved for x_j. Blocks are eliminated in increasing order of j, so
// every determined form refers to free variables only.
struct SolvedSystem {
  int k = 0;
  std::vector<int> free_vars;            // ascending, k/2 + 1 entries
  std::map<int, AffineForm> determined;  // keyed by variable index

  /// Full assignment x_0..x_k from values of the free variables.
  std::vector<double> assign(std::span<const double> free_values) const;
};

SolvedSystem solve_partition_system(const PairPartition& p);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;

  friend bool operator==(const VolumeEstimate&, const VolumeEstimate&) = default;
};

/// Key of the uniform counter stream used for partition `p` under `seed`.
/// Distinct partitions get distinct streams, so their estimates are independent.
std::uint64_t volume_stream_key(const PairPartition& p, std::uint64_t seed);

/// Fraction of the unit cube of free variables for which every determined
/// variable also lies in [0, 1]. Non-crossing partitions return exactly 1.
/// Sample i uses stream elements i * dims .. i * dims + dims - 1, so chunked
/// parallel evaluation reproduces the serial count. Throws std::invalid_argument
/// if samples == 0.
VolumeEstimate toeplitz_volume(const PairPartition& p, std::uint64_t samples, std::uint64_t seed);

/// Same as toeplitz_volume but always samples, even for non-crossing partitions.
/// Used to check that the analytic shortcut agrees with sampling.
VolumeEstimate toeplitz_volume_sampled(const PairPartition& p, std::uint64_t samples,
                                       std::uint64_t seed);

// Volume estimates keyed by canonical partition. Text format, one record per line:
//   <partition> <samples> <seed> <value> <std_error> <exact>
// e.g. "1-3,2-4 1000000 42 0.66659 0.00047 0". Lines starting with '#' are comments.
class VolumeCache {
 public:
  const VolumeEstimate* find(const PairPartition& p) const;
  void insert(const PairPartition& p, const VolumeEstimate& v);
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Estimates every partition of size k that is not cached yet.
  void fill(int k, std::uint64_t samples, std::uint64_t seed);

  void write(std::ostream& out) const;
  static VolumeCache read(std::istream& in);

  const std::map<PairPartition, VolumeEstimate>& entries() const noexcept { return entries_; }

 private:
  std::map<PairPartition, VolumeEstimate> entries_;
};

}  // namespace diagcorr
