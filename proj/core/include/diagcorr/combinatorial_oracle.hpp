#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diagcorr/partitions.hpp"

namespace diagcorr {

/// Enumeration is refused when n^k exceeds this many closed walks.
inline constexpr std::uint64_t kMaxOracleWalks = 100'000'000;

// Counts for one pair partition pi over all closed walks (p_1, ..., p_k) on
// {1, ..., n}, with steps P_i = (p_i, p_{i+1}) and p_{k+1} = p_1.
//   S_n(pi):  |p_i - q_i| = |p_j - q_j|  <=>  i ~ j
//   S_n*(pi): additionally q_i - p_i = p_j - q_j on every block
//   m:        #{i < j : {p_i, q_i} = {p_j, q_j}} (same matrix cell)
struct PartitionCounts {
  PairPartition partition;
  int height = 0;
  bool crossing = false;
  std::uint64_t sn = 0;
  std::uint64_t sn_star = 0;
  std::vector<std::uint64_t> m_histogram;  // over S_n*, index m = 0..k/2
  // Per block (same order as partition.blocks()): tuples of S_n* whose two
  // steps on that block hit the same cell (p_i = q_j, q_i = p_j).
  std::vector<std::uint64_t> block_same_cell;
  // Tuples of S_n* in which every block hits the same cell.
  std::uint64_t all_blocks_same_cell = 0;
};

struct OracleCounts {
  int n = 0;
  int k = 0;
  std::vector<PartitionCounts> partitions;  // enumeration order
  std::uint64_t total_walks = 0;            // n^k
  std::uint64_t pair_partition_walks = 0;   // sum of sn
  std::uint64_t other_walks = 0;            // induced partition is not a pairing

  const PartitionCounts& at(const PairPartition& p) const;
  /// |S_n*(pi)| / n^(k/2 + 1).
  double sn_star_ratio(const PairPartition& p) const;
  /// |S_n(pi) \ S_n*(pi)| / n^(k/2 + 1).
  double excess_ratio(const PairPartition& p) const;
};

/// Throws std::invalid_argument for odd k or when n^k exceeds kMaxOracleWalks.
OracleCounts classify_tuples(int n, int k);

struct HeightLemmaReport {
  int n = 0;
  int k = 0;
  std::uint64_t tuples_checked = 0;  // sum of |S_n*| over pair partitions
  std::uint64_t violations = 0;
  std::optional<PairPartition> counterexample_partition;
  std::vector<int> counterexample_walk;  // 1-based vertices p_1..p_k
  bool holds() const noexcept { return violations == 0; }
};

/// Exhaustive check that m >= h(pi) on every tuple of every S_n*(pi).
HeightLemmaReport check_height_lemma(int n, int k);

// Ratios over an increasing grid of n. Pass rule: strictly decreasing with the
// final value below half the first, or identically zero (the set is empty at
// every size, which satisfies any o(.) bound trivially).
struct DecayReport {
  PairPartition partition;
  std::vector<int> sizes;
  std::vector<double> ratios;
  bool identically_zero = false;
  bool strictly_decreasing = false;
  bool halved = false;  // final ratio below half the first
  bool pass = false;
};

DecayReport evaluate_decay(const PairPartition& p, std::span<const int> sizes, std::vector<double> ratios);

/// True iff some block i' ~ j' has i < i' < j with j' outside [i, j].
bool block_is_crossed(const PairPartition& p, const Block& block);

/// |S_n*(pi; i, j)| / n^(k/2 + 1) over the grid. Throws std::invalid_argument
/// if the block is not in pi or is not crossed.
DecayReport check_excess_crossing_decay(std::span<const int> sizes, const PairPartition& p, const Block& block);

/// One report per pair partition of size k.
std::vector<DecayReport> check_sn_minus_snstar_decay(std::span<const int> sizes, int k);

/// Richardson extrapolation 2 r(2n) - r(n) of |S_n*|/n^(k/2+1), assuming a 1/n
/// leading correction.
double extrapolated_sn_star_ratio(const OracleCounts& at_n, const OracleCounts& at_2n, const PairPartition& p);

}  // namespace diagcorr
