#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace diagcorr {

/// Largest ground-set size accepted by enumeration by default. (15)!! = 2,027,025
/// partitions at k = 16.
inline constexpr int kDefaultMaxPartitionSize = 16;

/// A block {first, second} of a pair partition, 1-based, first < second.
struct Block {
  int first = 0;
  int second = 0;

  friend auto operator<=>(const Block&, const Block&) = default;
};

/// Perfect pairing of {1, ..., k} in canonical form: each block stored with
/// first < second and blocks sorted by their smaller element, so structural
/// equality is partition equality.
class PairPartition {
 public:
  /// Empty partition (k = 0); only useful as a placeholder.
  PairPartition() = default;

  /// Validates and canonicalizes. Throws std::invalid_argument if the blocks do
  /// not pair up {1, ..., k} exactly.
  static PairPartition from_blocks(std::vector<Block> blocks);

  /// Parses the canonical text form "1-3,2-4" (block order and orientation are
  /// normalized on input).
  static PairPartition parse(std::string_view text);

  int size() const noexcept { return k_; }
  std::span<const Block> blocks() const noexcept { return blocks_; }

  /// Element paired with i (1-based).
  int partner(int i) const { return partner_.at(static_cast<std::size_t>(i)); }

  /// "1-3,2-4".
  std::string to_string() const;

  friend bool operator==(const PairPartition& a, const PairPartition& b) noexcept {
    return a.blocks_ == b.blocks_;
  }
  friend auto operator<=>(const PairPartition& a, const PairPartition& b) noexcept {
    if (auto c = a.k_ <=> b.k_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  PairPartition(int k, std::vector<Block> blocks);

  int k_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> partner_;  // index 0 unused
};

struct PartitionClass {
  bool crossing = false;
  int height = 0;
};

/// All (k-1)!! pair partitions of {1, ..., k}, lexicographic by block list.
/// Throws std::invalid_argument for odd, non-positive, or over-cap k.
std::vector<PairPartition> enumerate_pair_partitions(int k, int max_k = kDefaultMaxPartitionSize);

/// True iff two blocks interleave: i < j < l < m with i~l and j~m.
bool is_crossing(const PairPartition& p);

/// Number of blocks {i, j} with j = i + 1 or whose open window {i+1, ..., j-1}
/// is paired entirely within itself.
int height(const PairPartition& p);

PartitionClass classify(const PairPartition& p);

std::uint64_t count_noncrossing(int k, int max_k = kDefaultMaxPartitionSize);

/// (k-1)!! for even k >= 2.
std::uint64_t pair_partition_count(int k);

/// Image under i -> k + 1 - i.
PairPartition reflect(const PairPartition& p);

/// Throws std::invalid_argument unless k is even, positive and at most max_k.
void require_even_size(int k, int max_k = kDefaultMaxPartitionSize);

}  // namespace diagcorr
