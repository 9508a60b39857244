#include "diagcorr/combinatorial_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "diagcorr/parallel.hpp"

namespace diagcorr {

namespace {

std::uint64_t checked_power(int n, int k) {
  if (n < 1) throw std::invalid_argument("oracle: n must be positive");
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<std::uint64_t>(n);
    if (total > kMaxOracleWalks) {
      throw std::invalid_argument("oracle: n^k = " + std::to_string(n) + "^" + std::to_string(k) +
                                  " exceeds the cost guard of " + std::to_string(kMaxOracleWalks) + " walks");
    }
  }
  return total;
}

// Partner array (0-based, one 4-bit digit per position) as a lookup key.
std::uint64_t partner_code(const int* partner, int k) {
  std::uint64_t code = 0;
  for (int i = 0; i < k; ++i) code |= static_cast<std::uint64_t>(partner[i]) << (4 * i);
  return code;
}

struct Catalog {
  std::vector<PairPartition> partitions;
  std::vector<std::vector<std::pair<int, int>>> blocks;  // 0-based
  std::vector<int> heights;
  std::unordered_map<std::uint64_t, int> index;

  explicit Catalog(int k) : partitions(enumerate_pair_partitions(k)) {
    std::vector<int> partner(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < partitions.size(); ++idx) {
      const auto& p = partitions[idx];
      std::vector<std::pair<int, int>> bs;
      for (const Block& b : p.blocks()) {
        bs.emplace_back(b.first - 1, b.second - 1);
        partner[static_cast<std::size_t>(b.first - 1)] = b.second - 1;
        partner[static_cast<std::size_t>(b.second - 1)] = b.first - 1;
      }
      blocks.push_back(std::move(bs));
      heights.push_back(height(p));
      index.emplace(partner_code(partner.data(), k), static_cast<int>(idx));
    }
  }
};

struct Tally {
  std::uint64_t sn = 0;
  std::uint64_t sn_star = 0;
  std::vector<std::uint64_t> m_histogram;
  std::vector<std::uint64_t> block_same_cell;
  std::uint64_t all_blocks_same_cell = 0;
};

// Per-walk classification shared by the counting passes. Returns the catalog
// index of the induced pair partition, or -1 if the walk does not induce one.
struct WalkView {
  int partition = -1;
  bool in_star = false;
  int m = 0;
};

class WalkClassifier {
 public:
  WalkClassifier(const Catalog& catalog, int k)
      : catalog_(catalog), k_(k), diff_(static_cast<std::size_t>(k)), partner_(static_cast<std::size_t>(k)) {}

  WalkView classify(const int* walk, std::vector<char>* same_cell) {
    WalkView view;
    for (int i = 0; i < k_; ++i) diff_[static_cast<std::size_t>(i)] = walk[(i + 1) % k_] - walk[i];
    for (int i = 0; i < k_; ++i) {
      int matches = 0;
      int match = -1;
      const int a = std::abs(diff_[static_cast<std::size_t>(i)]);
      for (int j = 0; j < k_; ++j) {
        if (j != i && std::abs(diff_[static_cast<std::size_t>(j)]) == a) {
          ++matches;
          match = j;
        }
      }
      if (matches != 1) return view;
      partner_[static_cast<std::size_t>(i)] = match;
    }
    const auto it = catalog_.index.find(partner_code(partner_.data(), k_));
    view.partition = it->second;

    const auto& blocks = catalog_.blocks[static_cast<std::size_t>(view.partition)];
    view.in_star = true;
    for (const auto& [i, j] : blocks) {
      if (diff_[static_cast<std::size_t>(i)] != -diff_[static_cast<std::size_t>(j)]) {
        view.in_star = false;
        break;
      }
    }
    if (!view.in_star) return view;

    // Cells can only coincide inside a block: equal cells have equal |p - q|.
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto [i, j] = blocks[b];
      const int pi = walk[i], qi = walk[(i + 1) % k_];
      const int pj = walk[j], qj = walk[(j + 1) % k_];
      const bool same = (pi == pj && qi == qj) || (pi == qj && qi == pj);
      if (same_cell) (*same_cell)[b] = same ? 1 : 0;
      view.m += same ? 1 : 0;
    }
    return view;
  }

 private:
  const Catalog& catalog_;
  int k_;
  std::vector<int> diff_;
  std::vector<int> partner_;
};

// Visits every closed walk with p_1 in [first_begin, first_end), vertices 0-based.
void for_each_walk(int n, int k, int first_begin, int first_end, const std::function<void(const int*)>& visit) {
  std::vector<int> walk(static_cast<std::size_t>(k), 0);
  for (int first = first_begin; first < first_end; ++first) {
    walk[0] = first;
    std::fill(walk.begin() + 1, walk.end(), 0);
    while (true) {
      visit(walk.data());
      int pos = k - 1;
      while (pos >= 1 && walk[static_cast<std::size_t>(pos)] == n - 1) {
        walk[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 1) break;
      ++walk[static_cast<std::size_t>(pos)];
    }
  }
}

void require_even_oracle_k(int k) {
  if (k <= 0 || k % 2 != 0) throw std::invalid_argument("oracle: k must be even and positive");
}

}  // namespace

const PartitionCounts& OracleCounts::at(const PairPartition& p) const {
  for (const auto& pc : partitions) {
    if (pc.partition == p) return pc;
  }
  throw std::invalid_argument("oracle: partition " + p.to_string() + " not present for k = " + std::to_string(k));
}

double OracleCounts::sn_star_ratio(const PairPartition& p) const {
  return static_cast<double>(at(p).sn_star) / std::pow(static_cast<double>(n), k / 2 + 1);
}

double OracleCounts::excess_ratio(const PairPartition& p) const {
  const auto& pc = at(p);
  return static_cast<double>(pc.sn - pc.sn_star) / std::pow(static_cast<double>(n), k / 2 + 1);
}

OracleCounts classify_tuples(int n, int k) {
  require_even_oracle_k(k);
  const std::uint64_t total = checked_power(n, k);
  const Catalog catalog(k);
  const std::size_t np = catalog.partitions.size();
  const auto half = static_cast<std::size_t>(k / 2);

  const unsigned workers = worker_count();
  std::vector<std::vector<Tally>> tallies(workers);
  std::vector<std::uint64_t> other(workers, 0);
  for (auto& t : tallies) {
    t.resize(np);
    for (auto& tally : t) {
      tally.m_histogram.assign(half + 1, 0);
      tally.block_same_cell.assign(half, 0);
    }
  }

  parallel_chunks(static_cast<std::size_t>(n), [&](unsigned worker, std::size_t begin, std::size_t end) {
    WalkClassifier classifier(catalog, k);
    std::vector<char> same_cell(half, 0);
    auto& local = tallies[worker];
    std::uint64_t local_other = 0;
    for_each_walk(n, k, static_cast<int>(begin), static_cast<int>(end), [&](const int* walk) {
      const WalkView view = classifier.classify(walk, &same_cell);
      if (view.partition < 0) {
        ++local_other;
        return;
      }
      Tally& t = local[static_cast<std::size_t>(view.partition)];
      ++t.sn;
      if (!view.in_star) return;
      ++t.sn_star;
      ++t.m_histogram[static_cast<std::size_t>(view.m)];
      for (std::size_t b = 0; b < half; ++b) t.block_same_cell[b] += static_cast<std::uint64_t>(same_cell[b]);
      if (static_cast<std::size_t>(view.m) == half) ++t.all_blocks_same_cell;
    });
    other[worker] += local_other;
  });

  OracleCounts out;
  out.n = n;
  out.k = k;
  out.total_walks = total;
  for (std::size_t idx = 0; idx < np; ++idx) {
    PartitionCounts pc{catalog.partitions[idx], catalog.heights[idx], is_crossing(catalog.partitions[idx]),
                       0, 0, std::vector<std::uint64_t>(half + 1, 0), std::vector<std::uint64_t>(half, 0), 0};
    for (const auto& t : tallies) {
      const Tally& tally = t[idx];
      pc.sn += tally.sn;
      pc.sn_star += tally.sn_star;
      for (std::size_t m = 0; m <= half; ++m) pc.m_histogram[m] += tally.m_histogram[m];
      for (std::size_t b = 0; b < half; ++b) pc.block_same_cell[b] += tally.block_same_cell[b];
      pc.all_blocks_same_cell += tally.all_blocks_same_cell;
    }
    out.pair_partition_walks += pc.sn;
    out.partitions.push_back(std::move(pc));
  }
  for (auto o : other) out.other_walks += o;
  return out;
}

HeightLemmaReport check_height_lemma(int n, int k) {
  const OracleCounts counts = classify_tuples(n, k);
  HeightLemmaReport report;
  report.n = n;
  report.k = k;
  for (const auto& pc : counts.partitions) {
    report.tuples_checked += pc.sn_star;
    for (int m = 0; m < pc.height; ++m) report.violations += pc.m_histogram[static_cast<std::size_t>(m)];
  }
  if (report.violations == 0) return report;

  // Second pass to recover a concrete counterexample.
  const Catalog catalog(k);
  WalkClassifier classifier(catalog, k);
  bool found = false;
  for_each_walk(n, k, 0, n, [&](const int* walk) {
    if (found) return;
    const WalkView view = classifier.classify(walk, nullptr);
    if (view.partition < 0 || !view.in_star) return;
    if (view.m < catalog.heights[static_cast<std::size_t>(view.partition)]) {
      found = true;
      report.counterexample_partition = catalog.partitions[static_cast<std::size_t>(view.partition)];
      for (int i = 0; i < k; ++i) report.counterexample_walk.push_back(walk[i] + 1);
    }
  });
  return report;
}

DecayReport evaluate_decay(const PairPartition& p, std::span<const int> sizes, std::vector<double> ratios) {
  if (sizes.size() != ratios.size() || sizes.size() < 2) {
    throw std::invalid_argument("decay check needs at least two grid points with one ratio each");
  }
  DecayReport report;
  report.partition = p;
  report.sizes.assign(sizes.begin(), sizes.end());
  report.ratios = std::move(ratios);
  report.identically_zero =
      std::all_of(report.ratios.begin(), report.ratios.end(), [](double r) { return r == 0.0; });
  report.strictly_decreasing = true;
  for (std::size_t i = 1; i < report.ratios.size(); ++i) {
    report.strictly_decreasing = report.strictly_decreasing && report.ratios[i] < report.ratios[i - 1];
  }
  report.halved = report.ratios.back() < 0.5 * report.ratios.front();
  report.pass = report.identically_zero || (report.strictly_decreasing && report.halved);
  return report;
}

bool block_is_crossed(const PairPartition& p, const Block& block) {
  for (int inner = block.first + 1; inner < block.second; ++inner) {
    const int other = p.partner(inner);
    if (other < block.first || other > block.second) return true;
  }
  return false;
}

DecayReport check_excess_crossing_decay(std::span<const int> sizes, const PairPartition& p, const Block& block) {
  const auto blocks = p.blocks();
  const auto it = std::find(blocks.begin(), blocks.end(), block);
  if (it == blocks.end()) {
    throw std::invalid_argument("block " + std::to_string(block.first) + "-" + std::to_string(block.second) +
                                " is not a block of " + p.to_string());
  }
  if (!block_is_crossed(p, block)) {
    throw std::invalid_argument("block " + std::to_string(block.first) + "-" + std::to_string(block.second) +
                                " of " + p.to_string() + " is not crossed by another block");
  }
  const auto b = static_cast<std::size_t>(it - blocks.begin());
  std::vector<double> ratios;
  for (int n : sizes) {
    const OracleCounts counts = classify_tuples(n, p.size());
    ratios.push_back(static_cast<double>(counts.at(p).block_same_cell[b]) /
                     std::pow(static_cast<double>(n), p.size() / 2 + 1));
  }
  return evaluate_decay(p, sizes, std::move(ratios));
}

std::vector<DecayReport> check_sn_minus_snstar_decay(std::span<const int> sizes, int k) {
  std::vector<OracleCounts> per_size;
  for (int n : sizes) per_size.push_back(classify_tuples(n, k));
  std::vector<DecayReport> reports;
  for (const auto& p : enumerate_pair_partitions(k)) {
    std::vector<double> ratios;
    for (const auto& counts : per_size) ratios.push_back(counts.excess_ratio(p));
    reports.push_back(evaluate_decay(p, sizes, std::move(ratios)));
  }
  return reports;
}

double extrapolated_sn_star_ratio(const OracleCounts& at_n, const OracleCounts& at_2n, const PairPartition& p) {
  if (at_2n.n != 2 * at_n.n || at_n.k != at_2n.k) {
    throw std::invalid_argument("extrapolation needs counts at n and 2n for the same k");
  }
  return 2.0 * at_2n.sn_star_ratio(p) - at_n.sn_star_ratio(p);
}

}  // namespace diagcorr
