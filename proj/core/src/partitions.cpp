#include "diagcorr/partitions.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <stdexcept>

namespace diagcorr {

void require_even_size(int k, int max_k) {
  if (k <= 0 || k % 2 != 0) {
    throw std::invalid_argument("k must be even and positive (got " + std::to_string(k) + ")");
  }
  if (k > max_k) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the enumeration cap " +
                                std::to_string(max_k));
  }
}

PairPartition::PairPartition(int k, std::vector<Block> blocks)
    : k_(k), blocks_(std::move(blocks)), partner_(static_cast<std::size_t>(k) + 1, 0) {
  for (const Block& b : blocks_) {
    partner_[static_cast<std::size_t>(b.first)] = b.second;
    partner_[static_cast<std::size_t>(b.second)] = b.first;
  }
}

PairPartition PairPartition::from_blocks(std::vector<Block> blocks) {
  if (blocks.empty()) throw std::invalid_argument("pair partition needs at least one block");
  const int k = static_cast<int>(blocks.size()) * 2;
  std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
  for (Block& b : blocks) {
    if (b.first > b.second) std::swap(b.first, b.second);
    if (b.first < 1 || b.second > k || b.first == b.second) {
      throw std::invalid_argument("block " + std::to_string(b.first) + "-" + std::to_string(b.second) +
                                  " is not a pair inside {1.." + std::to_string(k) + "}");
    }
    for (int e : {b.first, b.second}) {
      if (seen[static_cast<std::size_t>(e)]) {
        throw std::invalid_argument("element " + std::to_string(e) + " appears in two blocks");
      }
      seen[static_cast<std::size_t>(e)] = true;
    }
  }
  std::sort(blocks.begin(), blocks.end());
  return PairPartition(k, std::move(blocks));
}

PairPartition PairPartition::parse(std::string_view text) {
  std::vector<Block> blocks;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      throw std::invalid_argument("malformed block '" + std::string(item) + "' (expected i-j)");
    }
    Block b;
    const auto parse_int = [&](std::string_view s, int& out) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("malformed block '" + std::string(item) + "'");
      }
    };
    parse_int(item.substr(0, dash), b.first);
    parse_int(item.substr(dash + 1), b.second);
    blocks.push_back(b);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
  }
  return from_blocks(std::move(blocks));
}

std::string PairPartition::to_string() const {
  std::string out;
  for (const Block& b : blocks_) {
    if (!out.empty()) out += ',';
    out += std::to_string(b.first);
    out += '-';
    out += std::to_string(b.second);
  }
  return out;
}

namespace {

void enumerate_rec(std::vector<int>& partner, int k, std::vector<Block>& current,
                   std::vector<PairPartition>& out) {
  int smallest = 0;
  for (int i = 1; i <= k; ++i) {
    if (partner[static_cast<std::size_t>(i)] == 0) {
      smallest = i;
      break;
    }
  }
  if (smallest == 0) {
    out.push_back(PairPartition::from_blocks(current));
    return;
  }
  for (int j = smallest + 1; j <= k; ++j) {
    if (partner[static_cast<std::size_t>(j)] != 0) continue;
    partner[static_cast<std::size_t>(smallest)] = j;
    partner[static_cast<std::size_t>(j)] = smallest;
    current.push_back({smallest, j});
    enumerate_rec(partner, k, current, out);
    current.pop_back();
    partner[static_cast<std::size_t>(smallest)] = 0;
    partner[static_cast<std::size_t>(j)] = 0;
  }
}

}  // namespace

std::uint64_t pair_partition_count(int k) {
  require_even_size(k, 40);
  std::uint64_t count = 1;
  for (int odd = k - 1; odd > 1; odd -= 2) count *= static_cast<std::uint64_t>(odd);
  return count;
}

std::vector<PairPartition> enumerate_pair_partitions(int k, int max_k) {
  require_even_size(k, max_k);
  std::vector<PairPartition> out;
  out.reserve(pair_partition_count(k));
  std::vector<int> partner(static_cast<std::size_t>(k) + 1, 0);
  std::vector<Block> current;
  current.reserve(static_cast<std::size_t>(k / 2));
  enumerate_rec(partner, k, current, out);
  return out;
}

bool is_crossing(const PairPartition& p) {
  const auto blocks = p.blocks();
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < blocks.size(); ++b) {
      // blocks are sorted by first element, so blocks[a].first < blocks[b].first
      if (blocks[b].first < blocks[a].second && blocks[a].second < blocks[b].second) return true;
    }
  }
  return false;
}

int height(const PairPartition& p) {
  int h = 0;
  for (const Block& b : p.blocks()) {
    bool closed = true;
    for (int e = b.first + 1; e < b.second && closed; ++e) {
      const int q = p.partner(e);
      closed = q > b.first && q < b.second;
    }
    if (closed) {
      assert((b.second - b.first - 1) % 2 == 0);
      ++h;
    }
  }
  return h;
}

PartitionClass classify(const PairPartition& p) { return {is_crossing(p), height(p)}; }

std::uint64_t count_noncrossing(int k, int max_k) {
  std::uint64_t count = 0;
  for (const auto& p : enumerate_pair_partitions(k, max_k)) {
    if (!is_crossing(p)) ++count;
  }
  return count;
}

PairPartition reflect(const PairPartition& p) {
  const int k = p.size();
  std::vector<Block> blocks;
  blocks.reserve(p.blocks().size());
  for (const Block& b : p.blocks()) blocks.push_back({k + 1 - b.second, k + 1 - b.first});
  return PairPartition::from_blocks(std::move(blocks));
}

}  // namespace diagcorr
