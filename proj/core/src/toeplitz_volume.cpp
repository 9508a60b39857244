#include "diagcorr/toeplitz_volume.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "diagcorr/parallel.hpp"
#include "diagcorr/rng.hpp"

namespace diagcorr {

std::vector<double> SolvedSystem::assign(std::span<const double> free_values) const {
  if (free_values.size() != free_vars.size()) {
    throw std::invalid_argument("expected " + std::to_string(free_vars.size()) + " free values");
  }
  std::vector<double> x(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::size_t f = 0; f < free_vars.size(); ++f) x[static_cast<std::size_t>(free_vars[f])] = free_values[f];
  for (const auto& [var, form] : determined) {
    double value = static_cast<double>(form.constant);
    for (std::size_t f = 0; f < form.coefficients.size(); ++f) {
      value += static_cast<double>(form.coefficients[f]) * free_values[f];
    }
    x[static_cast<std::size_t>(var)] = value;
  }
  return x;
}

SolvedSystem solve_partition_system(const PairPartition& p) {
  const int k = p.size();
  const auto nvars = static_cast<std::size_t>(k) + 1;

  std::vector<bool> is_determined(nvars, false);
  for (const Block& b : p.blocks()) is_determined[static_cast<std::size_t>(b.second)] = true;

  SolvedSystem sys;
  sys.k = k;
  std::vector<int> free_slot(nvars, -1);
  for (int v = 0; v <= k; ++v) {
    if (!is_determined[static_cast<std::size_t>(v)]) {
      free_slot[static_cast<std::size_t>(v)] = static_cast<int>(sys.free_vars.size());
      sys.free_vars.push_back(v);
    }
  }
  const std::size_t nfree = sys.free_vars.size();

  // Forms over all variables, resolved lazily to free variables.
  std::vector<AffineForm> resolved(nvars);
  for (int v = 0; v <= k; ++v) {
    if (free_slot[static_cast<std::size_t>(v)] >= 0) {
      AffineForm unit{std::vector<std::int64_t>(nfree, 0), 0};
      unit.coefficients[static_cast<std::size_t>(free_slot[static_cast<std::size_t>(v)])] = 1;
      resolved[static_cast<std::size_t>(v)] = std::move(unit);
    }
  }

  std::vector<Block> order(p.blocks().begin(), p.blocks().end());
  std::sort(order.begin(), order.end(), [](const Block& a, const Block& b) { return a.second < b.second; });

  for (const Block& b : order) {
    // x_j = x_{j-1} - x_i + x_{i-1}; all three indices are below j and already resolved.
    const auto& prev = resolved[static_cast<std::size_t>(b.second - 1)];
    const auto& xi = resolved[static_cast<std::size_t>(b.first)];
    const auto& xi_prev = resolved[static_cast<std::size_t>(b.first - 1)];
    AffineForm form{std::vector<std::int64_t>(nfree, 0), 0};
    for (std::size_t f = 0; f < nfree; ++f) {
      form.coefficients[f] = prev.coefficients[f] - xi.coefficients[f] + xi_prev.coefficients[f];
    }
    form.constant = prev.constant - xi.constant + xi_prev.constant;
    resolved[static_cast<std::size_t>(b.second)] = form;
    sys.determined.emplace(b.second, std::move(form));
  }
  return sys;
}

std::uint64_t volume_stream_key(const PairPartition& p, std::uint64_t seed) {
  return derive_seed(seed, {hash_string(p.to_string())});
}

namespace {

VolumeEstimate sample_volume(const PairPartition& p, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("toeplitz_volume: samples must be at least 1");
  const SolvedSystem sys = solve_partition_system(p);
  const std::size_t dims = sys.free_vars.size();

  // Dense coefficient rows; constants are zero for this system.
  std::vector<double> rows;
  rows.reserve(sys.determined.size() * dims);
  for (const auto& [var, form] : sys.determined) {
    for (std::int64_t c : form.coefficients) rows.push_back(static_cast<double>(c));
  }
  const std::size_t nrows = sys.determined.size();
  const std::uint64_t key = volume_stream_key(p, seed);

  std::vector<std::uint64_t> hits(worker_count(), 0);
  parallel_chunks(samples, [&](unsigned worker, std::size_t begin, std::size_t end) {
    std::vector<double> point(dims);
    std::uint64_t local = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t base = static_cast<std::uint64_t>(i) * dims;
      for (std::size_t d = 0; d < dims; ++d) point[d] = to_unit(counter_bits(key, base + d));
      bool inside = true;
      for (std::size_t r = 0; r < nrows && inside; ++r) {
        double value = 0.0;
        const double* row = rows.data() + r * dims;
        for (std::size_t d = 0; d < dims; ++d) value += row[d] * point[d];
        inside = value >= 0.0 && value <= 1.0;
      }
      local += inside ? 1 : 0;
    }
    hits[worker] += local;
  });

  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  VolumeEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.value = static_cast<double>(total) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(samples));
  est.exact = false;
  return est;
}

}  // namespace

VolumeEstimate toeplitz_volume(const PairPartition& p, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("toeplitz_volume: samples must be at least 1");
  if (!is_crossing(p)) return {1.0, 0.0, samples, seed, true};
  return sample_volume(p, samples, seed);
}

VolumeEstimate toeplitz_volume_sampled(const PairPartition& p, std::uint64_t samples,
                                       std::uint64_t seed) {
  return sample_volume(p, samples, seed);
}

const VolumeEstimate* VolumeCache::find(const PairPartition& p) const {
  const auto it = entries_.find(p);
  return it == entries_.end() ? nullptr : &it->second;
}

void VolumeCache::insert(const PairPartition& p, const VolumeEstimate& v) { entries_[p] = v; }

void VolumeCache::fill(int k, std::uint64_t samples, std::uint64_t seed) {
  for (const auto& p : enumerate_pair_partitions(k)) {
    if (!find(p)) insert(p, toeplitz_volume(p, samples, seed));
  }
}

void VolumeCache::write(std::ostream& out) const {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(17);
  for (const auto& [p, v] : entries_) {
    out << p.to_string() << ' ' << v.samples << ' ' << v.seed << ' ' << v.value << ' ' << v.std_error << ' '
        << (v.exact ? 1 : 0) << '\n';
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

VolumeCache VolumeCache::read(std::istream& in) {
  VolumeCache cache;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string partition;
    VolumeEstimate v;
    int exact = 0;
    if (!(fields >> partition >> v.samples >> v.seed >> v.value >> v.std_error >> exact) ||
        (exact != 0 && exact != 1)) {
      throw std::runtime_error("volume cache line " + std::to_string(line_no) + " is malformed: " + line);
    }
    v.exact = exact == 1;
    if (v.value < 0.0 || v.value > 1.0 || v.std_error < 0.0) {
      throw std::runtime_error("volume cache line " + std::to_string(line_no) + " is out of range");
    }
    cache.insert(PairPartition::parse(partition), v);
  }
  return cache;
}

}  // namespace diagcorr
