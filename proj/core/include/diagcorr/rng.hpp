#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace diagcorr {

// SplitMix64 output function. Applied to `seed + (i + 1) * kGoldenGamma` it is
// the i-th output of the SplitMix64 stream, which makes it usable as a
// counter-based generator: any sample index can be evaluated independently.
constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Element `index` of the counter stream identified by `key`.
constexpr std::uint64_t counter_bits(std::uint64_t key, std::uint64_t index) noexcept {
  return splitmix64(key + index * kGoldenGamma);
}

/// Top 53 bits mapped to [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Derives a child seed by folding each path component through SplitMix64.
/// derive_seed(s, {a}) == splitmix64(splitmix64(s) ^ splitmix64(a)), and so on per component.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept;

/// FNV-1a over bytes; used to turn canonical strings into stream keys.
std::uint64_t hash_string(std::string_view text) noexcept;

// Sequential generator for one independent stream. mt19937_64 output is fixed by
// the standard, and the transforms below are implemented here rather than taken
// from <random> distributions, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform() { return to_unit(engine_()); }

  // Uniform integer in [0, bound) by Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound);

  // Standard normal by the Marsaglia polar method; the second variate of each
  // accepted pair is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace diagcorr
