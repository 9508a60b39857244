#include <gtest/gtest.h>

#include <sstream>

#include "diagcorr/parallel.hpp"
#include "diagcorr/partitions.hpp"
#include "diagcorr/toeplitz_volume.hpp"
#include "oracles.hpp"

using namespace diagcorr;

namespace {

oracle::Pairing to_pairing(const PairPartition& p) {
  oracle::Pairing out;
  for (const auto& b : p.blocks()) out.emplace_back(b.first, b.second);
  return out;
}

}  // namespace

TEST(ToeplitzSystem, FreeVariablesAndBackSubstitution) {
  for (int k = 2; k <= 8; k += 2) {
    for (const auto& p : enumerate_pair_partitions(k)) {
      const SolvedSystem s = solve_partition_system(p);
      ASSERT_EQ(s.free_vars.size(), static_cast<std::size_t>(k / 2 + 1));
      EXPECT_EQ(s.free_vars.front(), 0);
      // Random free values must satisfy every block equation exactly.
      std::vector<double> free(s.free_vars.size());
      for (std::size_t i = 0; i < free.size(); ++i) free[i] = 0.1 * static_cast<double>(i + 1) + 0.03 * k;
      const auto x = s.assign(free);
      ASSERT_EQ(x.size(), static_cast<std::size_t>(k + 1));
      for (const auto& b : p.blocks()) {
        EXPECT_NEAR(x[b.first] - x[b.first - 1] + x[b.second] - x[b.second - 1], 0.0, 1e-12) << p.to_string();
      }
      EXPECT_NEAR(x[k], x[0], 1e-12);
      for (const auto& [var, form] : s.determined) {
        EXPECT_EQ(form.constant, 0);
        std::int64_t sum = 0;
        for (auto c : form.coefficients) sum += c;
        EXPECT_EQ(sum, 1) << p.to_string() << " x_" << var;
      }
    }
  }
}

TEST(ToeplitzVolume, CrossingK4MatchesTwoThirds) {
  const auto p = PairPartition::parse("1-3,2-4");
  const double grid = oracle::toeplitz_volume_grid(to_pairing(p), 4, 2000);
  EXPECT_NEAR(grid, 2.0 / 3.0, 1e-6);
  const VolumeEstimate v = toeplitz_volume(p, 200'000, 7);
  EXPECT_FALSE(v.exact);
  EXPECT_NEAR(v.std_error, std::sqrt(2.0 / 9.0 / 200'000), 1e-5);
  EXPECT_LT(std::abs(v.value - 2.0 / 3.0), 4.0 * v.std_error);
}

TEST(ToeplitzVolume, NonCrossingIsExactlyOne) {
  for (const auto& p : enumerate_pair_partitions(8)) {
    if (is_crossing(p)) continue;
    const VolumeEstimate v = toeplitz_volume(p, 10, 1);
    EXPECT_TRUE(v.exact);
    EXPECT_EQ(v.value, 1.0);
    EXPECT_EQ(v.std_error, 0.0);
    // Sampling a non-crossing section also gives 1: the constraints are implied.
    EXPECT_EQ(toeplitz_volume_sampled(p, 1000, 1).value, 1.0);
  }
}

TEST(ToeplitzVolume, K6AgreesWithGridQuadrature) {
  double total = 0.0;
  for (const auto& p : enumerate_pair_partitions(6)) {
    const double grid = oracle::toeplitz_volume_grid(to_pairing(p), 6, 120);
    const VolumeEstimate v = toeplitz_volume(p, 100'000, 11);
    EXPECT_LT(std::abs(v.value - grid), 4.0 * v.std_error + 2e-3) << p.to_string();
    total += grid;
  }
  EXPECT_NEAR(total, 11.0, 5e-3);
}

TEST(ToeplitzVolume, ReflectionInvariance) {
  for (const auto& p : enumerate_pair_partitions(6)) {
    const double a = oracle::toeplitz_volume_grid(to_pairing(p), 6, 80);
    const double b = oracle::toeplitz_volume_grid(to_pairing(reflect(p)), 6, 80);
    EXPECT_NEAR(a, b, 2e-3) << p.to_string();
    const VolumeEstimate va = toeplitz_volume(p, 50'000, 3);
    const VolumeEstimate vb = toeplitz_volume(reflect(p), 50'000, 3);
    EXPECT_LT(std::abs(va.value - vb.value), 4.0 * std::hypot(va.std_error, vb.std_error) + 1e-12);
  }
}

TEST(ToeplitzVolume, DeterministicAndIndependentOfWorkerCount) {
  const auto p = PairPartition::parse("1-4,2-5,3-6");
  const VolumeEstimate a = toeplitz_volume(p, 30'000, 99);
  const VolumeEstimate b = toeplitz_volume(p, 30'000, 99);
  EXPECT_EQ(a, b);
  setenv("DIAGCORR_THREADS", "1", 1);
  const VolumeEstimate serial = toeplitz_volume(p, 30'000, 99);
  setenv("DIAGCORR_THREADS", "3", 1);
  const VolumeEstimate chunked = toeplitz_volume(p, 30'000, 99);
  unsetenv("DIAGCORR_THREADS");
  EXPECT_EQ(serial, a);
  EXPECT_EQ(chunked, a);
  EXPECT_NE(toeplitz_volume(p, 30'000, 100).value, a.value);
}

TEST(ToeplitzVolume, RejectsZeroSamples) {
  EXPECT_THROW(toeplitz_volume(PairPartition::parse("1-3,2-4"), 0, 1), std::invalid_argument);
}

TEST(VolumeCache, RoundTripsThroughText) {
  VolumeCache cache;
  cache.fill(6, 5'000, 17);
  EXPECT_EQ(cache.size(), 15u);
  std::stringstream text;
  text << "# header line\n";
  cache.write(text);
  const VolumeCache back = VolumeCache::read(text);
  ASSERT_EQ(back.size(), cache.size());
  for (const auto& p : enumerate_pair_partitions(6)) {
    ASSERT_NE(back.find(p), nullptr);
    EXPECT_EQ(*back.find(p), *cache.find(p));
  }
  std::stringstream bad("1-3,2-4 nonsense\n");
  EXPECT_THROW(VolumeCache::read(bad), std::runtime_error);
}
