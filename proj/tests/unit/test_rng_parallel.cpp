#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>

#include "diagcorr/parallel.hpp"
#include "diagcorr/rng.hpp"

using namespace diagcorr;

TEST(Rng, SplitMixReferenceOutputs) {
  // First outputs of the reference SplitMix64 stream seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(counter_bits(0, 1), 0x6e789e6aa1b965f4ULL);
}

TEST(Rng, DeriveSeedSeparatesPaths) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2}), derive_seed(2, {2}));
  EXPECT_EQ(derive_seed(5, {7}), splitmix64(splitmix64(5) ^ splitmix64(7)));
  EXPECT_EQ(hash_string(""), 0xcbf29ce484222325ULL);
}

TEST(Rng, UniformAndBelow) {
  Rng rng(42);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70'000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++hits[rng.below(7)];
  }
  for (int h : hits) EXPECT_NEAR(h, 10'000, 450);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(Rng, NormalMoments) {
  Rng rng(7);
  const int n = 200'000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s1 += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  EXPECT_NEAR(s4 / n, 3.0, 0.06);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (const char* threads : {"1", "3", "8"}) {
    setenv("DIAGCORR_THREADS", threads, 1);
    EXPECT_EQ(worker_count(), static_cast<unsigned>(std::atoi(threads)));
    std::vector<std::atomic<int>> seen(1001);
    parallel_for(seen.size(), [&](std::size_t i) { seen[i]++; });
    for (const auto& s : seen) EXPECT_EQ(s.load(), 1);
  }
  unsetenv("DIAGCORR_THREADS");
  parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                 if (i == 57) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
