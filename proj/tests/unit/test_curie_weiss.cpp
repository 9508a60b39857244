#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "diagcorr/curie_weiss.hpp"
#include "diagcorr/rng.hpp"
#include "oracles.hpp"

using namespace diagcorr;

TEST(CurieWeiss, TwoSpinCovarianceIsTanh) {
  for (double beta : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    EXPECT_NEAR(exact_cn({beta, 2}), std::tanh(beta / 2.0), 1e-12) << beta;
    EXPECT_NEAR(exact_cn({beta, 2}), oracle::curie_weiss_covariance_states(2, beta), 1e-12);
  }
}

TEST(CurieWeiss, SmallSystemsMatchStateEnumeration) {
  for (int n : {3, 5, 8, 12}) {
    for (double beta : {0.3, 1.0, 2.5}) {
      EXPECT_NEAR(exact_cn({beta, n}), oracle::curie_weiss_covariance_states(n, beta), 1e-12) << n << " " << beta;
    }
  }
}

TEST(CurieWeiss, ReferenceValues) {
  // 40-digit arithmetic on the same sums.
  EXPECT_NEAR(exact_cn({2.0, 100}), 0.91241858150966592, 1e-12);
  EXPECT_NEAR(exact_cn({2.0, 1600}), 0.91654933306519983, 1e-12);
  EXPECT_NEAR(exact_cn({0.5, 100}), 0.0097145930960001794, 1e-12);
  EXPECT_NEAR(exact_cn({0.5, 1600}), 0.00062383193202442719, 1e-12);
}

TEST(CurieWeiss, LimitingCorrelation) {
  for (double beta : {0.2, 0.9, 1.0}) EXPECT_EQ(limiting_c(beta), 0.0);
  for (double beta : {1.1, 1.5, 2.0, 4.0, 10.0}) {
    const double m = oracle::magnetization_bisection(beta);
    EXPECT_NEAR(spontaneous_magnetization(beta), m, 1e-12) << beta;
    EXPECT_NEAR(limiting_c(beta), m * m, 1e-12);
  }
  EXPECT_NEAR(limiting_c(2.0), 0.91681395612416284, 1e-12);
}

TEST(CurieWeiss, LawIsNormalizedAndSymmetric) {
  const MagnetizationLaw law({2.0, 51});
  const auto& p = law.probabilities();
  ASSERT_EQ(p.size(), 52u);
  EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-14);
  for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(p[j], p[p.size() - 1 - j], 1e-15);
  EXPECT_EQ(law.level_for(0.0), 0 + static_cast<int>(std::find_if(p.begin(), p.end(), [](double x) { return x > 0; }) - p.begin()));
  EXPECT_EQ(MagnetizationLaw::total_spin(51, 51), 51);
}

TEST(CurieWeiss, GapShrinksWithN) {
  const double c = limiting_c(2.0);
  double prev = 1.0;
  for (int n : {100, 200, 400, 800, 1600}) {
    const double gap = std::abs(exact_cn({2.0, n}) - c);
    EXPECT_LE(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 0.05);
}

TEST(CurieWeiss, SamplerReproducesSecondMoments) {
  const CurieWeissParams params{2.0, 40};
  const MagnetizationLaw law(params);
  Rng rng(123);
  const int draws = 40'000;
  double pair = 0.0;
  double mean = 0.0;
  for (int d = 0; d < draws; ++d) {
    const auto s = sample_spins(law, rng);
    ASSERT_EQ(s.size(), 40u);
    for (int x : s) ASSERT_TRUE(x == 1 || x == -1);
    pair += s[3] * s[17];
    mean += s[0];
  }
  pair /= draws;
  mean /= draws;
  const double se = std::sqrt((1.0 - exact_cn(law) * exact_cn(law)) / draws);
  EXPECT_LT(std::abs(pair - exact_cn(law)), 4.0 * se);
  EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(draws));
}

TEST(CurieWeiss, SeededSamplingIsDeterministic) {
  EXPECT_EQ(sample_spins({1.5, 30}, 9), sample_spins({1.5, 30}, 9));
  EXPECT_NE(sample_spins({1.5, 30}, 9), sample_spins({1.5, 30}, 10));
}

TEST(CurieWeiss, Validation) {
  EXPECT_THROW(exact_cn({2.0, 1}), std::invalid_argument);
  EXPECT_THROW(MagnetizationLaw({0.0, 10}), std::invalid_argument);
  EXPECT_THROW(MagnetizationLaw({1.0, 0}), std::invalid_argument);
  EXPECT_THROW(MagnetizationLaw({NAN, 10}), std::invalid_argument);
  EXPECT_THROW(spontaneous_magnetization(-1.0), std::invalid_argument);
}
