#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "diagcorr/curie_weiss.hpp"
#include "diagcorr/field_sampler.hpp"

using namespace diagcorr;

namespace {

std::vector<GeneratorSpec> all_specs(std::uint64_t seed) {
  return {GeneratorSpec::independent(seed), GeneratorSpec::equicorrelated(0.5, seed),
          GeneratorSpec::curie_weiss(2.0, seed), GeneratorSpec::curie_weiss(0.5, seed), GeneratorSpec::toeplitz(seed)};
}

}  // namespace

TEST(FieldSampler, ConditionsHoldForEveryGenerator) {
  for (const auto& spec : all_specs(4)) {
    const ConditionsReport r = validate_conditions(spec, 40, 4000);
    EXPECT_TRUE(r.mean_ok) << spec.describe() << " mean " << r.mean;
    EXPECT_TRUE(r.variance_ok) << spec.describe() << " var " << r.variance;
    EXPECT_TRUE(r.covariance_ok) << spec.describe() << " cov " << r.same_diagonal_cov << " vs " << r.expected_cov;
    EXPECT_TRUE(r.cross_ok) << spec.describe() << " cross " << r.cross_diagonal_cov;
  }
}

TEST(FieldSampler, LimitingCorrelation) {
  EXPECT_EQ(GeneratorSpec::independent(1).limiting_correlation(), 0.0);
  EXPECT_EQ(GeneratorSpec::equicorrelated(0.25, 1).limiting_correlation(), 0.25);
  EXPECT_EQ(GeneratorSpec::toeplitz(1).limiting_correlation(), 1.0);
  EXPECT_EQ(GeneratorSpec::curie_weiss(2.0, 1).limiting_correlation(), limiting_c(2.0));
  EXPECT_EQ(GeneratorSpec::curie_weiss(0.5, 1).limiting_correlation(), 0.0);
}

TEST(FieldSampler, CurieWeissCovarianceDependsOnLength) {
  const DiagonalSampler s(GeneratorSpec::curie_weiss(2.0, 1), 300);
  EXPECT_EQ(s.covariance(1), 0.0);
  EXPECT_NEAR(s.covariance(2), std::tanh(1.0), 1e-12);
  EXPECT_NEAR(s.covariance(300), exact_cn({2.0, 300}), 1e-15);
}

TEST(FieldSampler, ToeplitzDiagonalsAreConstant) {
  const SymmetricMatrix m = build_matrix(30, GeneratorSpec::toeplitz(5), 0);
  for (int r = 0; r < 30; ++r) {
    for (int p = 1; p + r < 30; ++p) EXPECT_EQ(m(p, p + r), m(0, r));
  }
}

TEST(FieldSampler, MatrixIsSymmetricAndScaled) {
  const SymmetricMatrix m = build_matrix(25, GeneratorSpec::curie_weiss(1.0, 2), 3);
  const auto d = m.dense();
  EXPECT_TRUE(d.isApprox(d.transpose(), 0.0));
  for (int p = 0; p < 25; ++p) {
    for (int q = p; q < 25; ++q) EXPECT_NEAR(std::abs(m(p, q)), 1.0 / 5.0, 1e-15);
  }
  EXPECT_NEAR(m.trace(), d.trace(), 1e-14);
  EXPECT_NEAR(m.frobenius_squared(), d.squaredNorm(), 1e-12);
}

TEST(FieldSampler, RealizationsAreReproducibleAndDistinct) {
  for (const auto& spec : all_specs(8)) {
    const auto a = build_matrix(20, spec, 4);
    const auto b = build_matrix(20, spec, 4);
    const auto c = build_matrix(20, spec, 5);
    EXPECT_EQ(a.packed(), b.packed());
    EXPECT_NE(a.packed(), c.packed()) << spec.describe();
  }
}

TEST(FieldSampler, DiagonalStreamsAreIndependentOfMatrixSize) {
  // Diagonal r of realization i depends only on (seed, i, r) and its length.
  const auto spec = GeneratorSpec::equicorrelated(0.3, 12);
  const auto seed = diagonal_seed(spec.seed, 2, 0);
  const auto direct = sample_diagonal(spec, 15, seed);
  const auto m = build_matrix(15, spec, 2);
  for (int p = 0; p < 15; ++p) EXPECT_DOUBLE_EQ(m(p, p), direct[static_cast<std::size_t>(p)] / std::sqrt(15.0));
}

TEST(FieldSampler, PackedLayoutAndWriters) {
  Eigen::MatrixXd d(3, 3);
  d << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  const auto m = SymmetricMatrix::from_dense(d);
  EXPECT_EQ(m.packed(), (std::vector<double>{1, 2, 3, 4, 5, 6}));
  std::ostringstream bin;
  m.write_binary(bin);
  EXPECT_EQ(bin.str().size(), 6 * sizeof(double));
  std::ostringstream csv;
  m.write_csv(csv);
  EXPECT_EQ(csv.str(), "0,1,2,3\n1,4,5\n2,6\n");
}

TEST(FieldSampler, Validation) {
  EXPECT_THROW(GeneratorSpec::equicorrelated(1.5, 1).validate(), std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::equicorrelated(-0.1, 1).validate(), std::invalid_argument);
  EXPECT_THROW(GeneratorSpec::curie_weiss(0.0, 1).validate(), std::invalid_argument);
  EXPECT_THROW(parse_generator_kind("gaussian"), std::invalid_argument);
  EXPECT_EQ(parse_generator_kind("curie-weiss"), GeneratorKind::curie_weiss);
  EXPECT_THROW(validate_conditions(GeneratorSpec::toeplitz(1), 10, 999), std::invalid_argument);
  EXPECT_THROW(SymmetricMatrix(0), std::invalid_argument);
}
