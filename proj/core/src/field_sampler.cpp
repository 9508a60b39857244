#include "diagcorr/field_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace diagcorr {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::independent:
      return "independent";
    case GeneratorKind::equicorrelated:
      return "equicorrelated";
    case GeneratorKind::curie_weiss:
      return "curie-weiss";
    case GeneratorKind::toeplitz:
      return "toeplitz";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& text) {
  if (text == "independent") return GeneratorKind::independent;
  if (text == "equicorrelated") return GeneratorKind::equicorrelated;
  if (text == "curie-weiss" || text == "curie_weiss") return GeneratorKind::curie_weiss;
  if (text == "toeplitz") return GeneratorKind::toeplitz;
  throw std::invalid_argument("unknown generator '" + text +
                              "' (expected independent, equicorrelated, curie-weiss or toeplitz)");
}

GeneratorSpec GeneratorSpec::independent(std::uint64_t seed) { return {GeneratorKind::independent, 0.0, seed}; }

GeneratorSpec GeneratorSpec::equicorrelated(double c, std::uint64_t seed) {
  GeneratorSpec spec{GeneratorKind::equicorrelated, c, seed};
  spec.validate();
  return spec;
}

GeneratorSpec GeneratorSpec::curie_weiss(double beta, std::uint64_t seed) {
  GeneratorSpec spec{GeneratorKind::curie_weiss, beta, seed};
  spec.validate();
  return spec;
}

GeneratorSpec GeneratorSpec::toeplitz(std::uint64_t seed) { return {GeneratorKind::toeplitz, 1.0, seed}; }

void GeneratorSpec::validate() const {
  if (kind == GeneratorKind::equicorrelated && !(parameter >= 0.0 && parameter <= 1.0)) {
    throw std::invalid_argument("equicorrelated generator needs c in [0, 1]");
  }
  if (kind == GeneratorKind::curie_weiss && !(parameter > 0.0 && std::isfinite(parameter))) {
    throw std::invalid_argument("Curie-Weiss generator needs beta > 0");
  }
}

double GeneratorSpec::limiting_correlation() const {
  switch (kind) {
    case GeneratorKind::independent:
      return 0.0;
    case GeneratorKind::equicorrelated:
      return parameter;
    case GeneratorKind::curie_weiss:
      return limiting_c(parameter);
    case GeneratorKind::toeplitz:
      return 1.0;
  }
  return 0.0;
}

std::string GeneratorSpec::describe() const {
  std::ostringstream out;
  out << to_string(kind);
  if (kind == GeneratorKind::equicorrelated) out << "(c=" << parameter << ")";
  if (kind == GeneratorKind::curie_weiss) out << "(beta=" << parameter << ")";
  return out.str();
}

std::uint64_t diagonal_seed(std::uint64_t base, std::uint64_t realization, std::uint64_t offset) {
  return derive_seed(base, {realization, offset});
}

DiagonalSampler::DiagonalSampler(const GeneratorSpec& spec, int max_length)
    : spec_(spec), max_length_(max_length) {
  spec_.validate();
  if (max_length < 1) throw std::invalid_argument("DiagonalSampler: max_length must be positive");
  if (spec_.kind == GeneratorKind::curie_weiss) {
    laws_.resize(static_cast<std::size_t>(max_length) + 1);
    for (int len = 1; len <= max_length; ++len) {
      laws_[static_cast<std::size_t>(len)] =
          std::make_shared<const MagnetizationLaw>(CurieWeissParams{spec_.parameter, len});
    }
  }
}

std::vector<double> DiagonalSampler::sample(int length, std::uint64_t stream_seed) const {
  if (length < 1 || length > max_length_) {
    throw std::invalid_argument("diagonal length " + std::to_string(length) + " outside [1, " +
                                std::to_string(max_length_) + "]");
  }
  Rng rng(stream_seed);
  std::vector<double> out(static_cast<std::size_t>(length));
  switch (spec_.kind) {
    case GeneratorKind::independent:
      for (double& x : out) x = rng.normal();
      break;
    case GeneratorKind::equicorrelated: {
      const double shared_weight = std::sqrt(spec_.parameter);
      const double own_weight = std::sqrt(1.0 - spec_.parameter);
      const double shared = rng.normal();
      for (double& x : out) x = shared_weight * shared + own_weight * rng.normal();
      break;
    }
    case GeneratorKind::curie_weiss: {
      const auto spins = sample_spins(*laws_[static_cast<std::size_t>(length)], rng);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = spins[i];
      break;
    }
    case GeneratorKind::toeplitz: {
      const double shared = rng.normal();
      for (double& x : out) x = shared;
      break;
    }
  }
  return out;
}

double DiagonalSampler::covariance(int length) const {
  switch (spec_.kind) {
    case GeneratorKind::independent:
      return 0.0;
    case GeneratorKind::equicorrelated:
      return spec_.parameter;
    case GeneratorKind::curie_weiss:
      return length < 2 ? 0.0 : exact_cn(*laws_.at(static_cast<std::size_t>(length)));
    case GeneratorKind::toeplitz:
      return 1.0;
  }
  return 0.0;
}

std::vector<double> sample_diagonal(const GeneratorSpec& spec, int length, std::uint64_t stream_seed) {
  if (length < 1) throw std::invalid_argument("sample_diagonal: length must be at least 1");
  if (spec.kind == GeneratorKind::curie_weiss) {
    // Only the law of this length is needed.
    spec.validate();
    Rng rng(stream_seed);
    const auto spins = sample_spins(MagnetizationLaw({spec.parameter, length}), rng);
    return {spins.begin(), spins.end()};
  }
  return DiagonalSampler(spec, length).sample(length, stream_seed);
}

SymmetricMatrix::SymmetricMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("SymmetricMatrix: n must be positive");
  data_.assign(static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2, 0.0);
}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd& dense) {
  if (dense.rows() != dense.cols()) throw std::invalid_argument("from_dense: matrix is not square");
  SymmetricMatrix m(static_cast<int>(dense.rows()));
  for (int p = 0; p < m.n_; ++p) {
    for (int q = p; q < m.n_; ++q) m.set(p, q, dense(p, q));
  }
  return m;
}

std::size_t SymmetricMatrix::index(int p, int q) const {
  if (p > q) std::swap(p, q);
  const auto row = static_cast<std::size_t>(p);
  const auto n = static_cast<std::size_t>(n_);
  return row * n - row * (row - 1) / 2 + static_cast<std::size_t>(q - p);
}

Eigen::MatrixXd SymmetricMatrix::dense() const {
  Eigen::MatrixXd out(n_, n_);
  std::size_t idx = 0;
  for (int p = 0; p < n_; ++p) {
    for (int q = p; q < n_; ++q) {
      out(p, q) = data_[idx];
      out(q, p) = data_[idx];
      ++idx;
    }
  }
  return out;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int p = 0; p < n_; ++p) t += (*this)(p, p);
  return t;
}

double SymmetricMatrix::frobenius_squared() const {
  double total = 0.0;
  std::size_t idx = 0;
  for (int p = 0; p < n_; ++p) {
    for (int q = p; q < n_; ++q) {
      const double v = data_[idx++];
      total += (p == q ? 1.0 : 2.0) * v * v;
    }
  }
  return total;
}

void SymmetricMatrix::write_binary(std::ostream& out) const {
  static_assert(sizeof(double) == 8);
  out.write(reinterpret_cast<const char*>(data_.data()),
            static_cast<std::streamsize>(data_.size() * sizeof(double)));
}

void SymmetricMatrix::write_csv(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  std::size_t idx = 0;
  for (int p = 0; p < n_; ++p) {
    out << p;
    for (int q = p; q < n_; ++q) out << ',' << data_[idx++];
    out << '\n';
  }
  out.precision(old_precision);
}

SymmetricMatrix build_matrix(int n, const DiagonalSampler& sampler, std::uint64_t realization) {
  SymmetricMatrix m(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int r = 0; r < n; ++r) {
    const auto diag = sampler.sample(n - r, diagonal_seed(sampler.spec().seed, realization,
                                                          static_cast<std::uint64_t>(r)));
    for (int p = 0; p + r < n; ++p) m.set(p, p + r, diag[static_cast<std::size_t>(p)] * scale);
  }
  return m;
}

SymmetricMatrix build_matrix(int n, const GeneratorSpec& spec, std::uint64_t realization) {
  return build_matrix(n, DiagonalSampler(spec, n), realization);
}

namespace {

struct RunningMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return sum / count; }
  double se() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1));
    return std::sqrt(var / count);
  }
};

bool within(double estimate, double target, double se, double z) {
  return std::abs(estimate - target) <= z * se + 1e-12;
}

}  // namespace

ConditionsReport validate_conditions(const GeneratorSpec& spec, int n, int draws, double z_threshold) {
  if (n < 2) throw std::invalid_argument("validate_conditions: n must be at least 2");
  if (draws < 1000) throw std::invalid_argument("validate_conditions: needs at least 1000 draws");
  const DiagonalSampler sampler(spec, n);

  RunningMoments mean, second, cov, cross;
  for (int d = 0; d < draws; ++d) {
    const auto main = sampler.sample(n, diagonal_seed(spec.seed, static_cast<std::uint64_t>(d), 0));
    const auto off = sampler.sample(n - 1, diagonal_seed(spec.seed, static_cast<std::uint64_t>(d), 1));
    double s = 0.0;
    double s2 = 0.0;
    for (double a : main) {
      s += a;
      s2 += a * a;
    }
    double c = 0.0;
    for (int p = 0; p + 1 < n; ++p) c += main[static_cast<std::size_t>(p)] * off[static_cast<std::size_t>(p)];
    mean.add(s / n);
    second.add(s2 / n);
    cov.add((s * s - s2) / (static_cast<double>(n) * (n - 1)));
    cross.add(c / (n - 1));
  }

  ConditionsReport r;
  r.spec = spec;
  r.n = n;
  r.draws = draws;
  r.z_threshold = z_threshold;
  r.mean = mean.mean();
  r.mean_se = mean.se();
  r.variance = second.mean();
  r.variance_se = second.se();
  r.same_diagonal_cov = cov.mean();
  r.same_diagonal_cov_se = cov.se();
  r.expected_cov = sampler.covariance(n);
  r.cross_diagonal_cov = cross.mean();
  r.cross_diagonal_cov_se = cross.se();

  r.mean_ok = std::abs(r.mean) < 4.0 / std::sqrt(static_cast<double>(draws));
  r.variance_ok = within(r.variance, 1.0, r.variance_se, z_threshold);
  r.covariance_ok = within(r.same_diagonal_cov, r.expected_cov, r.same_diagonal_cov_se, z_threshold);
  r.cross_ok = within(r.cross_diagonal_cov, 0.0, r.cross_diagonal_cov_se, z_threshold);
  return r;
}

}  // namespace diagcorr
