#include "diagcorr/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "diagcorr/parallel.hpp"

namespace diagcorr {

namespace {

void require_finite(const SymmetricMatrix& m) {
  for (double v : m.packed()) {
    if (!std::isfinite(v)) throw std::invalid_argument("matrix has a non-finite entry");
  }
}

}  // namespace

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

SpectralSample eigenvalues_symmetric(const SymmetricMatrix& m) {
  require_finite(m);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
  SpectralSample s;
  s.n = m.n();
  s.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m.n());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

EigenDecomposition eigen_decompose(const SymmetricMatrix& m) {
  require_finite(m);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double max_relative_residual(const SymmetricMatrix& m, const EigenDecomposition& eig, int count,
                             std::uint64_t seed) {
  const Eigen::MatrixXd dense = m.dense();
  const double norm = std::max(dense.norm(), std::numeric_limits<double>::min());
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto idx = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(m.n())));
    const Eigen::VectorXd v = eig.eigenvectors.col(idx);
    const double residual = (dense * v - eig.eigenvalues(idx) * v).norm();
    worst = std::max(worst, residual / norm);
  }
  return worst;
}

std::vector<double> empirical_moments(const SpectralSample& s, int max_k) {
  if (max_k < 1) throw std::invalid_argument("empirical_moments: max_k must be positive");
  const auto size = s.eigenvalues.size();
  std::vector<double> powers(s.eigenvalues);
  std::vector<double> out(static_cast<std::size_t>(max_k));
  for (int k = 1; k <= max_k; ++k) {
    if (k > 1) {
      for (std::size_t i = 0; i < size; ++i) powers[i] *= s.eigenvalues[i];
    }
    out[static_cast<std::size_t>(k - 1)] = compensated_sum(powers) / static_cast<double>(s.n);
  }
  return out;
}

double trace_moment_direct(const SymmetricMatrix& m, int k) {
  if (k < 1 || k > kMaxTracePower) {
    throw std::invalid_argument("trace_moment_direct: k must lie in [1, " + std::to_string(kMaxTracePower) + "]");
  }
  if (m.n() > kMaxTraceDimension) {
    throw std::invalid_argument("trace_moment_direct: n = " + std::to_string(m.n()) + " exceeds " +
                                std::to_string(kMaxTraceDimension));
  }
  const Eigen::MatrixXd a = m.dense();
  if (k == 1) return a.trace() / m.n();
  // tr(A^k) = sum of elementwise product of A^h and A^(k-h).
  const int half = k / 2;
  Eigen::MatrixXd low = a;
  for (int i = 1; i < half; ++i) low = low * a;
  const Eigen::MatrixXd high = (k - half == half) ? low : Eigen::MatrixXd(low * a);
  return low.cwiseProduct(high).sum() / m.n();
}

Histogram::Histogram(double lo, double hi, int bins) : lo_(lo), hi_(hi) {
  if (bins < 1) throw std::invalid_argument("Histogram: bins must be positive");
  if (!(hi > lo)) throw std::invalid_argument("Histogram: range must satisfy lo < hi");
  counts_.assign(static_cast<std::size_t>(bins), 0);
}

void Histogram::add(double x) {
  if (x < lo_) {
    ++underflow_;
  } else if (x > hi_) {
    ++overflow_;
  } else {
    auto bin = static_cast<std::size_t>((x - lo_) / (hi_ - lo_) * static_cast<double>(counts_.size()));
    bin = std::min(bin, counts_.size() - 1);
    ++counts_[bin];
  }
}

void Histogram::add(std::span<const double> xs) {
  for (double x : xs) add(x);
}

void Histogram::merge(const Histogram& other) {
  if (other.lo_ != lo_ || other.hi_ != hi_ || other.counts_.size() != counts_.size()) {
    throw std::invalid_argument("Histogram::merge: incompatible binning");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
}

double Histogram::bin_left(int i) const { return lo_ + (hi_ - lo_) * i / bins(); }
double Histogram::bin_right(int i) const { return lo_ + (hi_ - lo_) * (i + 1) / bins(); }

std::uint64_t Histogram::total() const noexcept {
  std::uint64_t t = underflow_ + overflow_;
  for (auto c : counts_) t += c;
  return t;
}

double Histogram::density(int i) const {
  const auto t = total();
  if (t == 0) return 0.0;
  return static_cast<double>(counts_.at(static_cast<std::size_t>(i))) /
         (static_cast<double>(t) * (bin_right(i) - bin_left(i)));
}

void Histogram::write_csv(std::ostream& out) const {
  const auto old_precision = out.precision(10);
  out << "bin_left,bin_right,count,density\n";
  out << "-inf," << lo_ << ',' << underflow_ << ",0\n";
  for (int i = 0; i < bins(); ++i) {
    out << bin_left(i) << ',' << bin_right(i) << ',' << counts_[static_cast<std::size_t>(i)] << ','
        << density(i) << '\n';
  }
  out << hi_ << ",inf," << overflow_ << ",0\n";
  out.precision(old_precision);
}

EnsembleStats run_ensemble(const GeneratorSpec& spec, const EnsembleOptions& options) {
  if (options.realizations < 1) throw std::invalid_argument("run_ensemble: realizations must be positive");
  if (options.n < 1) throw std::invalid_argument("run_ensemble: n must be positive");
  if (options.max_moment < 1) throw std::invalid_argument("run_ensemble: max_moment must be positive");

  const DiagonalSampler sampler(spec, options.n);
  const auto count = static_cast<std::size_t>(options.realizations);
  std::vector<std::vector<double>> per_realization(count);
  std::vector<Histogram> histograms(count, Histogram(options.lo, options.hi, options.bins));

  parallel_for(count, [&](std::size_t i) {
    const SymmetricMatrix m = build_matrix(options.n, sampler, i);
    const SpectralSample s = eigenvalues_symmetric(m);
    per_realization[i] = empirical_moments(s, options.max_moment);
    histograms[i].add(s.eigenvalues);
  });

  EnsembleStats stats;
  stats.spec = spec;
  stats.options = options;
  stats.histogram = Histogram(options.lo, options.hi, options.bins);
  for (const auto& h : histograms) stats.histogram.merge(h);

  std::vector<double> column(count);
  for (int k = 1; k <= options.max_moment; ++k) {
    for (std::size_t i = 0; i < count; ++i) column[i] = per_realization[i][static_cast<std::size_t>(k - 1)];
    const double mean = compensated_sum(column) / static_cast<double>(count);
    double se = 0.0;
    if (count > 1) {
      std::vector<double> sq(count);
      for (std::size_t i = 0; i < count; ++i) sq[i] = (column[i] - mean) * (column[i] - mean);
      se = std::sqrt(compensated_sum(sq) / static_cast<double>(count - 1) / static_cast<double>(count));
    }
    stats.moments.push_back({k, mean, se});
  }
  return stats;
}

ConcentrationReport concentration_probe(std::span<const int> sizes, const GeneratorSpec& spec, int k,
                                        int realizations, double max_slope) {
  if (sizes.size() < 3) throw std::invalid_argument("concentration_probe: needs at least 3 sizes");
  if (realizations < 200) throw std::invalid_argument("concentration_probe: needs at least 200 realizations");
  if (k < 1) throw std::invalid_argument("concentration_probe: k must be positive");

  ConcentrationReport report;
  report.k = k;
  report.max_slope = max_slope;
  report.sizes.assign(sizes.begin(), sizes.end());

  for (int n : sizes) {
    const DiagonalSampler sampler(spec, n);
    std::vector<double> traces(static_cast<std::size_t>(realizations));
    parallel_for(traces.size(), [&](std::size_t i) {
      const SpectralSample s = eigenvalues_symmetric(build_matrix(n, sampler, i));
      traces[i] = empirical_moments(s, k).back() * n;
    });
    const double mean = compensated_sum(traces) / static_cast<double>(traces.size());
    std::vector<double> fourth(traces.size());
    for (std::size_t i = 0; i < traces.size(); ++i) fourth[i] = std::pow(traces[i] - mean, 4);
    report.fourth_central_moments.push_back(compensated_sum(fourth) / static_cast<double>(traces.size()));
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(static_cast<double>(sizes[i]));
    const double y = std::log(report.fourth_central_moments[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  report.pass = std::isfinite(report.slope) && report.slope <= max_slope;
  return report;
}

}  // namespace diagcorr
