#include "diagcorr/limit_moments.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace diagcorr {

std::string_view to_string(MomentForm form) {
  switch (form) {
    case MomentForm::catalan_plus_crossing:
      return "catalan_plus_crossing";
    case MomentForm::all_partitions:
      return "all_partitions";
  }
  return "unknown";
}

MomentForm parse_moment_form(std::string_view text) {
  if (text == "catalan_plus_crossing") return MomentForm::catalan_plus_crossing;
  if (text == "all_partitions") return MomentForm::all_partitions;
  throw std::invalid_argument("unknown moment form '" + std::string(text) + "'");
}

std::uint64_t catalan(int m) {
  if (m < 0 || m > 30) {
    throw std::invalid_argument("catalan: m must lie in [0, 30] (got " + std::to_string(m) + ")");
  }
  // C_{i+1} = C_i * 2(2i+1) / (i+2); the division is exact.
  std::uint64_t value = 1;
  for (int i = 0; i < m; ++i) {
    value = value * static_cast<std::uint64_t>(2 * (2 * i + 1)) / static_cast<std::uint64_t>(i + 2);
  }
  return value;
}

double semicircle_moment(int k) {
  if (k < 1) throw std::invalid_argument("semicircle_moment: k must be positive");
  if (k % 2 != 0) return 0.0;
  return static_cast<double>(catalan(k / 2));
}

MomentValue nu_c_moment(int k, double c, VolumeCache& volumes, const VolumePass& pass, MomentForm form,
                        int max_k) {
  if (k < 1) throw std::invalid_argument("nu_c_moment: k must be positive");
  MomentValue out;
  out.k = k;
  out.c = c;
  out.form = form;
  if (c < 0.0 || c > 1.0) out.note = "no bundled generator attains this c";
  if (k % 2 != 0) return out;
  if (k > max_k) {
    throw std::invalid_argument("nu_c_moment: k = " + std::to_string(k) + " exceeds the moment cap " +
                                std::to_string(max_k));
  }

  const int half = k / 2;
  std::vector<double> group(static_cast<std::size_t>(half) + 1, 0.0);
  std::vector<double> group_var(static_cast<std::size_t>(half) + 1, 0.0);

  for (const auto& p : enumerate_pair_partitions(k, max_k)) {
    if (!is_crossing(p)) {
      // p_T = 1 exactly; no cache entry needed.
      if (form == MomentForm::all_partitions) group[0] += 1.0;
      continue;
    }
    const VolumeEstimate* v = volumes.find(p);
    if (!v) {
      if (pass.samples == 0) {
        throw std::invalid_argument("nu_c_moment: no cached volume for " + p.to_string() +
                                    "; run a volume pass (samples > 0)");
      }
      volumes.insert(p, toeplitz_volume(p, pass.samples, pass.seed));
      v = volumes.find(p);
    }
    const auto exponent = static_cast<std::size_t>(half - height(p));
    group[exponent] += v->value;
    group_var[exponent] += v->std_error * v->std_error;
  }
  if (form == MomentForm::catalan_plus_crossing) {
    // Non-crossing partitions are exactly the exponent-0 group.
    group[0] += static_cast<double>(catalan(half));
  }

  double value = group[0];
  double variance = group_var[0];
  double power = 1.0;
  for (std::size_t e = 1; e < group.size(); ++e) {
    power *= c;
    value += power * group[e];
    variance += power * power * group_var[e];
  }
  out.value = value;
  out.std_error = std::sqrt(variance);
  return out;
}

}  // namespace diagcorr
