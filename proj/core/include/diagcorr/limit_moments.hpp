#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "diagcorr/toeplitz_volume.hpp"

namespace diagcorr {

/// Largest moment order evaluated by default.
inline constexpr int kDefaultMaxMoment = 12;

enum class MomentForm { catalan_plus_crossing, all_partitions };

std::string_view to_string(MomentForm form);
MomentForm parse_moment_form(std::string_view text);

struct MomentValue {
  int k = 0;
  double c = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  MomentForm form = MomentForm::all_partitions;
  /// Empty unless c lies outside [0, 1], which no bundled generator attains.
  std::string note;
};

/// Catalan number (2m)! / (m! (m+1)!) for 0 <= m <= 30.
std::uint64_t catalan(int m);

/// 0 for odd k, C_{k/2} for even k.
double semicircle_moment(int k);

struct VolumePass {
  std::uint64_t samples = 0;  // 0: use cached volumes only
  std::uint64_t seed = 0;
};

// k-th moment of the limit law for correlation c:
//   sum over pair partitions of p_T(pi) * c^(k/2 - h(pi)).
// Terms are grouped by exponent and added in increasing exponent order in both
// forms, so two evaluations over the same cache agree bit-for-bit. Missing
// volumes are estimated into `volumes` when pass.samples > 0, otherwise
// std::invalid_argument is thrown.
MomentValue nu_c_moment(int k, double c, VolumeCache& volumes, const VolumePass& pass,
                        MomentForm form = MomentForm::all_partitions,
                        int max_k = kDefaultMaxMoment);

}  // namespace diagcorr
