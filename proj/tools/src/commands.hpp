#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "diagcorr/acceptance.hpp"

namespace diagcorr::cli {

// Everything a run depends on. Echoed into the header of every output file.
struct RunConfig {
  std::string subcommand;
  int k = 4;  // partition size, or the largest moment for moments/simulate
  int n = 100;
  std::vector<double> c{0.0};
  double beta = 2.0;
  std::string generator = "equicorrelated";
  int realizations = 10;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 20240601;
  int bins = 100;
  double lo = -5.0;
  double hi = 5.0;
  std::string out;  // file, or file prefix for simulate; empty means stdout
  std::string cache;
  std::string form = "all_partitions";
  std::vector<int> sizes;
  std::string tolerances;
  std::string histograms;
  std::vector<int> criteria;

  /// "subcommand=volume k=4 ..." on a single line.
  std::string echo() const;
  /// "# diagcorr <version> <echo>".
  std::string header() const;
};

int cmd_partitions(const RunConfig& cfg, std::ostream& out);
int cmd_volume(const RunConfig& cfg, std::ostream& out);
int cmd_moments(const RunConfig& cfg, std::ostream& out);
int cmd_curie_weiss(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

int dispatch(const RunConfig& cfg, std::ostream& out);

/// Applies the keys of a JSON object onto the defaults. Unknown keys throw.
AcceptanceConfig load_acceptance_config(const std::string& json_text);

}  // namespace diagcorr::cli
