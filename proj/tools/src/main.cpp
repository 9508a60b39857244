#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "diagcorr/version.hpp"

int main(int argc, char** argv) {
  using diagcorr::cli::RunConfig;
  RunConfig cfg;
  std::vector<double> range{cfg.lo, cfg.hi};

  CLI::App app{"Spectra of random matrices with correlated diagonals"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", diagcorr::kVersion);

  app.add_option("--k", cfg.k, "partition size, or largest moment for moments/simulate");
  app.add_option("--n", cfg.n, "matrix size, spin count, or oracle n");
  app.add_option("--c", cfg.c, "correlation(s); moments accepts a comma list")->delimiter(',');
  app.add_option("--beta", cfg.beta, "Curie-Weiss inverse temperature");
  app.add_option("--generator", cfg.generator, "independent | equicorrelated | curie-weiss | toeplitz");
  app.add_option("--realizations", cfg.realizations);
  app.add_option("--samples", cfg.samples, "Monte Carlo samples per crossing volume");
  app.add_option("--seed", cfg.seed);
  app.add_option("--bins", cfg.bins);
  app.add_option("--range", range, "histogram range lo,hi")->delimiter(',')->expected(2);
  app.add_option("--out", cfg.out, "output file (prefix for simulate); stdout if omitted");
  app.add_option("--cache", cfg.cache, "volume cache written by `volume`");
  app.add_option("--form", cfg.form, "all_partitions | catalan_plus_crossing");
  app.add_option("--sizes", cfg.sizes, "oracle decay grid, e.g. 10,20,40")->delimiter(',');
  app.add_option("--tolerances", cfg.tolerances, "JSON overrides for verify");
  app.add_option("--histograms", cfg.histograms, "directory for verify histogram CSVs");
  app.add_option("--criteria", cfg.criteria, "verify only these criteria")->delimiter(',');

  for (const char* name : {"partitions", "volume", "moments", "curie-weiss", "simulate", "oracle", "verify"}) {
    app.add_subcommand(name)->callback([&cfg, name] { cfg.subcommand = name; });
  }

  CLI11_PARSE(app, argc, argv);
  cfg.lo = range.at(0);
  cfg.hi = range.at(1);
  try {
    return diagcorr::cli::dispatch(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "diagcorr: " << e.what() << '\n';
    return 2;
  }
}
