#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace diagcorr;
using diagcorr::cli::RunConfig;

namespace {

std::string run(const RunConfig& cfg, int* code = nullptr) {
  std::ostringstream out;
  const int rc = cli::dispatch(cfg, out);
  if (code != nullptr) *code = rc;
  return out.str();
}

RunConfig make(const std::string& sub) {
  RunConfig cfg;
  cfg.subcommand = sub;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, PartitionsTable) {
  auto cfg = make("partitions");
  const std::string out = run(cfg);
  EXPECT_EQ(out.rfind("# diagcorr ", 0), 0u);
  EXPECT_NE(out.find("partition,crossing,height\n1-2,3-4,0,2\n1-3,2-4,1,0\n1-4,2-3,0,2\n"), std::string::npos);
  cfg.k = 2;
  EXPECT_NE(run(cfg).find("1-2,0,1\n"), std::string::npos);
  cfg.k = 3;
  EXPECT_THROW(run(cfg), std::invalid_argument);
}

TEST(Cli, VolumeFileIsDeterministic) {
  const auto dir = std::filesystem::temp_directory_path() / "diagcorr_cli_test";
  std::filesystem::create_directories(dir);
  auto cfg = make("volume");
  cfg.samples = 20'000;
  cfg.out = (dir / "a.txt").string();
  run(cfg);
  cfg.out = (dir / "b.txt").string();
  run(cfg);
  const std::string a = slurp(dir / "a.txt");
  EXPECT_EQ(a, slurp(dir / "b.txt"));
  EXPECT_NE(a.find("1-2,3-4 20000 20240601 1 0 1"), std::string::npos);

  // The cache feeds the moments command without another volume pass.
  auto moments = make("moments");
  moments.k = 4;
  moments.c = {0.0, 0.5};
  moments.cache = cfg.out;
  moments.samples = 0;
  const std::string table = run(moments);
  EXPECT_NE(table.find("k,c,value,std_error,form\n2,0,1,0,all_partitions\n4,0,2,0,all_partitions\n"),
            std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, MomentsCatalanAtZero) {
  auto cfg = make("moments");
  cfg.k = 8;
  cfg.c = {0.0};
  cfg.samples = 100;
  EXPECT_NE(run(cfg).find("2,0,1,0,all_partitions\n4,0,2,0,all_partitions\n6,0,5,0,all_partitions\n"
                          "8,0,14,0,all_partitions\n"),
            std::string::npos);
}

TEST(Cli, CurieWeissRow) {
  auto cfg = make("curie-weiss");
  cfg.n = 2;
  cfg.beta = 1.0;
  const std::string out = run(cfg);
  EXPECT_NE(out.find("beta,n,exact_cn,limiting_c,magnetization,gap\n1,2,0.4621171572600097"), std::string::npos);
}

TEST(Cli, SimulateSmokeAndFiles) {
  auto cfg = make("simulate");
  cfg.generator = "toeplitz";
  cfg.n = 1;
  cfg.realizations = 3;
  cfg.samples = 1000;
  EXPECT_NE(run(cfg).find("k,empirical,SE,theoretical,theory_SE,z_score\n"), std::string::npos);

  const auto prefix = std::filesystem::temp_directory_path() / "diagcorr_sim";
  cfg.generator = "curie-weiss";
  cfg.beta = 2.0;
  cfg.n = 30;
  cfg.out = prefix.string();
  run(cfg);
  const std::string hist = slurp(prefix.string() + ".histogram.csv");
  EXPECT_EQ(hist.rfind("# diagcorr ", 0), 0u);
  EXPECT_NE(hist.find("bin_left,bin_right,count,density"), std::string::npos);
  const std::string first = slurp(prefix.string() + ".moments.csv");
  run(cfg);
  EXPECT_EQ(first, slurp(prefix.string() + ".moments.csv"));
  std::filesystem::remove(prefix.string() + ".histogram.csv");
  std::filesystem::remove(prefix.string() + ".moments.csv");
}

TEST(Cli, OracleJson) {
  auto cfg = make("oracle");
  cfg.k = 4;
  cfg.n = 5;
  cfg.sizes = {5, 10};
  int code = -1;
  const std::string out = run(cfg, &code);
  EXPECT_EQ(code, 0);
  EXPECT_NE(out.find("\"total_walks\": 625"), std::string::npos);
  EXPECT_NE(out.find("\"violations\": 0"), std::string::npos);
  EXPECT_NE(out.find("\"excess_decay\""), std::string::npos);
}

TEST(Cli, ToleranceConfig) {
  const AcceptanceConfig c = cli::load_acceptance_config(R"({"sigma": 2, "k6_ratio_gap": 0.5, "seed": 9})");
  EXPECT_EQ(c.tol.sigma, 2.0);
  EXPECT_EQ(c.tol.k6_ratio_gap, 0.5);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_THROW(cli::load_acceptance_config(R"({"sigmaa": 2})"), std::invalid_argument);
  EXPECT_THROW(cli::load_acceptance_config("[1, 2]"), std::invalid_argument);
}

TEST(Cli, VerifyFailsOnTamperedTolerances) {
  const auto path = std::filesystem::temp_directory_path() / "diagcorr_tamper.json";
  {
    std::ofstream f(path);
    f << R"({"numerics": 1e-30})";
  }
  auto cfg = make("verify");
  cfg.tolerances = path.string();
  cfg.criteria = {9};
  int code = 0;
  const std::string out = run(cfg, &code);
  EXPECT_EQ(code, 1);
  EXPECT_EQ(out.rfind("FAIL  [9]", 0), 0u);
  EXPECT_NE(out.find("BAD "), std::string::npos);

  cfg.tolerances.clear();
  cfg.criteria = {1};
  EXPECT_EQ(run(cfg).rfind("PASS  [1]", 0), 0u);
  std::filesystem::remove(path);
}
