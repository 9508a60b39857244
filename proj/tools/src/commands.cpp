#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "diagcorr/combinatorial_oracle.hpp"
#include "diagcorr/curie_weiss.hpp"
#include "diagcorr/field_sampler.hpp"
#include "diagcorr/limit_moments.hpp"
#include "diagcorr/partitions.hpp"
#include "diagcorr/spectra.hpp"
#include "diagcorr/toeplitz_volume.hpp"
#include "diagcorr/version.hpp"

namespace diagcorr::cli {

using nlohmann::json;

namespace {

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  return out.str();
}

// Writes to cfg.out (or `path` when given) if set, otherwise to `fallback`.
void emit(const RunConfig& cfg, std::ostream& fallback, const std::function<void(std::ostream&)>& body,
          const std::string& path = {}) {
  const std::string target = path.empty() ? cfg.out : path;
  if (target.empty()) {
    fallback << cfg.header() << '\n';
    body(fallback);
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + target);
  file << cfg.header() << '\n';
  body(file);
}

GeneratorSpec spec_from(const RunConfig& cfg) {
  GeneratorSpec spec;
  spec.kind = parse_generator_kind(cfg.generator);
  spec.seed = cfg.seed;
  if (spec.kind == GeneratorKind::equicorrelated) spec.parameter = cfg.c.at(0);
  if (spec.kind == GeneratorKind::curie_weiss) spec.parameter = cfg.beta;
  spec.validate();
  return spec;
}

VolumeCache load_cache(const RunConfig& cfg) {
  if (cfg.cache.empty()) return {};
  std::ifstream in(cfg.cache);
  if (!in) throw std::runtime_error("cannot open volume cache " + cfg.cache);
  return VolumeCache::read(in);
}

}  // namespace

std::string RunConfig::echo() const {
  std::ostringstream out;
  out << std::setprecision(17) << "subcommand=" << subcommand << " k=" << k << " n=" << n << " c=" << join(c)
      << " beta=" << beta << " generator=" << generator << " realizations=" << realizations
      << " samples=" << samples << " seed=" << seed << " bins=" << bins << " range=" << lo << "," << hi
      << " form=" << form;
  if (!cache.empty()) out << " cache=" << cache;
  if (!sizes.empty()) out << " sizes=" << join(sizes);
  if (!tolerances.empty()) out << " tolerances=" << tolerances;
  if (!criteria.empty()) out << " criteria=" << join(criteria);
  return out.str();
}

std::string RunConfig::header() const { return std::string("# diagcorr ") + kVersion + " " + echo(); }

int cmd_partitions(const RunConfig& cfg, std::ostream& out) {
  const auto parts = enumerate_pair_partitions(cfg.k);
  emit(cfg, out, [&](std::ostream& o) {
    o << "partition,crossing,height\n";
    for (const auto& p : parts) o << p.to_string() << ',' << (is_crossing(p) ? 1 : 0) << ',' << height(p) << '\n';
  });
  return 0;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out) {
  VolumeCache cache;
  cache.fill(cfg.k, cfg.samples, cfg.seed);
  emit(cfg, out, [&](std::ostream& o) { cache.write(o); });
  return 0;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  VolumeCache cache = load_cache(cfg);
  const MomentForm form = parse_moment_form(cfg.form);
  const VolumePass pass{cfg.samples, cfg.seed};
  std::vector<MomentValue> rows;
  for (double c : cfg.c) {
    for (int k = 2; k <= cfg.k; k += 2) rows.push_back(nu_c_moment(k, c, cache, pass, form));
  }
  emit(cfg, out, [&](std::ostream& o) {
    o << std::setprecision(17) << "k,c,value,std_error,form\n";
    for (const auto& m : rows) {
      if (!m.note.empty()) o << "# c=" << m.c << ": " << m.note << '\n';
      o << m.k << ',' << m.c << ',' << m.value << ',' << m.std_error << ',' << to_string(m.form) << '\n';
    }
  });
  return 0;
}

int cmd_curie_weiss(const RunConfig& cfg, std::ostream& out) {
  const CurieWeissParams params{cfg.beta, cfg.n};
  params.validate();
  const double cn = exact_cn(params);
  const double c = limiting_c(cfg.beta);
  emit(cfg, out, [&](std::ostream& o) {
    o << std::setprecision(17) << "beta,n,exact_cn,limiting_c,magnetization,gap\n";
    o << cfg.beta << ',' << cfg.n << ',' << cn << ',' << c << ',' << spontaneous_magnetization(cfg.beta) << ','
      << std::abs(cn - c) << '\n';
  });
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const GeneratorSpec spec = spec_from(cfg);
  EnsembleOptions options;
  options.n = cfg.n;
  options.realizations = cfg.realizations;
  options.max_moment = std::max(2, cfg.k);
  options.bins = cfg.bins;
  options.lo = cfg.lo;
  options.hi = cfg.hi;
  const EnsembleStats stats = run_ensemble(spec, options);

  VolumeCache cache = load_cache(cfg);
  const double c = spec.limiting_correlation();
  const VolumePass pass{cfg.samples, cfg.seed};
  const auto moments = [&](std::ostream& o) {
    o << std::setprecision(17) << "k,empirical,SE,theoretical,theory_SE,z_score\n";
    for (int k = 2; k <= options.max_moment; k += 2) {
      const MomentEstimate& e = stats.moment(k);
      const MomentValue t = nu_c_moment(k, c, cache, pass);
      const double se = std::hypot(e.std_error, t.std_error);
      // Moments fixed by construction (m_2 with unit entries) only differ by rounding.
      const double diff = std::abs(e.mean - t.value) <= 1e-12 * std::max(1.0, std::abs(t.value)) ? 0.0 : e.mean - t.value;
      const double z = se > 0.0 ? diff / se : 0.0;
      o << k << ',' << e.mean << ',' << e.std_error << ',' << t.value << ',' << t.std_error << ',' << z << '\n';
    }
  };
  if (cfg.out.empty()) {
    emit(cfg, out, moments);
  } else {
    emit(cfg, out, moments, cfg.out + ".moments.csv");
    emit(cfg, out, [&](std::ostream& o) { stats.histogram.write_csv(o); }, cfg.out + ".histogram.csv");
  }
  return 0;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const OracleCounts counts = classify_tuples(cfg.n, cfg.k);
  const HeightLemmaReport lemma = check_height_lemma(cfg.n, cfg.k);
  VolumeCache cache = load_cache(cfg);

  json report;
  report["n"] = counts.n;
  report["k"] = counts.k;
  report["total_walks"] = counts.total_walks;
  report["pair_partition_walks"] = counts.pair_partition_walks;
  report["other_walks"] = counts.other_walks;
  report["height_lemma"] = {{"tuples_checked", lemma.tuples_checked}, {"violations", lemma.violations}};
  json parts = json::array();
  for (const auto& pc : counts.partitions) {
    json entry{{"partition", pc.partition.to_string()},
               {"height", pc.height},
               {"crossing", pc.crossing},
               {"sn", pc.sn},
               {"sn_star", pc.sn_star},
               {"sn_star_ratio", counts.sn_star_ratio(pc.partition)},
               {"excess_ratio", counts.excess_ratio(pc.partition)},
               {"m_histogram", pc.m_histogram},
               {"block_same_cell", pc.block_same_cell}};
    if (const VolumeEstimate* v = cache.find(pc.partition)) entry["p_T"] = v->value;
    parts.push_back(std::move(entry));
  }
  report["partitions"] = std::move(parts);
  if (!cfg.sizes.empty()) {
    json decay = json::array();
    for (const auto& d : check_sn_minus_snstar_decay(cfg.sizes, cfg.k)) {
      decay.push_back({{"partition", d.partition.to_string()},
                       {"sizes", d.sizes},
                       {"ratios", d.ratios},
                       {"identically_zero", d.identically_zero},
                       {"strictly_decreasing", d.strictly_decreasing},
                       {"halved", d.halved}});
    }
    report["excess_decay"] = std::move(decay);
  }
  emit(cfg, out, [&](std::ostream& o) { o << report.dump(2) << '\n'; });
  return lemma.violations == 0 ? 0 : 1;
}

AcceptanceConfig load_acceptance_config(const std::string& json_text) {
  AcceptanceConfig config;
  const json j = json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("tolerances must be a JSON object");
  Tolerances& t = config.tol;
  EnsembleScale& s = config.scale;
  for (const auto& [key, value] : j.items()) {
    if (key == "sigma") t.sigma = value.get<double>();
    else if (key == "volume_samples") t.volume_samples = value.get<std::uint64_t>();
    else if (key == "moment_volume_samples") t.moment_volume_samples = value.get<std::uint64_t>();
    else if (key == "k4_ratio_gap") t.k4_ratio_gap = value.get<double>();
    else if (key == "k4_ratio_n") t.k4_ratio_n = value.get<int>();
    else if (key == "k6_ratio_gap") t.k6_ratio_gap = value.get<double>();
    else if (key == "k6_ratio_n") t.k6_ratio_n = value.get<int>();
    else if (key == "concentration_slope") t.concentration_slope = value.get<double>();
    else if (key == "numerics") t.numerics = value.get<double>();
    else if (key == "limiting_c2") t.limiting_c2 = value.get<double>();
    else if (key == "limiting_c2_tol") t.limiting_c2_tol = value.get<double>();
    else if (key == "exact_cn_tol") t.exact_cn_tol = value.get<double>();
    else if (key == "cn_gap_at_1600") t.cn_gap_at_1600 = value.get<double>();
    else if (key == "n") s.n = value.get<int>();
    else if (key == "realizations") s.realizations = value.get<int>();
    else if (key == "curie_weiss_n") s.curie_weiss_n = value.get<int>();
    else if (key == "concentration_realizations") s.concentration_realizations = value.get<int>();
    else if (key == "seed") config.seed = value.get<std::uint64_t>();
    else throw std::invalid_argument("unknown tolerance key: " + key);
  }
  return config;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  AcceptanceConfig config;
  if (!cfg.tolerances.empty()) {
    std::ifstream in(cfg.tolerances);
    if (!in) throw std::runtime_error("cannot open " + cfg.tolerances);
    std::stringstream text;
    text << in.rdbuf();
    config = load_acceptance_config(text.str());
  }
  config.criteria = cfg.criteria;
  config.histogram_dir = cfg.histograms;

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw std::runtime_error("cannot open " + cfg.out);
    file << cfg.header() << '\n';
  }
  bool all = true;
  run_acceptance(config, [&](const CriterionResult& r) {
    all = all && r.pass();
    for (std::ostream* o : {&out, file.is_open() ? static_cast<std::ostream*>(&file) : nullptr}) {
      if (o == nullptr) continue;
      *o << r.summary() << '\n';
      for (const auto& c : r.checks) *o << "      " << (c.pass ? "ok  " : "BAD ") << c.description << '\n';
      o->flush();
    }
  });
  return all ? 0 : 1;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.subcommand == "partitions") return cmd_partitions(cfg, out);
  if (cfg.subcommand == "volume") return cmd_volume(cfg, out);
  if (cfg.subcommand == "moments") return cmd_moments(cfg, out);
  if (cfg.subcommand == "curie-weiss") return cmd_curie_weiss(cfg, out);
  if (cfg.subcommand == "simulate") return cmd_simulate(cfg, out);
  if (cfg.subcommand == "oracle") return cmd_oracle(cfg, out);
  if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
  throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
}

}  // namespace diagcorr::cli
