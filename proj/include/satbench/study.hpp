#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satbench/cnf.hpp"
#include "satbench/error.hpp"
#include "satbench/fit.hpp"
#include "satbench/generators.hpp"
#include "satbench/instance.hpp"
#include "satbench/noise_opt.hpp"
#include "satbench/parallel.hpp"
#include "satbench/record_io.hpp"
#include "satbench/rng.hpp"
#include "satbench/stats.hpp"
#include "satbench/usa_filter.hpp"
#include "satbench/walksat.hpp"

namespace satbench {

// Stream tags: every random stream is derived from
// (master seed, tag, size, instance/attempt index, probe index, run index).
enum StreamTag : std::uint64_t {
  kStreamGenerate = 1,
  kStreamWalksat = 2,
  kStreamUsaCurve = 3,
};

enum class NoiseMode { Default, Optimized };

struct StudyConfig {
  ModelFamily family = ModelFamily::Xorsat3Reg;
  std::vector<int> sizes;
  int per_size = 100;
  WalkSatParams walksat;  // base parameters; noise applies in Default mode
  NoiseMode noise_mode = NoiseMode::Default;
  int runs_per_probe = 11;
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::int64_t gen_attempt_cap = 200'000;  // USA generation attempts per size
  std::int64_t rejection_cap = kDefaultRejectionCap;
  std::uint64_t dpll_node_budget = kDefaultDpllNodeBudget;
  std::optional<int> fit_min_n;  // fit window override: sizes >= this
  std::string out_dir;           // empty: do not write files

  void validate() const {
    if (sizes.empty()) throw InvalidArgument("size ladder is empty");
    for (std::size_t i = 1; i < sizes.size(); ++i)
      if (sizes[i] <= sizes[i - 1])
        throw InvalidArgument("size ladder must be strictly increasing");
    if (per_size < 1) throw InvalidArgument("instances per size must be >= 1");
    if (runs_per_probe < 1) throw InvalidArgument("runs_per_probe must be >= 1");
    walksat.validate();
  }
};

struct SizeResult {
  int n = 0;
  int m = 0;
  FlipsStats stats;
  int usa_found = 0;
  std::int64_t attempts = 0;        // generation attempts consumed
  std::int64_t dpll_skipped = 0;    // attempts abandoned on DPLL node budget
  bool insufficient = false;        // fewer USA instances than requested
  std::vector<double> best_noise;   // per instance (Optimized mode)
};

struct StudyResult {
  StudyConfig config;
  std::vector<SizeResult> rows;
  std::vector<RunRecord> records;
  std::optional<ScalingFit> fit;
  std::string fit_error;
};

struct UsaCurvePoint {
  int n = 0;
  int trials = 0;
  int usa_count = 0;
  double p_usa = 0.0;
  double std_error = 0.0;   // binomial
  bool degenerate = false;  // too few trials for a meaningful error bar
  std::int64_t dpll_skipped = 0;
};

namespace detail {

struct GenerationOutcome {
  std::optional<Instance> instance;  // present iff kept (USA and non-degenerate)
  bool dpll_skipped = false;
};

inline GenerationOutcome generate_and_filter(ModelFamily family, int n_vars,
                                             std::uint64_t seed,
                                             std::int64_t rejection_cap,
                                             std::uint64_t dpll_node_budget) {
  Rng rng(seed);
  const ModelSpec spec = ModelSpec::at_threshold(family, n_vars);
  Instance inst = generate(spec, rng, rejection_cap);
  GenerationOutcome out;
  if (inst.n_vars == 0 || inst.clauses.empty()) return out;  // pruned to nothing
  const UsaResult usa = filter_usa(inst, dpll_node_budget);
  if (usa.budget_exceeded) {
    out.dpll_skipped = true;
    return out;
  }
  if (usa.unique) out.instance = std::move(inst);
  return out;
}

}  // namespace detail

struct UsaCollection {
  std::vector<Instance> instances;
  std::vector<std::int64_t> attempt_index;  // which attempt produced each instance
  std::int64_t attempts_used = 0;
  std::int64_t dpll_skipped = 0;
  bool insufficient = false;
};

// Keeps the first `count` attempts (by attempt index) that pass the USA
// filter. Attempts are evaluated in fixed-size blocks so the kept set is
// identical for any worker count.
inline UsaCollection collect_usa_instances(ModelFamily family, int n_vars, int count,
                                           std::uint64_t master_seed, int workers,
                                           std::int64_t attempt_cap,
                                           std::int64_t rejection_cap,
                                           std::uint64_t dpll_node_budget) {
  constexpr std::int64_t kBlock = 256;
  UsaCollection result;
  for (std::int64_t lo = 0; lo < attempt_cap && static_cast<int>(result.instances.size()) < count;
       lo += kBlock) {
    const std::int64_t hi = std::min(lo + kBlock, attempt_cap);
    std::vector<detail::GenerationOutcome> block(static_cast<std::size_t>(hi - lo));
    parallel_for(block.size(), workers, [&](std::size_t k) {
      const std::int64_t attempt = lo + static_cast<std::int64_t>(k);
      const std::uint64_t seed = derive_seed(
          master_seed, {kStreamGenerate, static_cast<std::uint64_t>(n_vars),
                        static_cast<std::uint64_t>(attempt)});
      block[k] = detail::generate_and_filter(family, n_vars, seed, rejection_cap,
                                             dpll_node_budget);
    });
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (static_cast<int>(result.instances.size()) >= count) break;
      result.attempts_used = lo + static_cast<std::int64_t>(k) + 1;
      if (block[k].dpll_skipped) ++result.dpll_skipped;
      if (block[k].instance) {
        result.instances.push_back(std::move(*block[k].instance));
        result.attempt_index.push_back(lo + static_cast<std::int64_t>(k));
      }
    }
  }
  result.insufficient = static_cast<int>(result.instances.size()) < count;
  return result;
}

// P(USA) at one size: `trials` instances generated and filtered.
inline UsaCurvePoint measure_usa_probability(ModelFamily family, int n_vars, int trials,
                                             std::uint64_t master_seed, int workers = 1,
                                             std::int64_t rejection_cap = kDefaultRejectionCap,
                                             std::uint64_t dpll_node_budget = kDefaultDpllNodeBudget) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  std::vector<std::uint8_t> unique(static_cast<std::size_t>(trials), 0);
  std::vector<std::uint8_t> skipped(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
    const std::uint64_t seed =
        derive_seed(master_seed, {kStreamUsaCurve, static_cast<std::uint64_t>(n_vars),
                                  static_cast<std::uint64_t>(t)});
    Rng rng(seed);
    const ModelSpec spec = ModelSpec::at_threshold(family, n_vars);
    Instance inst = generate(spec, rng, rejection_cap);
    const UsaResult usa = filter_usa(inst, dpll_node_budget);
    unique[t] = usa.unique ? 1 : 0;
    skipped[t] = usa.budget_exceeded ? 1 : 0;
  });

  UsaCurvePoint point;
  point.n = n_vars;
  point.trials = trials;
  for (auto u : unique) point.usa_count += u;
  for (auto sk : skipped) point.dpll_skipped += sk;
  point.p_usa = static_cast<double>(point.usa_count) / trials;
  point.std_error = std::sqrt(point.p_usa * (1.0 - point.p_usa) / trials);
  point.degenerate = trials < 2;
  return point;
}

namespace detail {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string instance_label(ModelFamily family, int n, std::int64_t attempt) {
  return std::string(family_name(family)) + "/N" + std::to_string(n) + "/g" +
         std::to_string(attempt);
}

}  // namespace detail

inline std::string study_prefix(const StudyConfig& config) {
  return std::string(family_name(config.family)) +
         (config.noise_mode == NoiseMode::Default ? "_default" : "_opt");
}

inline void write_study_outputs(const StudyResult& result, const std::string& out_dir);

// Full scaling study: per size, collect USA instances, run WalkSAT (one run
// per instance at fixed noise, or a per-instance noise optimization), then
// fit ln(median) against N on the configured window.
inline StudyResult run_scaling_study(const StudyConfig& config) {
  config.validate();
  StudyResult result;
  result.config = config;

  for (int n : config.sizes) {
    SizeResult row;
    row.n = n;
    row.m = ModelSpec::at_threshold(config.family, n).n_clauses;

    UsaCollection usa = collect_usa_instances(
        config.family, n, config.per_size, config.master_seed, config.workers,
        config.gen_attempt_cap, config.rejection_cap, config.dpll_node_budget);
    row.usa_found = static_cast<int>(usa.instances.size());
    row.attempts = usa.attempts_used;
    row.dpll_skipped = usa.dpll_skipped;
    row.insufficient = usa.insufficient;

    const std::size_t n_instances = usa.instances.size();
    std::vector<std::optional<double>> per_instance(n_instances);
    std::vector<std::vector<RunRecord>> per_instance_records(n_instances);
    std::vector<double> per_instance_noise(n_instances, config.walksat.noise);

    parallel_for(n_instances, config.workers, [&](std::size_t i) {
      const CnfFormula formula = encode_instance(usa.instances[i]);
      const std::string id =
          detail::instance_label(config.family, n, usa.attempt_index[i]);
      if (config.noise_mode == NoiseMode::Default) {
        WalkSatParams params = config.walksat;
        params.seed = derive_seed(
            config.master_seed,
            {kStreamWalksat, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i), 0, 0});
        RunRecord rec = walksat_run(formula, params, id);
        rec.assignment.reset();
        per_instance[i] = rec.flips ? std::optional<double>(static_cast<double>(*rec.flips))
                                    : std::nullopt;
        per_instance_records[i].push_back(std::move(rec));
      } else {
        const std::uint64_t stream = derive_seed(
            config.master_seed,
            {kStreamWalksat, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i)});
        auto sink = [&](const RunRecord& rec, int probe) {
          RunRecord copy = rec;
          copy.assignment.reset();
          copy.instance_id = id + "/p" + std::to_string(probe);
          per_instance_records[i].push_back(std::move(copy));
        };
        try {
          const NoiseOptResult opt = optimize_noise(
              formula, config.walksat, config.runs_per_probe, stream, 0.02, sink, id);
          per_instance[i] = opt.flips;
          per_instance_noise[i] = opt.noise;
        } catch (const BudgetExhausted&) {
          per_instance[i] = std::nullopt;
        }
      }
    });

    for (std::size_t i = 0; i < n_instances; ++i)
      for (auto& rec : per_instance_records[i]) result.records.push_back(std::move(rec));
    if (config.noise_mode == NoiseMode::Optimized)
      row.best_noise.assign(per_instance_noise.begin(), per_instance_noise.end());

    if (!per_instance.empty()) row.stats = flips_stats(per_instance);
    result.rows.push_back(std::move(row));
  }

  // fit on non-censored rows within the window
  std::vector<FitPoint> points;
  for (const auto& row : result.rows) {
    if (row.usa_found == 0 || row.stats.censored || std::isnan(row.stats.median)) continue;
    points.push_back({row.n, row.stats.median});
  }
  try {
    std::vector<FitPoint> window;
    if (config.fit_min_n) {
      for (const auto& p : points)
        if (p.n >= *config.fit_min_n) window.push_back(p);
    } else {
      window = default_fit_window(points);
    }
    result.fit = fit_exponential(window);
  } catch (const Error& e) {
    result.fit_error = e.what();
  }

  if (!config.out_dir.empty()) write_study_outputs(result, config.out_dir);
  return result;
}

inline void write_study_outputs(const StudyResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir);
  const std::string prefix = (fs::path(out_dir) / study_prefix(result.config)).string();

  auto open = [](const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
  };

  {
    auto csv = open(prefix + "_medians.csv");
    csv << "N,median,q25,q75,solved_fraction,censored\n";
    for (const auto& row : result.rows) {
      csv << row.n << ',' << detail::format_double(row.stats.median) << ','
          << detail::format_double(row.stats.q25) << ','
          << detail::format_double(row.stats.q75) << ','
          << detail::format_double(row.stats.solved_fraction) << ','
          << (row.stats.censored ? 1 : 0) << '\n';
    }
  }
  {
    auto dat = open(prefix + "_plot.dat");
    dat << "# N ln_median\n";
    for (const auto& row : result.rows) {
      if (std::isnan(row.stats.median) || row.stats.median <= 0.0) continue;
      dat << row.n << ' ' << detail::format_double(std::log(row.stats.median)) << '\n';
    }
  }
  {
    nlohmann::json j;
    if (result.fit) {
      j["A"] = result.fit->a;
      j["mu"] = result.fit->mu;
      j["stderr_mu"] = result.fit->stderr_mu;
      j["window"] = result.fit->window_sizes;
      j["residuals"] = result.fit->residuals;
    } else {
      j["error"] = result.fit_error;
    }
    auto out = open(prefix + "_fit.json");
    out << j.dump(2) << '\n';
  }
  {
    auto out = open(prefix + "_runs.jsonl");
    for (const auto& rec : result.records) out << run_record_line(rec) << '\n';
  }
  {
    nlohmann::json j;
    j["family"] = std::string(family_name(result.config.family));
    j["noise_mode"] =
        result.config.noise_mode == NoiseMode::Default ? "default" : "optimized";
    j["sizes"] = result.config.sizes;
    j["per_size"] = result.config.per_size;
    j["master_seed"] = result.config.master_seed;
    j["noise"] = result.config.walksat.noise;
    j["max_flips"] = result.config.walksat.max_flips;
    j["max_total_flips"] = result.config.walksat.max_total_flips;
    j["runs_per_probe"] = result.config.runs_per_probe;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
      nlohmann::json r;
      r["N"] = row.n;
      r["M"] = row.m;
      r["usa_found"] = row.usa_found;
      r["attempts"] = row.attempts;
      r["dpll_skipped"] = row.dpll_skipped;
      r["insufficient"] = row.insufficient;
      if (!row.best_noise.empty()) r["best_noise"] = row.best_noise;
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    auto out = open(prefix + "_summary.json");
    out << j.dump(2) << '\n';
  }
}

}  // namespace satbench
