#include "cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "catfab/analytics.hpp"
#include "catfab/factory.hpp"
#include "catfab/io.hpp"
#include "catfab/optics.hpp"
#include "catfab/protocol.hpp"
#include "catfab/random.hpp"

namespace catfab::cli {

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int write_output(const std::string& path, const std::string& payload,
                 std::ostream& out, std::ostream& err) {
  if (path == "-") {
    out << payload;
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "catfab: cannot open '" << path << "' for writing\n";
    return kExitIo;
  }
  file << payload;
  file.flush();
  if (!file) {
    err << "catfab: write to '" << path << "' failed\n";
    return kExitIo;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tn

struct TnOptions {
  int n = 1;
  double eta = 1.0;
  std::string out_path = "-";
};

int run_tn(const TnOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.n < 1) {
    err << "catfab tn: --n must be >= 1\n";
    return kExitUsage;
  }
  if (opt.eta < 0.0 || opt.eta > 1.0) {
    err << "catfab tn: --eta must lie in [0, 1]\n";
    return kExitUsage;
  }
  if (!factory::is_power_of_two(opt.n)) {
    err << "catfab tn: warning: n = " << opt.n
        << " is not a power of two; the recursive protocol never visits this "
           "level\n";
  }

  const auto cat = factory::make_cat(opt.n);
  const auto outcome = factory::apply_doubling(cat, cat, opt.n);
  static constexpr int kDetectedModes[] = {2, 3};
  const auto lossy = optics::lossy_no_click_accept(outcome.intermediate_state,
                                                   kDetectedModes, opt.eta);
  const auto exact = analytics::doubling_success_prob(opt.n);

  nlohmann::json spectrum_sim = nlohmann::json::array();
  for (const auto& [m, w] : factory::doubling_detection_spectrum(opt.n)) {
    spectrum_sim.push_back({{"photons", m}, {"weight", w}});
  }
  nlohmann::json spectrum_exact = nlohmann::json::array();
  for (const auto& [m, p] : analytics::exact_detection_spectrum(opt.n)) {
    spectrum_exact.push_back({{"photons", m},
                              {"prob", to_double(p)},
                              {"prob_ratio", fraction_string(p)}});
  }
  nlohmann::json corrupt = nlohmann::json::array();
  for (const auto& [j, w] : lossy.corrupt_weights) {
    corrupt.push_back({{"photons", j}, {"weight", w}});
  }

  const nlohmann::json report{
      {"schema_version", kSchemaVersion},
      {"n", opt.n},
      {"eta", opt.eta},
      {"success_prob_exact", fraction_string(exact)},
      {"success_prob_exact_float", to_double(exact)},
      {"success_prob_sim", outcome.success_prob},
      {"fidelity_to_target", outcome.fidelity_to_target},
      {"branch_spectrum_sim", std::move(spectrum_sim)},
      {"branch_spectrum_exact", std::move(spectrum_exact)},
      {"lossy_accept",
       {{"eta", lossy.eta},
        {"accept_prob", lossy.accept_prob},
        {"true_weight", lossy.true_weight},
        {"corrupt_weights", std::move(corrupt)}}},
      {"false_accept_fraction",
       analytics::false_accept_fraction(opt.n, opt.eta)},
  };
  return write_output(opt.out_path, report.dump(2) + "\n", out, err);
}

// ---------------------------------------------------------------------------
// table

struct TableOptions {
  int max_exponent = 1;
  std::string out_path = "-";
};

int run_table(const TableOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.max_exponent < 1) {
    err << "catfab table: --max-exponent must be >= 1\n";
    return kExitUsage;
  }
  io::CsvTable table;
  table.columns = {"n",
                   "exact_p_tn_ratio",
                   "exact_p_tn",
                   "stirling_p_tn",
                   "exact_naive_p_ratio",
                   "exact_naive_p",
                   "naive_asymptotic",
                   "m1_exact",
                   "m1_estimate",
                   "yield_estimate",
                   "leak1_ratio",
                   "leak1",
                   "leak2_ratio",
                   "leak2",
                   "baseline_kok",
                   "baseline_fiurasek",
                   "schema_version"};
  for (int n = 1; n <= (1 << opt.max_exponent); n *= 2) {
    const auto p_tn = analytics::doubling_success_prob(n);
    const auto naive = analytics::naive_success_prob(n);
    const auto leak1 = analytics::leak_prob_one_photon(n);
    const auto leak2 = analytics::leak_prob_two_photon(n);
    const auto pool = analytics::expected_pool_sequence(n, 1.0);
    const double m1_exact = pool.back().expected_count;
    std::vector<std::string> row{
        std::to_string(n),
        fraction_string(p_tn),
        io::format_double(to_double(p_tn)),
        io::format_double(analytics::doubling_success_stirling(n)),
        fraction_string(naive),
        io::format_double(to_double(naive)),
        io::format_double(analytics::naive_success_asymptotic(n)),
        io::format_double(m1_exact),
        io::format_double(analytics::initial_singles_estimate(n, 1.0)),
        io::format_double(analytics::yield_estimate(n)),
        fraction_string(leak1),
        io::format_double(to_double(leak1)),
        fraction_string(leak2),
        io::format_double(to_double(leak2)),
        n % 2 == 0 ? io::format_double(analytics::baseline_scaling(
                         n, analytics::BaselineScheme::kok))
                   : std::string{},
        n % 2 == 0 ? io::format_double(analytics::baseline_scaling(
                         n, analytics::BaselineScheme::fiurasek))
                   : std::string{},
        std::to_string(kSchemaVersion)};
    table.rows.push_back(std::move(row));
  }
  std::ostringstream payload;
  io::write_csv(payload, table);
  return write_output(opt.out_path, payload.str(), out, err);
}

// ---------------------------------------------------------------------------
// pool

struct PoolOptions {
  int target_n = 2;
  long long count = 1;
  long long runs = 1;
  double eta = 1.0;
  std::uint64_t seed = 0;
  int initial_level = 1;
  std::int64_t max_singles = -1;
  std::string out_path = "-";
  std::string runs_csv_path;
};

nlohmann::json rate_map_json(const std::map<int, double>& rates,
                             const char* value_key) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [level, rate] : rates) {
    arr.push_back({{"level", level}, {value_key, rate}});
  }
  return arr;
}

int run_pool(const PoolOptions& opt, std::ostream& out, std::ostream& err) {
  protocol::ProtocolConfig config;
  config.target_n = opt.target_n;
  config.target_count = opt.count;
  config.eta = opt.eta;
  config.seed = opt.seed;
  config.initial_level = opt.initial_level;
  if (opt.max_singles >= 0) {
    config.max_singles = opt.max_singles;
  }
  if (opt.runs < 1) {
    err << "catfab pool: --runs must be >= 1\n";
    return kExitUsage;
  }

  std::vector<protocol::RunStatistics> runs;
  try {
    runs.reserve(static_cast<std::size_t>(opt.runs));
    for (long long i = 0; i < opt.runs; ++i) {
      runs.push_back(
          protocol::run_protocol(config, static_cast<std::uint64_t>(i)));
    }
  } catch (const std::invalid_argument& e) {
    err << "catfab pool: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto agg = protocol::aggregate(runs);

  if (!opt.runs_csv_path.empty()) {
    io::CsvTable table;
    table.columns = {"run_index",   "singles_consumed", "elapsed_steps",
                     "budget_exhausted", "final_clean", "final_corrupt"};
    std::vector<int> levels;
    for (int level = config.initial_level; level <= config.target_n;
         level *= 2) {
      levels.push_back(level);
      const std::string suffix = "_l" + std::to_string(level);
      for (const char* name : {"created", "attempts", "successes",
                               "false_accepts", "leftover_clean",
                               "leftover_corrupt"}) {
        table.columns.push_back(name + suffix);
      }
    }
    table.columns.push_back("schema_version");
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& run = runs[i];
      std::vector<std::string> row{std::to_string(i),
                                   std::to_string(run.singles_consumed),
                                   std::to_string(run.elapsed_steps),
                                   run.budget_exhausted ? "1" : "0",
                                   std::to_string(run.final_clean),
                                   std::to_string(run.final_corrupt)};
      for (int level : levels) {
        const auto it = run.levels.find(level);
        const protocol::LevelStats stats =
            it == run.levels.end() ? protocol::LevelStats{} : it->second;
        row.push_back(std::to_string(stats.created));
        row.push_back(std::to_string(stats.attempts));
        row.push_back(std::to_string(stats.successes));
        row.push_back(std::to_string(stats.false_accepts));
        row.push_back(std::to_string(stats.leftover_clean));
        row.push_back(std::to_string(stats.leftover_corrupt));
      }
      row.push_back(std::to_string(kSchemaVersion));
      table.rows.push_back(std::move(row));
    }
    std::ostringstream payload;
    io::write_csv(payload, table);
    const int rc = write_output(opt.runs_csv_path, payload.str(), out, err);
    if (rc != kExitOk) {
      return rc;
    }
  }

  const nlohmann::json summary{
      {"schema_version", kSchemaVersion},
      {"config",
       {{"target_n", config.target_n},
        {"target_count", config.target_count},
        {"eta", config.eta},
        {"seed", config.seed},
        {"initial_level", config.initial_level},
        {"max_singles", config.max_singles
                            ? nlohmann::json(*config.max_singles)
                            : nlohmann::json(nullptr)},
        {"runs", opt.runs},
        // Attempts with corrupt inputs reuse the clean acceptance
        // probability; an approximation, recorded here.
        {"corrupt_input_accept_model", "same_accept_prob_as_clean"}}},
      {"mean_singles", agg.mean_singles},
      {"stderr_singles", agg.stderr_singles},
      {"stderr_defined", agg.stderr_defined},
      {"singles_p10", agg.singles_p10},
      {"singles_median", agg.singles_median},
      {"singles_p90", agg.singles_p90},
      {"mean_singles_per_final_cat", agg.mean_singles_per_final_cat},
      {"level_success_rate", rate_map_json(agg.level_success_rate, "rate")},
      {"level_false_accept_rate",
       rate_map_json(agg.level_false_accept_rate, "rate")},
      {"corruption_fraction", agg.corruption_fraction},
      {"budget_exhausted_runs", agg.budget_exhausted_runs},
  };
  return write_output(opt.out_path, summary.dump(2) + "\n", out, err);
}

// ---------------------------------------------------------------------------
// cascade

struct CascadeOptions {
  int target_n = 2;
  long long runs = 1;
  std::uint64_t seed = 0;
  std::string out_path = "-";
};

int run_cascade(const CascadeOptions& opt, std::ostream& out,
                std::ostream& err) {
  if (!factory::is_power_of_two(opt.target_n) || opt.target_n < 2) {
    err << "catfab cascade: --target must be a power of two >= 2\n";
    return kExitUsage;
  }
  if (opt.runs < 1) {
    err << "catfab cascade: --runs must be >= 1\n";
    return kExitUsage;
  }
  long long successes = 0;
  long long attempts = 0;
  for (long long i = 0; i < opt.runs; ++i) {
    auto rng = stream_engine(opt.seed, static_cast<std::uint64_t>(i));
    const auto result = factory::naive_cascade(opt.target_n, rng);
    successes += result.success ? 1 : 0;
    attempts += result.attempts;
  }
  const double rate =
      static_cast<double>(successes) / static_cast<double>(opt.runs);
  const double stderr_rate =
      std::sqrt(rate * (1.0 - rate) / static_cast<double>(opt.runs));
  const auto exact = analytics::naive_success_prob(opt.target_n);
  const nlohmann::json report{
      {"schema_version", kSchemaVersion},
      {"target_n", opt.target_n},
      {"runs", opt.runs},
      {"seed", opt.seed},
      {"successes", successes},
      {"success_rate", rate},
      {"stderr", stderr_rate},
      {"ci3sigma_low", rate - 3.0 * stderr_rate},
      {"ci3sigma_high", rate + 3.0 * stderr_rate},
      {"exact_prob", to_double(exact)},
      {"exact_prob_ratio", fraction_string(exact)},
      {"mean_attempts",
       static_cast<double>(attempts) / static_cast<double>(opt.runs)},
      {"singles_per_run", opt.target_n},
  };
  return write_output(opt.out_path, report.dump(2) + "\n", out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"linear-optics cat-state factory: exact simulation, closed "
               "forms, and pooled-protocol Monte Carlo"};
  app.name("catfab");
  app.require_subcommand(1);

  TnOptions tn;
  auto* tn_cmd = app.add_subcommand(
      "tn", "Simulate one doubling step and report its statistics as JSON");
  tn_cmd->add_option("-n,--n", tn.n, "input cat photon number")->required();
  tn_cmd->add_option("--eta", tn.eta, "detector efficiency in [0,1]")
      ->capture_default_str();
  tn_cmd->add_option("-o,--out", tn.out_path, "output path ('-' = stdout)")
      ->capture_default_str();

  TableOptions tbl;
  auto* table_cmd = app.add_subcommand(
      "table", "Emit the closed-form scaling table as CSV for n = 1..2^k");
  table_cmd->add_option("-k,--max-exponent", tbl.max_exponent,
                        "largest exponent k (table covers n = 1..2^k)")
      ->required();
  table_cmd->add_option("-o,--out", tbl.out_path, "output path ('-' = stdout)")
      ->capture_default_str();

  PoolOptions pool;
  auto* pool_cmd = app.add_subcommand(
      "pool", "Monte Carlo runs of the memory-pooled recursive factory");
  pool_cmd->add_option("-t,--target", pool.target_n,
                       "target cat size (power of two >= 2)")
      ->required();
  pool_cmd->add_option("-c,--count", pool.count, "target cats per run")
      ->capture_default_str();
  pool_cmd->add_option("-r,--runs", pool.runs, "number of independent runs")
      ->capture_default_str();
  pool_cmd->add_option("--eta", pool.eta, "detector efficiency in [0,1]")
      ->capture_default_str();
  pool_cmd->add_option("-s,--seed", pool.seed, "master seed (required)")
      ->required();
  pool_cmd
      ->add_option("--initial-level", pool.initial_level,
                   "start from singles (1) or deterministic 2-cats (2)")
      ->capture_default_str();
  pool_cmd->add_option("--max-singles", pool.max_singles,
                       "singles budget per run (default: unlimited)");
  pool_cmd->add_option("-o,--out", pool.out_path,
                       "summary JSON path ('-' = stdout)")
      ->capture_default_str();
  pool_cmd->add_option("--runs-csv", pool.runs_csv_path,
                       "optional per-run statistics CSV path");

  CascadeOptions cascade;
  auto* cascade_cmd = app.add_subcommand(
      "cascade", "Monte Carlo runs of the memoryless all-or-nothing cascade");
  cascade_cmd->add_option("-t,--target", cascade.target_n,
                          "target cat size (power of two >= 2)")
      ->required();
  cascade_cmd->add_option("-r,--runs", cascade.runs, "number of runs")
      ->capture_default_str();
  cascade_cmd->add_option("-s,--seed", cascade.seed, "master seed (required)")
      ->required();
  cascade_cmd->add_option("-o,--out", cascade.out_path,
                          "output path ('-' = stdout)")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("catfab");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*tn_cmd) {
      return run_tn(tn, out, err);
    }
    if (*table_cmd) {
      return run_table(tbl, out, err);
    }
    if (*pool_cmd) {
      return run_pool(pool, out, err);
    }
    return run_cascade(cascade, out, err);
  } catch (const std::invalid_argument& e) {
    err << "catfab: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace catfab::cli
