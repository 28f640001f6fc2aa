#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>

namespace catfab::protocol {

struct ProtocolConfig {
  /// Desired cat size; power of two >= 2.
  int target_n = 2;
  /// How many target cats one run must bank before it stops.
  long long target_count = 1;
  /// Detector efficiency in [0, 1].
  double eta = 1.0;
  std::uint64_t seed = 0;
  /// 1 starts from singles; 2 starts from deterministic two-photon cats
  /// (each costing two singles).
  int initial_level = 1;
  /// Optional cap on singles consumed; exhausting it ends the run early.
  std::optional<long long> max_singles;
};

/// Per-level inventory of stored cats, split by corruption flag.
struct MemoryPool {
  struct Slot {
    long long clean = 0;
    long long corrupt = 0;
    long long total() const noexcept { return clean + corrupt; }
  };
  std::map<int, Slot> levels;

  Slot& at_level(int level) { return levels[level]; }
  long long total(int level) const;
};

/// Acceptance model for one doubling level: the no-click probability, and
/// within it the probability that no photon actually leaked. clean_prob
/// equals accept_prob exactly when eta = 1.
struct AcceptModel {
  double accept_prob = 1.0;
  double clean_prob = 1.0;
};

struct AttemptRecord {
  int level = 0;
  bool accepted = false;
  /// Accepted although the draw itself leaked photons.
  bool false_accept = false;
  /// Output flagged corrupt: own false accept or any corrupt input.
  bool output_corrupt = false;
};

/// Removes two states at `level` (clean ones first), draws the attempt
/// outcome, and deposits the output at 2*level on acceptance. Throws if the
/// level holds fewer than two states.
AttemptRecord pair_and_attempt(MemoryPool& pool, int level,
                               const AcceptModel& model,
                               std::mt19937_64& rng);

struct LevelStats {
  long long created = 0;
  long long attempts = 0;
  long long successes = 0;
  long long false_accepts = 0;
  long long leftover_clean = 0;
  long long leftover_corrupt = 0;
};

struct RunStatistics {
  long long singles_consumed = 0;
  /// State insertions plus doubling attempts.
  long long elapsed_steps = 0;
  long long final_clean = 0;
  long long final_corrupt = 0;
  bool budget_exhausted = false;
  /// Keyed by cat size; attempts/successes at level n are the doublings that
  /// consumed pairs of n-cats.
  std::map<int, LevelStats> levels;
};

/// One seeded run of the pooled factory: generate feed states on demand,
/// greedily pair and attempt any level holding two states, keep successes in
/// the pool, and stop once target_count cats of size target_n exist (or the
/// singles budget runs out). Identical (config, run_index) pairs give
/// identical statistics.
RunStatistics run_protocol(const ProtocolConfig& config,
                           std::uint64_t run_index = 0);

struct Aggregate {
  long long runs = 0;
  double mean_singles = 0.0;
  double stderr_singles = 0.0;
  /// False for a single run, where the standard error is 0 by convention.
  bool stderr_defined = false;
  double singles_p10 = 0.0;
  double singles_median = 0.0;
  double singles_p90 = 0.0;
  /// Total singles over total finished cats, all runs pooled.
  double mean_singles_per_final_cat = 0.0;
  std::map<int, double> level_success_rate;
  std::map<int, double> level_false_accept_rate;
  double corruption_fraction = 0.0;
  long long budget_exhausted_runs = 0;
};

/// Pooled summary statistics. Throws on an empty input.
Aggregate aggregate(std::span<const RunStatistics> runs);

}  // namespace catfab::protocol
