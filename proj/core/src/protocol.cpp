#include "catfab/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "catfab/analytics.hpp"
#include "catfab/factory.hpp"
#include "catfab/random.hpp"

namespace catfab::protocol {

namespace {

void require(bool cond, const char* what) {
  if (!cond) {
    throw std::invalid_argument(what);
  }
}

void validate(const ProtocolConfig& config) {
  require(config.target_n >= 2 && factory::is_power_of_two(config.target_n),
          "target_n must be a power of two >= 2");
  require(config.target_count >= 1, "target_count must be >= 1");
  require(config.eta >= 0.0 && config.eta <= 1.0, "eta must lie in [0, 1]");
  require(config.initial_level == 1 || config.initial_level == 2,
          "initial_level must be 1 or 2");
  require(config.initial_level <= config.target_n,
          "initial_level must not exceed target_n");
  if (config.max_singles) {
    require(*config.max_singles >= 1, "max_singles must be >= 1");
  }
}

AcceptModel accept_model(int level, double eta) {
  AcceptModel model;
  model.accept_prob = analytics::lossy_accept_prob(level, eta);
  model.clean_prob =
      std::min(to_double(analytics::doubling_success_prob(level)),
               model.accept_prob);
  return model;
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) {
    return 0.0;
  }
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

long long MemoryPool::total(int level) const {
  const auto it = levels.find(level);
  return it == levels.end() ? 0 : it->second.total();
}

AttemptRecord pair_and_attempt(MemoryPool& pool, int level,
                               const AcceptModel& model,
                               std::mt19937_64& rng) {
  auto& slot = pool.at_level(level);
  require(slot.total() >= 2, "fewer than two states at this level");

  // Consume clean states first.
  bool corrupt_input = false;
  for (int i = 0; i < 2; ++i) {
    if (slot.clean > 0) {
      --slot.clean;
    } else {
      --slot.corrupt;
      corrupt_input = true;
    }
  }

  AttemptRecord record;
  record.level = level;
  const double u = next_uniform(rng);
  if (u < model.accept_prob) {
    record.accepted = true;
    record.false_accept = u >= model.clean_prob;
    record.output_corrupt = record.false_accept || corrupt_input;
    auto& out = pool.at_level(2 * level);
    if (record.output_corrupt) {
      ++out.corrupt;
    } else {
      ++out.clean;
    }
  }
  return record;
}

RunStatistics run_protocol(const ProtocolConfig& config,
                           std::uint64_t run_index) {
  validate(config);

  // Per-level acceptance probabilities, computed once.
  std::map<int, AcceptModel> models;
  for (int level = config.initial_level; level < config.target_n;
       level *= 2) {
    models.emplace(level, accept_model(level, config.eta));
  }

  std::mt19937_64 rng = stream_engine(config.seed, run_index);
  MemoryPool pool;
  RunStatistics stats;
  const long long feed_cost = config.initial_level == 1 ? 1 : 2;

  while (pool.total(config.target_n) < config.target_count) {
    if (config.max_singles &&
        stats.singles_consumed + feed_cost > *config.max_singles) {
      stats.budget_exhausted = true;
      break;
    }
    // Feed one fresh state (a single, or a deterministic two-photon cat).
    stats.singles_consumed += feed_cost;
    ++stats.elapsed_steps;
    ++pool.at_level(config.initial_level).clean;
    ++stats.levels[config.initial_level].created;

    // Greedy bottom-up pairing; one feed can cascade at most one state per
    // level upward.
    for (int level = config.initial_level; level < config.target_n;
         level *= 2) {
      while (pool.total(level) >= 2) {
        const auto record =
            pair_and_attempt(pool, level, models.at(level), rng);
        ++stats.elapsed_steps;
        auto& tally = stats.levels[level];
        ++tally.attempts;
        if (record.accepted) {
          ++tally.successes;
          ++stats.levels[2 * level].created;
          if (record.false_accept) {
            ++tally.false_accepts;
          }
        }
      }
    }
  }

  for (const auto& [level, slot] : pool.levels) {
    auto& tally = stats.levels[level];
    tally.leftover_clean = slot.clean;
    tally.leftover_corrupt = slot.corrupt;
  }
  const auto final_it = pool.levels.find(config.target_n);
  if (final_it != pool.levels.end()) {
    stats.final_clean = final_it->second.clean;
    stats.final_corrupt = final_it->second.corrupt;
  }
  return stats;
}

Aggregate aggregate(std::span<const RunStatistics> runs) {
  require(!runs.empty(), "aggregate of zero runs");
  Aggregate agg;
  agg.runs = static_cast<long long>(runs.size());

  std::vector<double> singles;
  singles.reserve(runs.size());
  long long final_total = 0;
  long long final_corrupt = 0;
  std::map<int, std::pair<long long, long long>> attempts_successes;
  std::map<int, long long> false_accepts;
  for (const auto& run : runs) {
    singles.push_back(static_cast<double>(run.singles_consumed));
    final_total += run.final_clean + run.final_corrupt;
    final_corrupt += run.final_corrupt;
    if (run.budget_exhausted) {
      ++agg.budget_exhausted_runs;
    }
    for (const auto& [level, tally] : run.levels) {
      attempts_successes[level].first += tally.attempts;
      attempts_successes[level].second += tally.successes;
      false_accepts[level] += tally.false_accepts;
    }
  }

  double sum = 0.0;
  for (double v : singles) {
    sum += v;
  }
  agg.mean_singles = sum / static_cast<double>(singles.size());
  if (singles.size() > 1) {
    double ss = 0.0;
    for (double v : singles) {
      ss += (v - agg.mean_singles) * (v - agg.mean_singles);
    }
    agg.stderr_defined = true;
    agg.stderr_singles = std::sqrt(
        ss / (static_cast<double>(singles.size()) - 1.0) /
        static_cast<double>(singles.size()));
  }

  std::sort(singles.begin(), singles.end());
  agg.singles_p10 = quantile(singles, 0.1);
  agg.singles_median = quantile(singles, 0.5);
  agg.singles_p90 = quantile(singles, 0.9);

  if (final_total > 0) {
    agg.mean_singles_per_final_cat = sum / static_cast<double>(final_total);
    agg.corruption_fraction =
        static_cast<double>(final_corrupt) / static_cast<double>(final_total);
  }
  for (const auto& [level, as] : attempts_successes) {
    if (as.first > 0) {
      agg.level_success_rate[level] =
          static_cast<double>(as.second) / static_cast<double>(as.first);
    }
    if (as.second > 0) {
      agg.level_false_accept_rate[level] =
          static_cast<double>(false_accepts[level]) /
          static_cast<double>(as.second);
    }
  }
  return agg;
}

}  // namespace catfab::protocol
