#include "catfab/factory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "catfab/analytics.hpp"
#include "catfab/optics.hpp"
#include "catfab/random.hpp"

namespace catfab::factory {

using fock::Amplitude;
using fock::FockState;
using fock::Occupation;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require(bool cond, const char* what) {
  if (!cond) {
    throw std::invalid_argument(what);
  }
}

void require_two_mode_normalized(const FockState& s, const char* side) {
  if (s.num_modes() != 2) {
    throw std::invalid_argument(std::string(side) +
                                " input must have exactly 2 modes");
  }
  if (std::abs(fock::norm_sq(s) - 1.0) > fock::kNormalizationTolerance) {
    throw std::invalid_argument(std::string(side) +
                                " input is not normalized");
  }
}

}  // namespace

bool is_power_of_two(long long v) {
  return v > 0 && (v & (v - 1)) == 0;
}

FockState make_cat(int n) {
  require(n >= 1, "cat photon number must be >= 1");
  FockState s(2);
  s.add_term({n, 0}, Amplitude{kInvSqrt2, 0.0});
  s.add_term({0, n}, Amplitude{kInvSqrt2, 0.0});
  return s;
}

FockState make_cat1_from_photon() {
  FockState photon(2);
  photon.add_term({1, 0}, Amplitude{1.0, 0.0});
  // (|1,0> + i|0,1>)/sqrt(2); the phase shifter removes the i.
  FockState split = optics::apply_beam_splitter(photon, 0, 1);
  return optics::apply_phase_shift(split, 1, -std::numbers::pi / 2.0);
}

FockState make_cat2_hom() {
  FockState pair(2);
  pair.add_term({1, 1}, Amplitude{1.0, 0.0});
  // i(|2,0> + |0,2>)/sqrt(2); a -pi/4 shift on each mode removes the i.
  FockState split = optics::apply_beam_splitter(pair, 0, 1);
  split = optics::apply_phase_shift(split, 0, -std::numbers::pi / 4.0);
  return optics::apply_phase_shift(split, 1, -std::numbers::pi / 4.0);
}

FockState doubling_intermediate_state(const FockState& left,
                                      const FockState& right, int n) {
  require(n >= 1, "photon number must be >= 1");
  require_two_mode_normalized(left, "left");
  require_two_mode_normalized(right, "right");
  FockState joint = fock::tensor(left, right);
  joint = optics::apply_phase_shift(joint, 3, std::numbers::pi / n);
  joint = optics::apply_beam_splitter(joint, 0, 2);
  joint = optics::apply_beam_splitter(joint, 1, 3);
  return joint;
}

DoublingOutcome apply_doubling(const FockState& left, const FockState& right,
                               int n) {
  DoublingOutcome outcome;
  outcome.n_in = n;
  outcome.intermediate_state = doubling_intermediate_state(left, right, n);

  static constexpr int kDetectedModes[] = {2, 3};
  const auto projection =
      optics::project_vacuum(outcome.intermediate_state, kDetectedModes);
  outcome.success_prob = projection.probability;
  if (projection.probability <= 0.0) {
    outcome.output_state = FockState(2);
    outcome.fidelity_to_target = 0.0;
    return outcome;
  }
  const FockState corrected = optics::apply_phase_shift(
      projection.post_state, 1, std::numbers::pi / (2.0 * n));
  outcome.output_state = fock::remove_modes(corrected, kDetectedModes);
  outcome.fidelity_to_target =
      fock::fidelity(make_cat(2 * n), outcome.output_state);
  return outcome;
}

std::map<int, double> doubling_detection_spectrum(int n) {
  const FockState cat = make_cat(n);
  const FockState joint = doubling_intermediate_state(cat, cat, n);
  static constexpr int kDetectedModes[] = {2, 3};
  std::map<int, double> spectrum;
  for (const auto& branch : optics::measure_branches(joint, kDetectedModes)) {
    int total = 0;
    for (int c : branch.detected) {
      total += c;
    }
    spectrum[total] += branch.weight;
  }
  return spectrum;
}

CascadeResult naive_cascade(int target_n, std::mt19937_64& rng) {
  require(target_n >= 2 && is_power_of_two(target_n),
          "cascade target must be a power of two >= 2");
  CascadeResult result;
  result.singles = target_n;
  result.success = true;
  for (int level = 1; level < target_n; level *= 2) {
    const int attempts_here = target_n / (2 * level);
    const double p = to_double(analytics::doubling_success_prob(level));
    bool all_ok = true;
    for (int a = 0; a < attempts_here; ++a) {
      ++result.attempts;
      if (next_uniform(rng) >= p) {
        all_ok = false;
      }
    }
    if (!all_ok) {
      result.success = false;
      break;
    }
  }
  return result;
}

}  // namespace catfab::factory
