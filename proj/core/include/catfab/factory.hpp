#pragma once

#include <map>
#include <random>

#include "catfab/fock.hpp"

namespace catfab::factory {

/// Result of one doubling attempt: two n-photon cats in, post-selection on
/// zero detected photons, one 2n-photon cat out. The pre-detection 4-mode
/// state is kept for diagnostics.
struct DoublingOutcome {
  int n_in = 0;
  double success_prob = 0.0;
  /// 2-mode output, normalized; empty when success_prob is 0.
  fock::FockState output_state;
  /// |<2n-cat | output>|^2, insensitive to global phase.
  double fidelity_to_target = 0.0;
  fock::FockState intermediate_state;
};

/// (|n,0> + |0,n>)/sqrt(2) on two modes, built analytically.
fock::FockState make_cat(int n);

/// One photon behind a 50:50 beam splitter plus a corrective phase;
/// exactly make_cat(1).
fock::FockState make_cat1_from_photon();

/// |1,1> behind a 50:50 beam splitter plus corrective phases: two-photon
/// coalescence leaves no odd split, giving exactly make_cat(2) with unit
/// probability.
fock::FockState make_cat2_hom();

/// The doubling circuit on two 2-mode states arranged as modes (0,1)x(2,3):
/// phase pi/n on mode 3, beam splitters on (0,2) and (1,3), vacuum
/// post-selection on modes (2,3), then phase pi/(2n) on mode 1. Inputs may be
/// arbitrary normalized 2-mode states; fidelity is reported against the exact
/// 2n-photon cat.
DoublingOutcome apply_doubling(const fock::FockState& left,
                               const fock::FockState& right, int n);

/// Pre-detection 4-mode state of the doubling circuit (before the vacuum
/// post-selection) for the given 2-mode inputs.
fock::FockState doubling_intermediate_state(const fock::FockState& left,
                                            const fock::FockState& right,
                                            int n);

/// Distribution of the total photon count over the two measured modes when
/// both inputs are exact n-cats. Entry 0 is the success probability; the
/// entries sum to 1.
std::map<int, double> doubling_detection_spectrum(int n);

struct CascadeResult {
  bool success = false;
  /// Doubling attempts drawn across all levels reached.
  long long attempts = 0;
  /// Single photons consumed (always target_n).
  long long singles = 0;
};

/// One memoryless all-or-nothing cascade from target_n singles: every
/// doubling at every level must succeed, otherwise the whole run fails.
/// Bernoulli-level simulation with exact per-level success probabilities.
CascadeResult naive_cascade(int target_n, std::mt19937_64& rng);

bool is_power_of_two(long long v);

}  // namespace catfab::factory
