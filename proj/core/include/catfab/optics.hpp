#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "catfab/fock.hpp"

namespace catfab::optics {

/// One outcome of photon counting on a subset of modes: the detected counts,
/// the outcome probability, and the renormalized residual state with the
/// measured modes reset to zero occupation.
struct DetectionBranch {
  fock::Occupation detected;
  double weight = 0.0;
  fock::FockState post_state;
};

/// No-click post-selection with detector efficiency eta. A detector that
/// absorbed j photons stays silent with probability (1-eta)^j, so acceptance
/// mixes the genuine vacuum branch with silently absorbed leak branches.
struct LossyAcceptResult {
  double accept_prob = 0.0;
  double true_weight = 0.0;
  /// absorbed-photon total (>= 1) -> accepted probability mass
  std::map<int, double> corrupt_weights;
  double eta = 1.0;
};

struct VacuumProjection {
  double probability = 0.0;
  fock::FockState post_state;
};

/// 50:50 beam splitter. Creation operators transform as
/// a* -> (a* + i b*)/sqrt(2), b* -> (i a* + b*)/sqrt(2); unitary and
/// photon-number preserving.
fock::FockState apply_beam_splitter(const fock::FockState& s, int mode_i,
                                    int mode_j);

/// Phase shifter: each term gains exp(i * theta * n_mode).
fock::FockState apply_phase_shift(const fock::FockState& s, int mode,
                                  double theta);

/// Probability of detecting zero photons on the given modes, and the
/// renormalized surviving component. Input must be normalized.
VacuumProjection project_vacuum(const fock::FockState& s,
                                std::span<const int> modes);

/// Complete photon-counting decomposition over the given modes, ordered
/// lexicographically by detected counts. Weights sum to 1.
std::vector<DetectionBranch> measure_branches(const fock::FockState& s,
                                              std::span<const int> modes);

LossyAcceptResult lossy_no_click_accept(const fock::FockState& s,
                                        std::span<const int> modes,
                                        double eta);

/// Array of {detected, weight, post_state} objects.
std::string to_json(std::span<const DetectionBranch> branches);

}  // namespace catfab::optics
