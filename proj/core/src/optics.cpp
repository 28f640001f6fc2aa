#include "catfab/optics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "detail.hpp"
#include "json.hpp"

namespace catfab::optics {

namespace detail = catfab::detail;

using fock::Amplitude;
using fock::FockState;
using fock::Occupation;

namespace {

void require(bool cond, const char* what) {
  if (!cond) {
    throw std::invalid_argument(what);
  }
}

void require_normalized(const FockState& s) {
  if (std::abs(fock::norm_sq(s) - 1.0) > fock::kNormalizationTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

}  // namespace

FockState apply_beam_splitter(const FockState& s, int mode_i, int mode_j) {
  require(mode_i != mode_j, "beam splitter needs two distinct modes");
  const int pair[] = {mode_i, mode_j};
  detail::check_modes(pair, s.num_modes());

  // Re-expand each term's two-mode monomial under
  //   a*^m -> 2^(-m/2) sum_k C(m,k) i^k       a*^(m-k) b*^k
  //   b*^n -> 2^(-n/2) sum_l C(n,l) i^(n-l)   a*^(n-l) b*^l
  // converting between amplitudes and monomial coefficients with the
  // sqrt(occ!) normalization.
  FockState out(s.num_modes(), s.prune_tolerance());
  const std::size_t ui = static_cast<std::size_t>(mode_i);
  const std::size_t uj = static_cast<std::size_t>(mode_j);
  for (const auto& [occ, amp] : s.terms()) {
    const int m = occ[ui];
    const int n = occ[uj];
    if (m + n == 0) {
      out.add_term(occ, amp);
      continue;
    }
    const Amplitude base =
        amp * std::pow(0.5, 0.5 * (m + n));
    Occupation moved = occ;
    for (int k = 0; k <= m; ++k) {
      for (int l = 0; l <= n; ++l) {
        const int p = (m - k) + (n - l);
        const int q = k + l;
        const Amplitude coeff = base * detail::dbinomial(m, k) *
                                detail::dbinomial(n, l) *
                                detail::ipow(k + n - l) *
                                detail::sqrt_factorial_ratio(p, q, m, n);
        moved[ui] = p;
        moved[uj] = q;
        out.add_term(moved, coeff);
      }
    }
  }
  out.prune();
  return out;
}

FockState apply_phase_shift(const FockState& s, int mode, double theta) {
  const int one[] = {mode};
  detail::check_modes(one, s.num_modes());
  FockState out(s.num_modes(), s.prune_tolerance());
  for (const auto& [occ, amp] : s.terms()) {
    const double angle = theta * occ[static_cast<std::size_t>(mode)];
    out.add_term(occ, amp * std::polar(1.0, angle));
  }
  return out;
}

VacuumProjection project_vacuum(const FockState& s,
                                std::span<const int> modes) {
  detail::check_modes(modes, s.num_modes());
  require_normalized(s);
  FockState component(s.num_modes(), s.prune_tolerance());
  for (const auto& [occ, amp] : s.terms()) {
    bool empty_there = true;
    for (int m : modes) {
      if (occ[static_cast<std::size_t>(m)] != 0) {
        empty_there = false;
        break;
      }
    }
    if (empty_there) {
      component.add_term(occ, amp);
    }
  }
  const double probability = fock::norm_sq(component);
  VacuumProjection result{probability, FockState(s.num_modes(),
                                                 s.prune_tolerance())};
  if (probability > 0.0) {
    result.post_state = fock::scaled(component, 1.0 / std::sqrt(probability));
  }
  return result;
}

std::vector<DetectionBranch> measure_branches(const FockState& s,
                                              std::span<const int> modes) {
  detail::check_modes(modes, s.num_modes());
  require_normalized(s);

  // Group terms by the detected pattern, zeroing the measured modes.
  std::map<Occupation, FockState> components;
  for (const auto& [occ, amp] : s.sorted_terms()) {
    Occupation detected(modes.size());
    Occupation residue = occ;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      detected[k] = occ[static_cast<std::size_t>(modes[k])];
      residue[static_cast<std::size_t>(modes[k])] = 0;
    }
    auto [it, inserted] = components.try_emplace(
        detected, FockState(s.num_modes(), s.prune_tolerance()));
    it->second.add_term(residue, amp);
  }

  std::vector<DetectionBranch> branches;
  branches.reserve(components.size());
  for (auto& [detected, component] : components) {
    const double weight = fock::norm_sq(component);
    if (weight <= 0.0) {
      continue;
    }
    branches.push_back(DetectionBranch{
        detected, weight,
        fock::scaled(component, 1.0 / std::sqrt(weight))});
  }
  return branches;
}

LossyAcceptResult lossy_no_click_accept(const FockState& s,
                                        std::span<const int> modes,
                                        double eta) {
  require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  LossyAcceptResult result;
  result.eta = eta;
  const double miss = 1.0 - eta;
  for (const auto& branch : measure_branches(s, modes)) {
    int absorbed = 0;
    for (int c : branch.detected) {
      absorbed += c;
    }
    const double silent = std::pow(miss, absorbed);
    const double mass = branch.weight * silent;
    result.accept_prob += mass;
    if (absorbed == 0) {
      result.true_weight += mass;
    } else if (mass > 0.0) {
      result.corrupt_weights[absorbed] += mass;
    }
  }
  return result;
}

std::string to_json(std::span<const DetectionBranch> branches) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : branches) {
    arr.push_back({{"detected", b.detected},
                   {"weight", b.weight},
                   {"post_state",
                    nlohmann::json::parse(fock::to_json(b.post_state))}});
  }
  return arr.dump();
}

}  // namespace catfab::optics
