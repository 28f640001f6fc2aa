#include "catfab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail.hpp"
#include "json.hpp"

namespace catfab::detail {

void check_modes(std::span<const int> modes, int num_modes) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= num_modes) {
      throw std::invalid_argument("mode index out of range");
    }
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      if (modes[i] == modes[j]) {
        throw std::invalid_argument("duplicate mode index");
      }
    }
  }
}

}  // namespace catfab::detail

namespace catfab::fock {

namespace detail = catfab::detail;

namespace {

void require(bool cond, const char* what) {
  if (!cond) {
    throw std::invalid_argument(what);
  }
}

void require_normalized(const FockState& s) {
  if (std::abs(norm_sq(s) - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

}  // namespace

std::size_t OccupationHash::operator()(const Occupation& occ) const noexcept {
  // FNV-1a over the raw counts.
  std::size_t h = 1469598103934665603ull;
  for (int v : occ) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b9ull;
    h *= 1099511628211ull;
  }
  return h;
}

FockState::FockState(int num_modes, double prune_tolerance)
    : num_modes_(num_modes), prune_tolerance_(prune_tolerance) {
  require(num_modes >= 1, "num_modes must be >= 1");
  require(prune_tolerance >= 0.0, "prune_tolerance must be >= 0");
}

Amplitude FockState::amplitude(const Occupation& occ) const {
  const auto it = terms_.find(occ);
  return it == terms_.end() ? Amplitude{0.0, 0.0} : it->second;
}

void FockState::add_term(const Occupation& occ, Amplitude value) {
  require(static_cast<int>(occ.size()) == num_modes_,
          "occupation length does not match mode count");
  for (int v : occ) {
    require(v >= 0, "negative photon count");
  }
  require(std::isfinite(value.real()) && std::isfinite(value.imag()),
          "non-finite amplitude");
  terms_[occ] += value;
}

void FockState::prune() {
  const double tol_sq = prune_tolerance_ * prune_tolerance_;
  std::erase_if(terms_, [tol_sq](const auto& kv) {
    return std::norm(kv.second) < tol_sq;
  });
}

std::vector<std::pair<Occupation, Amplitude>> FockState::sorted_terms() const {
  std::vector<std::pair<Occupation, Amplitude>> out(terms_.begin(),
                                                    terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

FockState vacuum(int num_modes) {
  FockState s(num_modes);
  s.add_term(Occupation(static_cast<std::size_t>(num_modes), 0),
             Amplitude{1.0, 0.0});
  return s;
}

FockState apply_creation(const FockState& s, int mode, int power) {
  require(mode >= 0 && mode < s.num_modes(), "mode index out of range");
  require(power >= 1, "power must be >= 1");
  FockState out(s.num_modes(), s.prune_tolerance());
  for (const auto& [occ, amp] : s.terms()) {
    Occupation raised = occ;
    raised[static_cast<std::size_t>(mode)] += power;
    const double factor = detail::sqrt_factorial_ratio(
        raised[static_cast<std::size_t>(mode)], 0,
        occ[static_cast<std::size_t>(mode)], 0);
    out.add_term(raised, amp * factor);
  }
  return out;
}

FockState superpose(const FockState& s1, Amplitude c1, const FockState& s2,
                    Amplitude c2) {
  require(s1.num_modes() == s2.num_modes(), "mode counts differ");
  FockState out(s1.num_modes(), s1.prune_tolerance());
  for (const auto& [occ, amp] : s1.terms()) {
    out.add_term(occ, c1 * amp);
  }
  for (const auto& [occ, amp] : s2.terms()) {
    out.add_term(occ, c2 * amp);
  }
  out.prune();
  return out;
}

FockState scaled(const FockState& s, Amplitude c) {
  FockState out(s.num_modes(), s.prune_tolerance());
  for (const auto& [occ, amp] : s.terms()) {
    out.add_term(occ, c * amp);
  }
  out.prune();
  return out;
}

FockState tensor(const FockState& s1, const FockState& s2) {
  FockState out(s1.num_modes() + s2.num_modes(), s1.prune_tolerance());
  for (const auto& [occ1, amp1] : s1.terms()) {
    for (const auto& [occ2, amp2] : s2.terms()) {
      Occupation joint = occ1;
      joint.insert(joint.end(), occ2.begin(), occ2.end());
      out.add_term(joint, amp1 * amp2);
    }
  }
  return out;
}

Amplitude inner_product(const FockState& s1, const FockState& s2) {
  require(s1.num_modes() == s2.num_modes(), "mode counts differ");
  // Iterate the smaller side, accumulate in canonical order.
  const FockState& small = s1.term_count() <= s2.term_count() ? s1 : s2;
  const bool swapped = &small == &s2;
  Amplitude acc{0.0, 0.0};
  for (const auto& [occ, amp] : small.sorted_terms()) {
    const Amplitude other =
        swapped ? s1.amplitude(occ) : s2.amplitude(occ);
    acc += swapped ? std::conj(other) * amp : std::conj(amp) * other;
  }
  return acc;
}

double norm_sq(const FockState& s) {
  double acc = 0.0;
  for (const auto& [occ, amp] : s.sorted_terms()) {
    acc += std::norm(amp);
  }
  return acc;
}

double fidelity(const FockState& a, const FockState& b) {
  return std::norm(inner_product(a, b));
}

std::map<Occupation, double> photon_number_distribution(
    const FockState& s, std::span<const int> modes) {
  detail::check_modes(modes, s.num_modes());
  require_normalized(s);
  std::map<Occupation, double> dist;
  for (const auto& [occ, amp] : s.sorted_terms()) {
    Occupation key(modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
      key[k] = occ[static_cast<std::size_t>(modes[k])];
    }
    dist[key] += std::norm(amp);
  }
  return dist;
}

FockState remove_modes(const FockState& s, std::span<const int> modes) {
  detail::check_modes(modes, s.num_modes());
  require(static_cast<int>(modes.size()) < s.num_modes(),
          "cannot remove every mode");
  std::vector<bool> drop(static_cast<std::size_t>(s.num_modes()), false);
  for (int m : modes) {
    drop[static_cast<std::size_t>(m)] = true;
  }
  FockState out(s.num_modes() - static_cast<int>(modes.size()),
                s.prune_tolerance());
  for (const auto& [occ, amp] : s.terms()) {
    Occupation kept;
    kept.reserve(occ.size() - modes.size());
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (drop[m]) {
        require(occ[m] == 0, "removed mode is occupied");
      } else {
        kept.push_back(occ[m]);
      }
    }
    out.add_term(kept, amp);
  }
  return out;
}

std::string to_json(const FockState& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [occ, amp] : s.sorted_terms()) {
    terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  nlohmann::json j{{"num_modes", s.num_modes()}, {"terms", std::move(terms)}};
  return j.dump();
}

FockState from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  FockState s(j.at("num_modes").get<int>());
  for (const auto& term : j.at("terms")) {
    s.add_term(term.at("occ").get<Occupation>(),
               Amplitude{term.at("re").get<double>(),
                         term.at("im").get<double>()});
  }
  return s;
}

}  // namespace catfab::fock
