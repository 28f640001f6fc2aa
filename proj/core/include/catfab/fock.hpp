#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catfab::fock {

/// Photon counts per mode. Length always equals the owning state's mode count.
using Occupation = std::vector<int>;

using Amplitude = std::complex<double>;

struct OccupationHash {
  std::size_t operator()(const Occupation& occ) const noexcept;
};

inline constexpr double kDefaultPruneTolerance = 1e-13;

/// Tolerance on |norm_sq - 1| when an operation requires a normalized input.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Sparse multimode photon-number state: occupation vectors mapped to complex
/// amplitudes. States are not implicitly normalized; norm_sq() reports the
/// current squared norm. Terms whose amplitude magnitude falls below the
/// prune tolerance are removed by prune(), which every superposition and
/// optical element applies to its result.
class FockState {
 public:
  /// Empty single-mode state.
  FockState() : FockState(1) {}

  explicit FockState(int num_modes,
                     double prune_tolerance = kDefaultPruneTolerance);

  int num_modes() const noexcept { return num_modes_; }
  double prune_tolerance() const noexcept { return prune_tolerance_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Amplitude of one basis state; zero if absent.
  Amplitude amplitude(const Occupation& occ) const;

  /// Accumulates value onto the stored amplitude. Throws std::invalid_argument
  /// on wrong occupation length, a negative count, or a non-finite amplitude.
  void add_term(const Occupation& occ, Amplitude value);

  /// Removes terms with |amplitude| < prune_tolerance.
  void prune();

  const std::unordered_map<Occupation, Amplitude, OccupationHash>& terms()
      const noexcept {
    return terms_;
  }

  /// Terms in lexicographic occupation order: the canonical order for
  /// serialization and for order-stable floating-point reductions.
  std::vector<std::pair<Occupation, Amplitude>> sorted_terms() const;

 private:
  int num_modes_;
  double prune_tolerance_;
  std::unordered_map<Occupation, Amplitude, OccupationHash> terms_;
};

/// All-zero occupation with amplitude 1. Throws if num_modes < 1.
FockState vacuum(int num_modes);

/// (a_mode^dag)^power with bosonic normalization a^dag|n> = sqrt(n+1)|n+1>,
/// so each term picks up sqrt((n+power)!/n!).
FockState apply_creation(const FockState& s, int mode, int power);

/// Termwise c1*s1 + c2*s2, pruned. Mode counts must match.
FockState superpose(const FockState& s1, Amplitude c1, const FockState& s2,
                    Amplitude c2);

/// Every term scaled by c.
FockState scaled(const FockState& s, Amplitude c);

/// Kronecker product; occupations concatenate, amplitudes multiply.
FockState tensor(const FockState& s1, const FockState& s2);

/// Conjugate-linear in s1, linear in s2.
Amplitude inner_product(const FockState& s1, const FockState& s2);

double norm_sq(const FockState& s);

/// |<a|b>|^2. Inputs must be normalized.
double fidelity(const FockState& a, const FockState& b);

/// Joint photon-number distribution over the given modes, keyed by the
/// detected counts in the order the modes were listed. The input must be
/// normalized (kNormalizationTolerance); the result is not renormalized.
std::map<Occupation, double> photon_number_distribution(
    const FockState& s, std::span<const int> modes);

/// Drops the listed modes. Every term must have zero occupation there.
FockState remove_modes(const FockState& s, std::span<const int> modes);

/// {"num_modes": n, "terms": [{"occ": [...], "re": x, "im": y}, ...]}
/// with terms in lexicographic occupation order.
std::string to_json(const FockState& s);
FockState from_json(const std::string& text);

}  // namespace catfab::fock
