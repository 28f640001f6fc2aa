#pragma once

// Shared helpers for the test binaries: random sparse states and an
// independent analytic oracle for the doubling circuit's pre-detection state.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "catfab/fock.hpp"

namespace catfab::test {

inline double binom(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  double c = 1.0;
  for (int i = 1; i <= std::min(k, n - k); ++i) {
    c = c * (n - std::min(k, n - k) + i) / i;
  }
  return c;
}

inline double fact(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

inline std::complex<double> unit_i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

/// Analytic termwise expansion of the 4-mode state the doubling circuit
/// reaches just before photon counting, for exact n-cat inputs:
///   (1/(2^(n+1) n!)) [(a+ic)^n + (b+id)^n] [(ia+c)^n - (ib+d)^n] |0>,
/// evaluated by plain binomial algebra (no optical elements involved).
/// Keys are (a,b,c,d) occupations; values are state amplitudes.
inline std::map<std::array<int, 4>, std::complex<double>>
pre_detection_amplitudes(int n) {
  using Key = std::array<int, 4>;
  std::map<Key, std::complex<double>> mono;
  // first factor: index f over {0: (a+ic)^n on (a,c), 1: (b+id)^n on (b,d)}
  // second factor: index g over {0: (ia+c)^n on (a,c), 1: -(ib+d)^n on (b,d)}
  for (int f = 0; f < 2; ++f) {
    for (int g = 0; g < 2; ++g) {
      for (int k = 0; k <= n; ++k) {      // photons moved to c (or d) in f
        for (int l = 0; l <= n; ++l) {    // photons kept on a (or b) in g
          const std::complex<double> cf = binom(n, k) * unit_i_pow(k);
          const std::complex<double> cg =
              binom(n, l) * unit_i_pow(n - l) * (g == 0 ? 1.0 : -1.0);
          Key key{0, 0, 0, 0};
          if (f == 0) {
            key[0] += n - k;
            key[2] += k;
          } else {
            key[1] += n - k;
            key[3] += k;
          }
          if (g == 0) {
            key[0] += n - l;
            key[2] += l;
          } else {
            key[1] += n - l;
            key[3] += l;
          }
          mono[key] += cf * cg;
        }
      }
    }
  }
  const double prefactor = 1.0 / (std::pow(2.0, n + 1) * fact(n));
  std::map<Key, std::complex<double>> amps;
  for (const auto& [key, coeff] : mono) {
    const std::complex<double> amp =
        coeff * prefactor *
        std::sqrt(fact(key[0]) * fact(key[1]) * fact(key[2]) * fact(key[3]));
    if (std::abs(amp) > 1e-14) {
      amps[key] = amp;
    }
  }
  return amps;
}

/// Random sparse state: `terms` random occupations of at most
/// max_photons_per_mode per mode, with unit-box random complex amplitudes.
inline fock::FockState random_state(std::mt19937_64& rng, int num_modes,
                                    int max_photons_per_mode, int terms) {
  std::uniform_int_distribution<int> photon(0, max_photons_per_mode);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  fock::FockState s(num_modes);
  for (int t = 0; t < terms; ++t) {
    fock::Occupation occ(static_cast<std::size_t>(num_modes));
    for (auto& v : occ) {
      v = photon(rng);
    }
    s.add_term(occ, {coeff(rng), coeff(rng)});
  }
  return s;
}

inline fock::FockState normalized(const fock::FockState& s) {
  const double n2 = fock::norm_sq(s);
  return fock::scaled(s, 1.0 / std::sqrt(n2));
}

}  // namespace catfab::test
