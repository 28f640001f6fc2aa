#include "catfab/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catfab::analytics {

namespace {

void require(bool cond, const char* what) {
  if (!cond) {
    throw std::invalid_argument(what);
  }
}

void require_positive(int n) {
  require(n >= 1, "photon number must be >= 1");
}

bool is_power_of_two(long long v) {
  return v > 0 && (v & (v - 1)) == 0;
}

void require_power_of_two(int n) {
  require(is_power_of_two(n), "value must be a power of two");
}

}  // namespace

int log2_exact(int n) {
  require_power_of_two(n);
  int k = 0;
  while ((1 << k) < n) {
    ++k;
  }
  return k;
}

Rational doubling_success_prob(int n) {
  require_positive(n);
  return Rational(big_factorial(2 * static_cast<unsigned>(n)),
                  big_pow2(2 * static_cast<unsigned>(n) + 1) *
                      big_factorial(static_cast<unsigned>(n)) *
                      big_factorial(static_cast<unsigned>(n)));
}

double doubling_success_stirling(int n) {
  require_positive(n);
  return 1.0 / std::sqrt(4.0 * std::numbers::pi * n);
}

ScalingReport doubling_scaling_report(int n) {
  ScalingReport report;
  report.n = n;
  report.exact = doubling_success_prob(n);
  report.asymptotic = doubling_success_stirling(n);
  report.relative_error =
      std::abs(report.asymptotic / to_double(report.exact) - 1.0);
  return report;
}

Rational naive_success_prob(int n) {
  require_power_of_two(n);
  BigInt den = 1;
  const BigInt base = 2 * static_cast<unsigned>(n);
  for (int k = 0; k < n; ++k) {
    den *= base;
  }
  return Rational(2 * big_factorial(static_cast<unsigned>(n)), den);
}

Rational naive_success_prob_recurrence(int n) {
  require_power_of_two(n);
  Rational p = 1;
  for (int level = 1; level < n; level *= 2) {
    p = p * p * doubling_success_prob(level);
  }
  return p;
}

double naive_success_asymptotic(int n) {
  require_positive(n);
  return std::sqrt(8.0 * std::numbers::pi * n) *
         std::pow(2.0 * std::numbers::e, -static_cast<double>(n));
}

std::vector<PoolLevel> expected_pool_sequence(int target_n, double m_target) {
  require_power_of_two(target_n);
  require(m_target > 0.0, "m_target must be positive");
  std::vector<PoolLevel> levels;
  Rational multiplier = 1;  // M_level / M_target, exact
  levels.push_back(PoolLevel{target_n, m_target});
  for (int level = target_n / 2; level >= 1; level /= 2) {
    multiplier = 2 * multiplier / doubling_success_prob(level);
    levels.push_back(PoolLevel{level, to_double(multiplier) * m_target});
  }
  return levels;
}

double initial_singles_estimate(int target_n, double m_target) {
  require_power_of_two(target_n);
  require(m_target > 0.0, "m_target must be positive");
  const double levels = log2_exact(target_n);
  return std::pow(4.0 * std::sqrt(std::numbers::pi), levels) *
         std::pow(static_cast<double>(target_n), (levels - 1.0) / 4.0) *
         m_target;
}

double yield_estimate(int target_n) {
  require_power_of_two(target_n);
  const double levels = log2_exact(target_n);
  return std::pow(4.0 * std::sqrt(std::numbers::pi), -levels) *
         std::pow(static_cast<double>(target_n), (1.0 - levels) / 4.0);
}

Rational leak_prob_one_photon(int n) {
  require_positive(n);
  return Rational(2 * static_cast<unsigned>(n),
                  big_pow2(2 * static_cast<unsigned>(n)));
}

Rational leak_prob_two_photon(int n) {
  require_positive(n);
  return Rational(big_factorial(2 * static_cast<unsigned>(n) - 2),
                  big_pow2(2 * static_cast<unsigned>(n) + 1) *
                      big_factorial(static_cast<unsigned>(n) - 1) *
                      big_factorial(static_cast<unsigned>(n) - 1));
}

std::map<int, Rational> exact_detection_spectrum(int n) {
  require_positive(n);
  const unsigned un = static_cast<unsigned>(n);
  const BigInt norm = big_pow2(2 * un + 2) * big_factorial(un) *
                      big_factorial(un);
  std::map<int, Rational> spectrum;
  for (int m = 0; m <= 2 * n; ++m) {
    Rational p = 0;
    if (m % 2 == 0) {
      // Even totals come from the two single-detector branches
      // a^(2n-2j) c^(2j) and b^(2n-2j) d^(2j).
      const unsigned j = static_cast<unsigned>(m) / 2;
      const BigInt b = big_binomial(un, j);
      p = Rational(2 * b * b * big_factorial(2 * un - 2 * j) *
                       big_factorial(2 * j),
                   norm);
    } else {
      // Odd totals come from the mixed four-mode branches
      // a^(n-l) b^(n-k) c^l d^k with k + l = m.
      for (int k = 0; k <= n; ++k) {
        const int l = m - k;
        if (l < 0 || l > n) {
          continue;
        }
        const BigInt bk = big_binomial(un, static_cast<unsigned>(k));
        const BigInt bl = big_binomial(un, static_cast<unsigned>(l));
        p += Rational(4 * bk * bk * bl * bl *
                          big_factorial(un - static_cast<unsigned>(k)) *
                          big_factorial(un - static_cast<unsigned>(l)) *
                          big_factorial(static_cast<unsigned>(k)) *
                          big_factorial(static_cast<unsigned>(l)),
                      norm);
      }
    }
    spectrum[m] = p;
  }
  return spectrum;
}

double lossy_accept_prob(int n, double eta) {
  require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  const double miss = 1.0 - eta;
  double accept = 0.0;
  for (const auto& [m, p] : exact_detection_spectrum(n)) {
    accept += std::pow(miss, m) * to_double(p);
  }
  return accept;
}

double false_accept_fraction(int n, double eta) {
  require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  const double miss = 1.0 - eta;
  double clean = 0.0;
  double leaked = 0.0;
  for (const auto& [m, p] : exact_detection_spectrum(n)) {
    if (m == 0) {
      clean = to_double(p);
    } else {
      leaked += std::pow(miss, m) * to_double(p);
    }
  }
  return leaked == 0.0 ? 0.0 : leaked / (clean + leaked);
}

double baseline_scaling(int n, BaselineScheme scheme) {
  require(n >= 2 && n % 2 == 0, "baseline scalings are defined for even n");
  const double c = scheme == BaselineScheme::kok
                       ? std::numbers::sqrt2 * std::numbers::e
                       : std::numbers::e;
  return std::pow(c, -static_cast<double>(n));
}

}  // namespace catfab::analytics
