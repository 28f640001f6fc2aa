#pragma once

// Internal numeric helpers shared by the core translation units.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace catfab::detail {

// n! as a double; exact for n <= 170, +inf beyond double range.
inline double dfactorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int k = 1; k <= 170; ++k) {
      t[k] = t[k - 1] * k;
    }
    return t;
  }();
  if (n < 0) {
    throw std::invalid_argument("factorial of negative value");
  }
  if (n <= 170) {
    return table[static_cast<std::size_t>(n)];
  }
  return std::numeric_limits<double>::infinity();
}

// sqrt(a! * b! / (c! * d!)) via log-gamma when any factorial overflows.
inline double sqrt_factorial_ratio(int a, int b, int c, int d) {
  if (a <= 170 && b <= 170 && c <= 170 && d <= 170) {
    return std::sqrt(dfactorial(a) * dfactorial(b) /
                     (dfactorial(c) * dfactorial(d)));
  }
  const double lg = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(c + 1.0) - std::lgamma(d + 1.0);
  return std::exp(0.5 * lg);
}

// Binomial coefficient as a double; exact while the running product stays
// below 2^53.
inline double dbinomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  if (k > n - k) {
    k = n - k;
  }
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

// i^k for k >= 0, exact.
inline std::complex<double> ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

void check_modes(std::span<const int> modes, int num_modes);

}  // namespace catfab::detail
