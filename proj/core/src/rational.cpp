#include "catfab/rational.hpp"

#include <stdexcept>

namespace catfab {

BigInt big_factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

BigInt big_binomial(unsigned n, unsigned k) {
  if (k > n) {
    return 0;
  }
  if (k > n - k) {
    k = n - k;
  }
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

BigInt big_pow2(unsigned n) {
  return BigInt(1) << n;
}

double to_double(const Rational& r) {
  return r.convert_to<double>();
}

std::string fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    throw std::invalid_argument("not a num/den fraction: " + text);
  }
  BigInt num, den;
  try {
    num = BigInt(text.substr(0, slash));
    den = BigInt(text.substr(slash + 1));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a num/den fraction: " + text);
  }
  if (den == 0) {
    throw std::invalid_argument("zero denominator: " + text);
  }
  return Rational(num, den);
}

}  // namespace catfab
