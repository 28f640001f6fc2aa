#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "catfab/fock.hpp"
#include "support.hpp"

using namespace catfab;
using fock::Amplitude;
using fock::FockState;
using fock::Occupation;

TEST_SUITE_BEGIN("fock");

TEST_CASE("vacuum is the unit all-zero state") {
  const auto v2 = fock::vacuum(2);
  CHECK(v2.term_count() == 1);
  CHECK(v2.amplitude({0, 0}) == Amplitude{1.0, 0.0});
  const auto v4 = fock::vacuum(4);
  CHECK(v4.amplitude({0, 0, 0, 0}) == Amplitude{1.0, 0.0});
  CHECK(fock::norm_sq(fock::vacuum(3)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fock::vacuum(0), std::invalid_argument);
}

TEST_CASE("creation operators carry bosonic normalization") {
  const auto two = fock::apply_creation(fock::vacuum(1), 0, 2);
  CHECK(two.amplitude({2}).real() == doctest::Approx(std::sqrt(2.0)));
  const auto one = fock::apply_creation(fock::vacuum(2), 1, 1);
  CHECK(one.amplitude({0, 1}) == Amplitude{1.0, 0.0});

  // ||a*^4 |0>||^2 = 4! two ways: one shot and iterated singles.
  const auto fourshot = fock::apply_creation(fock::vacuum(1), 0, 4);
  CHECK(fock::norm_sq(fourshot) == doctest::Approx(24.0).epsilon(1e-12));
  auto iterated = fock::vacuum(1);
  for (int i = 0; i < 4; ++i) {
    iterated = fock::apply_creation(iterated, 0, 1);
  }
  CHECK(fock::norm_sq(iterated) == doctest::Approx(24.0).epsilon(1e-12));

  CHECK_THROWS_AS(fock::apply_creation(fock::vacuum(1), 1, 1),
                  std::invalid_argument);
}

TEST_CASE("superpose combines, cancels, and rejects mode mismatch") {
  FockState left(2), right(2);
  left.add_term({2, 0}, {1.0, 0.0});
  right.add_term({0, 2}, {1.0, 0.0});
  const double inv = 1.0 / std::sqrt(2.0);
  const auto cat = fock::superpose(left, {inv, 0.0}, right, {inv, 0.0});
  CHECK(fock::norm_sq(cat) == doctest::Approx(1.0).epsilon(1e-12));

  const auto zero = fock::superpose(cat, {1, 0}, cat, {-1, 0});
  CHECK(zero.empty());
  CHECK(fock::norm_sq(zero) == 0.0);

  const auto same = fock::superpose(cat, {1, 0}, FockState(2), {0, 0});
  CHECK(fock::norm_sq(same) == doctest::Approx(1.0));

  CHECK_THROWS_AS(fock::superpose(cat, {1, 0}, fock::vacuum(3), {1, 0}),
                  std::invalid_argument);
}

TEST_CASE("tensor concatenates occupations and multiplies amplitudes") {
  const auto v4 = fock::tensor(fock::vacuum(2), fock::vacuum(2));
  CHECK(v4.num_modes() == 4);
  CHECK(v4.amplitude({0, 0, 0, 0}) == Amplitude{1.0, 0.0});

  // |2_+> x |2_+> expands to four terms of amplitude 1/2 each.
  FockState cat2(2);
  cat2.add_term({2, 0}, {1.0 / std::sqrt(2.0), 0.0});
  cat2.add_term({0, 2}, {1.0 / std::sqrt(2.0), 0.0});
  const auto joint = fock::tensor(cat2, cat2);
  CHECK(joint.term_count() == 4);
  CHECK(joint.amplitude({2, 0, 0, 2}).real() == doctest::Approx(0.5));
  CHECK(joint.amplitude({0, 2, 2, 0}).real() == doctest::Approx(0.5));
  CHECK(fock::norm_sq(joint) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inner products") {
  CHECK(fock::inner_product(fock::vacuum(2), fock::vacuum(2)) ==
        Amplitude{1.0, 0.0});
  FockState a(2), b(2);
  a.add_term({2, 0}, {1, 0});
  b.add_term({0, 2}, {1, 0});
  CHECK(std::abs(fock::inner_product(a, b)) == 0.0);
}

TEST_CASE("tensor norm multiplicativity and conjugate symmetry on random states") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s1 = test::random_state(rng, 3, 4, 6);
    const auto s2 = test::random_state(rng, 2, 4, 5);
    CHECK(fock::norm_sq(fock::tensor(s1, s2)) ==
          doctest::Approx(fock::norm_sq(s1) * fock::norm_sq(s2))
              .epsilon(1e-12));

    const auto s3 = test::random_state(rng, 3, 4, 6);
    const auto ip = fock::inner_product(s1, s3);
    const auto pi = fock::inner_product(s3, s1);
    CHECK(ip.real() == doctest::Approx(pi.real()).epsilon(1e-12));
    CHECK(ip.imag() == doctest::Approx(-pi.imag()).epsilon(1e-12));
    CHECK(fock::inner_product(s1, s1).real() >= 0.0);
    CHECK(std::abs(fock::inner_product(s1, s1).imag()) < 1e-12);
  }
}

TEST_CASE("superposing equal-photon-number states preserves the support count") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    // Build two states supported on total photon number 5.
    FockState s1(3), s2(3);
    std::uniform_int_distribution<int> split(0, 5);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    for (int t = 0; t < 4; ++t) {
      const int x = split(rng);
      const int y = split(rng) % (6 - x);
      s1.add_term({x, y, 5 - x - y}, {coeff(rng), coeff(rng)});
      const int u = split(rng);
      const int v = split(rng) % (6 - u);
      s2.add_term({u, v, 5 - u - v}, {coeff(rng), coeff(rng)});
    }
    const auto sum = fock::superpose(s1, {coeff(rng), 0}, s2, {coeff(rng), 0});
    for (const auto& [occ, amp] : sum.terms()) {
      CHECK(occ[0] + occ[1] + occ[2] == 5);
    }
  }
}

TEST_CASE("pruning is idempotent") {
  std::mt19937_64 rng(99);
  auto s = test::random_state(rng, 3, 3, 8);
  s.add_term({1, 1, 1}, {1e-15, 1e-15});
  s.prune();
  const auto once = s.sorted_terms();
  s.prune();
  const auto twice = s.sorted_terms();
  REQUIRE(once.size() == twice.size());
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once[i].first == twice[i].first);
    CHECK(once[i].second == twice[i].second);
  }
}

TEST_CASE("photon number distribution") {
  FockState cat1(2);
  cat1.add_term({1, 0}, {1.0 / std::sqrt(2.0), 0.0});
  cat1.add_term({0, 1}, {1.0 / std::sqrt(2.0), 0.0});
  const int mode0[] = {0};
  const auto dist = fock::photon_number_distribution(cat1, mode0);
  CHECK(dist.at({0}) == doctest::Approx(0.5));
  CHECK(dist.at({1}) == doctest::Approx(0.5));

  const int pair[] = {2, 3};
  const auto vac = fock::photon_number_distribution(fock::vacuum(4), pair);
  CHECK(vac.size() == 1);
  CHECK(vac.at({0, 0}) == doctest::Approx(1.0));

  FockState unnormalized(2);
  unnormalized.add_term({1, 0}, {2.0, 0.0});
  CHECK_THROWS_AS(fock::photon_number_distribution(unnormalized, mode0),
                  std::invalid_argument);
  const int bad[] = {5};
  CHECK_THROWS_AS(fock::photon_number_distribution(cat1, bad),
                  std::invalid_argument);
  const int dup[] = {0, 0};
  CHECK_THROWS_AS(fock::photon_number_distribution(cat1, dup),
                  std::invalid_argument);
}

TEST_CASE("distribution probabilities sum to one on random normalized states") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = test::normalized(test::random_state(rng, 4, 3, 10));
    const int modes[] = {1, 3};
    double total = 0.0;
    for (const auto& [occ, p] : fock::photon_number_distribution(s, modes)) {
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("remove_modes drops empty modes only") {
  FockState s(3);
  s.add_term({2, 0, 1}, {1.0, 0.0});
  const int middle[] = {1};
  const auto reduced = fock::remove_modes(s, middle);
  CHECK(reduced.num_modes() == 2);
  CHECK(reduced.amplitude({2, 1}) == Amplitude{1.0, 0.0});
  const int occupied[] = {0};
  CHECK_THROWS_AS(fock::remove_modes(s, occupied), std::invalid_argument);
}

TEST_CASE("JSON round trip in lexicographic term order") {
  std::mt19937_64 rng(314159);
  const auto s = test::random_state(rng, 3, 4, 12);
  const auto text = fock::to_json(s);
  const auto back = fock::from_json(text);
  CHECK(back.num_modes() == s.num_modes());
  REQUIRE(back.term_count() == s.term_count());
  for (const auto& [occ, amp] : s.terms()) {
    CHECK(back.amplitude(occ) == amp);
  }
  // Serialization is canonical: re-serializing the parse gives identical text.
  CHECK(fock::to_json(back) == text);
  // Lexicographic order means the all-smallest occupation comes first.
  const auto sorted = s.sorted_terms();
  const auto pos = text.find("\"occ\"");
  REQUIRE(pos != std::string::npos);
}

TEST_CASE("add_term validation") {
  FockState s(2);
  CHECK_THROWS_AS(s.add_term({1}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(s.add_term({-1, 0}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(
      s.add_term({0, 0}, {std::numeric_limits<double>::infinity(), 0}),
      std::invalid_argument);
}

TEST_SUITE_END();
