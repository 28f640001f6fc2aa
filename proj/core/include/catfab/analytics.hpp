#pragma once

#include <map>
#include <vector>

#include "catfab/rational.hpp"

namespace catfab::analytics {

/// Success probability of the doubling step on two exact n-photon cats:
/// (2n)! / (2^(2n+1) (n!)^2).
Rational doubling_success_prob(int n);

/// Stirling approximation of the same: 1/sqrt(4 pi n).
double doubling_success_stirling(int n);

struct ScalingReport {
  int n = 0;
  Rational exact;
  double asymptotic = 0.0;
  /// |asymptotic/exact - 1|
  double relative_error = 0.0;
};
ScalingReport doubling_scaling_report(int n);

/// Overall success probability of the memoryless all-or-nothing cascade to an
/// n-photon cat: 2 n! / (2n)^n, with n a power of two and p(1) = 1.
Rational naive_success_prob(int n);

/// Same quantity via the recurrence p(2n) = p(n)^2 * p_doubling(n).
/// Agrees with the closed form exactly.
Rational naive_success_prob_recurrence(int n);

/// sqrt(8 pi n) * (2e)^(-n).
double naive_success_asymptotic(int n);

struct PoolLevel {
  int level = 0;
  double expected_count = 0.0;
};

/// Expected pooled inventory per level when m_target cats of target_n photons
/// are wanted: M_n = 2 M_2n / p_doubling(n), solved downward from the target.
/// Entries run from level target_n down to level 1; the level-n count is an
/// exact rational multiple of m_target, converted to double.
std::vector<PoolLevel> expected_pool_sequence(int target_n, double m_target);

/// Closed-form estimate of the initial singles requirement:
/// (4 sqrt(pi))^(log2 n) * n^((log2 n - 1)/4) * m_target.
double initial_singles_estimate(int target_n, double m_target);

/// (4 sqrt(pi))^(-log2 n) * n^((1 - log2 n)/4); the reciprocal of
/// initial_singles_estimate at m_target = 1.
double yield_estimate(int target_n);

/// Probability that exactly one photon lands in the measured mode pair of the
/// doubling circuit: 2n / 2^(2n).
Rational leak_prob_one_photon(int n);

/// Probability that a designated one of the two detectors absorbs a
/// two-photon leak: (2n-2)! / (2^(2n+1) ((n-1)!)^2). A two-photon leak always
/// lands whole on a single detector, so the total two-photon probability is
/// exactly twice this value.
Rational leak_prob_two_photon(int n);

/// Exact distribution of the total detected photon count (0..2n) for the
/// doubling circuit on two exact n-cats. Entry 0 equals
/// doubling_success_prob(n); the entries sum to 1.
std::map<int, Rational> exact_detection_spectrum(int n);

/// No-click acceptance probability with detector efficiency eta:
/// sum_m (1-eta)^m p_m over the exact spectrum.
double lossy_accept_prob(int n, double eta);

/// Fraction of accepted attempts in which photons actually leaked:
/// sum_{m>=1} (1-eta)^m p_m / (p_0 + sum_{m>=1} (1-eta)^m p_m).
double false_accept_fraction(int n, double eta);

enum class BaselineScheme { kok, fiurasek };

/// c^(-n) reference scalings for the photon-by-photon ladder schemes,
/// c = sqrt(2)*e or c = e. Requires even n.
double baseline_scaling(int n, BaselineScheme scheme);

/// log2 of a power of two; throws otherwise.
int log2_exact(int n);

}  // namespace catfab::analytics
