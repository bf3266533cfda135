#pragma once

#include <cstddef>

namespace nsb {

struct BoundInputs {
  std::size_t arms = 2;   // K >= 2
  double delta = 0.05;    // (0, 0.5]
  double gap = 0.1;       // Delta in (0, 1]
  double horizon = 1e6;   // T > K
  double segments = 1.0;  // N >= 1
  double phi = 1e-3;      // (0, 1]
};

/**
 * Closed-form guarantees evaluated at one parameter point.
 *
 * "Explicit" members carry the constants of the finite-sample derivations.
 * "O-argument" members evaluate only the expression inside a Landau bound and
 * are orders of magnitude, not sharp numbers. Logs are natural.
 */
struct BoundReport {
  // Explicit constants.
  double tau_star = 0;                      // (64 / D^2) ln(4K / (delta D))
  double regret_dependent_explicit = 0;     // (K-1)(64/D) ln(4K/(delta D)) + delta T
  double regret_free_at_tau = 0;            // (K-1) tau 4 sqrt((2/tau) ln(4K tau^2/delta)) + delta T, tau = T/K
  double regret_free_explicit = 0;          // (K-1)(T/K) 4 sqrt((K/T) ln(4T^3/K)) + 1
  double reset_regret_explicit = 0;         // 4(phi T + 1) sqrt((2/phi) K ln(4T^3/K^2)) + N/phi + 1

  // O-arguments.
  double sample_complexity = 0;             // (K / D^2) ln(K / (delta D))
  double regret_dependent = 0;              // ((K-1) / D) ln(K T / D)
  double regret_free = 0;                   // sqrt(T K ln(T / K))
  double regret_min = 0;                    // min of the two above
  double reset_sample_complexity = 0;       // phi K/(delta D^2) ln(K/(delta D)) + N/phi
  double reset_suboptimal_plays = 0;        // phi T K/D^2 ln(K/(delta D)) + N/phi
  double tuned_sample_complexity = 0;       // (1/D^2) sqrt(N K ln(K/delta) / delta)
  double reset_regret = 0;                  // phi T K/D ln(K T/D) + N/phi
  double tuned_reset_regret = 0;            // sqrt(N T K ln(K T)) / D
  double reset_regret_free = 0;             // T^{2/3} sqrt(N K ln(T/K))

  // Reset-probability tunings.
  double phi_sample_complexity = 0;         // sqrt(N delta / (K ln(K/delta)))
  double phi_regret = 0;                    // sqrt(N / (T K ln(K T)))
  double phi_regret_free = 0;               // sqrt(N) / T^{2/3}
};

/// Throws InvalidParameter outside the documented domain.
BoundReport compute_bounds(const BoundInputs& in);

/// phi K/(delta D^2) ln(K/(delta D)) + N/phi for an arbitrary phi > 0.
double reset_sample_complexity(std::size_t arms, double delta, double gap, double segments,
                               double phi);

/// Regret-tuned reset probability sqrt(N / (T K ln(K T))).
double regret_tuned_phi(std::size_t arms, double horizon, double segments);

/// (64 / D^2) ln(4K / (delta D)).
double critical_rounds(std::size_t arms, double delta, double gap);

}  // namespace nsb
