#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsbandit/environment.hpp"

namespace nsb {

/**
 * Sizes |S_1|, ..., |S_tau| of consecutive round-robins. Round i starts at
 * t_i = 1 + sum_{j<i} |S_j|. Sizes are >= 1 and non-increasing.
 */
class RoundRobinRealization {
 public:
  RoundRobinRealization() = default;
  explicit RoundRobinRealization(std::vector<std::size_t> sizes);

  std::size_t rounds() const noexcept { return sizes_.size(); }
  std::size_t size(std::size_t i) const { return sizes_.at(i); }
  /// Start step of round i (0-based index).
  Step start(std::size_t i) const { return starts_.at(i); }
  /// Last step covered by the realization.
  Step last_step() const noexcept;
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }

  bool operator==(const RoundRobinRealization&) const = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<Step> starts_;
};

/// Round-averaged advantage of `reference` over `arm` along `realization`:
///   (1/tau) sum_i sum_{j=t_i}^{t_i+|S_i|-1} (mu_ref(j) - mu_arm(j)) / |S_i|.
double realization_gap(const Environment& env, const RoundRobinRealization& realization,
                       ArmId arm, ArmId reference);

/// argmax_k sum_{t=1}^{T} mu_k(t) over the full horizon (lowest id on ties).
ArmId best_arm_by_total(const Environment& env);

/// Every non-increasing size sequence of length tau with |S_1| = arms and all
/// sizes in [2, arms].
std::vector<RoundRobinRealization> enumerate_realizations(std::size_t arms, std::size_t tau);

struct GapReport {
  ArmId optimal_arm = 0;
  /// Minimum gap per arm over the enumerated realizations; empty for the optimal arm.
  std::vector<std::optional<double>> per_arm_gap;
  double min_gap = 0.0;
  bool assumption1_satisfied = false;
  /// Realization and arm attaining the minimum.
  RoundRobinRealization argmin_realization;
  ArmId argmin_arm = 0;
  /// Set only when the minimum gap is not positive.
  std::optional<RoundRobinRealization> witness;
};

/// Limits of the exhaustive enumeration.
inline constexpr std::size_t kMaxBruteForceArms = 6;
inline constexpr std::size_t kMaxBruteForceRounds = 8;

/**
 * Exhaustive minimum of realization_gap over every arm k != k* (k* from
 * best_arm_by_total) and every realization with tau in [tau_lo, tau_hi].
 * Requires env.arms() == arms <= 6 and tau_hi <= 8; throws InvalidParameter
 * otherwise.
 */
GapReport min_gap_bruteforce(const Environment& env, std::size_t tau_lo, std::size_t tau_hi,
                             std::size_t arms);

/// Same report restricted to the full round-robin realizations (every size
/// equal to K) for tau in [tau_lo, tau_hi]. Cheap for any K.
GapReport full_round_robin_gaps(const Environment& env, std::size_t tau_lo, std::size_t tau_hi);

}  // namespace nsb
