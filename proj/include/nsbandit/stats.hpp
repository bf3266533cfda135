#pragma once

#include <cstdint>
#include <vector>

#include "nsbandit/types.hpp"

namespace nsb {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/**
 * Per-arm empirical means and observation counts.
 *
 * Stored as (sum, count); mean() is the arithmetic mean of every reward
 * recorded for the arm, and 0 for an arm that was never observed.
 */
class EmpiricalStats {
 public:
  explicit EmpiricalStats(std::size_t arms = 0) : sums_(arms), counts_(arms, 0) {}

  std::size_t arms() const noexcept { return counts_.size(); }

  /// Records reward y for `arm`. Throws ContractViolation if y is outside
  /// [0,1] or the arm is unknown.
  void update(ArmId arm, double y);

  double mean(ArmId arm) const;
  std::uint64_t count(ArmId arm) const;

  /// Zero every mean and count.
  void reset() noexcept;

 private:
  std::vector<CompensatedSum> sums_;
  std::vector<std::uint64_t> counts_;
};

/// Returns a copy of `stats` with reward y recorded for `arm`.
EmpiricalStats update_mean(EmpiricalStats stats, ArmId arm, double y);

/// Arms still competing in an identification task, in increasing id order,
/// plus the current round-robin index tau (1-based).
struct ActiveSet {
  std::vector<ArmId> arms;
  std::uint64_t round = 1;

  static ActiveSet full(std::size_t arm_count);
  std::size_t size() const noexcept { return arms.size(); }
  bool contains(ArmId arm) const noexcept;
};

}  // namespace nsb
