#include "nsbandit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nsbandit/errors.hpp"

namespace nsb {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

void EmpiricalStats::update(ArmId arm, double y) {
  if (arm >= counts_.size()) {
    throw ContractViolation("EmpiricalStats::update: arm " + std::to_string(arm) +
                            " out of range");
  }
  if (!(y >= 0.0 && y <= 1.0)) {
    throw ContractViolation("reward " + std::to_string(y) + " for arm " + std::to_string(arm) +
                            " is outside [0,1]");
  }
  sums_[arm].add(y);
  ++counts_[arm];
}

double EmpiricalStats::mean(ArmId arm) const {
  if (arm >= counts_.size()) {
    throw ContractViolation("EmpiricalStats::mean: arm out of range");
  }
  if (counts_[arm] == 0) {
    return 0.0;
  }
  // Clamp guards the [0,1] invariant against the last ulp of rounding.
  return std::clamp(sums_[arm].value() / static_cast<double>(counts_[arm]), 0.0, 1.0);
}

std::uint64_t EmpiricalStats::count(ArmId arm) const {
  if (arm >= counts_.size()) {
    throw ContractViolation("EmpiricalStats::count: arm out of range");
  }
  return counts_[arm];
}

void EmpiricalStats::reset() noexcept {
  std::fill(sums_.begin(), sums_.end(), CompensatedSum{});
  std::fill(counts_.begin(), counts_.end(), 0);
}

EmpiricalStats update_mean(EmpiricalStats stats, ArmId arm, double y) {
  stats.update(arm, y);
  return stats;
}

ActiveSet ActiveSet::full(std::size_t arm_count) {
  ActiveSet set;
  set.arms.resize(arm_count);
  std::iota(set.arms.begin(), set.arms.end(), ArmId{0});
  return set;
}

bool ActiveSet::contains(ArmId arm) const noexcept {
  return std::binary_search(arms.begin(), arms.end(), arm);
}

}  // namespace nsb
