#pragma once

#include <cstdint>
#include <vector>

#include "nsbandit/agent.hpp"
#include "nsbandit/environment.hpp"
#include "nsbandit/stats.hpp"

namespace nsb {

/// Walks the optimal policy for non-decreasing t.
class OptimalArmCursor {
 public:
  explicit OptimalArmCursor(const Environment& env) : env_(&env) {}
  ArmId at(Step t);
  std::size_t segment() const noexcept { return segment_; }

 private:
  const Environment* env_;
  std::size_t segment_ = 0;
};

/// Streaming pseudo-regret: sum of mu_{k*(t)}(t) - mu_{k_t}(t).
class RegretAccumulator {
 public:
  explicit RegretAccumulator(const Environment& env) : env_(&env), cursor_(env) {}
  /// Adds one step and returns the cumulative regret so far.
  double add(const PullRecord& record);
  double total() const noexcept { return sum_.value(); }

 private:
  const Environment* env_;
  OptimalArmCursor cursor_;
  CompensatedSum sum_;
};

struct SampleComplexityReport {
  std::uint64_t total = 0;
  std::uint64_t sampling = 0;  // steps with s(t) = 1
  std::uint64_t mismatch = 0;  // non-sampling steps with k_t != k*_n
  std::vector<std::uint64_t> per_segment;
};

/// Streaming sample complexity over the segmentation of the optimal policy.
/// Sampling steps count 1; a non-sampling step counts 1 when its
/// recommendation differs from the segment's optimal arm.
class ComplexityAccumulator {
 public:
  explicit ComplexityAccumulator(const Environment& env);
  void add(const PullRecord& record);
  const SampleComplexityReport& report() const noexcept { return report_; }

 private:
  const Environment* env_;
  OptimalArmCursor cursor_;
  SampleComplexityReport report_;
};

/// Cumulative pseudo-regret after each step of `trace`.
std::vector<double> pseudo_regret(const RunTrace& trace, const Environment& env);

SampleComplexityReport sample_complexity(const RunTrace& trace, const Environment& env);

}  // namespace nsb
