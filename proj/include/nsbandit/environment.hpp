#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nsbandit/errors.hpp"
#include "nsbandit/rng.hpp"
#include "nsbandit/types.hpp"

namespace nsb {

/// Constant means.
struct Stationary {
  std::vector<double> means;
};

/// Means repeat with period P: mu_k(t) = table[k][(t - 1) mod P].
struct PeriodicTable {
  std::vector<std::vector<double>> table;  // K rows of P entries
};

/// Suboptimal arms follow cos(2 pi t / K) / 5 + 0.5, the optimal arm adds `gap`.
/// An unset optimal arm is drawn uniformly from the build seed.
struct Sinusoidal {
  std::size_t arms = 20;
  double gap = 0.05;
  std::optional<ArmId> optimal_arm;
};

/// Suboptimal arms follow base - min(cap, rate * t), the optimal arm adds `gap`.
struct DriftCap {
  std::size_t arms = 20;
  double gap = 0.05;
  double base = 0.95;
  double cap = 0.45;
  double rate = 1e-7;
  std::optional<ArmId> optimal_arm;
};

/// Sawtooth drift base - min(cap, rate * (t mod period)) on a global clock.
/// At every step t >= 2 the optimal arm is replaced, with probability
/// `switch_prob`, by an arm drawn uniformly from the other K - 1.
struct SwitchingDrift {
  std::size_t arms = 20;
  double gap = 0.05;
  double switch_prob = 1e-6;
  double rate = 1e-7;
  std::uint64_t period = 1'000'000;
  double base = 0.95;
  double cap = 0.45;
  /// Overrides the build seed for the switch schedule when set.
  std::optional<std::uint64_t> switch_seed;
};

/// Mean table read from a file (see mean_table.hpp).
struct FileBacked {
  std::string path;
};

using EnvironmentSpec =
    std::variant<Stationary, PeriodicTable, Sinusoidal, DriftCap, SwitchingDrift, FileBacked>;

enum class RewardLaw { Bernoulli, Deterministic };

/// One entry (k*_n, T_n) of the optimal policy.
struct Segment {
  ArmId arm;
  Step start;

  bool operator==(const Segment&) const = default;
};

/// Thrown when a mean leaves [0,1]; carries the first offending (arm, t).
class EnvironmentError : public InvalidParameter {
 public:
  EnvironmentError(ArmId arm, Step t, double value);
  ArmId arm() const noexcept { return arm_; }
  Step time() const noexcept { return time_; }

 private:
  ArmId arm_;
  Step time_;
};

/**
 * Immutable non-stationary reward process over t = 1..horizon.
 *
 * The optimal policy (switch schedule) is materialized at construction, so
 * mean_at is a pure function of (arm, t) and instances can be shared between
 * concurrently executing runs.
 */
class Environment {
 public:
  std::size_t arms() const noexcept { return arms_; }
  Step horizon() const noexcept { return horizon_; }
  RewardLaw law() const noexcept { return law_; }

  /// Spec with every random choice resolved (optimal arm, switch seed) and
  /// file-backed tables loaded.
  const EnvironmentSpec& spec() const noexcept { return spec_; }

  double mean_at(ArmId arm, Step t) const;
  double sample_reward(ArmId arm, Step t, RngStream& rng) const;
  double instantaneous_gap(ArmId arm, ArmId other, Step t) const;

  const std::vector<Segment>& optimal_policy() const noexcept { return schedule_; }
  /// k*(t): the arm of the segment containing t.
  ArmId optimal_arm_at(Step t) const;
  std::size_t segment_count() const noexcept { return schedule_.size(); }

  friend Environment build_environment(const EnvironmentSpec& spec, RewardLaw law, Step horizon,
                                       std::uint64_t seed);

 private:
  Environment() = default;

  double unchecked_mean(ArmId arm, Step t) const;
  void check_args(ArmId arm, Step t) const;
  void validate_range() const;
  void build_schedule();

  EnvironmentSpec spec_;
  RewardLaw law_ = RewardLaw::Bernoulli;
  Step horizon_ = 0;
  std::size_t arms_ = 0;
  std::vector<Segment> schedule_;
};

/// Builds and validates an environment. Throws InvalidParameter for bad
/// parameters and EnvironmentError for a mean outside [0,1] on [1, horizon].
Environment build_environment(const EnvironmentSpec& spec, RewardLaw law, Step horizon,
                              std::uint64_t seed);

/// The two-arm sequence of period 2 where a fixed round-robin order sees the
/// better arm only at its low phase: rows (0.6, 1.0) and (0.4, 0.8).
PeriodicTable alternating_trap_table();

std::string environment_kind(const EnvironmentSpec& spec);

}  // namespace nsb
