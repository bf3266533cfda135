#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsbandit/agent.hpp"
#include "nsbandit/stats.hpp"

namespace nsb {

struct EliminationRule {
  std::size_t arms;  // original K; stays fixed after eliminations
  double delta;
  double epsilon;
  std::uint64_t tau_min;
};

/// Empirical leader of `active`; the lowest id wins ties.
ArmId empirical_leader(const ActiveSet& active, const EmpiricalStats& stats);

/**
 * End-of-round elimination. Every active arm must have the same count tau >= 1
 * (ContractViolation otherwise). For tau < tau_min the set is returned
 * unchanged; otherwise each arm with
 *   mu_max - mu_k + epsilon >= confidence_radius(tau, K, delta)
 * is dropped. The empirical leader always survives.
 */
ActiveSet ser3_eliminate(const ActiveSet& active, const EmpiricalStats& stats,
                         const EliminationRule& rule);

enum class Phase { Sampling, Exploit };

/// SER3 (shuffle, no resets), SER4 (shuffle, per-step resets) and SE
/// (identity order, no resets) share this implementation.
class EliminationAgent final : public Agent {
 public:
  struct Options {
    EliminationRule rule;
    bool shuffle = true;
    double reset_prob = 0.0;
  };

  EliminationAgent(const Options& options, RngStream& rng);

  std::size_t arms() const noexcept override { return options_.rule.arms; }
  bool maybe_reset(RngStream& rng) override;
  Action act(Step t, RngStream& rng) override;
  void observe(Step t, ArmId arm, double y) override;
  ArmId recommendation() const override;

  Phase phase() const noexcept { return phase_; }
  const ActiveSet& active() const noexcept { return active_; }
  const EmpiricalStats& stats() const noexcept { return stats_; }
  /// Remaining arms of the current round, in play order.
  std::vector<ArmId> pending_order() const;
  /// Round index at which the last identification task stopped (|S| hit 1).
  std::optional<std::uint64_t> stopping_round() const noexcept { return stopping_round_; }
  std::uint64_t reset_count() const noexcept { return resets_; }

 private:
  void start_task(RngStream* rng);
  void begin_round(RngStream* rng);

  Options options_;
  ActiveSet active_;
  EmpiricalStats stats_;
  std::vector<ArmId> order_;
  std::size_t next_ = 0;
  bool needs_order_ = false;
  Phase phase_ = Phase::Sampling;
  std::optional<std::uint64_t> stopping_round_;
  std::uint64_t resets_ = 0;
};

}  // namespace nsb
