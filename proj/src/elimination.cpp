#include "nsbandit/elimination.hpp"

#include <algorithm>
#include <string>

#include "nsbandit/confidence.hpp"
#include "nsbandit/errors.hpp"
#include "nsbandit/shuffle.hpp"

namespace nsb {

ArmId empirical_leader(const ActiveSet& active, const EmpiricalStats& stats) {
  if (active.arms.empty()) {
    throw ContractViolation("empirical_leader: empty active set");
  }
  ArmId leader = active.arms.front();
  double best = stats.mean(leader);
  for (ArmId k : active.arms) {
    const double m = stats.mean(k);
    if (m > best) {
      best = m;
      leader = k;
    }
  }
  return leader;
}

ActiveSet ser3_eliminate(const ActiveSet& active, const EmpiricalStats& stats,
                         const EliminationRule& rule) {
  if (active.arms.empty()) {
    throw ContractViolation("ser3_eliminate: empty active set");
  }
  const std::uint64_t tau = stats.count(active.arms.front());
  for (ArmId k : active.arms) {
    if (stats.count(k) != tau) {
      throw ContractViolation("ser3_eliminate: arm " + std::to_string(k) + " has count " +
                              std::to_string(stats.count(k)) + ", expected " +
                              std::to_string(tau));
    }
  }
  if (tau == 0) {
    throw ContractViolation("ser3_eliminate: no completed round");
  }
  if (tau < rule.tau_min || active.size() == 1) {
    return active;
  }

  const ArmId leader = empirical_leader(active, stats);
  const double best = stats.mean(leader);
  const double radius = confidence_radius(tau, rule.arms, rule.delta);

  ActiveSet next;
  next.round = active.round;
  for (ArmId k : active.arms) {
    const bool eliminated = best - stats.mean(k) + rule.epsilon >= radius;
    if (!eliminated || k == leader) {
      next.arms.push_back(k);
    }
  }
  return next;
}

EliminationAgent::EliminationAgent(const Options& options, RngStream& rng)
    : options_(options), stats_(options.rule.arms) {
  if (options.rule.arms == 0) {
    throw InvalidParameter("elimination agent needs K >= 1");
  }
  start_task(&rng);
}

void EliminationAgent::start_task(RngStream* rng) {
  active_ = ActiveSet::full(options_.rule.arms);
  stats_.reset();
  if (active_.size() == 1) {
    phase_ = Phase::Exploit;
    stopping_round_ = 0;
    order_.clear();
    next_ = 0;
    needs_order_ = false;
    return;
  }
  phase_ = Phase::Sampling;
  begin_round(rng);
}

void EliminationAgent::begin_round(RngStream* rng) {
  order_ = active_.arms;
  next_ = 0;
  if (options_.shuffle) {
    shuffle_in_place(std::span<ArmId>(order_), *rng);
  }
  needs_order_ = false;
}

bool EliminationAgent::maybe_reset(RngStream& rng) {
  // No draw at phi = 0, so SER4(phi = 0) consumes the stream exactly like SER3.
  if (options_.reset_prob <= 0.0) {
    return false;
  }
  if (!(rng.uniform() < options_.reset_prob)) {
    return false;
  }
  ++resets_;
  start_task(&rng);
  return true;
}

Action EliminationAgent::act(Step, RngStream& rng) {
  if (phase_ == Phase::Exploit) {
    return {active_.arms.front(), false};
  }
  if (needs_order_) {
    begin_round(&rng);
  }
  return {order_[next_], true};
}

void EliminationAgent::observe(Step, ArmId arm, double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw ContractViolation("observe: reward " + std::to_string(y) + " outside [0,1]");
  }
  if (phase_ == Phase::Exploit) {
    if (arm != active_.arms.front()) {
      throw ContractViolation("observe: arm " + std::to_string(arm) + " was not proposed");
    }
    return;
  }
  if (needs_order_ || arm != order_[next_]) {
    throw ContractViolation("observe: arm " + std::to_string(arm) + " was not proposed");
  }
  stats_.update(arm, y);
  ++next_;
  if (next_ < order_.size()) {
    return;
  }

  const std::uint64_t tau = active_.round;
  active_ = ser3_eliminate(active_, stats_, options_.rule);
  active_.round = tau + 1;
  if (active_.size() == 1) {
    phase_ = Phase::Exploit;
    stopping_round_ = tau;
    return;
  }
  if (options_.shuffle) {
    needs_order_ = true;
  } else {
    begin_round(nullptr);
  }
}

ArmId EliminationAgent::recommendation() const { return empirical_leader(active_, stats_); }

std::vector<ArmId> EliminationAgent::pending_order() const {
  if (phase_ == Phase::Exploit || needs_order_) {
    return {};
  }
  return {order_.begin() + static_cast<std::ptrdiff_t>(next_), order_.end()};
}

}  // namespace nsb
