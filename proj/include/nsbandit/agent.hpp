#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "nsbandit/rng.hpp"
#include "nsbandit/types.hpp"

namespace nsb {

/// Successive elimination over a shuffled round-robin.
struct Ser3Params {
  double delta = 0.05;
  double epsilon = 0.0;
  std::optional<std::uint64_t> tau_min;  // default_tau_min(K, delta) when unset
};

/// SER3 whose estimators are discarded with probability `phi` at every step.
struct Ser4Params {
  double delta = 0.05;
  double epsilon = 0.0;
  std::optional<std::uint64_t> tau_min;
  double phi = 3.2e-4;
};

/// Successive elimination with a fixed (identity) round-robin order.
struct SeParams {
  double delta = 0.05;
  double epsilon = 0.0;
  std::optional<std::uint64_t> tau_min;
};

struct Ucb1Params {};

struct Exp3Params {
  double gamma = 0.05;
};

struct Exp3sParams {
  double gamma = 0.05;
  double alpha = 1e-5;
};

struct SwUcbParams {
  std::uint64_t window = 100'000;
  double xi = 0.6;
};

using AgentConfig = std::variant<Ser3Params, Ser4Params, SeParams, Ucb1Params, Exp3Params,
                                 Exp3sParams, SwUcbParams>;

/// Canonical name: SER3, SER4, SE, UCB1, EXP3, EXP3S, SWUCB.
std::string agent_kind(const AgentConfig& config);

/// Throws InvalidParameter when a parameter is out of its range.
void validate_agent_config(const AgentConfig& config);

struct Action {
  ArmId arm;
  bool sampling;  // s(t)
};

/// Everything recorded about one step of a run.
struct PullRecord {
  Step t = 0;
  ArmId arm = 0;
  double reward = 0.0;
  bool sampling = false;
  bool reset = false;
  ArmId recommended = 0;  // k_t

  bool operator==(const PullRecord&) const = default;
};

/**
 * Uniform policy contract driven by the harness. At each step t:
 *   maybe_reset(rng); act(t, rng); <reward drawn>; observe(t, arm, y).
 */
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::size_t arms() const noexcept = 0;

  /// Only SER4 ever resets.
  virtual bool maybe_reset(RngStream& /*rng*/) { return false; }

  virtual Action act(Step t, RngStream& rng) = 0;

  /// Throws ContractViolation for y outside [0,1] or an arm that act() did not propose.
  virtual void observe(Step t, ArmId arm, double y) = 0;

  /// k_t: the arm the agent currently believes optimal.
  virtual ArmId recommendation() const = 0;
};

std::unique_ptr<Agent> make_agent(const AgentConfig& config, std::size_t arms, RngStream& rng);

}  // namespace nsb

#include <vector>

namespace nsb {

/// Per-step records of one run, in time order.
using RunTrace = std::vector<PullRecord>;

}  // namespace nsb
