#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsbandit/agent.hpp"
#include "nsbandit/config.hpp"
#include "nsbandit/environment.hpp"
#include "nsbandit/regret.hpp"

namespace nsb {

// Sub-streams of a run seed. Agent internals and reward draws never share one.
inline constexpr std::uint64_t kAgentStream = 1;
inline constexpr std::uint64_t kRewardStream = 2;

/// Seed of run `run` of agent `agent` under `master`.
std::uint64_t run_seed(std::uint64_t master, std::size_t agent, std::uint64_t run);

/// Seed of the environment shared by every agent in run `run`.
std::uint64_t environment_seed(std::uint64_t master, std::uint64_t run);

/// Plays `config` against `env` for steps 1..horizon and hands every
/// PullRecord to `sink`. Returns the agent so callers can inspect its state.
template <class Sink>
std::unique_ptr<Agent> simulate(const Environment& env, const AgentConfig& config, Step horizon,
                                std::uint64_t seed, Sink&& sink) {
  if (horizon > env.horizon()) {
    throw ContractViolation("run horizon " + std::to_string(horizon) +
                            " exceeds the environment horizon " + std::to_string(env.horizon()));
  }
  RngStream agent_rng(seed, kAgentStream);
  RngStream reward_rng(seed, kRewardStream);
  auto agent = make_agent(config, env.arms(), agent_rng);
  for (Step t = 1; t <= horizon; ++t) {
    PullRecord record;
    record.t = t;
    record.reset = agent->maybe_reset(agent_rng);
    const Action action = agent->act(t, agent_rng);
    record.arm = action.arm;
    record.sampling = action.sampling;
    record.recommended = agent->recommendation();
    record.reward = env.sample_reward(action.arm, t, reward_rng);
    agent->observe(t, action.arm, record.reward);
    sink(record);
  }
  return agent;
}

/// Full per-step trace of one run; deterministic in (env, config, horizon, seed).
RunTrace run_single(const Environment& env, const AgentConfig& config, Step horizon,
                    std::uint64_t seed);

struct RunOutcome {
  std::uint64_t run = 0;
  std::vector<double> regret_at_checkpoints;
  double final_regret = 0.0;
  SampleComplexityReport complexity;
  ArmId final_recommendation = 0;
  bool recommendation_correct = false;  // k_T == k*(T)
  std::uint64_t resets = 0;
  std::optional<std::uint64_t> stopping_round;  // elimination agents only
};

/// One run reduced to the metrics kept by experiments.
RunOutcome run_measured(const Environment& env, const AgentConfig& config, Step horizon,
                        std::uint64_t seed, const std::vector<Step>& checkpoints);

struct CurvePoint {
  Step t = 0;
  double mean = 0.0;
  double std = 0.0;
  std::uint64_t runs = 0;
};

struct AgentAggregate {
  std::string name;
  std::vector<CurvePoint> regret;
  double mean_complexity = 0.0;
  double std_complexity = 0.0;
  std::vector<RunOutcome> runs;  // in run-index order
};

struct AggregateResult {
  std::vector<AgentAggregate> agents;  // config order

  const AgentAggregate& agent(const std::string& name) const;
};

/// Mean and sample standard deviation (0 for a single value), reduced in
/// index order with compensated sums.
std::pair<double, double> mean_and_std(const std::vector<double>& values);

/**
 * Executes config.runs runs per agent on up to `jobs` threads. Results are
 * reduced in (agent, run) index order, so the output does not depend on `jobs`.
 */
AggregateResult run_experiment(const ExperimentConfig& config, unsigned jobs = 1);

}  // namespace nsb
