#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsbandit/agent.hpp"
#include "nsbandit/environment.hpp"

namespace nsb {

struct AgentEntry {
  std::string name;  // label used in the output files; unique within a config
  AgentConfig config;
};

/**
 * One experiment: an environment, a list of agents, and the run protocol.
 *
 * JSON form (unknown keys are rejected at every level):
 *   {
 *     "environment": {"type": "sinusoidal", "K": 20, "gap": 0.05, "reward": "bernoulli"},
 *     "agents": [{"type": "SER3", "delta": 0.05}, {"type": "EXP3", "gamma": 0.05}],
 *     "horizon": 1000000, "runs": 10, "seed": 1,
 *     "checkpoints": {"log_spaced": 100}          // or an explicit list
 *   }
 */
struct ExperimentConfig {
  EnvironmentSpec environment;
  RewardLaw law = RewardLaw::Bernoulli;
  std::vector<AgentEntry> agents;
  Step horizon = 0;
  std::uint64_t runs = 1;
  std::uint64_t seed = 0;
  std::vector<Step> checkpoints;  // strictly increasing, last <= horizon
};

inline constexpr std::size_t kDefaultCheckpointCount = 100;

/// Up to `count` log-spaced integer steps in [1, horizon], always ending at horizon.
std::vector<Step> log_spaced_checkpoints(Step horizon, std::size_t count);

/// Parses and validates a config document. Relative file paths in the
/// environment are resolved against `base_dir`. Throws ConfigError naming the field.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& base_dir = "");
ExperimentConfig load_config_file(const std::string& path);

/// Fully resolved config (every default written out) plus the artifact version.
/// parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& config);

/// Throws ConfigError if the config breaks an invariant.
void validate_config(const ExperimentConfig& config);

nlohmann::json environment_to_json(const EnvironmentSpec& spec, RewardLaw law);
nlohmann::json agent_to_json(const AgentEntry& agent);

}  // namespace nsb
