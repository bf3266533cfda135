#include "nsbandit/presets.hpp"

#include <algorithm>
#include <cmath>

#include "nsbandit/bounds.hpp"
#include "nsbandit/errors.hpp"

namespace nsb {

namespace {

constexpr double kFullHorizon = 1e7;
constexpr std::size_t kArms = 20;
constexpr double kGap = 0.05;
constexpr double kDelta = 0.05;
constexpr double kGamma = 0.05;

Ser3Params ser3() {
  Ser3Params p;
  p.delta = kDelta;
  return p;
}

SeParams se() {
  SeParams p;
  p.delta = kDelta;
  return p;
}

std::vector<AgentEntry> stationary_lineup() {
  return {
      {"SER3", ser3()},
      {"SE", se()},
      {"UCB1", Ucb1Params{}},
      {"EXP3", Exp3Params{kGamma}},
  };
}

}  // namespace

std::vector<std::string> preset_names() { return {"figure1", "problem1", "problem2", "problem3"}; }

PresetPhi parse_preset_phi(const std::string& text) {
  if (text == "printed") return PresetPhi::Printed;
  if (text == "intended") return PresetPhi::Intended;
  if (text == "corollary3") return PresetPhi::Corollary3;
  throw ConfigError("unknown phi choice '" + text + "' (printed, intended, corollary3)");
}

ExperimentConfig make_preset(const std::string& name, const PresetOptions& options) {
  ExperimentConfig config;
  config.seed = options.seed;
  const bool figure = name == "figure1";
  const Step default_horizon = options.full_scale ? 10'000'000 : (figure ? 100'000 : 1'000'000);
  const std::uint64_t default_runs = options.full_scale ? 50 : (figure ? 100 : 10);
  config.horizon = options.horizon.value_or(default_horizon);
  config.runs = options.runs.value_or(default_runs);
  if (config.horizon == 0) {
    throw ConfigError("horizon must be positive");
  }
  const double f = static_cast<double>(config.horizon) / kFullHorizon;

  if (figure) {
    config.environment = PeriodicTable{alternating_trap_table()};
    config.agents = {{"SE", se()}, {"SER3", ser3()}};
  } else if (name == "problem1") {
    config.environment = Sinusoidal{kArms, kGap, std::nullopt};
    config.agents = stationary_lineup();
  } else if (name == "problem2") {
    DriftCap env;
    env.arms = kArms;
    env.gap = kGap;
    env.rate = 1e-7 / f;
    config.environment = env;
    config.agents = stationary_lineup();
  } else if (name == "problem3") {
    SwitchingDrift env;
    env.arms = kArms;
    env.gap = kGap;
    env.switch_prob = options.switch_prob.value_or(1e-6 / f);
    env.rate = 1e-7 / f;
    env.period = static_cast<std::uint64_t>(std::llround(1e6 * f));
    if (env.period == 0 || env.switch_prob > 1.0) {
      throw ConfigError("horizon " + std::to_string(config.horizon) + " is too short for problem3");
    }
    config.environment = env;

    Ser4Params ser4;
    ser4.delta = kDelta;
    switch (options.phi) {
      case PresetPhi::Printed:
        ser4.phi = std::pow(5.0, -5.0);
        break;
      case PresetPhi::Intended:
        ser4.phi = 5e-5;
        break;
      case PresetPhi::Corollary3: {
        const double t = static_cast<double>(config.horizon);
        const double segments = 1.0 + env.switch_prob * (t - 1.0);
        ser4.phi = regret_tuned_phi(kArms, t, segments);
        break;
      }
    }
    SwUcbParams swucb;
    swucb.window = static_cast<std::uint64_t>(std::max(1.0, std::round(1e5 * f)));
    config.agents = {
        {"SER4", ser4},
        {"SW-UCB", swucb},
        {"EXP3S", Exp3sParams{kGamma, 1e-5}},
    };
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  config.checkpoints = log_spaced_checkpoints(config.horizon, kDefaultCheckpointCount);
  validate_config(config);
  return config;
}

}  // namespace nsb
