#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsbandit/bounds.hpp"
#include "nsbandit/config.hpp"
#include "nsbandit/errors.hpp"
#include "nsbandit/gap.hpp"
#include "nsbandit/mean_table.hpp"
#include "nsbandit/presets.hpp"
#include "nsbandit/results_io.hpp"
#include "nsbandit/runner.hpp"
#include "nsbandit/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

json realization_json(const nsb::RoundRobinRealization& r) { return r.sizes(); }

json gap_report_json(const nsb::GapReport& report, const std::string& mode) {
  json per_arm = json::array();
  for (const auto& g : report.per_arm_gap) {
    per_arm.push_back(g ? json(*g) : json(nullptr));
  }
  json out = {
      {"mode", mode},
      {"optimal_arm", report.optimal_arm},
      {"per_arm_gap", per_arm},
      {"min_gap", report.min_gap},
      {"assumption1_satisfied", report.assumption1_satisfied},
      {"argmin_arm", report.argmin_arm},
      {"argmin_realization", realization_json(report.argmin_realization)},
  };
  out["witness"] = report.witness ? realization_json(*report.witness) : json(nullptr);
  return out;
}

json bound_report_json(const nsb::BoundInputs& in, const nsb::BoundReport& r) {
  return {
      {"inputs",
       {{"K", in.arms}, {"delta", in.delta}, {"gap", in.gap}, {"T", in.horizon},
        {"N", in.segments}, {"phi", in.phi}}},
      {"explicit",
       {{"tau_star", r.tau_star},
        {"regret_dependent", r.regret_dependent_explicit},
        {"regret_free_at_tau", r.regret_free_at_tau},
        {"regret_free", r.regret_free_explicit},
        {"reset_regret", r.reset_regret_explicit}}},
      {"o_argument",
       {{"sample_complexity", r.sample_complexity},
        {"regret_dependent", r.regret_dependent},
        {"regret_free", r.regret_free},
        {"regret_min", r.regret_min},
        {"reset_sample_complexity", r.reset_sample_complexity},
        {"reset_suboptimal_plays", r.reset_suboptimal_plays},
        {"tuned_sample_complexity", r.tuned_sample_complexity},
        {"reset_regret", r.reset_regret},
        {"tuned_reset_regret", r.tuned_reset_regret},
        {"reset_regret_free", r.reset_regret_free}}},
      {"phi",
       {{"sample_complexity", r.phi_sample_complexity},
        {"regret", r.phi_regret},
        {"regret_free", r.phi_regret_free}}},
  };
}

json list_json() {
  json envs = json::array();
  const nsb::EnvironmentSpec env_defaults[] = {
      nsb::Stationary{{0.9, 0.7}}, nsb::PeriodicTable{nsb::alternating_trap_table()},
      nsb::Sinusoidal{}, nsb::DriftCap{}, nsb::SwitchingDrift{}, nsb::FileBacked{"means.txt"}};
  for (const auto& spec : env_defaults) {
    envs.push_back(nsb::environment_to_json(spec, nsb::RewardLaw::Bernoulli));
  }
  json agents = json::array();
  const nsb::AgentConfig agent_defaults[] = {nsb::Ser3Params{}, nsb::Ser4Params{},
                                             nsb::SeParams{},   nsb::Ucb1Params{},
                                             nsb::Exp3Params{}, nsb::Exp3sParams{},
                                             nsb::SwUcbParams{}};
  for (const auto& config : agent_defaults) {
    agents.push_back(nsb::agent_to_json({nsb::agent_kind(config), config}));
  }
  json presets = nsb::preset_names();
  return {{"environments", envs}, {"agents", agents}, {"presets", presets}};
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

void run_and_emit(const nsb::ExperimentConfig& config, const std::string& out, unsigned jobs) {
  const auto result = nsb::run_experiment(config, jobs);
  nsb::emit_results(result, config, out);
  for (const auto& agent : result.agents) {
    const double final_regret = agent.regret.empty() ? 0.0 : agent.regret.back().mean;
    std::cerr << agent.name << ": final mean regret " << final_regret << ", mean complexity "
              << agent.mean_complexity << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-stationary bandit experiments"};
  app.set_version_flag("--version", std::string(nsb::kVersion));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path;
  std::string out_dir;
  unsigned jobs = default_jobs();
  std::optional<std::uint64_t> seed;
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the master seed");

  auto* reproduce = app.add_subcommand("reproduce", "Run a built-in reproduction preset");
  std::string preset;
  std::optional<nsb::Step> horizon;
  std::optional<std::uint64_t> runs;
  std::uint64_t preset_seed = 0;
  bool full_scale = false;
  std::string phi_choice = "printed";
  std::string preset_out;
  unsigned preset_jobs = default_jobs();
  reproduce->add_option("preset", preset, "figure1, problem1, problem2 or problem3")
      ->required()
      ->check(CLI::IsMember(nsb::preset_names()));
  reproduce->add_option("--horizon", horizon, "Horizon T");
  reproduce->add_option("--runs", runs, "Runs per agent");
  reproduce->add_option("--seed", preset_seed, "Master seed");
  reproduce->add_flag("--full-scale", full_scale, "T = 1e7 and 50 runs");
  reproduce->add_option("--phi", phi_choice, "SER4 reset probability: printed, intended, corollary3");
  reproduce->add_option("--jobs", preset_jobs, "Parallel runs")->check(CLI::PositiveNumber);
  reproduce->add_option("--out", preset_out, "Output directory")->required();

  auto* gap = app.add_subcommand("gap", "Realization gaps of a mean table");
  std::string env_path;
  std::size_t tau_max = 0;
  bool brute_force = false;
  gap->add_option("--env", env_path, "Mean-table file")->required();
  gap->add_option("--tau-max", tau_max, "Largest number of rounds")->required()->check(
      CLI::PositiveNumber);
  gap->add_flag("--brute-force", brute_force, "Enumerate every shrinking realization");

  auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form guarantees");
  nsb::BoundInputs inputs;
  std::optional<double> bound_horizon;
  std::optional<double> bound_phi;
  bounds->add_option("--K", inputs.arms, "Number of arms")->required();
  bounds->add_option("--delta", inputs.delta, "Failure probability")->required();
  bounds->add_option("--gap", inputs.gap, "Gap")->required();
  bounds->add_option("--T", bound_horizon, "Horizon (default 1/delta)");
  bounds->add_option("--N", inputs.segments, "Number of segments");
  bounds->add_option("--phi", bound_phi, "Reset probability (default: regret tuning)");

  app.add_subcommand("list", "Available agents, environments and presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      auto config = nsb::load_config_file(config_path);
      if (seed) {
        config.seed = *seed;
      }
      run_and_emit(config, out_dir, jobs);
    } else if (*reproduce) {
      nsb::PresetOptions options;
      options.horizon = horizon;
      options.runs = runs;
      options.seed = preset_seed;
      options.full_scale = full_scale;
      options.phi = nsb::parse_preset_phi(phi_choice);
      run_and_emit(nsb::make_preset(preset, options), preset_out, preset_jobs);
    } else if (*gap) {
      const auto table = nsb::read_mean_table_file(env_path);
      const std::size_t arms = table.table.size();
      const std::size_t period = table.table.front().size();
      // Whole periods covering tau_max full rounds.
      const auto needed = static_cast<nsb::Step>(arms * tau_max);
      const nsb::Step horizon_steps = (needed + period - 1) / period * period;
      const auto env = nsb::build_environment(table, nsb::RewardLaw::Deterministic, horizon_steps, 0);
      const auto report = brute_force ? nsb::min_gap_bruteforce(env, 1, tau_max, arms)
                                      : nsb::full_round_robin_gaps(env, 1, tau_max);
      std::cout << gap_report_json(report, brute_force ? "brute_force" : "full_round_robin").dump(2)
                << '\n';
    } else if (*bounds) {
      inputs.horizon = bound_horizon.value_or(1.0 / inputs.delta);
      inputs.phi = bound_phi.value_or(0.0);
      if (!bound_phi) {
        inputs.phi = nsb::regret_tuned_phi(inputs.arms, inputs.horizon, inputs.segments);
      }
      std::cout << bound_report_json(inputs, nsb::compute_bounds(inputs)).dump(2) << '\n';
    } else {
      std::cout << list_json().dump(2) << '\n';
    }
  } catch (const nsb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nsb::InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
