#include "nsbandit/runner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "nsbandit/elimination.hpp"
#include "nsbandit/errors.hpp"
#include "nsbandit/stats.hpp"

namespace nsb {

namespace {

constexpr std::uint64_t kRunTag = 0x52554e;  // "RUN"
constexpr std::uint64_t kEnvTag = 0x454e56;  // "ENV"

}  // namespace

std::uint64_t run_seed(std::uint64_t master, std::size_t agent, std::uint64_t run) {
  return hash_words({master, kRunTag, agent, run});
}

std::uint64_t environment_seed(std::uint64_t master, std::uint64_t run) {
  return hash_words({master, kEnvTag, run});
}

RunTrace run_single(const Environment& env, const AgentConfig& config, Step horizon,
                    std::uint64_t seed) {
  RunTrace trace;
  trace.reserve(horizon);
  simulate(env, config, horizon, seed, [&](const PullRecord& r) { trace.push_back(r); });
  return trace;
}

RunOutcome run_measured(const Environment& env, const AgentConfig& config, Step horizon,
                        std::uint64_t seed, const std::vector<Step>& checkpoints) {
  RunOutcome out;
  RegretAccumulator regret(env);
  ComplexityAccumulator complexity(env);
  std::size_t next_checkpoint = 0;
  out.regret_at_checkpoints.reserve(checkpoints.size());

  auto agent = simulate(env, config, horizon, seed, [&](const PullRecord& r) {
    const double cumulative = regret.add(r);
    complexity.add(r);
    if (r.reset) {
      ++out.resets;
    }
    while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == r.t) {
      out.regret_at_checkpoints.push_back(cumulative);
      ++next_checkpoint;
    }
  });
  if (next_checkpoint != checkpoints.size()) {
    throw ContractViolation("checkpoint beyond the run horizon");
  }

  out.final_regret = regret.total();
  out.complexity = complexity.report();
  if (horizon > 0) {
    out.final_recommendation = agent->recommendation();
    out.recommendation_correct = out.final_recommendation == env.optimal_arm_at(horizon);
  }
  if (const auto* elim = dynamic_cast<const EliminationAgent*>(agent.get())) {
    out.stopping_round = elim->stopping_round();
  }
  return out;
}

const AgentAggregate& AggregateResult::agent(const std::string& name) const {
  for (const auto& a : agents) {
    if (a.name == name) {
      return a;
    }
  }
  throw InvalidParameter("no agent named '" + name + "' in the result");
}

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
  if (values.empty()) {
    return {0.0, 0.0};
  }
  const auto n = static_cast<double>(values.size());
  CompensatedSum sum;
  for (double v : values) {
    sum.add(v);
  }
  const double mean = sum.value() / n;
  if (values.size() == 1) {
    return {mean, 0.0};
  }
  CompensatedSum squares;
  for (double v : values) {
    squares.add((v - mean) * (v - mean));
  }
  return {mean, std::sqrt(squares.value() / (n - 1.0))};
}

AggregateResult run_experiment(const ExperimentConfig& config, unsigned jobs) {
  validate_config(config);
  const std::size_t agent_count = config.agents.size();
  const std::uint64_t runs = config.runs;

  std::vector<Environment> environments;
  environments.reserve(runs);
  for (std::uint64_t r = 0; r < runs; ++r) {
    environments.push_back(build_environment(config.environment, config.law, config.horizon,
                                             environment_seed(config.seed, r)));
  }

  const std::size_t units = agent_count * runs;
  std::vector<RunOutcome> outcomes(units);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t unit = next.fetch_add(1);
      if (unit >= units) {
        return;
      }
      const std::size_t a = unit / runs;
      const std::uint64_t r = unit % runs;
      try {
        outcomes[unit] = run_measured(environments[r], config.agents[a].config, config.horizon,
                                      run_seed(config.seed, a, r), config.checkpoints);
        outcomes[unit].run = r;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(units);
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(units)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  AggregateResult result;
  for (std::size_t a = 0; a < agent_count; ++a) {
    AgentAggregate agg;
    agg.name = config.agents[a].name;
    agg.runs.assign(outcomes.begin() + static_cast<std::ptrdiff_t>(a * runs),
                    outcomes.begin() + static_cast<std::ptrdiff_t>((a + 1) * runs));
    for (std::size_t c = 0; c < config.checkpoints.size(); ++c) {
      std::vector<double> values;
      values.reserve(runs);
      for (const auto& o : agg.runs) {
        values.push_back(o.regret_at_checkpoints[c]);
      }
      const auto [mean, sd] = mean_and_std(values);
      agg.regret.push_back({config.checkpoints[c], mean, sd, runs});
    }
    std::vector<double> complexity;
    for (const auto& o : agg.runs) {
      complexity.push_back(static_cast<double>(o.complexity.total));
    }
    std::tie(agg.mean_complexity, agg.std_complexity) = mean_and_std(complexity);
    result.agents.push_back(std::move(agg));
  }
  return result;
}

}  // namespace nsb
