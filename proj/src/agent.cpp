#include "nsbandit/agent.hpp"

#include <cmath>

#include "nsbandit/confidence.hpp"
#include "nsbandit/elimination.hpp"
#include "nsbandit/errors.hpp"
#include "nsbandit/exp3.hpp"
#include "nsbandit/ucb.hpp"

namespace nsb {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_elimination(const char* kind, double delta, double epsilon,
                       const std::optional<std::uint64_t>& tau_min) {
  const std::string name(kind);
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw InvalidParameter(name + ": delta must lie in (0, 0.5]");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw InvalidParameter(name + ": epsilon must lie in [0, 1)");
  }
  if (tau_min && *tau_min < 1) {
    throw InvalidParameter(name + ": tau_min must be >= 1");
  }
}

template <class P>
EliminationRule rule_for(const P& p, std::size_t arms) {
  return {arms, p.delta, p.epsilon, p.tau_min.value_or(default_tau_min(arms, p.delta))};
}

}  // namespace

std::string agent_kind(const AgentConfig& config) {
  return std::visit(Overloaded{
                        [](const Ser3Params&) { return std::string("SER3"); },
                        [](const Ser4Params&) { return std::string("SER4"); },
                        [](const SeParams&) { return std::string("SE"); },
                        [](const Ucb1Params&) { return std::string("UCB1"); },
                        [](const Exp3Params&) { return std::string("EXP3"); },
                        [](const Exp3sParams&) { return std::string("EXP3S"); },
                        [](const SwUcbParams&) { return std::string("SWUCB"); },
                    },
                    config);
}

void validate_agent_config(const AgentConfig& config) {
  std::visit(Overloaded{
                 [](const Ser3Params& p) { check_elimination("SER3", p.delta, p.epsilon, p.tau_min); },
                 [](const Ser4Params& p) {
                   check_elimination("SER4", p.delta, p.epsilon, p.tau_min);
                   if (!(p.phi >= 0.0 && p.phi <= 1.0)) {
                     throw InvalidParameter("SER4: phi must lie in [0, 1]");
                   }
                 },
                 [](const SeParams& p) { check_elimination("SE", p.delta, p.epsilon, p.tau_min); },
                 [](const Ucb1Params&) {},
                 [](const Exp3Params& p) {
                   if (!(p.gamma > 0.0 && p.gamma <= 1.0)) {
                     throw InvalidParameter("EXP3: gamma must lie in (0, 1]");
                   }
                 },
                 [](const Exp3sParams& p) {
                   if (!(p.gamma > 0.0 && p.gamma <= 1.0)) {
                     throw InvalidParameter("EXP3S: gamma must lie in (0, 1]");
                   }
                   if (!(p.alpha >= 0.0)) {
                     throw InvalidParameter("EXP3S: alpha must be >= 0");
                   }
                 },
                 [](const SwUcbParams& p) {
                   if (p.window < 1) {
                     throw InvalidParameter("SWUCB: window must be >= 1");
                   }
                   if (!(p.xi > 0.0)) {
                     throw InvalidParameter("SWUCB: xi must be > 0");
                   }
                 },
             },
             config);
}

std::unique_ptr<Agent> make_agent(const AgentConfig& config, std::size_t arms, RngStream& rng) {
  if (arms == 0) {
    throw InvalidParameter("agent needs K >= 1");
  }
  validate_agent_config(config);
  return std::visit(
      Overloaded{
          [&](const Ser3Params& p) -> std::unique_ptr<Agent> {
            return std::make_unique<EliminationAgent>(
                EliminationAgent::Options{rule_for(p, arms), true, 0.0}, rng);
          },
          [&](const Ser4Params& p) -> std::unique_ptr<Agent> {
            return std::make_unique<EliminationAgent>(
                EliminationAgent::Options{rule_for(p, arms), true, p.phi}, rng);
          },
          [&](const SeParams& p) -> std::unique_ptr<Agent> {
            return std::make_unique<EliminationAgent>(
                EliminationAgent::Options{rule_for(p, arms), false, 0.0}, rng);
          },
          [&](const Ucb1Params&) -> std::unique_ptr<Agent> {
            return std::make_unique<Ucb1Agent>(arms);
          },
          [&](const Exp3Params& p) -> std::unique_ptr<Agent> {
            return std::make_unique<Exp3Agent>(arms, p.gamma, 0.0);
          },
          [&](const Exp3sParams& p) -> std::unique_ptr<Agent> {
            return std::make_unique<Exp3Agent>(arms, p.gamma, p.alpha);
          },
          [&](const SwUcbParams& p) -> std::unique_ptr<Agent> {
            return std::make_unique<SwUcbAgent>(arms, p);
          },
      },
      config);
}

}  // namespace nsb
