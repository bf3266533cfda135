#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <catch2/catch_amalgamated.hpp>

#include "nsbandit/agent.hpp"
#include "nsbandit/confidence.hpp"
#include "nsbandit/elimination.hpp"
#include "nsbandit/environment.hpp"
#include "nsbandit/errors.hpp"
#include "nsbandit/exp3.hpp"
#include "nsbandit/runner.hpp"
#include "nsbandit/ucb.hpp"

using namespace nsb;
using Catch::Approx;
using HighPrecision = boost::multiprecision::cpp_dec_float_50;

namespace {

double radius_oracle(std::uint64_t tau, std::size_t arms, double delta) {
  const HighPrecision t(tau);
  return static_cast<double>(
      sqrt((HighPrecision(2) / t) * log(4 * HighPrecision(arms) * t * t / HighPrecision(delta))));
}

EliminationAgent make_elimination(std::size_t arms, bool shuffle, double phi, RngStream& rng,
                                  std::uint64_t tau_min = 1) {
  return EliminationAgent({{arms, 0.05, 0.0, tau_min}, shuffle, phi}, rng);
}

EmpiricalStats stats_with(const std::vector<double>& means, std::uint64_t tau) {
  EmpiricalStats stats(means.size());
  for (ArmId k = 0; k < means.size(); ++k) {
    for (std::uint64_t i = 0; i < tau; ++i) {
      stats.update(k, means[k]);
    }
  }
  return stats;
}

Ser3Params ser3(double delta = 0.05) {
  Ser3Params p;
  p.delta = delta;
  return p;
}

}  // namespace

TEST_CASE("agent_init", "[agents]") {
  RngStream rng(1, 0);
  SECTION("SER3 with one arm exploits immediately") {
    auto agent = make_elimination(1, true, 0.0, rng);
    CHECK(agent.phase() == Phase::Exploit);
    const auto a = agent.act(1, rng);
    CHECK(a.arm == 0);
    CHECK_FALSE(a.sampling);
  }
  SECTION("SER3 with five arms starts sampling with zeroed statistics") {
    auto agent = make_elimination(5, true, 0.0, rng);
    CHECK(agent.phase() == Phase::Sampling);
    CHECK(agent.active().size() == 5);
    for (ArmId k = 0; k < 5; ++k) {
      CHECK(agent.stats().mean(k) == 0.0);
      CHECK(agent.stats().count(k) == 0);
    }
    auto order = agent.pending_order();
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<ArmId>{0, 1, 2, 3, 4});
  }
  SECTION("EXP3 starts uniform") {
    Exp3Agent agent(4, 0.1, 0.0);
    for (double p : agent.probabilities()) {
      CHECK(p == Approx(0.25).margin(1e-15));
    }
  }
  SECTION("make_agent builds every kind") {
    const std::vector<AgentConfig> configs{Ser3Params{}, Ser4Params{}, SeParams{}, Ucb1Params{},
                                           Exp3Params{}, Exp3sParams{}, SwUcbParams{}};
    const std::vector<std::string> kinds{"SER3", "SER4", "SE", "UCB1", "EXP3", "EXP3S", "SWUCB"};
    for (std::size_t i = 0; i < configs.size(); ++i) {
      CHECK(agent_kind(configs[i]) == kinds[i]);
      auto agent = make_agent(configs[i], 3, rng);
      CHECK(agent->arms() == 3);
    }
  }
}

TEST_CASE("agent config validation", "[agents]") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(validate_agent_config(ser3(0.0)), InvalidParameter);
  CHECK_THROWS_AS(validate_agent_config(ser3(0.6)), InvalidParameter);
  Ser3Params eps;
  eps.epsilon = 1.0;
  CHECK_THROWS_AS(validate_agent_config(eps), InvalidParameter);
  Ser3Params tau;
  tau.tau_min = 0;
  CHECK_THROWS_AS(validate_agent_config(tau), InvalidParameter);
  Ser4Params phi;
  phi.phi = 1.5;
  CHECK_THROWS_AS(validate_agent_config(phi), InvalidParameter);
  CHECK_THROWS_AS(validate_agent_config(Exp3Params{0.0}), InvalidParameter);
  CHECK_THROWS_AS(validate_agent_config(Exp3sParams{0.05, -1.0}), InvalidParameter);
  CHECK_THROWS_AS(validate_agent_config(SwUcbParams{0, 0.6}), InvalidParameter);
  CHECK_THROWS_AS(validate_agent_config(SwUcbParams{10, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(make_agent(Ucb1Params{}, 0, rng), InvalidParameter);
}

TEST_CASE("SER3 plays each active arm once per round", "[agents][ser3]") {
  RngStream rng(3, 0);
  auto agent = make_elimination(3, true, 0.0, rng);
  for (int round = 0; round < 200; ++round) {
    std::set<ArmId> seen;
    for (int i = 0; i < 3; ++i) {
      const auto a = agent.act(static_cast<Step>(round * 3 + i + 1), rng);
      REQUIRE(a.sampling);
      seen.insert(a.arm);
      agent.observe(static_cast<Step>(round * 3 + i + 1), a.arm, 0.5);
    }
    REQUIRE(seen.size() == 3);
  }
  CHECK(agent.active().size() == 3);
}

TEST_CASE("SER3 round orders are uniform over permutations", "[agents][ser3]") {
  RngStream rng(4, 0);
  auto agent = make_elimination(3, true, 0.0, rng);
  constexpr int rounds = 60000;
  std::map<std::vector<ArmId>, int> counts;
  Step t = 1;
  for (int round = 0; round < rounds; ++round) {
    std::vector<ArmId> order;
    for (int i = 0; i < 3; ++i, ++t) {
      const auto a = agent.act(t, rng);
      order.push_back(a.arm);
      agent.observe(t, a.arm, 0.5);
    }
    ++counts[order];
  }
  REQUIRE(counts.size() == 6);
  double stat = 0.0;
  for (const auto& [order, n] : counts) {
    stat += (n - 10000.0) * (n - 10000.0) / 10000.0;
  }
  boost::math::chi_squared dist(5);
  CHECK(stat < boost::math::quantile(boost::math::complement(dist, 0.001)));
}

TEST_CASE("SE follows the identity order", "[agents][se]") {
  RngStream rng(5, 0);
  auto agent = make_elimination(3, false, 0.0, rng);
  std::vector<ArmId> arms;
  for (Step t = 1; t <= 9; ++t) {
    const auto a = agent.act(t, rng);
    arms.push_back(a.arm);
    agent.observe(t, a.arm, 0.5);
  }
  CHECK(arms == std::vector<ArmId>{0, 1, 2, 0, 1, 2, 0, 1, 2});
}

TEST_CASE("SE is deterministic under deterministic rewards", "[agents][se]") {
  const auto env = build_environment(Sinusoidal{5, 0.1, 2}, RewardLaw::Deterministic, 5000, 0);
  SeParams se;
  CHECK(run_single(env, se, 5000, 1) == run_single(env, se, 5000, 999));
}

TEST_CASE("observe contract", "[agents]") {
  RngStream rng(6, 0);
  auto agent = make_elimination(3, true, 0.0, rng);
  const auto a = agent.act(1, rng);
  CHECK_THROWS_AS(agent.observe(1, a.arm, 1.5), ContractViolation);
  CHECK_THROWS_AS(agent.observe(1, (a.arm + 1) % 3, 0.5), ContractViolation);

  Exp3Agent exp3(2, 0.1, 0.0);
  CHECK_THROWS_AS(exp3.observe(1, 0, 0.5), ContractViolation);
  Ucb1Agent ucb(2);
  const auto u = ucb.act(1, rng);
  CHECK_THROWS_AS(ucb.observe(1, u.arm, -0.5), ContractViolation);
}

TEST_CASE("SER3 expected means on the alternating trap", "[agents][ser3]") {
  // Round i occupies steps (2i - 1, 2i). Arm 0 is first with probability 1/2,
  // seeing 0.6 at the odd step or 1.0 at the even step: expectation 0.8. Arm 1
  // takes the other slot: 0.4 or 0.8, expectation 0.6.
  const auto env = build_environment(alternating_trap_table(), RewardLaw::Deterministic, 40, 0);
  constexpr int seeds = 2000;
  constexpr std::uint64_t rounds = 20;
  double sum0 = 0.0;
  double sum1 = 0.0;
  for (int s = 0; s < seeds; ++s) {
    RngStream rng(static_cast<std::uint64_t>(s), 1);
    auto agent = make_elimination(2, true, 0.0, rng, 1000);  // tau_min keeps both arms
    for (Step t = 1; t <= 2 * rounds; ++t) {
      const auto a = agent.act(t, rng);
      agent.observe(t, a.arm, env.mean_at(a.arm, t));
    }
    const double m0 = agent.stats().mean(0);
    const double m1 = agent.stats().mean(1);
    REQUIRE(m0 + m1 == Approx(1.4).margin(1e-12));
    sum0 += m0;
    sum1 += m1;
  }
  // Per-seed standard deviation of mean 0 is 0.4 * sqrt(0.25 / rounds).
  const double sigma = 0.4 * std::sqrt(0.25 / rounds) / std::sqrt(double(seeds));
  CHECK(std::abs(sum0 / seeds - 0.8) < 4 * sigma);
  CHECK(std::abs(sum1 / seeds - 0.6) < 4 * sigma);
}

TEST_CASE("SE eliminates the better arm of the alternating trap", "[agents][se]") {
  const auto env = build_environment(alternating_trap_table(), RewardLaw::Deterministic, 100000, 0);
  const double delta = 0.05;
  const auto tau_min = default_tau_min(2, delta);
  std::uint64_t expected = tau_min;
  while (0.2 < radius_oracle(expected, 2, delta)) {
    ++expected;
  }
  RngStream rng(0, 0);
  SeParams params;
  auto agent = make_agent(params, 2, rng);
  auto* se = dynamic_cast<EliminationAgent*>(agent.get());
  REQUIRE(se != nullptr);
  for (Step t = 1; t <= 2 * expected; ++t) {
    const auto a = se->act(t, rng);
    se->observe(t, a.arm, env.mean_at(a.arm, t));
  }
  REQUIRE(se->phase() == Phase::Exploit);
  CHECK(se->stopping_round() == expected);
  CHECK(se->active().arms == std::vector<ArmId>{1});
  CHECK(se->recommendation() == 1);
}

TEST_CASE("ser3_eliminate examples", "[elimination]") {
  const EliminationRule rule{2, 0.05, 0.0, 4};
  const auto active = ActiveSet::full(2);
  SECTION("no elimination below tau_min") {
    CHECK(ser3_eliminate(active, stats_with({1.0, 0.0}, 3), rule).arms == active.arms);
  }
  SECTION("large gap at tau = 200") {
    CHECK(confidence_radius(200, 2, 0.05) == Approx(radius_oracle(200, 2, 0.05)).epsilon(1e-14));
    CHECK(0.7 >= radius_oracle(200, 2, 0.05));
    const auto next = ser3_eliminate(active, stats_with({0.9, 0.2}, 200), rule);
    CHECK(next.arms == std::vector<ArmId>{0});
  }
  SECTION("equal means never eliminate") {
    for (std::uint64_t tau : {4, 50, 5000}) {
      CHECK(ser3_eliminate(ActiveSet::full(3), stats_with({0.5, 0.5, 0.5}, tau),
                           {3, 0.05, 0.0, 4})
                .size() == 3);
    }
  }
  SECTION("elimination is decided against the original K") {
    // Radius with K = 20 is larger than with K = 2 at the same tau.
    const std::uint64_t tau = 60;
    const double gap = (confidence_radius(tau, 2, 0.05) + confidence_radius(tau, 20, 0.05)) / 2;
    ActiveSet pair;
    pair.arms = {3, 7};
    EmpiricalStats stats(20);
    for (std::uint64_t i = 0; i < tau; ++i) {
      stats.update(3, 0.2 + gap);
      stats.update(7, 0.2);
    }
    CHECK(ser3_eliminate(pair, stats, {20, 0.05, 0.0, 1}).size() == 2);
    CHECK(ser3_eliminate(pair, stats, {2, 0.05, 0.0, 1}).size() == 1);
  }
  SECTION("leader survives when epsilon exceeds the radius") {
    REQUIRE(0.99 >= confidence_radius(200, 2, 0.05));
    const auto next = ser3_eliminate(active, stats_with({0.5, 0.5}, 200), {2, 0.05, 0.99, 1});
    CHECK(next.arms == std::vector<ArmId>{0});
  }
  SECTION("unequal counts are a contract violation") {
    auto stats = stats_with({0.5, 0.5}, 10);
    stats.update(0, 0.5);
    CHECK_THROWS_AS(ser3_eliminate(active, stats, rule), ContractViolation);
  }
}

TEST_CASE("the empirical leader always survives", "[elimination]") {
  RngStream rng(8, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t arms = 2 + rng.below(8);
    const std::uint64_t tau = 1 + rng.below(300);
    EmpiricalStats stats(arms);
    for (ArmId k = 0; k < arms; ++k) {
      const double p = rng.uniform();
      for (std::uint64_t i = 0; i < tau; ++i) {
        stats.update(k, rng.bernoulli(p) ? 1.0 : 0.0);
      }
    }
    const auto active = ActiveSet::full(arms);
    const double epsilon = rng.uniform() * 0.5;
    const auto next = ser3_eliminate(active, stats, {arms, 0.05, epsilon, 1});
    REQUIRE(next.size() >= 1);
    REQUIRE(next.contains(empirical_leader(active, stats)));
  }
}

TEST_CASE("SER4 resets", "[agents][ser4]") {
  SECTION("phi = 0 never resets and matches SER3 exactly") {
    const auto env = build_environment(Stationary{{0.6, 0.5, 0.4}}, RewardLaw::Bernoulli, 20000, 0);
    Ser4Params ser4;
    ser4.phi = 0.0;
    const auto a = run_single(env, ser4, 20000, 31);
    const auto b = run_single(env, ser3(), 20000, 31);
    CHECK(a == b);
    CHECK(std::none_of(a.begin(), a.end(), [](const PullRecord& r) { return r.reset; }));
  }
  SECTION("phi = 1 resets at every step and never leaves sampling") {
    RngStream rng(2, 0);
    auto agent = make_elimination(2, true, 1.0, rng);
    for (Step t = 1; t <= 1000; ++t) {
      REQUIRE(agent.maybe_reset(rng));
      const auto a = agent.act(t, rng);
      REQUIRE(a.sampling);
      agent.observe(t, a.arm, 1.0);
    }
    CHECK(agent.reset_count() == 1000);
  }
  SECTION("reset restores a full task mid-round") {
    RngStream rng(2, 0);
    auto agent = make_elimination(3, true, 1.0, rng);
    const auto a = agent.act(1, rng);
    agent.observe(1, a.arm, 1.0);
    CHECK(agent.stats().count(a.arm) == 1);
    agent.maybe_reset(rng);
    CHECK(agent.stats().count(a.arm) == 0);
    CHECK(agent.pending_order().size() == 3);
    CHECK(agent.active().round == 1);
  }
  SECTION("phi = 1e-3 over 1e6 steps") {
    RngStream rng(77, 0);
    auto agent = make_elimination(2, true, 1e-3, rng);
    for (Step t = 1; t <= 1'000'000; ++t) {
      agent.maybe_reset(rng);
      const auto a = agent.act(t, rng);
      agent.observe(t, a.arm, a.arm == 0 ? 1.0 : 0.0);
    }
    const double sigma = std::sqrt(1e6 * 1e-3 * (1 - 1e-3));
    CHECK(std::abs(static_cast<double>(agent.reset_count()) - 1000.0) <= 3 * sigma);
  }
}

TEST_CASE("ucb1_index", "[agents][ucb]") {
  EmpiricalStats stats(2);
  stats.update(0, 0.0);
  stats.update(0, 1.0);
  const double e2 = std::exp(2.0);
  CHECK(ucb1_index(stats, 0, e2) == Approx(0.5 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ucb1_index(stats, 0, e2) == Approx(1.914).margin(5e-4));
  EmpiricalStats one(1);
  one.update(0, 0.3);
  CHECK(ucb1_index(one, 0, 1) == 0.3);
  double previous = ucb1_index(stats, 0, 1);
  for (Step t = 2; t < 1000; ++t) {
    const double v = ucb1_index(stats, 0, static_cast<double>(t));
    REQUIRE(v > previous);
    previous = v;
  }
  CHECK_THROWS_AS(ucb1_index(stats, 1, 10), ContractViolation);
}

TEST_CASE("UCB1 plays every arm once before using indices", "[agents][ucb]") {
  RngStream rng(1, 0);
  Ucb1Agent agent(4);
  for (Step t = 1; t <= 4; ++t) {
    const auto a = agent.act(t, rng);
    CHECK(a.arm == t - 1);
    CHECK_FALSE(a.sampling);
    agent.observe(t, a.arm, a.arm == 2 ? 1.0 : 0.0);
  }
  CHECK(agent.recommendation() == 2);
  // All counts are 1, so the largest mean has the largest index.
  CHECK(agent.act(5, rng).arm == 2);
}

TEST_CASE("exp3_probabilities", "[agents][exp3]") {
  const std::vector<double> equal(20, 0.0);
  for (double p : exp3_probabilities(equal, 0.05)) {
    CHECK(p == Approx(0.05).margin(1e-15));
  }
  const auto dominant = exp3_probabilities(std::vector<double>{1000.0, 0.0}, 0.1);
  CHECK(dominant[0] == Approx(0.95).margin(1e-12));
  CHECK(dominant[1] == Approx(0.05).margin(1e-12));
  const auto softmax = exp3_probabilities(std::vector<double>{std::log(3.0), 0.0}, 0.0);
  CHECK(softmax[0] == Approx(0.75).margin(1e-15));
  CHECK(softmax[1] == Approx(0.25).margin(1e-15));
  const auto huge = exp3_probabilities(std::vector<double>{1e6, 1e6 - 1.0, -1e6}, 0.0);
  CHECK(huge[0] + huge[1] + huge[2] == Approx(1.0).margin(1e-12));
  CHECK(std::isfinite(huge[2]));
}

TEST_CASE("EXP3 samples from its distribution", "[agents][exp3]") {
  Exp3Agent agent(2, 0.1, 0.0);
  RngStream rng(9, 0);
  int zeros = 0;
  for (Step t = 1; t <= 10000; ++t) {
    zeros += agent.act(t, rng).arm == 0 ? 1 : 0;
  }
  CHECK(std::abs(zeros / 10000.0 - 0.5) <= 0.01);
}

TEST_CASE("EXP3 log-weight update", "[agents][exp3]") {
  Exp3Agent agent(2, 0.1, 0.0);
  RngStream rng(10, 0);
  Step t = 1;
  auto a = agent.act(t, rng);
  while (a.arm != 0) {
    a = agent.act(++t, rng);
  }
  agent.observe(t, 0, 1.0);
  CHECK(agent.log_weights()[0] == Approx(0.1).margin(1e-15));
  CHECK(agent.log_weights()[1] == 0.0);
}

TEST_CASE("EXP3.S share term", "[agents][exp3]") {
  // Oracle in linear space: w_k <- w_k exp(gamma yhat_k / K) + (e alpha / K) sum_j w_j.
  const double gamma = 0.2;
  const double alpha = 0.01;
  Exp3Agent agent(3, gamma, alpha);
  std::vector<double> w(3, 1.0);
  RngStream rng(12, 0);
  RngStream rewards(13, 0);
  for (Step t = 1; t <= 200; ++t) {
    const auto p = agent.probabilities();
    const auto a = agent.act(t, rng);
    const double y = rewards.uniform();
    double total = 0.0;
    for (double v : w) {
      total += v;
    }
    for (ArmId k = 0; k < 3; ++k) {
      const double yhat = k == a.arm ? y / p[k] : 0.0;
      w[k] = w[k] * std::exp(gamma * yhat / 3.0) + std::numbers::e * alpha / 3.0 * total;
    }
    agent.observe(t, a.arm, y);
    const double shift = agent.log_weights()[0] - std::log(w[0]);
    for (ArmId k = 1; k < 3; ++k) {
      REQUIRE(agent.log_weights()[k] - std::log(w[k]) == Approx(shift).margin(1e-9));
    }
  }
}

TEST_CASE("EXP3 probabilities stay a distribution over a long run", "[agents][exp3]") {
  for (double alpha : {0.0, 1e-5}) {
    Exp3Agent agent(5, 0.05, alpha);
    RngStream rng(14, 0);
    for (Step t = 1; t <= 100000; ++t) {
      const auto p = agent.probabilities();
      double total = 0.0;
      for (double v : p) {
        REQUIRE(v >= 0.05 / 5 - 1e-12);
        total += v;
      }
      REQUIRE(std::abs(total - 1.0) <= 1e-9);
      const auto a = agent.act(t, rng);
      agent.observe(t, a.arm, a.arm == 4 ? 1.0 : 0.2);
    }
    CHECK(agent.recommendation() == 4);
  }
}

TEST_CASE("sliding window eviction", "[agents][swucb]") {
  SlidingWindow window(2, 5);
  for (Step t = 1; t <= 7; ++t) {
    window.push(t, t % 2, t <= 2 ? 1.0 : 0.0);
  }
  REQUIRE(window.entries().size() == 5);
  CHECK(window.entries().front().t == 3);
  CHECK(window.entries().back().t == 7);
  CHECK(window.count(0) == 2);  // t = 4, 6
  CHECK(window.count(1) == 3);  // t = 3, 5, 7
  CHECK(window.mean(0) == 0.0);
}

TEST_CASE("swucb_index", "[agents][swucb]") {
  SlidingWindow window(2, 100);
  window.push(1, 0, 1.0);
  CHECK(swucb_index(window, 0, 100, 100, 1.0) == Approx(1.0 + std::sqrt(std::log(100.0))).epsilon(1e-14));
  CHECK(swucb_index(window, 0, 100, 100, 1.0) == Approx(3.146).margin(5e-4));
  CHECK(swucb_index(window, 0, 10, 100, 1.0) == Approx(1.0 + std::sqrt(std::log(10.0))).epsilon(1e-14));
  CHECK(swucb_index(window, 0, 1000, 100, 1.0) == swucb_index(window, 0, 100, 100, 1.0));
  window.push(2, 0, 0.0);
  CHECK(swucb_index(window, 0, 50, 100, 0.6) ==
        Approx(0.5 + std::sqrt(0.6 * std::log(50.0) / 2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(swucb_index(window, 1, 50, 100, 0.6), ContractViolation);
}

TEST_CASE("SW-UCB forgets arms that leave the window", "[agents][swucb]") {
  RngStream rng(1, 0);
  SwUcbAgent agent(3, SwUcbParams{4, 0.6});
  std::vector<ArmId> arms;
  for (Step t = 1; t <= 3; ++t) {
    const auto a = agent.act(t, rng);
    arms.push_back(a.arm);
    agent.observe(t, a.arm, a.arm == 1 ? 1.0 : 0.0);
  }
  CHECK(arms == std::vector<ArmId>{0, 1, 2});
  for (Step t = 4; t <= 40; ++t) {
    const auto a = agent.act(t, rng);
    agent.observe(t, a.arm, a.arm == 1 ? 1.0 : 0.0);
    std::set<ArmId> in_window;
    for (const auto& e : agent.window().entries()) {
      in_window.insert(e.arm);
    }
    REQUIRE(agent.window().entries().size() <= 4);
  }
}
