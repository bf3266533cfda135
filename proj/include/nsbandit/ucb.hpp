#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "nsbandit/agent.hpp"
#include "nsbandit/stats.hpp"

namespace nsb {

/// mu_k + sqrt(2 ln t / n_k). Requires n_k >= 1 and t >= 1; t need not be an integer.
double ucb1_index(const EmpiricalStats& stats, ArmId arm, double t);

class Ucb1Agent final : public Agent {
 public:
  explicit Ucb1Agent(std::size_t arms);

  std::size_t arms() const noexcept override { return stats_.arms(); }
  Action act(Step t, RngStream& rng) override;
  void observe(Step t, ArmId arm, double y) override;
  ArmId recommendation() const override;

  const EmpiricalStats& stats() const noexcept { return stats_; }

 private:
  EmpiricalStats stats_;
  ArmId last_ = 0;
  bool pending_ = false;
};

struct WindowEntry {
  Step t;
  ArmId arm;
  double reward;
};

/// The last `capacity` pulls (global clock) with per-arm sums and counts.
class SlidingWindow {
 public:
  SlidingWindow(std::size_t arms, std::uint64_t capacity);

  void push(Step t, ArmId arm, double reward);

  std::uint64_t capacity() const noexcept { return capacity_; }
  std::uint64_t count(ArmId arm) const { return counts_.at(arm); }
  double mean(ArmId arm) const;
  const std::deque<WindowEntry>& entries() const noexcept { return entries_; }

 private:
  std::uint64_t capacity_;
  std::deque<WindowEntry> entries_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> counts_;
};

/// Windowed mean + sqrt(xi ln(min(t, tau_w)) / N_k). Requires N_k >= 1.
double swucb_index(const SlidingWindow& window, ArmId arm, Step t, std::uint64_t tau_w,
                   double xi);

class SwUcbAgent final : public Agent {
 public:
  SwUcbAgent(std::size_t arms, const SwUcbParams& params);

  std::size_t arms() const noexcept override { return arms_; }
  Action act(Step t, RngStream& rng) override;
  void observe(Step t, ArmId arm, double y) override;
  ArmId recommendation() const override;

  const SlidingWindow& window() const noexcept { return window_; }

 private:
  std::size_t arms_;
  SwUcbParams params_;
  SlidingWindow window_;
  ArmId last_ = 0;
  bool pending_ = false;
};

}  // namespace nsb
