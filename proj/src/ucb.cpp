#include "nsbandit/ucb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsbandit/errors.hpp"

namespace nsb {

namespace {

void check_reward(double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw ContractViolation("observe: reward " + std::to_string(y) + " outside [0,1]");
  }
}

}  // namespace

double ucb1_index(const EmpiricalStats& stats, ArmId arm, double t) {
  const auto n = stats.count(arm);
  if (n == 0) {
    throw ContractViolation("ucb1_index: arm " + std::to_string(arm) + " never played");
  }
  if (!(t >= 1.0)) {
    throw ContractViolation("ucb1_index: t must be >= 1");
  }
  return stats.mean(arm) + std::sqrt(2.0 * std::log(t) / static_cast<double>(n));
}

Ucb1Agent::Ucb1Agent(std::size_t arms) : stats_(arms) {
  if (arms == 0) {
    throw InvalidParameter("UCB1 needs K >= 1");
  }
}

Action Ucb1Agent::act(Step t, RngStream&) {
  ArmId choice = 0;
  bool found_unplayed = false;
  for (ArmId k = 0; k < stats_.arms(); ++k) {
    if (stats_.count(k) == 0) {
      choice = k;
      found_unplayed = true;
      break;
    }
  }
  if (!found_unplayed) {
    // Same arithmetic as ucb1_index with the log hoisted out of the loop.
    const double numerator = 2.0 * std::log(static_cast<double>(t));
    auto index = [&](ArmId k) {
      return stats_.mean(k) + std::sqrt(numerator / static_cast<double>(stats_.count(k)));
    };
    double best = index(0);
    for (ArmId k = 1; k < stats_.arms(); ++k) {
      const double v = index(k);
      if (v > best) {
        best = v;
        choice = k;
      }
    }
  }
  last_ = choice;
  pending_ = true;
  return {choice, false};
}

void Ucb1Agent::observe(Step, ArmId arm, double y) {
  check_reward(y);
  if (!pending_ || arm != last_) {
    throw ContractViolation("observe: arm " + std::to_string(arm) + " was not proposed");
  }
  pending_ = false;
  stats_.update(arm, y);
}

ArmId Ucb1Agent::recommendation() const {
  ArmId best = 0;
  for (ArmId k = 1; k < stats_.arms(); ++k) {
    if (stats_.mean(k) > stats_.mean(best)) {
      best = k;
    }
  }
  return best;
}

SlidingWindow::SlidingWindow(std::size_t arms, std::uint64_t capacity)
    : capacity_(capacity), sums_(arms, 0.0), counts_(arms, 0) {
  if (capacity == 0) {
    throw InvalidParameter("sliding window capacity must be >= 1");
  }
}

void SlidingWindow::push(Step t, ArmId arm, double reward) {
  if (arm >= counts_.size()) {
    throw ContractViolation("SlidingWindow::push: arm out of range");
  }
  if (entries_.size() == capacity_) {
    const WindowEntry& old = entries_.front();
    sums_[old.arm] -= old.reward;
    if (--counts_[old.arm] == 0) {
      sums_[old.arm] = 0.0;
    }
    entries_.pop_front();
  }
  entries_.push_back({t, arm, reward});
  sums_[arm] += reward;
  ++counts_[arm];
}

double SlidingWindow::mean(ArmId arm) const {
  const auto n = counts_.at(arm);
  return n == 0 ? 0.0 : sums_[arm] / static_cast<double>(n);
}

double swucb_index(const SlidingWindow& window, ArmId arm, Step t, std::uint64_t tau_w,
                   double xi) {
  const auto n = window.count(arm);
  if (n == 0) {
    throw ContractViolation("swucb_index: arm " + std::to_string(arm) + " absent from window");
  }
  const auto horizon = static_cast<double>(std::min<std::uint64_t>(t, tau_w));
  return window.mean(arm) + std::sqrt(xi * std::log(horizon) / static_cast<double>(n));
}

SwUcbAgent::SwUcbAgent(std::size_t arms, const SwUcbParams& params)
    : arms_(arms), params_(params), window_(arms, params.window) {
  if (arms == 0) {
    throw InvalidParameter("SW-UCB needs K >= 1");
  }
}

Action SwUcbAgent::act(Step t, RngStream&) {
  ArmId choice = 0;
  bool found_absent = false;
  for (ArmId k = 0; k < arms_; ++k) {
    if (window_.count(k) == 0) {
      choice = k;
      found_absent = true;
      break;
    }
  }
  if (!found_absent) {
    const double numerator =
        params_.xi * std::log(static_cast<double>(std::min<std::uint64_t>(t, params_.window)));
    auto index = [&](ArmId k) {
      return window_.mean(k) + std::sqrt(numerator / static_cast<double>(window_.count(k)));
    };
    double best = index(0);
    for (ArmId k = 1; k < arms_; ++k) {
      const double v = index(k);
      if (v > best) {
        best = v;
        choice = k;
      }
    }
  }
  last_ = choice;
  pending_ = true;
  return {choice, false};
}

void SwUcbAgent::observe(Step t, ArmId arm, double y) {
  check_reward(y);
  if (!pending_ || arm != last_) {
    throw ContractViolation("observe: arm " + std::to_string(arm) + " was not proposed");
  }
  pending_ = false;
  window_.push(t, arm, y);
}

ArmId SwUcbAgent::recommendation() const {
  ArmId best = 0;
  for (ArmId k = 1; k < arms_; ++k) {
    if (window_.mean(k) > window_.mean(best)) {
      best = k;
    }
  }
  return best;
}

}  // namespace nsb
