#include "nsbandit/exp3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nsbandit/errors.hpp"

namespace nsb {

namespace {

// Log-weights are shifted back towards zero once the largest passes this.
constexpr double kRenormalizeAbove = 512.0;

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == -HUGE_VAL) {
    return hi;
  }
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    return -HUGE_VAL;
  }
  const double m = *std::max_element(values.begin(), values.end());
  double s = 0.0;
  for (double v : values) {
    s += std::exp(v - m);
  }
  return m + std::log(s);
}

std::vector<double> exp3_probabilities(std::span<const double> log_weights, double gamma) {
  const std::size_t arms = log_weights.size();
  std::vector<double> p(arms);
  if (arms == 0) {
    return p;
  }
  const double m = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (std::size_t k = 0; k < arms; ++k) {
    p[k] = std::exp(log_weights[k] - m);
    total += p[k];
  }
  const double floor = gamma / static_cast<double>(arms);
  for (double& v : p) {
    v = (1.0 - gamma) * (v / total) + floor;
  }
  return p;
}

Exp3Agent::Exp3Agent(std::size_t arms, double gamma, double alpha)
    : gamma_(gamma), alpha_(alpha), log_weights_(arms, 0.0), scratch_(arms) {
  if (arms == 0) {
    throw InvalidParameter("EXP3 needs K >= 1");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvalidParameter("EXP3: gamma must lie in (0, 1]");
  }
  if (!(alpha >= 0.0)) {
    throw InvalidParameter("EXP3.S: alpha must be >= 0");
  }
}

std::vector<double> Exp3Agent::probabilities() const {
  return exp3_probabilities(log_weights_, gamma_);
}

Action Exp3Agent::act(Step, RngStream& rng) {
  last_probs_ = probabilities();
  const double u = rng.uniform();
  double acc = 0.0;
  ArmId choice = last_probs_.size() - 1;
  for (ArmId k = 0; k < last_probs_.size(); ++k) {
    acc += last_probs_[k];
    if (u < acc) {
      choice = k;
      break;
    }
  }
  last_ = choice;
  pending_ = true;
  return {choice, false};
}

void Exp3Agent::observe(Step, ArmId arm, double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw ContractViolation("observe: reward " + std::to_string(y) + " outside [0,1]");
  }
  if (!pending_ || arm != last_) {
    throw ContractViolation("observe: arm " + std::to_string(arm) + " was not proposed");
  }
  pending_ = false;

  const auto arms = static_cast<double>(log_weights_.size());
  const double step = gamma_ * (y / last_probs_[arm]) / arms;
  if (alpha_ > 0.0) {
    // Share term uses the weights before this step's update.
    const double share = std::log(std::numbers::e * alpha_ / arms) + log_sum_exp(log_weights_);
    for (std::size_t k = 0; k < log_weights_.size(); ++k) {
      const double grown = log_weights_[k] + (k == arm ? step : 0.0);
      scratch_[k] = log_add_exp(grown, share);
    }
    log_weights_.swap(scratch_);
  } else {
    log_weights_[arm] += step;
  }

  const double m = *std::max_element(log_weights_.begin(), log_weights_.end());
  if (m > kRenormalizeAbove) {
    for (double& w : log_weights_) {
      w -= m;
    }
  }
}

ArmId Exp3Agent::recommendation() const {
  return static_cast<ArmId>(std::max_element(log_weights_.begin(), log_weights_.end()) -
                            log_weights_.begin());
}

}  // namespace nsb
