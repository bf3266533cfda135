#pragma once

#include <span>
#include <vector>

#include "nsbandit/agent.hpp"

namespace nsb {

/// p_k = (1 - gamma) * softmax(log_weights)_k + gamma / K.
std::vector<double> exp3_probabilities(std::span<const double> log_weights, double gamma);

/// log(sum_k exp(x_k)), stable for large magnitudes.
double log_sum_exp(std::span<const double> values);

/**
 * EXP3 and EXP3.S with weights kept in log-space.
 *
 * After playing arm a with probability p_a and observing y, the estimate
 * y / p_a (zero for every other arm) updates
 *   w_k <- w_k * exp(gamma * yhat_k / K) + (e * alpha / K) * sum_j w_j.
 * alpha = 0 gives plain EXP3.
 */
class Exp3Agent final : public Agent {
 public:
  Exp3Agent(std::size_t arms, double gamma, double alpha);

  std::size_t arms() const noexcept override { return log_weights_.size(); }
  Action act(Step t, RngStream& rng) override;
  void observe(Step t, ArmId arm, double y) override;
  ArmId recommendation() const override;

  const std::vector<double>& log_weights() const noexcept { return log_weights_; }
  std::vector<double> probabilities() const;

 private:
  double gamma_;
  double alpha_;
  std::vector<double> log_weights_;
  std::vector<double> last_probs_;
  std::vector<double> scratch_;
  ArmId last_ = 0;
  bool pending_ = false;
};

}  // namespace nsb
