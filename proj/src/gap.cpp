#include "nsbandit/gap.hpp"

#include <functional>
#include <limits>
#include <string>

#include "nsbandit/errors.hpp"
#include "nsbandit/stats.hpp"

namespace nsb {

RoundRobinRealization::RoundRobinRealization(std::vector<std::size_t> sizes)
    : sizes_(std::move(sizes)) {
  starts_.reserve(sizes_.size());
  Step t = 1;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (sizes_[i] == 0) {
      throw InvalidParameter("realization: round sizes must be >= 1");
    }
    if (i > 0 && sizes_[i] > sizes_[i - 1]) {
      throw InvalidParameter("realization: round sizes must be non-increasing");
    }
    starts_.push_back(t);
    t += sizes_[i];
  }
}

Step RoundRobinRealization::last_step() const noexcept {
  return sizes_.empty() ? 0 : starts_.back() + sizes_.back() - 1;
}

double realization_gap(const Environment& env, const RoundRobinRealization& realization,
                       ArmId arm, ArmId reference) {
  if (realization.rounds() == 0) {
    throw InvalidParameter("realization_gap: empty realization");
  }
  if (realization.last_step() > env.horizon()) {
    throw InvalidParameter("realization_gap: realization ends at t=" +
                           std::to_string(realization.last_step()) + ", beyond horizon " +
                           std::to_string(env.horizon()));
  }
  if (arm >= env.arms() || reference >= env.arms()) {
    throw InvalidParameter("realization_gap: arm out of range");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < realization.rounds(); ++i) {
    const Step first = realization.start(i);
    const auto width = static_cast<double>(realization.size(i));
    for (Step j = first; j < first + realization.size(i); ++j) {
      total.add((env.mean_at(reference, j) - env.mean_at(arm, j)) / width);
    }
  }
  return total.value() / static_cast<double>(realization.rounds());
}

ArmId best_arm_by_total(const Environment& env) {
  ArmId best = 0;
  double best_total = -std::numeric_limits<double>::infinity();
  for (ArmId k = 0; k < env.arms(); ++k) {
    CompensatedSum total;
    for (Step t = 1; t <= env.horizon(); ++t) {
      total.add(env.mean_at(k, t));
    }
    if (total.value() > best_total) {
      best_total = total.value();
      best = k;
    }
  }
  return best;
}

std::vector<RoundRobinRealization> enumerate_realizations(std::size_t arms, std::size_t tau) {
  std::vector<RoundRobinRealization> out;
  if (tau == 0 || arms < 2) {
    return out;
  }
  std::vector<std::size_t> sizes{arms};
  std::function<void()> extend = [&]() {
    if (sizes.size() == tau) {
      out.emplace_back(sizes);
      return;
    }
    for (std::size_t s = sizes.back(); s >= 2; --s) {
      sizes.push_back(s);
      extend();
      sizes.pop_back();
    }
  };
  extend();
  return out;
}

namespace {

GapReport reduce(const Environment& env, const std::vector<RoundRobinRealization>& candidates) {
  GapReport report;
  report.optimal_arm = best_arm_by_total(env);
  report.per_arm_gap.assign(env.arms(), std::nullopt);
  report.min_gap = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& r : candidates) {
    for (ArmId k = 0; k < env.arms(); ++k) {
      if (k == report.optimal_arm) {
        continue;
      }
      const double g = realization_gap(env, r, k, report.optimal_arm);
      auto& slot = report.per_arm_gap[k];
      if (!slot || g < *slot) {
        slot = g;
      }
      if (!any || g < report.min_gap) {
        report.min_gap = g;
        report.argmin_realization = r;
        report.argmin_arm = k;
        any = true;
      }
    }
  }
  if (!any) {
    throw InvalidParameter("gap analysis: no realization to evaluate (need K >= 2)");
  }
  report.assumption1_satisfied = report.min_gap > 0.0;
  if (!report.assumption1_satisfied) {
    report.witness = report.argmin_realization;
  }
  return report;
}

void check_tau_range(std::size_t tau_lo, std::size_t tau_hi) {
  if (tau_lo < 1 || tau_hi < tau_lo) {
    throw InvalidParameter("gap analysis: need 1 <= tau_lo <= tau_hi");
  }
}

}  // namespace

GapReport min_gap_bruteforce(const Environment& env, std::size_t tau_lo, std::size_t tau_hi,
                             std::size_t arms) {
  check_tau_range(tau_lo, tau_hi);
  if (arms != env.arms()) {
    throw InvalidParameter("min_gap_bruteforce: K does not match the environment");
  }
  if (arms > kMaxBruteForceArms || tau_hi > kMaxBruteForceRounds) {
    throw InvalidParameter("min_gap_bruteforce: instance too large (K <= " +
                           std::to_string(kMaxBruteForceArms) + ", tau <= " +
                           std::to_string(kMaxBruteForceRounds) + ")");
  }
  std::vector<RoundRobinRealization> candidates;
  for (std::size_t tau = tau_lo; tau <= tau_hi; ++tau) {
    auto batch = enumerate_realizations(arms, tau);
    candidates.insert(candidates.end(), batch.begin(), batch.end());
  }
  return reduce(env, candidates);
}

GapReport full_round_robin_gaps(const Environment& env, std::size_t tau_lo, std::size_t tau_hi) {
  check_tau_range(tau_lo, tau_hi);
  std::vector<RoundRobinRealization> candidates;
  for (std::size_t tau = tau_lo; tau <= tau_hi; ++tau) {
    candidates.emplace_back(std::vector<std::size_t>(tau, env.arms()));
  }
  return reduce(env, candidates);
}

}  // namespace nsb
