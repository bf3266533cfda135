#include "nsbandit/regret.hpp"

#include <string>

#include "nsbandit/errors.hpp"

namespace nsb {

namespace {

void check_record(const Environment& env, const PullRecord& r) {
  if (r.arm >= env.arms() || r.recommended >= env.arms()) {
    throw ContractViolation("trace step t=" + std::to_string(r.t) + " names an arm outside [0, " +
                            std::to_string(env.arms()) + ")");
  }
  if (r.t < 1 || r.t > env.horizon()) {
    throw ContractViolation("trace step t=" + std::to_string(r.t) +
                            " lies outside the environment horizon");
  }
}

}  // namespace

ArmId OptimalArmCursor::at(Step t) {
  const auto& schedule = env_->optimal_policy();
  if (t < schedule[segment_].start) {
    throw ContractViolation("OptimalArmCursor: time went backwards");
  }
  while (segment_ + 1 < schedule.size() && schedule[segment_ + 1].start <= t) {
    ++segment_;
  }
  return schedule[segment_].arm;
}

double RegretAccumulator::add(const PullRecord& record) {
  check_record(*env_, record);
  const ArmId best = cursor_.at(record.t);
  sum_.add(env_->mean_at(best, record.t) - env_->mean_at(record.arm, record.t));
  return sum_.value();
}

ComplexityAccumulator::ComplexityAccumulator(const Environment& env)
    : env_(&env), cursor_(env) {
  report_.per_segment.assign(env.optimal_policy().size(), 0);
}

void ComplexityAccumulator::add(const PullRecord& record) {
  check_record(*env_, record);
  const ArmId best = cursor_.at(record.t);
  std::uint64_t cost = 0;
  if (record.sampling) {
    ++report_.sampling;
    cost = 1;
  } else if (record.recommended != best) {
    ++report_.mismatch;
    cost = 1;
  }
  report_.total += cost;
  report_.per_segment[cursor_.segment()] += cost;
}

std::vector<double> pseudo_regret(const RunTrace& trace, const Environment& env) {
  RegretAccumulator acc(env);
  std::vector<double> curve;
  curve.reserve(trace.size());
  for (const auto& r : trace) {
    curve.push_back(acc.add(r));
  }
  return curve;
}

SampleComplexityReport sample_complexity(const RunTrace& trace, const Environment& env) {
  ComplexityAccumulator acc(env);
  for (const auto& r : trace) {
    acc.add(r);
  }
  return acc.report();
}

}  // namespace nsb
