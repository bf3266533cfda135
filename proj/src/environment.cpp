#include "nsbandit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nsbandit/mean_table.hpp"

namespace nsb {

namespace {

// Stream ids reserved for the environment's own randomness.
constexpr std::uint64_t kOptimalArmStream = 0x0e1;
constexpr std::uint64_t kSwitchStream = 0x0e2;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string describe(ArmId arm, Step t, double value) {
  std::ostringstream os;
  os << "mean of arm " << arm << " at t=" << t << " is " << value << ", outside [0,1]";
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw InvalidParameter(what);
  }
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

double sinusoid(std::size_t arms, Step t) {
  // Reducing t modulo K first keeps the argument small and the curve exactly periodic.
  const double phase = static_cast<double>(t % arms) / static_cast<double>(arms);
  return std::cos(2.0 * std::numbers::pi * phase) / 5.0 + 0.5;
}

double drift(double base, double cap, double rate, double clock) {
  return base - std::min(cap, rate * clock);
}

ArmId argmax_lowest(const std::vector<double>& values) {
  return static_cast<ArmId>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

EnvironmentError::EnvironmentError(ArmId arm, Step t, double value)
    : InvalidParameter(describe(arm, t, value)), arm_(arm), time_(t) {}

PeriodicTable alternating_trap_table() { return PeriodicTable{{{0.6, 1.0}, {0.4, 0.8}}}; }

std::string environment_kind(const EnvironmentSpec& spec) {
  return std::visit(Overloaded{
                        [](const Stationary&) { return std::string("stationary"); },
                        [](const PeriodicTable&) { return std::string("periodic_table"); },
                        [](const Sinusoidal&) { return std::string("sinusoidal"); },
                        [](const DriftCap&) { return std::string("drift_cap"); },
                        [](const SwitchingDrift&) { return std::string("switching_drift"); },
                        [](const FileBacked&) { return std::string("file"); },
                    },
                    spec);
}

Environment build_environment(const EnvironmentSpec& spec, RewardLaw law, Step horizon,
                              std::uint64_t seed) {
  require(horizon >= 1, "environment horizon must be >= 1");
  Environment env;
  env.law_ = law;
  env.horizon_ = horizon;

  EnvironmentSpec resolved = spec;
  if (const auto* file = std::get_if<FileBacked>(&spec)) {
    resolved = read_mean_table_file(file->path);
  }

  std::visit(
      Overloaded{
          [&](Stationary& s) {
            require(!s.means.empty(), "stationary: means must be non-empty");
            env.arms_ = s.means.size();
          },
          [&](PeriodicTable& p) {
            require(!p.table.empty(), "periodic_table: at least one arm required");
            const std::size_t period = p.table.front().size();
            require(period >= 1, "periodic_table: period must be >= 1");
            for (const auto& row : p.table) {
              require(row.size() == period, "periodic_table: rows must share one period");
            }
            env.arms_ = p.table.size();
          },
          [&](Sinusoidal& s) {
            require(s.arms >= 1, "sinusoidal: K must be >= 1");
            require(s.gap >= 0.0, "sinusoidal: gap must be >= 0");
            if (!s.optimal_arm) {
              RngStream rng(seed, kOptimalArmStream);
              s.optimal_arm = static_cast<ArmId>(rng.below(s.arms));
            }
            require(*s.optimal_arm < s.arms, "sinusoidal: optimal_arm out of range");
            env.arms_ = s.arms;
          },
          [&](DriftCap& d) {
            require(d.arms >= 1, "drift_cap: K must be >= 1");
            require(d.gap >= 0.0, "drift_cap: gap must be >= 0");
            require(d.rate >= 0.0 && d.cap >= 0.0, "drift_cap: rate and cap must be >= 0");
            if (!d.optimal_arm) {
              RngStream rng(seed, kOptimalArmStream);
              d.optimal_arm = static_cast<ArmId>(rng.below(d.arms));
            }
            require(*d.optimal_arm < d.arms, "drift_cap: optimal_arm out of range");
            env.arms_ = d.arms;
          },
          [&](SwitchingDrift& d) {
            require(d.arms >= 2, "switching_drift: K must be >= 2");
            require(d.gap >= 0.0, "switching_drift: gap must be >= 0");
            require(d.switch_prob >= 0.0 && d.switch_prob <= 1.0,
                    "switching_drift: switch_prob must lie in [0,1]");
            require(d.rate >= 0.0 && d.cap >= 0.0, "switching_drift: rate and cap must be >= 0");
            require(d.period >= 1, "switching_drift: period must be >= 1");
            if (!d.switch_seed) {
              d.switch_seed = seed;
            }
            env.arms_ = d.arms;
          },
          [&](FileBacked&) {},
      },
      resolved);

  env.spec_ = std::move(resolved);
  env.build_schedule();
  env.validate_range();
  return env;
}

void Environment::build_schedule() {
  schedule_.clear();
  std::visit(
      Overloaded{
          [&](const Stationary& s) { schedule_.push_back({argmax_lowest(s.means), 1}); },
          [&](const PeriodicTable& p) {
            const std::size_t period = p.table.front().size();
            std::vector<ArmId> phase_best(period);
            std::vector<double> column(arms_);
            for (std::size_t j = 0; j < period; ++j) {
              for (std::size_t k = 0; k < arms_; ++k) {
                column[k] = p.table[k][j];
              }
              phase_best[j] = argmax_lowest(column);
            }
            const bool constant = std::all_of(phase_best.begin(), phase_best.end(),
                                              [&](ArmId a) { return a == phase_best.front(); });
            const Step last = constant ? 1 : horizon_;
            for (Step t = 1; t <= last; ++t) {
              const ArmId best = phase_best[(t - 1) % period];
              if (schedule_.empty() || schedule_.back().arm != best) {
                schedule_.push_back({best, t});
              }
            }
          },
          [&](const Sinusoidal& s) { schedule_.push_back({*s.optimal_arm, 1}); },
          [&](const DriftCap& d) { schedule_.push_back({*d.optimal_arm, 1}); },
          [&](const SwitchingDrift& d) {
            RngStream rng(*d.switch_seed, kSwitchStream);
            ArmId current = static_cast<ArmId>(rng.below(d.arms));
            schedule_.push_back({current, 1});
            if (d.switch_prob <= 0.0) {
              return;
            }
            // Waiting times between per-step Bernoulli(p) events are geometric.
            const double log_stay = std::log1p(-d.switch_prob);
            Step t = 1;
            while (true) {
              Step wait = 1;
              if (d.switch_prob < 1.0) {
                const double u = 1.0 - rng.uniform();  // (0, 1]
                const double extra = std::floor(std::log(u) / log_stay);
                if (extra >= static_cast<double>(horizon_)) {
                  break;
                }
                wait += static_cast<Step>(extra);
              }
              if (wait > horizon_ - t) {
                break;
              }
              t += wait;
              auto next = static_cast<ArmId>(rng.below(d.arms - 1));
              if (next >= current) {
                ++next;
              }
              current = next;
              schedule_.push_back({current, t});
            }
          },
          [&](const FileBacked&) {},
      },
      spec_);
}

void Environment::validate_range() const {
  auto fail_at = [&](Step t) {
    for (ArmId k = 0; k < arms_; ++k) {
      const double v = unchecked_mean(k, t);
      if (!in_unit(v)) {
        throw EnvironmentError(k, t, v);
      }
    }
  };
  auto all_ok = [&](Step t) {
    for (ArmId k = 0; k < arms_; ++k) {
      if (!in_unit(unchecked_mean(k, t))) {
        return false;
      }
    }
    return true;
  };
  auto scan = [&](Step last) {
    for (Step t = 1; t <= std::min(last, horizon_); ++t) {
      if (!all_ok(t)) {
        fail_at(t);
      }
    }
  };

  std::visit(
      Overloaded{
          [&](const Stationary&) { scan(1); },
          [&](const PeriodicTable& p) { scan(p.table.front().size()); },
          [&](const Sinusoidal& s) { scan(s.arms); },
          [&](const DriftCap&) {
            // Means are non-increasing in t: only t = 1 can exceed 1, and the
            // set of t with a negative mean is a suffix of the horizon.
            if (!all_ok(1)) {
              fail_at(1);
            }
            if (all_ok(horizon_)) {
              return;
            }
            Step lo = 1;
            Step hi = horizon_;
            while (hi - lo > 1) {
              const Step mid = lo + (hi - lo) / 2;
              (all_ok(mid) ? lo : hi) = mid;
            }
            fail_at(hi);
          },
          [&](const SwitchingDrift& d) {
            // Only the base curve varies; the optimal arm sits exactly `gap` above it.
            const Step last = std::min<Step>(d.period, horizon_);
            for (Step t = 1; t <= last; ++t) {
              const double b = drift(d.base, d.cap, d.rate, static_cast<double>(t % d.period));
              if (!in_unit(b) || !in_unit(b + d.gap)) {
                fail_at(t);
              }
            }
          },
          [&](const FileBacked&) {},
      },
      spec_);
}

void Environment::check_args(ArmId arm, Step t) const {
  if (arm >= arms_) {
    throw ContractViolation("arm " + std::to_string(arm) + " out of range (K=" +
                            std::to_string(arms_) + ")");
  }
  if (t < 1 || t > horizon_) {
    throw ContractViolation("t=" + std::to_string(t) + " outside [1, " +
                            std::to_string(horizon_) + "]");
  }
}

ArmId Environment::optimal_arm_at(Step t) const {
  if (t < 1 || t > horizon_) {
    throw ContractViolation("t=" + std::to_string(t) + " outside the horizon");
  }
  auto it = std::upper_bound(schedule_.begin(), schedule_.end(), t,
                             [](Step value, const Segment& s) { return value < s.start; });
  return std::prev(it)->arm;
}

double Environment::unchecked_mean(ArmId arm, Step t) const {
  return std::visit(
      Overloaded{
          [&](const Stationary& s) { return s.means[arm]; },
          [&](const PeriodicTable& p) {
            const auto& row = p.table[arm];
            return row[(t - 1) % row.size()];
          },
          [&](const Sinusoidal& s) {
            return sinusoid(s.arms, t) + (arm == *s.optimal_arm ? s.gap : 0.0);
          },
          [&](const DriftCap& d) {
            return drift(d.base, d.cap, d.rate, static_cast<double>(t)) +
                   (arm == *d.optimal_arm ? d.gap : 0.0);
          },
          [&](const SwitchingDrift& d) {
            const double b = drift(d.base, d.cap, d.rate, static_cast<double>(t % d.period));
            return b + (arm == optimal_arm_at(t) ? d.gap : 0.0);
          },
          [&](const FileBacked&) { return 0.0; },
      },
      spec_);
}

double Environment::mean_at(ArmId arm, Step t) const {
  check_args(arm, t);
  return unchecked_mean(arm, t);
}

double Environment::sample_reward(ArmId arm, Step t, RngStream& rng) const {
  const double mean = mean_at(arm, t);
  if (law_ == RewardLaw::Deterministic) {
    return mean;
  }
  return rng.uniform() < mean ? 1.0 : 0.0;
}

double Environment::instantaneous_gap(ArmId arm, ArmId other, Step t) const {
  return mean_at(arm, t) - mean_at(other, t);
}

}  // namespace nsb
