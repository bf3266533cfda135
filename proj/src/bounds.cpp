#include "nsbandit/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "nsbandit/errors.hpp"

namespace nsb {

namespace {

void validate(const BoundInputs& in) {
  if (in.arms < 2) {
    throw InvalidParameter("bounds: K must be >= 2");
  }
  if (!(in.delta > 0.0 && in.delta <= 0.5)) {
    throw InvalidParameter("bounds: delta must lie in (0, 0.5]");
  }
  if (!(in.gap > 0.0 && in.gap <= 1.0)) {
    throw InvalidParameter("bounds: gap must lie in (0, 1]");
  }
  if (!(in.horizon > static_cast<double>(in.arms)) || !std::isfinite(in.horizon)) {
    throw InvalidParameter("bounds: T must be finite and > K");
  }
  if (!(in.segments >= 1.0) || !std::isfinite(in.segments)) {
    throw InvalidParameter("bounds: N must be >= 1");
  }
  if (!(in.phi > 0.0 && in.phi <= 1.0)) {
    throw InvalidParameter("bounds: phi must lie in (0, 1]");
  }
}

}  // namespace

double critical_rounds(std::size_t arms, double delta, double gap) {
  const auto k = static_cast<double>(arms);
  return 64.0 / (gap * gap) * std::log(4.0 * k / (delta * gap));
}

double reset_sample_complexity(std::size_t arms, double delta, double gap, double segments,
                               double phi) {
  const auto k = static_cast<double>(arms);
  return phi * k / (delta * gap * gap) * std::log(k / (delta * gap)) + segments / phi;
}

BoundReport compute_bounds(const BoundInputs& in) {
  validate(in);
  const auto k = static_cast<double>(in.arms);
  const double d = in.gap;
  const double delta = in.delta;
  const double t = in.horizon;
  const double n = in.segments;
  const double phi = in.phi;

  BoundReport r;
  r.tau_star = critical_rounds(in.arms, delta, d);
  r.regret_dependent_explicit = (k - 1.0) * (64.0 / d) * std::log(4.0 * k / (delta * d)) + delta * t;
  {
    const double tau = t / k;
    r.regret_free_at_tau =
        (k - 1.0) * tau * 4.0 * std::sqrt(2.0 / tau * std::log(4.0 * k * tau * tau / delta)) +
        delta * t;
  }
  r.regret_free_explicit =
      (k - 1.0) * (t / k) * 4.0 * std::sqrt(k / t * std::log(4.0 * t * t * t / k)) + 1.0;
  r.reset_regret_explicit =
      4.0 * (phi * t + 1.0) * std::sqrt(2.0 / phi * k * std::log(4.0 * t * t * t / (k * k))) +
      n / phi + 1.0;

  r.sample_complexity = k / (d * d) * std::log(k / (delta * d));
  r.regret_dependent = (k - 1.0) / d * std::log(k * t / d);
  r.regret_free = std::sqrt(t * k * std::log(t / k));
  r.regret_min = std::min(r.regret_dependent, r.regret_free);
  r.reset_sample_complexity = reset_sample_complexity(in.arms, delta, d, n, phi);
  r.reset_suboptimal_plays = phi * t * k / (d * d) * std::log(k / (delta * d)) + n / phi;
  r.tuned_sample_complexity = 1.0 / (d * d) * std::sqrt(n * k * std::log(k / delta) / delta);
  r.reset_regret = phi * t * k / d * std::log(k * t / d) + n / phi;
  r.tuned_reset_regret = std::sqrt(n * t * k * std::log(k * t)) / d;
  r.reset_regret_free = std::pow(t, 2.0 / 3.0) * std::sqrt(n * k * std::log(t / k));

  r.phi_sample_complexity = std::sqrt(n * delta / (k * std::log(k / delta)));
  r.phi_regret = regret_tuned_phi(in.arms, t, n);
  r.phi_regret_free = std::sqrt(n) / std::pow(t, 2.0 / 3.0);
  return r;
}

double regret_tuned_phi(std::size_t arms, double horizon, double segments) {
  const auto k = static_cast<double>(arms);
  if (arms < 1 || !(horizon * k > 1.0) || !(segments > 0.0)) {
    throw InvalidParameter("regret_tuned_phi needs K T > 1 and N > 0");
  }
  return std::sqrt(segments / (horizon * k * std::log(k * horizon)));
}

}  // namespace nsb
