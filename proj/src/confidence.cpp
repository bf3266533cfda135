#include "nsbandit/confidence.hpp"

#include <algorithm>
#include <cmath>

#include "nsbandit/errors.hpp"

namespace nsb {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw InvalidParameter("delta must lie in (0, 0.5]");
  }
}

}  // namespace

double confidence_radius(std::uint64_t tau, std::size_t arms, double delta) {
  if (tau == 0) {
    throw InvalidParameter("confidence_radius: tau must be >= 1");
  }
  if (arms == 0) {
    throw InvalidParameter("confidence_radius: K must be >= 1");
  }
  check_delta(delta);
  const auto t = static_cast<double>(tau);
  const double log_term = std::log(4.0 * static_cast<double>(arms) / delta) + 2.0 * std::log(t);
  return std::sqrt(2.0 / t * log_term);
}

std::uint64_t default_tau_min(std::size_t arms, double delta) {
  if (arms == 0) {
    throw InvalidParameter("default_tau_min: K must be >= 1");
  }
  check_delta(delta);
  const double raw = std::ceil(std::log(static_cast<double>(arms) / delta));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::max(raw, 1.0)));
}

}  // namespace nsb
