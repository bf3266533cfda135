#pragma once

#include <cstddef>
#include <cstdint>

namespace nsb {

/// Hoeffding radius used by the elimination rule:
///   sqrt((2 / tau) * ln(4 K tau^2 / delta)).
/// Requires tau >= 1, K >= 1 and delta in (0, 0.5]; throws InvalidParameter
/// otherwise.
double confidence_radius(std::uint64_t tau, std::size_t arms, double delta);

/// Number of round-robins before elimination may start:
/// max(1, ceil(ln(K / delta))).
std::uint64_t default_tau_min(std::size_t arms, double delta);

}  // namespace nsb
