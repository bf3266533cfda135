#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsbandit/config.hpp"

namespace nsb {

enum class PresetPhi {
  Printed,     // 5^-5 = 3.2e-4, as printed
  Intended,    // 5e-5
  Corollary3,  // sqrt(N / (T K ln(K T))) with N = 1 + p (T - 1)
};

struct PresetOptions {
  std::optional<Step> horizon;
  std::optional<std::uint64_t> runs;
  std::uint64_t seed = 0;
  bool full_scale = false;
  PresetPhi phi = PresetPhi::Printed;
  /// Problem 3 only: overrides the scaled switch probability.
  std::optional<double> switch_prob;
};

/// Names accepted by make_preset.
std::vector<std::string> preset_names();

/**
 * Builds one of the reproduction experiments: "figure1", "problem1",
 * "problem2" or "problem3". Horizon and runs default to 1e6 and 10
 * (1e5 and 100 for figure1), or to 1e7 and 50 with full_scale. Time
 * constants of the drifting problems are scaled by f = T / 1e7.
 */
ExperimentConfig make_preset(const std::string& name, const PresetOptions& options = {});

PresetPhi parse_preset_phi(const std::string& text);

}  // namespace nsb
