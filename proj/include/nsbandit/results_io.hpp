#pragma once

#include <filesystem>
#include <ostream>

#include "nsbandit/config.hpp"
#include "nsbandit/runner.hpp"

namespace nsb {

inline constexpr const char* kRegretHeader = "algorithm,checkpoint_t,mean_regret,std_regret,runs";
inline constexpr const char* kComplexityHeader = "algorithm,mean_sample_complexity,std,runs";

/// Rows sorted by algorithm name, then checkpoint. LF line endings.
void write_regret_csv(std::ostream& out, const AggregateResult& result);
void write_complexity_csv(std::ostream& out, const AggregateResult& result);

/// Writes regret.csv, complexity.csv and manifest.json into `out_dir`,
/// creating it if needed. Failures throw std::runtime_error naming the path.
void emit_results(const AggregateResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& out_dir);

}  // namespace nsb
