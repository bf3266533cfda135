#include "nsbandit/results_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "nsbandit/mean_table.hpp"

namespace nsb {

namespace {

std::vector<const AgentAggregate*> sorted_by_name(const AggregateResult& result) {
  std::vector<const AgentAggregate*> agents;
  for (const auto& a : result.agents) {
    agents.push_back(&a);
  }
  std::stable_sort(agents.begin(), agents.end(),
                   [](const auto* a, const auto* b) { return a->name < b->name; });
  return agents;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  out << contents;
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace

void write_regret_csv(std::ostream& out, const AggregateResult& result) {
  out << kRegretHeader << '\n';
  for (const auto* agent : sorted_by_name(result)) {
    for (const auto& p : agent->regret) {
      out << agent->name << ',' << p.t << ',' << format_double(p.mean) << ','
          << format_double(p.std) << ',' << p.runs << '\n';
    }
  }
}

void write_complexity_csv(std::ostream& out, const AggregateResult& result) {
  out << kComplexityHeader << '\n';
  for (const auto* agent : sorted_by_name(result)) {
    out << agent->name << ',' << format_double(agent->mean_complexity) << ','
        << format_double(agent->std_complexity) << ',' << agent->runs.size() << '\n';
  }
}

void emit_results(const AggregateResult& result, const ExperimentConfig& config,
                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory '" + out_dir.string() + "': " + ec.message());
  }
  std::ostringstream regret;
  write_regret_csv(regret, result);
  write_file(out_dir / "regret.csv", regret.str());

  std::ostringstream complexity;
  write_complexity_csv(complexity, result);
  write_file(out_dir / "complexity.csv", complexity.str());

  write_file(out_dir / "manifest.json", to_json(config).dump(2) + "\n");
}

}  // namespace nsb
