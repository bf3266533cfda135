#include "nsbandit/mean_table.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nsb {

namespace {

double parse_double(const std::string& token, std::size_t row) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InvalidParameter("mean table: bad number '" + token + "' on row " +
                           std::to_string(row + 1));
  }
  return value;
}

}  // namespace

PeriodicTable read_mean_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidParameter("mean table: missing 'K P' header");
  }
  std::istringstream header(line);
  long long arms = 0;
  long long period = 0;
  std::string extra;
  if (!(header >> arms >> period) || (header >> extra) || arms < 1 || period < 1) {
    throw InvalidParameter("mean table: header must be two positive integers 'K P'");
  }

  PeriodicTable table;
  table.table.resize(static_cast<std::size_t>(arms));
  for (std::size_t k = 0; k < table.table.size(); ++k) {
    if (!std::getline(in, line)) {
      throw InvalidParameter("mean table: expected " + std::to_string(arms) + " rows, got " +
                             std::to_string(k));
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::istringstream row(line);
    std::string token;
    while (row >> token) {
      table.table[k].push_back(parse_double(token, k));
    }
    if (table.table[k].size() != static_cast<std::size_t>(period)) {
      throw InvalidParameter("mean table: row " + std::to_string(k + 1) + " has " +
                             std::to_string(table.table[k].size()) + " entries, expected " +
                             std::to_string(period));
    }
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw InvalidParameter("mean table: trailing data after " + std::to_string(arms) +
                             " rows");
    }
  }
  return table;
}

PeriodicTable read_mean_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidParameter("cannot open mean table '" + path + "'");
  }
  try {
    return read_mean_table(in);
  } catch (const InvalidParameter& e) {
    throw InvalidParameter(path + ": " + e.what());
  }
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

void write_mean_table(std::ostream& out, const PeriodicTable& table) {
  const std::size_t period = table.table.empty() ? 0 : table.table.front().size();
  out << table.table.size() << ' ' << period << '\n';
  for (const auto& row : table.table) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) {
        out << ' ';
      }
      out << format_double(row[j]);
    }
    out << '\n';
  }
}

void write_mean_table_file(const std::string& path, const PeriodicTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write mean table '" + path + "'");
  }
  write_mean_table(out, table);
  if (!out) {
    throw std::runtime_error("error while writing mean table '" + path + "'");
  }
}

}  // namespace nsb
