#pragma once

#include <iosfwd>
#include <string>

#include "nsbandit/environment.hpp"

namespace nsb {

// Mean-table text format (UTF-8, '.' decimal separator, LF line endings):
//
//   K P
//   m_1(1) m_1(2) ... m_1(P)
//   ...
//   m_K(1) ... m_K(P)

PeriodicTable read_mean_table(std::istream& in);
PeriodicTable read_mean_table_file(const std::string& path);

void write_mean_table(std::ostream& out, const PeriodicTable& table);
void write_mean_table_file(const std::string& path, const PeriodicTable& table);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace nsb
