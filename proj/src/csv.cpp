#include "mcnn/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mcnn {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (std::size_t k = 0; k < header.size(); ++k)
    out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width does not match the header");
    for (std::size_t k = 0; k < row.size(); ++k)
      out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace mcnn
