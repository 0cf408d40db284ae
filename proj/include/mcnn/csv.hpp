#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mcnn {

// Numeric CSV: one header row, doubles printed with 17 significant digits so
// the files round-trip 64-bit floats exactly.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double value);

// Plain key=value manifest, one pair per line, written in the given order.
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace mcnn
