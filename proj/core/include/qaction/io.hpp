#pragma once

#include <filesystem>
#include <string>
#include <vector>

// Small deterministic-output helpers: fixed float formatting and atomic file
// replacement (temp + rename), so repeated runs produce bit-identical
// artifacts.

namespace qaction {

// shortest round-trip decimal form, locale-independent
std::string format_double(double x);

struct CsvTable {
  std::string name;                        // file stem suffix, e.g. "poisson"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string to_string() const;
};

void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qaction
