#include "qaction/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace qaction {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c) {
    os << header[c] << (c + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << format_double(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
  }
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    }
    out << content;
    if (!out) {
      throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qaction
