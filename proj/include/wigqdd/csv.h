#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wigqdd {

/// CSV writer: '#'-prefixed metadata lines, one header row, then data rows
/// printed with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::uint64_t config_hash,
            std::vector<std::pair<std::string, std::string>> metadata,
            std::vector<std::string> columns);

  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t n_columns_;
};

/// Parsed form of a file written by CsvWriter.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
  std::string meta(const std::string& key) const;
};

CsvTable read_csv(const std::string& path);

std::string hex_hash(std::uint64_t h);

}  // namespace wigqdd
