#include "wigqdd/csv.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "wigqdd/errors.h"

namespace wigqdd {

std::string hex_hash(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

CsvWriter::CsvWriter(std::ostream& out, std::uint64_t config_hash,
                     std::vector<std::pair<std::string, std::string>> metadata,
                     std::vector<std::string> columns)
    : out_(out), n_columns_(columns.size()) {
  out_ << "# config_hash: " << hex_hash(config_hash) << '\n';
  out_ << "# boundary: periodic truncation\n";
  for (const auto& [key, value] : metadata) out_ << "# " << key << ": " << value << '\n';
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out_ << (k ? "," : "") << columns[k];
  }
  out_ << '\n';
  out_ << std::setprecision(17);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_) throw std::invalid_argument("CsvWriter: column count");
  for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << values[k];
  out_ << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw ConfigError("csv: no column '" + name + "'");
}

std::string CsvTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  throw ConfigError("csv: no metadata key '" + key + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open csv file '" + path + "'");
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(": ");
      if (colon != std::string::npos) t.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!header) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      header = true;
      continue;
    }
    std::vector<double> r;
    while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
    if (r.size() != t.columns.size()) throw ConfigError("csv: ragged row in '" + path + "'");
    t.rows.push_back(std::move(r));
  }
  if (!header) throw ConfigError("csv: '" + path + "' has no header row");
  return t;
}

}  // namespace wigqdd
