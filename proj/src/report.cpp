#include "circlelab/report.hpp"

#include <fstream>

#include "circlelab/errors.hpp"
#include "circlelab/util.hpp"

namespace circlelab {

Csv::Csv(std::vector<std::string> header, std::string config_hash)
    : header_(std::move(header)), config_hash_(std::move(config_hash)) {
  header_.push_back("config_hash");
  header_.push_back("version");
}

void Csv::add_row(std::vector<std::string> cells) {
  if (cells.size() + 2 != header_.size()) throw LabError("CSV row width mismatch");
  cells.push_back(config_hash_);
  cells.push_back(kVersion);
  rows_.push_back(std::move(cells));
}

std::string Csv::to_string() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

void Csv::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LabError("cannot write " + path);
  out << to_string();
}

std::string config_hash_hex(const std::string& canonical_config) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_config)));
  return buf;
}

}  // namespace circlelab
