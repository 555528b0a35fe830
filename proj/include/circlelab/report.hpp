#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace circlelab {

inline constexpr const char* kVersion = "circlelab 0.1.0";

// Deterministic CSV assembly: fixed %.12g float formatting, '\n' endings,
// rows emitted in the order they were added. Every row carries the config
// hash and version columns.
class Csv {
 public:
  Csv(std::vector<std::string> header, std::string config_hash);

  void add_row(std::vector<std::string> cells);
  std::string to_string() const;
  void save(const std::string& path) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::string config_hash_;
};

std::string config_hash_hex(const std::string& canonical_config);

}  // namespace circlelab
