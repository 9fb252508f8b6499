#pragma once

// Experiment configuration: a small INI-style text format of [section]
// tables holding `key = value` pairs, where values are scalars, strings, or
// comma-separated arrays.  Grammar documented in the README.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultraslow/weight.hpp"

namespace ultraslow::io {

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  std::vector<double> get_array(const std::string& section, const std::string& key) const;
  std::vector<double> get_array(const std::string& section, const std::string& key,
                                std::vector<double> fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Builds the weight from a [weight] table: family plus numeric parameters
// (and the node/value lists for the tabulated family).
WeightFunction weight_from_config(const Config& cfg, const std::string& section = "weight");

}  // namespace ultraslow::io
