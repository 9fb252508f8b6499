#include "ultraslow/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ultraslow/types.hpp"

namespace ultraslow::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& s, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || errno == ERANGE)
    throw ConfigError("config: bad number '" + s + "' for " + where);
  return v;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section = "global";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: unterminated section at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config: empty section name at line " + std::to_string(lineno));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ConfigError("config: empty key at line " + std::to_string(lineno));
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw ConfigError("config: missing [" + section + "] " + key);
  return s->second.at(key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return to_double(get_string(section, key), "[" + section + "] " + key);
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int(const std::string& section, const std::string& key) const {
  const double v = get_double(section, key);
  const long n = static_cast<long>(v);
  if (static_cast<double>(n) != v)
    throw ConfigError("config: expected integer for [" + section + "] " + key);
  return n;
}

long Config::get_int(const std::string& section, const std::string& key, long fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_array(const std::string& section, const std::string& key) const {
  const std::string raw = get_string(section, key);
  std::vector<double> out;
  std::istringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double(item, "[" + section + "] " + key));
  }
  if (out.empty()) throw ConfigError("config: empty array for [" + section + "] " + key);
  return out;
}

std::vector<double> Config::get_array(const std::string& section, const std::string& key,
                                      std::vector<double> fallback) const {
  return has(section, key) ? get_array(section, key) : fallback;
}

WeightFunction weight_from_config(const Config& cfg, const std::string& section) {
  const std::string family = cfg.get_string(section, "family");
  WeightOptions opt;
  opt.theta = cfg.get_double(section, "theta", opt.theta);
  opt.graded_levels = static_cast<int>(cfg.get_int(section, "levels", opt.graded_levels));
  opt.nodes_per_panel = static_cast<int>(cfg.get_int(section, "nodes", opt.nodes_per_panel));
  try {
    if (family == "constant") return WeightFunction::constant(cfg.get_double(section, "a"), opt);
    if (family == "power_near_zero") {
      const double a = cfg.get_double(section, "a");
      const double kappa = cfg.get_double(section, "kappa");
      if (cfg.has(section, "tail_const"))
        return WeightFunction::power_near_zero(a, kappa, cfg.get_double(section, "tail_const"),
                                               opt);
      return WeightFunction::power_near_zero(a, kappa, opt);
    }
    if (family == "stretched_exp")
      return WeightFunction::stretched_exp(
          cfg.get_double(section, "a"), cfg.get_double(section, "kappa"),
          cfg.get_double(section, "beta"), cfg.get_double(section, "m"), opt);
    if (family == "double_exp")
      return WeightFunction::double_exp(cfg.get_double(section, "a"), opt);
    if (family == "supported_indicator")
      return WeightFunction::supported_indicator(cfg.get_double(section, "delta"),
                                                 cfg.get_double(section, "hi", 1.0),
                                                 cfg.get_double(section, "scale", 1.0), opt);
    if (family == "box")
      return WeightFunction::box(cfg.get_double(section, "center"),
                                 cfg.get_double(section, "width"), opt);
    if (family == "tabulated")
      return WeightFunction::tabulated(cfg.get_array(section, "alpha"),
                                       cfg.get_array(section, "value"), opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: invalid weight: ") + e.what());
  }
  throw ConfigError("config: unknown weight family '" + family + "'");
}

}  // namespace ultraslow::io
