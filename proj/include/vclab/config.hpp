#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

// Line-oriented key=value config with [section] headers; '#' and ';' start
// comments. The grammar is documented in docs/config-format.md.
class Config {
 public:
  static Config parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::size_t comment = line.find_first_of("#;");
      if (comment != std::string::npos) line.erase(comment);
      const std::string trimmed = trim(line);
      if (trimmed.empty()) continue;
      if (trimmed.front() == '[') {
        if (trimmed.back() != ']')
          throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section header");
        section = trim(trimmed.substr(1, trimmed.size() - 2));
        if (section.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
        cfg.sections_[section];
        continue;
      }
      const std::size_t eq = trimmed.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(trimmed.substr(0, eq));
      const std::string value = trim(trimmed.substr(eq + 1));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      cfg.sections_[section][key] = value;
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
  }

  bool has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  std::string get(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) throw ConfigError("config: missing section [" + section + "]");
    const auto k = s->second.find(key);
    if (k == s->second.end()) throw ConfigError("config: missing key '" + key + "' in [" + section + "]");
    return k->second;
  }

  std::string get_or(const std::string& section, const std::string& key, std::string fallback) const {
    return has(section, key) ? get(section, key) : std::move(fallback);
  }

  std::int64_t get_int(const std::string& section, const std::string& key) const {
    return parse_int(get(section, key), section, key);
  }
  std::int64_t get_int_or(const std::string& section, const std::string& key, std::int64_t fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
  }

  double get_double(const std::string& section, const std::string& key) const {
    return parse_double(get(section, key), section, key);
  }
  double get_double_or(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
  }

  bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: key '" + key + "' is not a boolean");
  }

  std::vector<double> get_double_list(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    std::string item;
    std::istringstream in(get(section, key));
    while (std::getline(in, item, ',')) out.push_back(parse_double(trim(item), section, key));
    if (out.empty()) throw ConfigError("config: key '" + key + "' has no values");
    return out;
  }

  const std::map<std::string, std::map<std::string, std::string>>& sections() const { return sections_; }

 private:
  static std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
  }
  static std::int64_t parse_int(const std::string& v, const std::string& section, const std::string& key) {
    try {
      std::size_t used = 0;
      const std::int64_t out = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' in [" + section + "] is not an integer: " + v);
    }
  }
  static double parse_double(const std::string& v, const std::string& section, const std::string& key) {
    try {
      std::size_t used = 0;
      const double out = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' in [" + section + "] is not a number: " + v);
    }
  }

  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace vclab
