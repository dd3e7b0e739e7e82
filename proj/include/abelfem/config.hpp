#ifndef ABELFEM_CONFIG_HPP
#define ABELFEM_CONFIG_HPP

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelfem {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration with optional `[section]` headers.
/// Keys are stored as "section.key" (or bare "key" before any header).
/// `#` and `;` start comments.
class Config {
 public:
  static Config parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto cut = line.find_first_of("#;");
      if (cut != std::string::npos) line.erase(cut);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty())
          throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      if (!section.empty()) key = section + "." + key;
      if (cfg.values_.count(key))
        throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
      cfg.values_[key] = value;
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    const auto v = get(key);
    return v ? *v : fallback;
  }

  double get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const double d = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("");
      return d;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': not a number: " + *v);
    }
  }

  int get_int(const std::string& key, int fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    try {
      std::size_t pos = 0;
      const int i = std::stoi(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("");
      return i;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': not an integer: " + *v);
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    const auto v = get(key);
    if (!v) return fallback;
    if (*v == "true") return true;
    if (*v == "false") return false;
    throw ConfigError("config key '" + key + "': expected true or false, got " + *v);
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& kv : values_) out.push_back(kv.first);
    return out;
  }

  /// Rejects any key outside the allowed set, naming the first offender.
  void require_known(const std::vector<std::string>& allowed) const {
    for (const auto& kv : values_) {
      bool ok = false;
      for (const auto& a : allowed)
        if (kv.first == a) { ok = true; break; }
      if (!ok) throw ConfigError("unknown config key: " + kv.first);
    }
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> values_;
};

}  // namespace abelfem

#endif
