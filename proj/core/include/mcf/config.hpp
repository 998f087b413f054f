#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcf/errors.hpp"

namespace mcf {

/// Flat key/value configuration: `key = value` lines, `#` comments, and
/// optional `[section]` headers that prefix following keys as "section.key".
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  /// Layer overrides on top of defaults.  Every override key must already
  /// exist in the defaults; unknown keys raise ConfigError naming the key.
  static Config resolve(const Config& defaults, const Config& overrides);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);

  const std::map<std::string, std::string>& items() const { return items_; }

  /// Full resolved set as JSON (for run manifests).
  std::string to_json() const;

 private:
  std::map<std::string, std::string> items_;
};

}  // namespace mcf
