#include "mcf/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mcf {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    c.items_[key] = value;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Config Config::resolve(const Config& defaults, const Config& overrides) {
  Config c = defaults;
  for (const auto& [k, v] : overrides.items_) {
    if (!c.items_.count(k)) throw ConfigError("unknown config key: " + k);
    c.items_[k] = v;
  }
  return c;
}

bool Config::has(const std::string& key) const { return items_.count(key) > 0; }

const std::string& Config::get(const std::string& key) const {
  auto it = items_.find(key);
  if (it == items_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string& v = get(key);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || trim(end) != "")
    throw ConfigError("key " + key + ": not a number: '" + v + "'");
  return x;
}

int Config::get_int(const std::string& key) const {
  double x = get_double(key);
  int i = int(x);
  if (double(i) != x)
    throw ConfigError("key " + key + ": not an integer: '" + get(key) + "'");
  return i;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::istringstream in(get(key));
  std::vector<double> out;
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    char* end = nullptr;
    double x = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || trim(end) != "")
      throw ConfigError("key " + key + ": not a number: '" + tok + "'");
    out.push_back(x);
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  items_[key] = value;
}

void Config::set(const std::string& key, double value) {
  std::ostringstream ss;
  ss.precision(17);
  ss << value;
  items_[key] = ss.str();
}

void Config::set(const std::string& key, int value) {
  items_[key] = std::to_string(value);
}

std::string Config::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : items_) j[k] = v;
  return j.dump(2);
}

}  // namespace mcf
