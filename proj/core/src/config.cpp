#include "probelab/config.hpp"

#include <cctype>
#include <sstream>

#include "probelab/errors.hpp"

namespace probelab {

namespace {

std::string trim(const std::string& s) {
  std::size_t lo = 0;
  std::size_t hi = s.size();
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return s.substr(lo, hi - lo);
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (value.empty()) throw ConfigError("empty integer for key '" + key + "'");
  std::uint64_t out = 0;
  for (const char ch : value) {
    if (ch < '0' || ch > '9')
      throw ConfigError("key '" + key + "': '" + value + "' is not an unsigned integer");
    const std::uint64_t digit = static_cast<std::uint64_t>(ch - '0');
    if (out > (UINT64_MAX - digit) / 10)
      throw ConfigError("key '" + key + "': integer overflow in '" + value + "'");
    out = out * 10 + digit;
  }
  return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    config.values_[key] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

void KeyValueConfig::set(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ConfigError("override with empty key");
  values_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string* KeyValueConfig::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return nullptr;
  consumed_.insert(key);
  return &it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const std::string* value = find(key);
  if (!value) throw ConfigError("missing required key '" + key + "'");
  return *value;
}

std::string KeyValueConfig::get_string_or(const std::string& key,
                                          const std::string& fallback) const {
  const std::string* value = find(key);
  return value ? *value : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key) const {
  return parse_u64_value(key, get_string(key));
}

std::uint64_t KeyValueConfig::get_u64_or(const std::string& key, std::uint64_t fallback) const {
  const std::string* value = find(key);
  return value ? parse_u64_value(key, *value) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string value = trim(get_string(key));
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': '" + value + "' is not a number");
  }
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
  return find(key) ? get_double(key) : fallback;
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) const {
  const std::string* raw = find(key);
  if (!raw) return fallback;
  const std::string value = trim(*raw);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError("key '" + key + "': '" + value + "' is not a boolean");
}

std::vector<std::uint64_t> KeyValueConfig::get_u64_list(const std::string& key) const {
  const std::string value = get_string(key);
  std::vector<std::uint64_t> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(parse_u64_value(key, item));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::vector<std::uint64_t> KeyValueConfig::get_u64_list_or(
    const std::string& key, const std::vector<std::uint64_t>& fallback) const {
  return find(key) ? get_u64_list(key) : fallback;
}

void KeyValueConfig::assert_all_consumed() const {
  std::string leftovers;
  for (const auto& [key, value] : values_) {
    if (consumed_.count(key)) continue;
    if (!leftovers.empty()) leftovers += ", ";
    leftovers += key;
  }
  if (!leftovers.empty()) throw ConfigError("unknown config keys: " + leftovers);
}

}  // namespace probelab
