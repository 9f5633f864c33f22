#pragma once

// Flat key-value configuration: `key = value` lines, blank lines and
// #-comments ignored, later assignments win. Command-line overrides use the
// same `key=value` syntax. Typed getters record which keys were consumed so
// a harness can reject misspelled leftovers.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace probelab {

class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  // Parses config text. Throws ParseError with a line diagnostic.
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_text(const std::string& text);

  // Applies one `key=value` override (the --set form).
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;

  // Typed getters; the _or forms fall back to a default when the key is
  // absent. All throw ConfigError on malformed values.
  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  // Comma-separated list of unsigned integers, e.g. `16,64,256`.
  std::vector<std::uint64_t> get_u64_list(const std::string& key) const;
  std::vector<std::uint64_t> get_u64_list_or(
      const std::string& key, const std::vector<std::uint64_t>& fallback) const;

  // Throws ConfigError naming every key that was never read by any getter.
  void assert_all_consumed() const;

 private:
  const std::string* find(const std::string& key) const;

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace probelab
