#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace predt {

/// One parsed config value. Arrays may nest (used for lists of states).
struct ConfigValue {
  enum class Kind { number, integer, boolean, string, array };
  Kind kind = Kind::number;
  double num = 0.0;
  std::int64_t integer = 0;
  bool boolean = false;
  std::string str;
  std::vector<ConfigValue> items;

  double as_number() const;  // integer promotes to double
};

/// Sectioned key-value config, a small TOML-style subset: `[section]`
/// headers, `key = value` lines, `#` comments, strings, booleans, integers,
/// floats and (nested, multi-line) arrays. Later duplicate keys win.
class Config {
 public:
  Config() = default;

  static Config parse(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  const ConfigValue* find(const std::string& section, const std::string& key) const;

  double number(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t integer(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  std::uint64_t uinteger(const std::string& section, const std::string& key,
                         std::uint64_t fallback) const;
  bool boolean(const std::string& section, const std::string& key, bool fallback) const;
  std::string string(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  /// List of state vectors under `key`. An array of arrays is taken row by
  /// row; a flat numeric array is one point per entry when dim = 1 and a
  /// single dim-long point otherwise.
  std::vector<std::vector<double>> points(const std::string& section,
                                          const std::string& key, int dim) const;

  /// Keys of one section in sorted order (empty when the section is absent).
  std::vector<std::string> keys(const std::string& section) const;

 private:
  std::map<std::string, std::map<std::string, ConfigValue>> sections_;
};

}  // namespace predt
