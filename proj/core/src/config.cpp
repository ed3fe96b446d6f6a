#include "predt/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "predt/errors.hpp"

namespace predt {
namespace {

struct Scanner {
  const std::string& s;
  std::size_t i = 0;
  int line = 1;

  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "config line " << line << ": " << what;
    throw config_error(msg.str());
  }

  void advance() {
    if (s[i] == '\n') ++line;
    ++i;
  }

  /// Whitespace and comments; newlines too when `newlines` is set.
  void skip(bool newlines) {
    while (!eof()) {
      const char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (newlines && c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string bare_word() {
    std::size_t start = i;
    while (!eof() && (std::isalnum((unsigned char)peek()) || peek() == '_' ||
                      peek() == '-' || peek() == '.')) {
      advance();
    }
    if (i == start) fail("expected a name");
    return s.substr(start, i - start);
  }

  ConfigValue value() {
    skip(false);
    if (eof()) fail("expected a value");
    const char c = peek();
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    return scalar_value();
  }

  ConfigValue string_value() {
    advance();  // opening quote
    ConfigValue v;
    v.kind = ConfigValue::Kind::string;
    while (!eof() && peek() != '"') {
      char c = peek();
      if (c == '\n') fail("unterminated string");
      if (c == '\\') {
        advance();
        if (eof()) fail("unterminated escape");
        switch (peek()) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail("unknown escape");
        }
      }
      v.str.push_back(c);
      advance();
    }
    if (eof()) fail("unterminated string");
    advance();  // closing quote
    return v;
  }

  ConfigValue array_value() {
    advance();  // '['
    ConfigValue v;
    v.kind = ConfigValue::Kind::array;
    skip(true);
    if (!eof() && peek() == ']') {
      advance();
      return v;
    }
    while (true) {
      v.items.push_back(value());
      skip(true);
      if (eof()) fail("unterminated array");
      if (peek() == ',') {
        advance();
        skip(true);
        if (!eof() && peek() == ']') {  // trailing comma
          advance();
          return v;
        }
        continue;
      }
      if (peek() == ']') {
        advance();
        return v;
      }
      fail("expected ',' or ']' in array");
    }
  }

  ConfigValue scalar_value() {
    std::size_t start = i;
    while (!eof() && peek() != '\n' && peek() != '#' && peek() != ',' &&
           peek() != ']' && peek() != ' ' && peek() != '\t' && peek() != '\r') {
      advance();
    }
    std::string tok = s.substr(start, i - start);
    if (tok.empty()) fail("expected a value");
    ConfigValue v;
    if (tok == "true" || tok == "false") {
      v.kind = ConfigValue::Kind::boolean;
      v.boolean = tok == "true";
      return v;
    }
    bool integral = true;
    for (std::size_t k = 0; k < tok.size(); ++k) {
      const char c = tok[k];
      if (k == 0 && (c == '+' || c == '-')) continue;
      if (!std::isdigit((unsigned char)c)) integral = false;
    }
    if (integral && tok != "+" && tok != "-") {
      v.kind = ConfigValue::Kind::integer;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v.integer);
      if (ec != std::errc() || p != tok.data() + tok.size()) fail("bad integer '" + tok + "'");
      v.num = double(v.integer);
      return v;
    }
    v.kind = ConfigValue::Kind::number;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v.num);
    if (ec != std::errc() || p != tok.data() + tok.size()) fail("bad number '" + tok + "'");
    return v;
  }

  void end_of_line() {
    skip(false);
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing text");
  }
};

}  // namespace

double ConfigValue::as_number() const {
  switch (kind) {
    case Kind::number: return num;
    case Kind::integer: return double(integer);
    default: throw config_error("config: value is not numeric");
  }
}

Config Config::parse(const std::string& text) {
  Config cfg;
  Scanner sc{text};
  std::string section;
  while (true) {
    sc.skip(true);
    if (sc.eof()) break;
    if (sc.peek() == '[') {
      sc.advance();
      sc.skip(false);
      section = sc.bare_word();
      sc.skip(false);
      if (sc.eof() || sc.peek() != ']') sc.fail("expected ']'");
      sc.advance();
      sc.end_of_line();
      continue;
    }
    const std::string key = sc.bare_word();
    sc.skip(false);
    if (sc.eof() || sc.peek() != '=') sc.fail("expected '=' after '" + key + "'");
    sc.advance();
    ConfigValue v = sc.value();
    sc.end_of_line();
    cfg.sections_[section][key] = std::move(v);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const ConfigValue* Config::find(const std::string& section,
                                const std::string& key) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

double Config::number(const std::string& section, const std::string& key,
                      double fallback) const {
  const ConfigValue* v = find(section, key);
  return v ? v->as_number() : fallback;
}

std::int64_t Config::integer(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
  const ConfigValue* v = find(section, key);
  if (!v) return fallback;
  if (v->kind != ConfigValue::Kind::integer)
    throw config_error("config: [" + section + "] " + key + " must be an integer");
  return v->integer;
}

std::uint64_t Config::uinteger(const std::string& section, const std::string& key,
                               std::uint64_t fallback) const {
  const ConfigValue* v = find(section, key);
  if (!v) return fallback;
  if (v->kind != ConfigValue::Kind::integer)
    throw config_error("config: [" + section + "] " + key + " must be an integer");
  return std::uint64_t(v->integer);
}

bool Config::boolean(const std::string& section, const std::string& key,
                     bool fallback) const {
  const ConfigValue* v = find(section, key);
  if (!v) return fallback;
  if (v->kind != ConfigValue::Kind::boolean)
    throw config_error("config: [" + section + "] " + key + " must be a boolean");
  return v->boolean;
}

std::string Config::string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const ConfigValue* v = find(section, key);
  if (!v) return fallback;
  if (v->kind != ConfigValue::Kind::string)
    throw config_error("config: [" + section + "] " + key + " must be a string");
  return v->str;
}

std::vector<std::vector<double>> Config::points(const std::string& section,
                                                const std::string& key,
                                                int dim) const {
  const ConfigValue* v = find(section, key);
  if (!v) return {};
  if (v->kind != ConfigValue::Kind::array)
    throw config_error("config: [" + section + "] " + key + " must be an array");
  std::vector<std::vector<double>> pts;
  const bool nested =
      !v->items.empty() && v->items.front().kind == ConfigValue::Kind::array;
  if (nested) {
    for (const auto& row : v->items) {
      if (row.kind != ConfigValue::Kind::array)
        throw config_error("config: [" + section + "] " + key + " mixes scalars and rows");
      std::vector<double> pt;
      pt.reserve(row.items.size());
      for (const auto& e : row.items) pt.push_back(e.as_number());
      if ((int)pt.size() != dim)
        throw config_error("config: [" + section + "] " + key + " row has wrong dimension");
      pts.push_back(std::move(pt));
    }
    return pts;
  }
  if (dim == 1) {
    for (const auto& e : v->items) pts.push_back({e.as_number()});
    return pts;
  }
  std::vector<double> pt;
  pt.reserve(v->items.size());
  for (const auto& e : v->items) pt.push_back(e.as_number());
  if ((int)pt.size() != dim)
    throw config_error("config: [" + section + "] " + key + " has wrong dimension");
  pts.push_back(std::move(pt));
  return pts;
}

std::vector<std::string> Config::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto s = sections_.find(section);
  if (s == sections_.end()) return out;
  out.reserve(s->second.size());
  for (const auto& [k, _] : s->second) out.push_back(k);
  return out;
}

}  // namespace predt
