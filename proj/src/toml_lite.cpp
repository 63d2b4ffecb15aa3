#include "loopbu/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "loopbu/error.hpp"

namespace loopbu {

namespace {

using nlohmann::json;

class TomlReader {
 public:
  explicit TomlReader(std::string_view text) : text_(text) {}

  json parse() {
    json root = json::object();
    json* table = &root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        table = &open_table(root);
      } else {
        parse_key_value(*table);
      }
      finish_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::InvalidInput, "TOML line " + std::to_string(line_) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() == '\n') {
        take();
      } else {
        return;
      }
    }
  }

  // Whitespace, newlines and comments inside arrays and inline tables.
  void skip_insignificant() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        take();
      } else {
        return;
      }
    }
  }

  void finish_line() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    take();
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }

  std::string parse_key() {
    skip_spaces();
    if (peek() == '"') return parse_basic_string();
    if (peek() == '\'') return parse_literal_string();
    std::string key;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                         peek() == '-')) {
      key.push_back(take());
    }
    if (key.empty()) fail("expected a key");
    skip_spaces();
    if (peek() == '.') fail("dotted keys are not supported");
    return key;
  }

  json& open_table(json& root) {
    take();
    const bool array_of_tables = peek() == '[';
    if (array_of_tables) take();
    const std::string name = parse_key();
    skip_spaces();
    expect(']');
    if (array_of_tables) expect(']');
    json& slot = root[name];
    if (array_of_tables) {
      if (slot.is_null()) slot = json::array();
      if (!slot.is_array()) fail("'" + name + "' is not an array of tables");
      slot.push_back(json::object());
      return slot.back();
    }
    if (!slot.is_null()) fail("table '" + name + "' defined twice");
    slot = json::object();
    return slot;
  }

  void parse_key_value(json& table) {
    const std::string key = parse_key();
    skip_spaces();
    expect('=');
    skip_spaces();
    if (table.contains(key)) fail("duplicate key '" + key + "'");
    table[key] = parse_value();
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') {
      if (text_.substr(pos_, 3) == "\"\"\"") fail("multi-line strings are not supported");
      return parse_basic_string();
    }
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = take();
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (at_end()) fail("unterminated escape");
      switch (const char e = take()) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
  }

  std::string parse_literal_string() {
    expect('\'');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = take();
      if (c == '\'') return out;
      out.push_back(c);
    }
  }

  json parse_array() {
    expect('[');
    json out = json::array();
    while (true) {
      skip_insignificant();
      if (peek() == ']') {
        take();
        return out;
      }
      out.push_back(parse_value());
      skip_insignificant();
      if (peek() == ',') {
        take();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  json parse_inline_table() {
    expect('{');
    json out = json::object();
    skip_spaces();
    if (peek() == '}') {
      take();
      return out;
    }
    while (true) {
      parse_key_value(out);
      skip_spaces();
      if (peek() == ',') {
        take();
        continue;
      }
      expect('}');
      return out;
    }
  }

  json parse_number() {
    std::string token;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                         peek() == '-' || peek() == '.' || peek() == '_')) {
      const char c = take();
      if (c != '_') token.push_back(c);
    }
    if (token.empty()) fail("expected a value");
    std::string_view body = token;
    const bool negative = body.front() == '-';
    if (body.front() == '+' || body.front() == '-') body.remove_prefix(1);
    if (body == "inf") return negative ? -std::numeric_limits<double>::infinity()
                                       : std::numeric_limits<double>::infinity();
    if (body == "nan") return std::numeric_limits<double>::quiet_NaN();

    const bool is_float = token.find_first_of(".eE") != std::string::npos;
    const char* first = token.data() + (token.front() == '+' ? 1 : 0);
    const char* last = token.data() + token.size();
    if (is_float) {
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last) fail("malformed number '" + token + "'");
      return value;
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail("malformed value '" + token + "'");
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

nlohmann::json parse_toml(std::string_view text) { return TomlReader(text).parse(); }

}  // namespace loopbu
