#include "escat/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace escat::toml {

bool Value::as_bool() const {
  require(is_bool(), ErrorKind::Config, "toml: expected a boolean");
  return std::get<bool>(storage_);
}

std::int64_t Value::as_int() const {
  require(is_int(), ErrorKind::Config, "toml: expected an integer");
  return std::get<std::int64_t>(storage_);
}

Real Value::as_float() const {
  if (is_int()) return static_cast<Real>(std::get<std::int64_t>(storage_));
  require(is_float(), ErrorKind::Config, "toml: expected a number");
  return std::get<Real>(storage_);
}

const std::string& Value::as_string() const {
  require(is_string(), ErrorKind::Config, "toml: expected a string");
  return std::get<std::string>(storage_);
}

const Value::Array& Value::as_array() const {
  require(is_array(), ErrorKind::Config, "toml: expected an array");
  return std::get<Array>(storage_);
}

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  std::map<std::string, Value> run() {
    std::map<std::string, Value> entries;
    std::string section;
    skip_filler();
    while (!done()) {
      if (peek() == '[') {
        section = parse_section();
      } else {
        auto [key, value] = parse_assignment();
        const std::string path = section.empty() ? key : section + "." + key;
        if (entries.count(path)) error("duplicate key '" + path + "'");
        entries.emplace(path, std::move(value));
      }
      skip_filler();
    }
    return entries;
  }

private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Config, "toml: line " + std::to_string(line_) + ": " + msg);
  }

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  // whitespace + comments + blank lines
  void skip_filler() {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // spaces and comments on the current logical line only
  void skip_inline() {
    while (!done()) {
      const char c = peek();
      if (c == ' ' || c == '\t') {
        advance();
      } else if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string parse_key() {
    std::string key;
    while (!done()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        key.push_back(advance());
      } else {
        break;
      }
    }
    if (key.empty()) error("expected a key");
    return key;
  }

  std::string parse_section() {
    advance();  // '['
    skip_inline();
    const std::string name = parse_key();
    skip_inline();
    if (done() || advance() != ']') error("unterminated [section] header");
    skip_inline();
    if (!done() && peek() != '\n') error("unexpected text after [section] header");
    return name;
  }

  std::pair<std::string, Value> parse_assignment() {
    const std::string key = parse_key();
    skip_inline();
    if (done() || advance() != '=') error("expected '=' after key '" + key + "'");
    skip_inline();
    Value value = parse_value();
    skip_inline();
    if (!done() && peek() != '\n') error("unexpected text after value for '" + key + "'");
    return {key, std::move(value)};
  }

  Value parse_value() {
    if (done()) error("expected a value");
    const char c = peek();
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    return parse_scalar();
  }

  Value parse_string() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (done()) error("unterminated string");
      if (peek() == '\n') error("newline inside string");
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (done()) error("dangling escape");
        const char e = advance();
        switch (e) {
          case 'n': out.push_back('\n'); break;
          case 't': out.push_back('\t'); break;
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          default: error(std::string("unsupported escape '\\") + e + "'");
        }
      } else {
        out.push_back(c);
      }
    }
    return Value(Value::Storage(std::move(out)));
  }

  Value parse_array() {
    advance();  // '['
    Value::Array items;
    while (true) {
      skip_filler();  // arrays may span lines
      if (done()) error("unterminated array");
      if (peek() == ']') {
        advance();
        break;
      }
      items.push_back(parse_value());
      skip_filler();
      if (done()) error("unterminated array");
      if (peek() == ',') {
        advance();
      } else if (peek() != ']') {
        error("expected ',' or ']' in array");
      }
    }
    return Value(Value::Storage(std::move(items)));
  }

  Value parse_scalar() {
    std::string token;
    while (!done()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ']' || c == '#') break;
      token.push_back(advance());
    }
    if (token == "true") return Value(Value::Storage(true));
    if (token == "false") return Value(Value::Storage(false));
    if (token.empty()) error("expected a value");

    const bool looks_float = token.find_first_of(".eE") != std::string::npos ||
                             token == "inf" || token == "-inf" || token == "nan";
    try {
      std::size_t used = 0;
      if (!looks_float) {
        const std::int64_t v = std::stoll(token, &used);
        if (used == token.size()) return Value(Value::Storage(v));
      }
      const Real v = std::stod(token, &used);
      if (used == token.size()) return Value(Value::Storage(v));
    } catch (const std::exception&) {
      // falls through to the error below
    }
    error("cannot parse value '" + token + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

Table Table::parse(const std::string& text) {
  Table table;
  table.entries_ = Parser(text).run();
  return table;
}

Table Table::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, "toml: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const Value& Table::at(const std::string& key) const {
  const auto it = entries_.find(key);
  require(it != entries_.end(), ErrorKind::Config, "toml: missing key '" + key + "'");
  return it->second;
}

Real Table::number_or(const std::string& key, Real fallback) const {
  return contains(key) ? at(key).as_float() : fallback;
}

std::int64_t Table::int_or(const std::string& key, std::int64_t fallback) const {
  return contains(key) ? at(key).as_int() : fallback;
}

std::string Table::string_or(const std::string& key, const std::string& fallback) const {
  return contains(key) ? at(key).as_string() : fallback;
}

bool Table::bool_or(const std::string& key, bool fallback) const {
  return contains(key) ? at(key).as_bool() : fallback;
}

}  // namespace escat::toml
