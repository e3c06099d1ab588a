#include "emfdose/toml.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "emfdose/errors.hpp"

namespace emfdose::toml {

const Value* Table::find(const std::string& key) const {
  const auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

double Value::number() const {
  if (const auto* i = std::get_if<std::int64_t>(&data))
    return static_cast<double>(*i);
  return std::get<double>(data);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  Table run() {
    Table root;
    current_ = &root;
    while (true) {
      skip_blank();
      if (at_end()) break;
      if (peek() == '[')
        parse_header(root);
      else
        parse_key_value(*current_);
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::ostringstream out;
    out << source_ << ":" << line_ << ": " << message;
    throw ParseError(out.str());
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    while (!at_end() && peek() != '\n') ++pos_;
  }

  // Whitespace, comments, and newlines between statements.
  void skip_blank() {
    while (!at_end()) {
      skip_spaces();
      if (at_end()) return;
      if (peek() == '#') {
        skip_comment();
        continue;
      }
      if (peek() == '\n' || peek() == '\r') {
        advance();
        continue;
      }
      return;
    }
  }

  // After a statement: only spaces and a comment may follow on the line.
  void expect_line_end() {
    skip_spaces();
    if (!at_end() && peek() == '#') skip_comment();
    if (!at_end() && peek() == '\r') advance();
    if (at_end()) return;
    if (peek() != '\n')
      fail(std::string("unexpected text after value: '") + peek() + "'");
    advance();
  }

  static bool is_bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  }

  std::string parse_bare_key() {
    std::string key;
    while (!at_end() && is_bare_key_char(peek())) key.push_back(advance());
    if (key.empty()) fail("expected a key");
    return key;
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path;
    path.push_back(parse_bare_key());
    while (!at_end() && peek() == '.') {
      advance();
      path.push_back(parse_bare_key());
    }
    return path;
  }

  // Walks `count` segments of a header path from the root, creating implicit
  // tables and descending into the last element of arrays-of-tables. Appends
  // each visited segment (with array index) to `instance`, which gives every
  // concrete table a stable identity for duplicate detection.
  Table* navigate(Table& root, const std::vector<std::string>& path,
                  std::size_t count, int header_line, std::string& instance) {
    Table* table = &root;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& key = path[i];
      if (!instance.empty()) instance.push_back('.');
      instance += key;
      auto it = table->entries.find(key);
      if (it == table->entries.end()) {
        Value value;
        Table fresh;
        fresh.line = header_line;
        value.data = std::move(fresh);
        value.line = header_line;
        it = table->entries.emplace(key, std::move(value)).first;
      }
      Value& value = it->second;
      if (value.is_table()) {
        table = &value.table();
      } else if (value.is_array() && array_paths_.count(instance) != 0) {
        Array& array = std::get<Array>(value.data);
        instance += "[" + std::to_string(array.size() - 1) + "]";
        table = &array.back().table();
      } else {
        fail("key '" + key + "' is not a table");
      }
    }
    return table;
  }

  void parse_header(Table& root) {
    const int header_line = line_;
    advance();  // '['
    const bool array_of_tables = !at_end() && peek() == '[';
    if (array_of_tables) advance();
    skip_spaces();
    const auto path = parse_key_path();
    skip_spaces();
    if (at_end() || peek() != ']') fail("expected ']' in table header");
    advance();
    if (array_of_tables) {
      if (at_end() || peek() != ']')
        fail("expected ']]' in array-of-tables header");
      advance();
    }
    expect_line_end();

    std::string instance;
    Table* parent = navigate(root, path, path.size() - 1, header_line, instance);
    const std::string& leaf = path.back();
    if (!instance.empty()) instance.push_back('.');
    instance += leaf;

    auto it = parent->entries.find(leaf);
    if (array_of_tables) {
      if (table_paths_.count(instance) != 0)
        fail("key '" + leaf + "' already defined as a table");
      if (it == parent->entries.end()) {
        Value value;
        value.data = Array{};
        value.line = header_line;
        it = parent->entries.emplace(leaf, std::move(value)).first;
        array_paths_.insert(instance);
      } else if (array_paths_.count(instance) == 0) {
        fail("key '" + leaf + "' already defined as a non-array value");
      }
      Array& array = std::get<Array>(it->second.data);
      Value element;
      Table fresh;
      fresh.line = header_line;
      element.data = std::move(fresh);
      element.line = header_line;
      array.push_back(std::move(element));
      current_ = &array.back().table();
    } else {
      if (array_paths_.count(instance) != 0)
        fail("table '" + leaf + "' already defined as an array of tables");
      if (!table_paths_.insert(instance).second)
        fail("table '" + leaf + "' defined twice");
      if (it != parent->entries.end()) {
        if (!it->second.is_table()) fail("key '" + leaf + "' already defined");
        current_ = &it->second.table();
      } else {
        Value value;
        Table fresh;
        fresh.line = header_line;
        value.data = std::move(fresh);
        value.line = header_line;
        auto inserted = parent->entries.emplace(leaf, std::move(value)).first;
        current_ = &inserted->second.table();
      }
    }
  }

  void parse_key_value(Table& table) {
    const int key_line = line_;
    const std::string key = parse_bare_key();
    skip_spaces();
    if (at_end() || peek() != '=') fail("expected '=' after key '" + key + "'");
    advance();
    skip_spaces();
    Value value = parse_value();
    value.line = key_line;
    if (!table.entries.emplace(key, std::move(value)).second)
      fail("duplicate key '" + key + "'");
    expect_line_end();
  }

  Value parse_value() {
    if (at_end()) fail("expected a value");
    Value out;
    out.line = line_;
    const char c = peek();
    if (c == '"' || c == '\'') {
      out.data = parse_string();
    } else if (c == '[') {
      out.data = parse_array();
    } else if (c == '{') {
      out.data = parse_inline_table();
    } else {
      out.data = parse_scalar();
    }
    return out;
  }

  std::string parse_string() {
    const char quote = advance();
    std::string result;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = advance();
      if (c == quote) break;
      if (quote == '"' && c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char e = advance();
        switch (e) {
          case '"': result.push_back('"'); break;
          case '\\': result.push_back('\\'); break;
          case 'n': result.push_back('\n'); break;
          case 't': result.push_back('\t'); break;
          case 'r': result.push_back('\r'); break;
          default: fail(std::string("unsupported escape '\\") + e + "'");
        }
      } else {
        result.push_back(c);
      }
    }
    return result;
  }

  Array parse_array() {
    advance();  // '['
    Array array;
    while (true) {
      skip_spaces();
      if (at_end() || peek() == '\n') fail("arrays must close on one line");
      if (peek() == ']') {
        advance();
        break;
      }
      array.push_back(parse_value());
      skip_spaces();
      if (!at_end() && peek() == ',') {
        advance();
        continue;
      }
      if (at_end() || peek() != ']') fail("expected ',' or ']' in array");
      advance();
      break;
    }
    return array;
  }

  Table parse_inline_table() {
    advance();  // '{'
    Table table;
    table.line = line_;
    skip_spaces();
    if (!at_end() && peek() == '}') {
      advance();
      return table;
    }
    while (true) {
      skip_spaces();
      if (at_end() || peek() == '\n')
        fail("inline tables must close on one line");
      const int key_line = line_;
      const std::string key = parse_bare_key();
      skip_spaces();
      if (at_end() || peek() != '=') fail("expected '=' in inline table");
      advance();
      skip_spaces();
      Value value = parse_value();
      value.line = key_line;
      if (!table.entries.emplace(key, std::move(value)).second)
        fail("duplicate key '" + key + "' in inline table");
      skip_spaces();
      if (!at_end() && peek() == ',') {
        advance();
        continue;
      }
      if (at_end() || peek() != '}') fail("expected ',' or '}' in inline table");
      advance();
      break;
    }
    return table;
  }

  Value::Data parse_scalar() {
    std::string token;
    while (!at_end() && peek() != '\n' && peek() != '#' && peek() != ',' &&
           peek() != ']' && peek() != '}' && peek() != ' ' && peek() != '\t' &&
           peek() != '\r')
      token.push_back(advance());
    if (token.empty()) fail("expected a value");
    if (token == "true") return true;
    if (token == "false") return false;

    const bool looks_float = token.find_first_of(".eE") != std::string::npos;
    if (!looks_float) {
      std::int64_t integer = 0;
      const auto [ptr, ec] =
          std::from_chars(token.data(), token.data() + token.size(), integer);
      if (ec == std::errc() && ptr == token.data() + token.size())
        return integer;
    }
    double real = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), real);
    if (ec != std::errc() || ptr != token.data() + token.size() ||
        !std::isfinite(real))
      fail("invalid value '" + token + "'");
    return real;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  int line_ = 1;
  Table* current_ = nullptr;
  std::set<std::string> array_paths_;   // arrays created by [[...]] headers
  std::set<std::string> table_paths_;   // tables created by [...] headers
};

}  // namespace

Table parse(std::string_view text, const std::string& source_name) {
  return Parser(text, source_name).run();
}

Table parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

}  // namespace emfdose::toml
