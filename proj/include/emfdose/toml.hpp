#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace emfdose::toml {

// Strict reader for the TOML subset our fixture files use:
//   - comments, bare keys, basic "..." and literal '...' strings
//   - integers, floats (incl. scientific notation), booleans
//   - single-line arrays [a, b,] and inline tables { k = v }
//   - [table.path] headers and [[array.of.tables]] (appending semantics,
//     nested headers attach to the last array element)
// Everything else is a ParseError naming file, line, and offending token.
// Every value remembers its source line so schema validation can point at
// the exact spot.

class Value;
using Array = std::vector<Value>;

class Table {
 public:
  const Value* find(const std::string& key) const;
  bool contains(const std::string& key) const { return find(key) != nullptr; }

  std::map<std::string, Value> entries;
  int line = 0;  // header line, 0 for the root table
};

class Value {
 public:
  using Data = std::variant<bool, std::int64_t, double, std::string, Array, Table>;

  bool is_table() const { return std::holds_alternative<Table>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_number() const {
    return std::holds_alternative<std::int64_t>(data) ||
           std::holds_alternative<double>(data);
  }

  const Table& table() const { return std::get<Table>(data); }
  Table& table() { return std::get<Table>(data); }
  const Array& array() const { return std::get<Array>(data); }
  const std::string& string() const { return std::get<std::string>(data); }
  bool boolean() const { return std::get<bool>(data); }
  /// Numeric value as double regardless of integer/float spelling.
  double number() const;

  Data data;
  int line = 0;
};

/// Parse TOML text. source_name appears in error messages.
Table parse(std::string_view text, const std::string& source_name);

/// Parse a file; throws ParseError on I/O failure or syntax error.
Table parse_file(const std::filesystem::path& path);

}  // namespace emfdose::toml
