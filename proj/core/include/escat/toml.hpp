#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "escat/types.hpp"

namespace escat::toml {

/// Value subset: booleans, integers, floats, strings, and (nested) arrays.
class Value {
public:
  using Array = std::vector<Value>;
  using Storage = std::variant<bool, std::int64_t, Real, std::string, Array>;

  Value() : storage_(false) {}
  explicit Value(Storage s) : storage_(std::move(s)) {}

  bool is_bool() const { return std::holds_alternative<bool>(storage_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(storage_); }
  bool is_float() const { return std::holds_alternative<Real>(storage_); }
  bool is_number() const { return is_int() || is_float(); }
  bool is_string() const { return std::holds_alternative<std::string>(storage_); }
  bool is_array() const { return std::holds_alternative<Array>(storage_); }

  bool as_bool() const;
  std::int64_t as_int() const;
  Real as_float() const;  // accepts integers
  const std::string& as_string() const;
  const Array& as_array() const;

private:
  Storage storage_;
};

/// Flat table keyed by dotted paths ("grid.cells_across").
class Table {
public:
  static Table parse(const std::string& text);
  static Table parse_file(const std::string& path);

  bool contains(const std::string& key) const { return entries_.count(key) > 0; }
  const Value& at(const std::string& key) const;
  const std::map<std::string, Value>& entries() const { return entries_; }

  Real number_or(const std::string& key, Real fallback) const;
  std::int64_t int_or(const std::string& key, std::int64_t fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  bool bool_or(const std::string& key, bool fallback) const;

private:
  std::map<std::string, Value> entries_;
};

}  // namespace escat::toml
