// Copyright 2026 The WDB Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WDB_VALUE_HPP
#define WDB_VALUE_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace wdb {

enum class ValueType : uint8_t {
  Null = 0,
  Integer = 1,
  Real = 2,
  Text = 3,
  Blob = 4,
};

const char* value_type_name(ValueType t);
// "INTEGER" / "REAL" / "TEXT" / "BLOB"; throws ConfigError on anything else.
ValueType value_type_from_name(const std::string& name);

// SQL runtime value. Total ordering across variants follows storage-class
// rank Null < numeric < Text < Blob; Integer and Real compare by exact
// numeric value.
class Value {
 public:
  Value() : v_(std::monostate{}) {}

  static Value null() { return Value(); }
  static Value integer(int64_t i) { return Value(Repr(i)); }
  static Value real(double d) { return Value(Repr(d)); }
  static Value text(std::string s) { return Value(Repr(std::move(s))); }
  static Value blob(std::vector<uint8_t> b) { return Value(Repr(std::move(b))); }

  ValueType type() const { return static_cast<ValueType>(v_.index()); }
  bool is_null() const { return type() == ValueType::Null; }
  bool is_numeric() const {
    return type() == ValueType::Integer || type() == ValueType::Real;
  }

  int64_t as_integer() const { return std::get<int64_t>(v_); }
  double as_real() const { return std::get<double>(v_); }
  const std::string& as_text() const { return std::get<std::string>(v_); }
  const std::vector<uint8_t>& as_blob() const {
    return std::get<std::vector<uint8_t>>(v_);
  }

  // Three-way total order; Null sorts lowest. NaN (which generators never
  // emit) sorts below every other numeric so ordering stays total.
  static int compare(const Value& a, const Value& b);

  bool operator==(const Value& b) const { return compare(*this, b) == 0; }
  bool operator!=(const Value& b) const { return compare(*this, b) != 0; }
  bool operator<(const Value& b) const { return compare(*this, b) < 0; }

  // SQL literal form: NULL, 42, 1.5, 'it''s', X'0AFF'. Reals render with a
  // shortest round-trip representation that always re-parses as REAL.
  std::string sql_literal() const;

  // Text rendering used by LIKE coercion: integers and reals render like
  // their literal form, text is itself, blob bytes pass through unescaped.
  std::string render_text() const;

 private:
  using Repr = std::variant<std::monostate, int64_t, double, std::string,
                            std::vector<uint8_t>>;
  explicit Value(Repr r) : v_(std::move(r)) {}
  Repr v_;
};

using Row = std::vector<Value>;

int compare_rows(const Row& a, const Row& b);

// Shortest representation of a finite double that strtod round-trips and that
// always contains '.' or 'e' so it re-parses as a REAL literal.
std::string format_real(double d);

// Exact Integer-vs-Real comparison (no precision loss for large magnitudes).
int compare_int_real(int64_t i, double d);

}  // namespace wdb

#endif  // WDB_VALUE_HPP
