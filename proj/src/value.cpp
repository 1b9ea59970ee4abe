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

#include "wdb/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

#include "wdb/error.hpp"

namespace wdb {

const char* value_type_name(ValueType t) {
  switch (t) {
    case ValueType::Null: return "NULL";
    case ValueType::Integer: return "INTEGER";
    case ValueType::Real: return "REAL";
    case ValueType::Text: return "TEXT";
    case ValueType::Blob: return "BLOB";
  }
  return "?";
}

ValueType value_type_from_name(const std::string& name) {
  if (name == "INTEGER") return ValueType::Integer;
  if (name == "REAL") return ValueType::Real;
  if (name == "TEXT") return ValueType::Text;
  if (name == "BLOB") return ValueType::Blob;
  throw ConfigError("unknown column type: " + name);
}

int compare_int_real(int64_t i, double d) {
  if (std::isnan(d)) return 1;  // NaN sorts below every numeric
  // 2^63 is exactly representable; INT64_MAX is not.
  if (d >= 9223372036854775808.0) return -1;
  if (d < -9223372036854775808.0) return 1;
  int64_t t = static_cast<int64_t>(d);  // truncation toward zero, in range
  if (i != t) return i < t ? -1 : 1;
  double frac = d - static_cast<double>(t);
  if (frac > 0.0) return -1;
  if (frac < 0.0) return 1;
  return 0;
}

namespace {

template <typename T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int storage_rank(ValueType t) {
  switch (t) {
    case ValueType::Null: return 0;
    case ValueType::Integer:
    case ValueType::Real: return 1;
    case ValueType::Text: return 2;
    case ValueType::Blob: return 3;
  }
  return 4;
}

int compare_double(double a, double b) {
  // Total order with NaN lowest among numerics.
  bool na = std::isnan(a), nb = std::isnan(b);
  if (na || nb) return na == nb ? 0 : (na ? -1 : 1);
  return cmp3(a, b);
}

}  // namespace

int Value::compare(const Value& a, const Value& b) {
  int ra = storage_rank(a.type());
  int rb = storage_rank(b.type());
  if (ra != rb) return cmp3(ra, rb);
  switch (a.type()) {
    case ValueType::Null:
      return 0;
    case ValueType::Integer:
      if (b.type() == ValueType::Integer)
        return cmp3(a.as_integer(), b.as_integer());
      return compare_int_real(a.as_integer(), b.as_real());
    case ValueType::Real:
      if (b.type() == ValueType::Real)
        return compare_double(a.as_real(), b.as_real());
      return -compare_int_real(b.as_integer(), a.as_real());
    case ValueType::Text:
      return cmp3(a.as_text(), b.as_text());
    case ValueType::Blob:
      return cmp3(a.as_blob(), b.as_blob());
  }
  return 0;
}

int compare_rows(const Row& a, const Row& b) {
  size_t n = a.size() < b.size() ? a.size() : b.size();
  for (size_t i = 0; i < n; ++i) {
    int c = Value::compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return cmp3(a.size(), b.size());
}

std::string format_real(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

namespace {

const char kHexDigits[] = "0123456789ABCDEF";

std::string quote_text(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += '\'';
  return out;
}

}  // namespace

std::string Value::sql_literal() const {
  switch (type()) {
    case ValueType::Null:
      return "NULL";
    case ValueType::Integer:
      return std::to_string(as_integer());
    case ValueType::Real:
      return format_real(as_real());
    case ValueType::Text:
      return quote_text(as_text());
    case ValueType::Blob: {
      std::string out = "X'";
      for (uint8_t b : as_blob()) {
        out += kHexDigits[b >> 4];
        out += kHexDigits[b & 0xF];
      }
      out += '\'';
      return out;
    }
  }
  return "NULL";
}

std::string Value::render_text() const {
  switch (type()) {
    case ValueType::Null:
      return "";
    case ValueType::Integer:
      return std::to_string(as_integer());
    case ValueType::Real:
      return format_real(as_real());
    case ValueType::Text:
      return as_text();
    case ValueType::Blob:
      return std::string(as_blob().begin(), as_blob().end());
  }
  return "";
}

const char* user_error_code_name(UserErrorCode code) {
  switch (code) {
    case UserErrorCode::Syntax: return "syntax";
    case UserErrorCode::UnknownTable: return "unknown-table";
    case UserErrorCode::UnknownColumn: return "unknown-column";
    case UserErrorCode::AmbiguousColumn: return "ambiguous-column";
    case UserErrorCode::DuplicateTable: return "duplicate-table";
    case UserErrorCode::DuplicateColumn: return "duplicate-column";
    case UserErrorCode::ArityMismatch: return "arity-mismatch";
    case UserErrorCode::TypeMismatch: return "type-mismatch";
    case UserErrorCode::RowTooLarge: return "row-too-large";
    case UserErrorCode::SchemaFull: return "schema-full";
    case UserErrorCode::BadLiteral: return "bad-literal";
  }
  return "?";
}

}  // namespace wdb
