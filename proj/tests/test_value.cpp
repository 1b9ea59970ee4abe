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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

using namespace wdb;

TEST_CASE("storage class rank orders nulls, numerics, text, blobs") {
  Value n = Value::null();
  Value i = Value::integer(5);
  Value r = Value::real(2.5);
  Value t = Value::text("a");
  Value b = Value::blob({0x00});
  CHECK(Value::compare(n, i) < 0);
  CHECK(Value::compare(i, t) < 0);
  CHECK(Value::compare(r, t) < 0);
  CHECK(Value::compare(t, b) < 0);
  CHECK(Value::compare(Value::integer(999999), t) < 0);
}

TEST_CASE("integer and real compare by numeric value") {
  CHECK(Value::compare(Value::integer(1), Value::real(1.0)) == 0);
  CHECK(Value::compare(Value::integer(1), Value::real(1.5)) < 0);
  CHECK(Value::compare(Value::integer(2), Value::real(1.5)) > 0);
  CHECK(Value::compare(Value::real(-2.5), Value::integer(-2)) < 0);
}

TEST_CASE("large magnitude int/real comparison is exact") {
  // 9223372036854775806.0 rounds to 2^63, which exceeds INT64_MAX.
  int64_t big = std::numeric_limits<int64_t>::max();
  CHECK(compare_int_real(big, 9223372036854775806.0) < 0);
  CHECK(compare_int_real(big, 9223372036854775807.0) < 0);
  CHECK(compare_int_real(big - 1, static_cast<double>(big - 1)) != 0);
  CHECK(compare_int_real(0, 0.0) == 0);
}

TEST_CASE("NaN never compares equal but stays ordered") {
  double nan = std::nan("");
  CHECK(Value::compare(Value::real(nan), Value::real(1.0)) < 0);
  CHECK(Value::compare(Value::real(nan), Value::real(nan)) == 0);
  CHECK(Value::compare(Value::integer(0), Value::real(nan)) > 0);
}

TEST_CASE("real formatting round-trips and re-parses as REAL") {
  for (double d : {1.5, -0.25, 1e-5, 123456789.0, 3.141592653589793, 1e300}) {
    std::string s = format_real(d);
    CHECK(std::strtod(s.c_str(), nullptr) == d);
    bool has_marker = s.find('.') != std::string::npos ||
                      s.find('e') != std::string::npos;
    CHECK(has_marker);
  }
  CHECK(format_real(2.0) == "2.0");
}

TEST_CASE("sql literals") {
  CHECK(Value::null().sql_literal() == "NULL");
  CHECK(Value::integer(-3).sql_literal() == "-3");
  CHECK(Value::text("it's").sql_literal() == "'it''s'");
  CHECK(Value::blob({0x0A, 0xFF}).sql_literal() == "X'0AFF'");
  CHECK(Value::real(1.5).sql_literal() == "1.5");
}

TEST_CASE("text rendering used by LIKE coercion") {
  CHECK(Value::integer(5).render_text() == "5");
  CHECK(Value::real(5.0).render_text() == "5.0");
  CHECK(Value::text("ab").render_text() == "ab");
  CHECK(Value::blob({'a', 'b'}).render_text() == "ab");
}

TEST_CASE("row comparison is lexicographic with length tiebreak") {
  Row a = {Value::integer(1), Value::integer(2)};
  Row b = {Value::integer(1), Value::integer(3)};
  Row c = {Value::integer(1)};
  CHECK(compare_rows(a, b) < 0);
  CHECK(compare_rows(c, a) < 0);
  CHECK(compare_rows(a, a) == 0);
}
