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

#include "wdb/eval.hpp"

#include <doctest.h>

#include "wdb/error.hpp"
#include "wdb/genactions.hpp"
#include "wdb/parser.hpp"

using namespace wdb;

namespace {

// Evaluates a constant SQL expression under reference semantics.
Value eval_sql(const std::string& text) {
  RowScope empty;
  return eval_expr(parse_expression(text), empty);
}

bool is_int(const Value& v, int64_t expect) {
  return v.type() == ValueType::Integer && v.as_integer() == expect;
}

}  // namespace

// Expected values below were computed with a reference SQLite shell
// (3.37) and frozen.
TEST_CASE("three-valued logic truth tables") {
  CHECK(eval_sql("NULL = NULL").is_null());
  CHECK(is_int(eval_sql("NULL IS NULL"), 1));
  CHECK(eval_sql("NOT NULL").is_null());
  CHECK(is_int(eval_sql("NULL AND 0"), 0));
  CHECK(eval_sql("NULL AND 1").is_null());
  CHECK(is_int(eval_sql("NULL OR 1"), 1));
  CHECK(eval_sql("NULL OR 0").is_null());
  CHECK(eval_sql("NULL AND NULL").is_null());
  CHECK(eval_sql("NULL OR NULL").is_null());
  CHECK(is_int(eval_sql("1 AND 1"), 1));
  CHECK(is_int(eval_sql("1 AND 0"), 0));
  CHECK(is_int(eval_sql("0 OR 1"), 1));
  CHECK(is_int(eval_sql("NOT 0"), 1));
  CHECK(is_int(eval_sql("NOT 5"), 0));
  CHECK(is_int(eval_sql("NOT 0.0"), 1));
  CHECK(is_int(eval_sql("NOT 2.5"), 0));
}

TEST_CASE("boolean coercion takes the longest numeric prefix of strings") {
  CHECK(is_int(eval_sql("NOT 'abc'"), 1));
  CHECK(is_int(eval_sql("NOT '1'"), 0));
  CHECK(is_int(eval_sql("NOT '2.5abc'"), 0));
  CHECK(is_int(eval_sql("NOT ' 1'"), 0));
  CHECK(is_int(eval_sql("NOT '-0.0'"), 1));
  CHECK(is_int(eval_sql("NOT '.5'"), 0));
  CHECK(is_int(eval_sql("'' AND 1"), 0));
  CHECK(is_int(eval_sql("'1x' AND 1"), 1));
  CHECK(is_int(eval_sql("X'31' AND 1"), 1));  // blob "1"
  CHECK(is_int(eval_sql("X'' AND 1"), 0));
  CHECK(is_int(eval_sql("'e5' AND 1"), 0));
  CHECK(is_int(eval_sql("'1e999' AND 1"), 1));
}

TEST_CASE("comparisons with NULL yield NULL") {
  CHECK(eval_sql("NULL < 1").is_null());
  CHECK(eval_sql("NULL <> NULL").is_null());
  CHECK(is_int(eval_sql("5 IS NULL"), 0));
  CHECK(is_int(eval_sql("NULL IS NOT NULL"), 0));
  CHECK(is_int(eval_sql("(NULL = NULL) IS NULL"), 1));
}

TEST_CASE("cross-type comparisons follow storage rank") {
  CHECK(is_int(eval_sql("1 = 1.0"), 1));
  CHECK(is_int(eval_sql("1 < 'a'"), 1));
  CHECK(is_int(eval_sql("'a' < X'00'"), 1));
  CHECK(is_int(eval_sql("9999999999 < 'a'"), 1));
  CHECK(is_int(eval_sql("'B' < 'a'"), 1));
  CHECK(is_int(eval_sql("X'01' < X'0102'"), 1));
  CHECK(is_int(eval_sql("9223372036854775807 > 9223372036854775806.0"), 0));
}

TEST_CASE("LIKE coerces non-text operands to their text rendering") {
  CHECK(is_int(eval_sql("5 LIKE '5%'"), 1));
  CHECK(is_int(eval_sql("5.0 LIKE '5%'"), 1));
  CHECK(is_int(eval_sql("12 LIKE '1_'"), 1));
  CHECK(is_int(eval_sql("100 LIKE '1%'"), 1));
  CHECK(is_int(eval_sql("-3 LIKE '-%'"), 1));
  CHECK(is_int(eval_sql("2.5 LIKE '2.5'"), 1));
  CHECK(eval_sql("NULL LIKE 'a'").is_null());
  CHECK(eval_sql("'a' LIKE NULL").is_null());
}

TEST_CASE("LIKE wildcards are case-insensitive ASCII") {
  CHECK(is_int(eval_sql("'abc' LIKE 'ABC'"), 1));
  CHECK(is_int(eval_sql("'abc' LIKE 'a%'"), 1));
  CHECK(is_int(eval_sql("'abc' LIKE '_b_'"), 1));
  CHECK(is_int(eval_sql("'abc' LIKE 'a'"), 0));
  CHECK(is_int(eval_sql("'' LIKE '%'"), 1));
  CHECK(is_int(eval_sql("'a' LIKE ''"), 0));
  CHECK(like_match("hello world", "h%o%d"));
  CHECK_FALSE(like_match("hello", "h_l"));
}

TEST_CASE("BETWEEN desugars to a conjunction of comparisons") {
  CHECK(is_int(eval_sql("2 BETWEEN 1 AND 3"), 1));
  CHECK(is_int(eval_sql("2 BETWEEN 3 AND 1"), 0));
  CHECK(eval_sql("2 BETWEEN NULL AND 3").is_null());
  CHECK(is_int(eval_sql("2 BETWEEN NULL AND 1"), 0));
  CHECK(eval_sql("NULL BETWEEN 1 AND 3").is_null());
  CHECK(eval_sql("2 BETWEEN 1 AND NULL").is_null());
  CHECK(eval_sql("0 BETWEEN NULL AND 1").is_null());
}

TEST_CASE("column references resolve through the scope") {
  std::vector<std::string> cols = {"a", "b"};
  Row row = {Value::integer(3), Value::null()};
  RowScope scope;
  scope.add_table("t", cols, &row);
  CHECK(is_int(eval_expr(parse_expression("a = 3"), scope), 1));
  CHECK(is_int(eval_expr(parse_expression("t.a = 3"), scope), 1));
  CHECK(is_int(eval_expr(parse_expression("b IS NULL"), scope), 1));
  CHECK_THROWS_AS(eval_expr(parse_expression("c = 1"), scope), UserError);
  CHECK_THROWS_AS(eval_expr(parse_expression("u.a = 1"), scope), UserError);
}

TEST_CASE("ambiguous references are user errors") {
  std::vector<std::string> cols = {"a"};
  Row r1 = {Value::integer(1)};
  Row r2 = {Value::integer(2)};
  RowScope scope;
  scope.add_table("t", cols, &r1);
  scope.add_table("u", cols, &r2);
  CHECK_THROWS_AS(eval_expr(parse_expression("a = 1"), scope), UserError);
  CHECK(is_int(eval_expr(parse_expression("t.a = 1"), scope), 1));
  CHECK(is_int(eval_expr(parse_expression("u.a = 2"), scope), 1));
}

TEST_CASE("NOT is an involution up to three-valued logic") {
  GenContext ctx(7);
  std::vector<ColumnDef> schema = {{"a", ValueType::Integer},
                                   {"b", ValueType::Text}};
  gen::ExprScope scope = gen::ExprScope::single("t", schema);
  std::vector<std::string> cols = {"a", "b"};
  for (int i = 0; i < 2000; ++i) {
    ExprPtr e = gen::gen_expr(scope, ctx);
    Row row = gen::gen_row(schema, ctx);
    RowScope rs;
    rs.add_table("t", cols, &row);
    Value v = eval_expr(e, rs);
    Value notv = eval_expr(Expr::unary(UnaryOp::Not, Expr::paren(e)), rs);
    Truth t = truthiness(v);
    if (t == Truth::Unknown) {
      CHECK(notv.is_null());
    } else {
      CHECK(is_int(notv, t == Truth::True ? 0 : 1));
    }
  }
}

TEST_CASE("AND and OR are commutative") {
  GenContext ctx(8);
  std::vector<ColumnDef> schema = {{"a", ValueType::Integer},
                                   {"c", ValueType::Real}};
  gen::ExprScope scope = gen::ExprScope::single("t", schema);
  std::vector<std::string> cols = {"a", "c"};
  for (int i = 0; i < 2000; ++i) {
    ExprPtr e1 = Expr::paren(gen::gen_expr(scope, ctx));
    ExprPtr e2 = Expr::paren(gen::gen_expr(scope, ctx));
    Row row = gen::gen_row(schema, ctx);
    RowScope rs;
    rs.add_table("t", cols, &row);
    for (BinaryOp op : {BinaryOp::And, BinaryOp::Or}) {
      Value ab = eval_expr(Expr::binary(op, e1, e2), rs);
      Value ba = eval_expr(Expr::binary(op, e2, e1), rs);
      CHECK(Value::compare(ab, ba) == 0);
      CHECK(ab.type() == ba.type());
    }
  }
}

TEST_CASE("mutant M2 breaks AND with a NULL operand") {
  MutantSet m2 = MutantSet::from_id(MutantId::M2);
  RowScope empty;
  ExprPtr e = parse_expression("NULL AND 1");
  CHECK(eval_expr(e, empty).is_null());
  CHECK(is_int(eval_expr(e, empty, m2), 0));
  // Kleene's short-circuit row is unaffected either way.
  ExprPtr z = parse_expression("NULL AND 0");
  CHECK(is_int(eval_expr(z, empty), 0));
  CHECK(is_int(eval_expr(z, empty, m2), 0));
}

TEST_CASE("mutant M4 asserts instead of coercing LIKE operands") {
  MutantSet m4 = MutantSet::from_id(MutantId::M4);
  RowScope empty;
  ExprPtr e = parse_expression("5 LIKE '5%'");
  CHECK(is_int(eval_expr(e, empty), 1));
  CHECK_THROWS_AS(eval_expr(e, empty, m4), InternalInvariantViolation);
  // text-only LIKE still works under the mutant
  CHECK(is_int(eval_expr(parse_expression("'a' LIKE 'a'"), empty, m4), 1));
}
