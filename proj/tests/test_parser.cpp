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

#include "wdb/parser.hpp"

#include <doctest.h>

#include "wdb/error.hpp"
#include "wdb/genactions.hpp"

using namespace wdb;

namespace {

bool statements_equal(const Statement& a, const Statement& b) {
  return print_statement(a) == print_statement(b);
}

}  // namespace

TEST_CASE("TRUE is accepted as a catch-all predicate") {
  Statement s = parse_statement("SELECT * FROM t WHERE TRUE");
  const auto& sel = std::get<SelectStmt>(s);
  const auto* lit = std::get_if<Expr::Literal>(&sel.arms[0].where->node);
  REQUIRE(lit != nullptr);
  CHECK(lit->value.type() == ValueType::Integer);
  CHECK(lit->value.as_integer() == 1);
  CHECK(lit->boolean_keyword);

  Statement f = parse_statement("SELECT * FROM t WHERE FALSE");
  const auto* flit =
      std::get_if<Expr::Literal>(&std::get<SelectStmt>(f).arms[0].where->node);
  REQUIRE(flit != nullptr);
  CHECK(flit->value.as_integer() == 0);
}

TEST_CASE("empty input is a syntax error with an offset") {
  CHECK_THROWS_AS(parse_statement(""), UserError);
  try {
    parse_statement("");
  } catch (const UserError& e) {
    CHECK(e.code() == UserErrorCode::Syntax);
    CHECK(e.has_offset());
  }
}

TEST_CASE("error offsets point at the first failure") {
  try {
    parse_statement("SELECT a FROM t WHERE ???");
    FAIL("expected a syntax error");
  } catch (const UserError& e) {
    CHECK(e.offset() == 22);
  }
  try {
    parse_statement("INSERT INTO t VALUES (1,,2)");
    FAIL("expected a syntax error");
  } catch (const UserError& e) {
    CHECK(e.offset() == 24);
  }
}

TEST_CASE("composite select parses into the expected tree") {
  Statement s =
      parse_statement("SELECT a, b FROM t WHERE a < 3 AND b IS NULL LIMIT 2");
  const auto& sel = std::get<SelectStmt>(s);
  REQUIRE(sel.arms.size() == 1);
  CHECK(sel.limit == 2);
  CHECK(sel.arms[0].projections.size() == 2);
  const auto* andnode = std::get_if<Expr::Binary>(&sel.arms[0].where->node);
  REQUIRE(andnode != nullptr);
  CHECK(andnode->op == BinaryOp::And);
  const auto* lt = std::get_if<Expr::Binary>(&andnode->lhs->node);
  REQUIRE(lt != nullptr);
  CHECK(lt->op == BinaryOp::Lt);
  const auto* isnull = std::get_if<Expr::Unary>(&andnode->rhs->node);
  REQUIRE(isnull != nullptr);
  CHECK(isnull->op == UnaryOp::IsNull);
}

TEST_CASE("print/parse is a fixpoint for hand-written statements") {
  const char* samples[] = {
      "SELECT a, b FROM t WHERE a < 3 AND b IS NULL LIMIT 2",
      "SELECT DISTINCT * FROM t, u WHERE (t.a = u.b) OR NOT (t.a < 5)",
      "SELECT * FROM t WHERE a BETWEEN 1 AND 3",
      "SELECT * FROM t WHERE a LIKE 'x%' UNION ALL SELECT * FROM u",
      "SELECT (a = 1) IS NULL FROM t",
      "INSERT INTO t (b, a) VALUES (1, 'x''y'), (NULL, X'00FF')",
      "CREATE TABLE t (a INTEGER, b TEXT, c REAL, d BLOB)",
      "UPDATE t SET a = a, b = 'q' WHERE NOT a = 2",
      "DELETE FROM t WHERE TRUE",
      "DELETE FROM t",
      "DROP TABLE t",
      "SELECT * FROM t WHERE a = -3 OR b = -2.5",
      "SELECT 1e-05 FROM t",
      "SELECT * FROM t WHERE a < 3 = b",
  };
  for (const char* sql : samples) {
    CAPTURE(sql);
    Statement once = parse_statement(sql);
    Statement twice = parse_statement(print_statement(once));
    CHECK(statements_equal(once, twice));
  }
}

TEST_CASE("round-trip holds for generator output") {
  GenContext ctx(20260301);
  std::vector<ColumnDef> schema = {{"a", ValueType::Integer},
                                   {"b", ValueType::Text},
                                   {"c", ValueType::Real},
                                   {"d", ValueType::Blob}};
  gen::ExprScope scope = gen::ExprScope::single("t", schema);
  for (int i = 0; i < 10'000; ++i) {
    ExprPtr e = gen::gen_expr(scope, ctx);
    std::string printed = print_expr(e);
    CAPTURE(printed);
    ExprPtr reparsed = parse_expression(printed);
    REQUIRE(expr_equal(e, reparsed));
  }
}

TEST_CASE("literal edge cases") {
  // integer range
  Statement s = parse_statement("SELECT * FROM t WHERE a = 9223372036854775807");
  CHECK_THROWS_AS(parse_statement("SELECT * FROM t WHERE a = 9223372036854775808"),
                  UserError);
  // real overflow is rejected, not folded to infinity
  CHECK_THROWS_AS(parse_statement("SELECT * FROM t WHERE a = 1e999"), UserError);
  // blob literals
  Statement b = parse_statement("INSERT INTO t VALUES (X'0aFF')");
  CHECK(std::get<InsertStmt>(b).rows[0][0].as_blob() ==
        std::vector<uint8_t>{0x0A, 0xFF});
  CHECK_THROWS_AS(parse_statement("INSERT INTO t VALUES (X'0a0')"), UserError);
  // string escapes
  Statement t = parse_statement("INSERT INTO t VALUES ('a''b')");
  CHECK(std::get<InsertStmt>(t).rows[0][0].as_text() == "a'b");
}

TEST_CASE("deeply nested expressions fail cleanly instead of overflowing") {
  std::string sql = "SELECT * FROM t WHERE ";
  for (int i = 0; i < 300; ++i) sql += "(";
  sql += "1";
  for (int i = 0; i < 300; ++i) sql += ")";
  CHECK_THROWS_AS(parse_statement(sql), UserError);
}

TEST_CASE("garbage never raises an internal invariant violation") {
  const char* garbage[] = {
      ";;;", "SELEC * FRM t", "INSERT INTO", "CREATE TABLE t (",
      "SELECT * FROM t WHERE", "UPDATE t SET", "xyzzy", "(((((",
      "SELECT * FROM t LIMIT -1", "SELECT * FROM t1, t2, t3",
  };
  for (const char* sql : garbage) {
    CAPTURE(sql);
    CHECK_THROWS_AS(parse_statement(sql), UserError);
  }
}

TEST_CASE("mutant M0 rejects TRUE/FALSE predicates") {
  MutantSet m0 = MutantSet::from_id(MutantId::M0);
  CHECK_THROWS_AS(parse_statement("SELECT * FROM t WHERE TRUE", m0), UserError);
  CHECK_THROWS_AS(parse_statement("SELECT * FROM t WHERE FALSE", m0), UserError);
  // everything else still parses
  CHECK_NOTHROW(parse_statement("SELECT * FROM t WHERE 1", m0));
}
