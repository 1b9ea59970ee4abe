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

#include "wdb/engine.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "wdb/error.hpp"

using namespace wdb;

namespace {

Database fresh() { return Database(":memory:"); }

void exec_all(Database& db, std::initializer_list<const char*> stmts) {
  for (const char* s : stmts) db.execute_sql(s);
}

std::vector<Row> rows_of(Database& db, const std::string& sql) {
  ExecResult r = db.execute_sql(sql);
  REQUIRE(r.result.has_value());
  return r.result->rows;
}

Row int_row(std::initializer_list<int64_t> xs) {
  Row r;
  for (int64_t x : xs) r.push_back(Value::integer(x));
  return r;
}

}  // namespace

TEST_CASE("a constant-false DELETE touches nothing") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)",
                "INSERT INTO t VALUES (1), (2), (3)"});
  ExecResult r = db.execute_sql("DELETE FROM t WHERE 0");
  CHECK(r.affected == 0);
  CHECK(rows_of(db, "SELECT * FROM t").size() == 3);

  r = db.execute_sql("DELETE FROM t WHERE NULL");
  CHECK(r.affected == 0);
  CHECK(rows_of(db, "SELECT * FROM t").size() == 3);

  r = db.execute_sql("DELETE FROM t WHERE TRUE");
  CHECK(r.affected == 3);
  CHECK(rows_of(db, "SELECT * FROM t").empty());
}

TEST_CASE("selecting from an empty table yields zero rows") {
  Database db = fresh();
  db.execute_sql("CREATE TABLE t (a INTEGER, b TEXT)");
  ExecResult r = db.execute_sql("SELECT * FROM t");
  CHECK(r.result->rows.empty());
  CHECK(r.result->columns == std::vector<std::string>{"a", "b"});
}

TEST_CASE("filtering matches per-row reference evaluation") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)",
                "INSERT INTO t VALUES (1), (2), (3)"});
  auto rows = rows_of(db, "SELECT a FROM t WHERE a > 1");
  REQUIRE(rows.size() == 2);
  CHECK(compare_rows(rows[0], int_row({2})) == 0);
  CHECK(compare_rows(rows[1], int_row({3})) == 0);
}

TEST_CASE("row order is storage insertion order and results are stable") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)", "INSERT INTO t VALUES (3)",
                "INSERT INTO t VALUES (1), (2)"});
  auto rows = rows_of(db, "SELECT a FROM t");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][0].as_integer() == 3);
  CHECK(rows[1][0].as_integer() == 1);
  CHECK(rows[2][0].as_integer() == 2);

  // Byte-identical across repeated executions.
  Database db2 = fresh();
  exec_all(db2, {"CREATE TABLE t (a INTEGER)", "INSERT INTO t VALUES (3)",
                 "INSERT INTO t VALUES (1), (2)"});
  auto again = rows_of(db2, "SELECT a FROM t");
  REQUIRE(again.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(compare_rows(rows[i], again[i]) == 0);
  }
}

TEST_CASE("DISTINCT, UNION ALL and LIMIT compose in that order") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)",
                "INSERT INTO t VALUES (1), (1), (2)"});
  CHECK(rows_of(db, "SELECT DISTINCT a FROM t").size() == 2);
  CHECK(rows_of(db, "SELECT a FROM t UNION ALL SELECT a FROM t").size() == 6);
  CHECK(rows_of(db, "SELECT DISTINCT a FROM t UNION ALL SELECT a FROM t").size() == 5);
  CHECK(rows_of(db, "SELECT a FROM t UNION ALL SELECT a FROM t LIMIT 4").size() == 4);
  CHECK(rows_of(db, "SELECT a FROM t LIMIT 0").empty());
  // Arms may come from different tables; the first arm names the columns.
  exec_all(db, {"CREATE TABLE u (c REAL)", "INSERT INTO u VALUES (1.5)"});
  ExecResult mixed = db.execute_sql("SELECT a FROM t UNION ALL SELECT c FROM u");
  CHECK(mixed.result->rows.size() == 4);
  CHECK(mixed.result->columns == std::vector<std::string>{"a"});
}

TEST_CASE("cross products bind columns by table") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)", "CREATE TABLE u (b INTEGER)",
                "INSERT INTO t VALUES (1), (2)",
                "INSERT INTO u VALUES (10), (20)"});
  auto rows = rows_of(db, "SELECT t.a, u.b FROM t, u WHERE t.a = 2");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0].as_integer() == 2);
  CHECK(rows_of(db, "SELECT * FROM t, u").size() == 4);
}

TEST_CASE("user errors carry stable codes") {
  Database db = fresh();
  db.execute_sql("CREATE TABLE t (a INTEGER)");
  auto code_of = [&](const char* sql) {
    try {
      db.execute_sql(sql);
    } catch (const UserError& e) {
      return e.code();
    }
    FAIL("expected a user error for ", sql);
    return UserErrorCode::Syntax;
  };
  CHECK(code_of("CREATE TABLE t (x INTEGER)") == UserErrorCode::DuplicateTable);
  CHECK(code_of("SELECT * FROM missing") == UserErrorCode::UnknownTable);
  CHECK(code_of("SELECT b FROM t") == UserErrorCode::UnknownColumn);
  CHECK(code_of("INSERT INTO t VALUES (1, 2)") == UserErrorCode::ArityMismatch);
  CHECK(code_of("INSERT INTO t VALUES ('x')") == UserErrorCode::TypeMismatch);
  CHECK(code_of("INSERT INTO t (a, a) VALUES (1, 1)") ==
        UserErrorCode::DuplicateColumn);
  CHECK(code_of("SELECT a FROM t UNION ALL SELECT a, a FROM t") ==
        UserErrorCode::ArityMismatch);
  CHECK(code_of("CREATE TABLE u (a INTEGER, a TEXT)") ==
        UserErrorCode::DuplicateColumn);
  CHECK(code_of("UPDATE t SET b = 1") == UserErrorCode::UnknownColumn);
}

TEST_CASE("strict typing accepts NULL everywhere but nothing else") {
  Database db = fresh();
  db.execute_sql("CREATE TABLE t (a INTEGER, b TEXT)");
  db.execute_sql("INSERT INTO t VALUES (NULL, NULL)");
  db.execute_sql("INSERT INTO t VALUES (1, 'x')");
  CHECK_THROWS_AS(db.execute_sql("INSERT INTO t VALUES (1.5, 'x')"), UserError);
  CHECK_THROWS_AS(db.execute_sql("UPDATE t SET a = 'oops'"), UserError);
  db.execute_sql("UPDATE t SET a = NULL");
  CHECK(rows_of(db, "SELECT * FROM t WHERE a IS NULL").size() == 2);
}

TEST_CASE("insert with a column list fills the rest with NULL") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER, b TEXT, c REAL)",
                "INSERT INTO t (c, a) VALUES (1.5, 7)"});
  auto rows = rows_of(db, "SELECT * FROM t");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0].as_integer() == 7);
  CHECK(rows[0][1].is_null());
  CHECK(rows[0][2].as_real() == 1.5);
}

TEST_CASE("update assignments all read the pre-update row") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER, b INTEGER)",
                "INSERT INTO t VALUES (1, 2)"});
  ExecResult r = db.execute_sql("UPDATE t SET a = b, b = a");
  CHECK(r.affected == 1);
  auto rows = rows_of(db, "SELECT * FROM t");
  CHECK(rows[0][0].as_integer() == 2);
  CHECK(rows[0][1].as_integer() == 1);
}

TEST_CASE("update counts matched rows even when values are unchanged") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)", "INSERT INTO t VALUES (5), (6)"});
  ExecResult r = db.execute_sql("UPDATE t SET a = a WHERE a = 5");
  CHECK(r.affected == 1);
}

TEST_CASE("constant WHERE on UPDATE is decided before the scan") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)", "INSERT INTO t VALUES (1), (2)"});
  CHECK(db.execute_sql("UPDATE t SET a = 9 WHERE 1 = 2").affected == 0);
  CHECK(db.execute_sql("UPDATE t SET a = 9 WHERE NULL").affected == 0);
  CHECK(db.execute_sql("UPDATE t SET a = 9 WHERE TRUE").affected == 2);
}

TEST_CASE("committed data survives reopen") {
  std::string path =
      (std::filesystem::temp_directory_path() / "wdb_reopen_test.db").string();
  std::remove(path.c_str());
  {
    Database db(path);
    exec_all(db, {"CREATE TABLE t (a INTEGER, b TEXT)",
                  "INSERT INTO t VALUES (1, 'x')"});
    db.reopen();
    auto rows = rows_of(db, "SELECT * FROM t");
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][1].as_text() == "x");
  }
  // A fresh handle over the same file sees the same data.
  Database again(path);
  CHECK(rows_of(again, "SELECT b FROM t").size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("fresh path opens to an empty catalog") {
  Database db = fresh();
  CHECK(db.catalog().empty());
}

TEST_CASE("a read fault on the header page during reopen is an IoError") {
  Database db = fresh();
  db.execute_sql("CREATE TABLE t (a INTEGER)");
  FaultPlan plan;
  plan.schedule.push_back({1, FaultKind::ReadError, std::nullopt});
  db.io().arm(plan);
  CHECK_THROWS_AS(db.reopen(), IoError);
  // Not an internal invariant violation, and the handle stays usable.
  db.io().arm(FaultPlan{});
  db.reopen();
  CHECK(rows_of(db, "SELECT * FROM t").empty());
}

TEST_CASE("a write fault mid-statement leaves the statement unapplied") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER, b TEXT)",
                "INSERT INTO t VALUES (1, 'keep')"});
  // Fail every write for a while: the INSERT below cannot commit.
  FaultPlan plan;
  plan.schedule.push_back({1, FaultKind::WriteError, std::nullopt});
  db.io().arm(plan);
  CHECK_THROWS_AS(db.execute_sql("INSERT INTO t VALUES (2, 'lost')"), IoError);
  db.io().arm(FaultPlan{});
  auto rows = rows_of(db, "SELECT * FROM t");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][1].as_text() == "keep");
  // And the same holds across a reopen: nothing partial was persisted.
  db.reopen();
  CHECK(rows_of(db, "SELECT * FROM t").size() == 1);
}

TEST_CASE("oversized rows are rejected as user errors") {
  Database db = fresh();
  db.execute_sql("CREATE TABLE t (a TEXT)");
  std::string big(5000, 'x');
  CHECK_THROWS_AS(db.execute_sql("INSERT INTO t VALUES ('" + big + "')"),
                  UserError);
  CHECK(rows_of(db, "SELECT * FROM t").empty());
}

TEST_CASE("step budget aborts runaway statements deterministically") {
  Database db = fresh();
  exec_all(db, {"CREATE TABLE t (a INTEGER)"});
  std::string values = "(0)";
  for (int i = 1; i < 200; ++i) values += ", (" + std::to_string(i) + ")";
  db.execute_sql("INSERT INTO t VALUES " + values);
  db.set_step_limit(100);  // 200x200 cross product cannot fit
  CHECK_THROWS_AS(db.execute_sql("SELECT * FROM t, t"), TimeoutError);
  db.set_step_limit(0);
  CHECK(rows_of(db, "SELECT * FROM t, t").size() == 40000);
}

TEST_CASE("mutant M1 drops constant WHERE terms from DELETE") {
  Database db(":memory:", MutantId::M1);
  exec_all(db, {"CREATE TABLE t (a INTEGER)",
                "INSERT INTO t VALUES (1), (2), (3)"});
  // The constant is treated as absent, so everything is deleted.
  ExecResult r = db.execute_sql("DELETE FROM t WHERE 0");
  CHECK(r.affected == 3);
  CHECK(rows_of(db, "SELECT * FROM t").empty());
  // Non-constant predicates still work.
  exec_all(db, {"INSERT INTO t VALUES (1), (2)"});
  CHECK(db.execute_sql("DELETE FROM t WHERE a = 1").affected == 1);
  CHECK(rows_of(db, "SELECT * FROM t").size() == 1);
}

TEST_CASE("mutant M5 returns one row short of LIMIT") {
  Database db(":memory:", MutantId::M5);
  exec_all(db, {"CREATE TABLE t (a INTEGER)",
                "INSERT INTO t VALUES (1), (2), (3)"});
  CHECK(rows_of(db, "SELECT * FROM t LIMIT 2").size() == 1);
  CHECK(rows_of(db, "SELECT * FROM t LIMIT 0").empty());
  CHECK(rows_of(db, "SELECT * FROM t").size() == 3);  // no LIMIT, no bug
}

TEST_CASE("mutant M6 loops on identity updates until the budget trips") {
  Database db(":memory:", MutantId::M6);
  exec_all(db, {"CREATE TABLE t (a INTEGER)", "INSERT INTO t VALUES (5)"});
  db.set_step_limit(10'000);
  CHECK_THROWS_AS(db.execute_sql("UPDATE t SET a = a"), TimeoutError);
  // A value-changing update terminates normally.
  CHECK(db.execute_sql("UPDATE t SET a = 6").affected == 1);
}

TEST_CASE("mutant M3 reopens into the stale open-time header") {
  Database db(":memory:", MutantId::M3);
  db.execute_sql("CREATE TABLE t (a INTEGER)");
  db.execute_sql("INSERT INTO t VALUES (1)");
  db.reopen();
  // The catalog reverted to the (empty) open-time snapshot.
  CHECK(db.catalog().empty());
  CHECK_THROWS_AS(db.execute_sql("SELECT * FROM t"), UserError);
}
