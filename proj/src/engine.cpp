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

#include <algorithm>
#include <set>

#include "wdb/error.hpp"
#include "wdb/eval.hpp"

namespace wdb {

namespace {

constexpr size_t kMaxNameLength = 64;
constexpr size_t kMaxColumns = 128;

std::vector<std::string> column_names(const TableInfo& t) {
  std::vector<std::string> names;
  names.reserve(t.columns.size());
  for (const ColumnDef& c : t.columns) names.push_back(c.name);
  return names;
}

bool value_fits_column(const Value& v, ValueType type) {
  return v.is_null() || v.type() == type;
}

}  // namespace

struct Database::Budget {
  uint64_t used = 0;
  uint64_t limit;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  void step() {
    ++used;
    if (limit != 0 && used > limit) {
      throw TimeoutError("statement exceeded its step budget of " +
                         std::to_string(limit));
    }
    if (deadline && (used & 0x3FF) == 0 &&
        std::chrono::steady_clock::now() > *deadline) {
      throw TimeoutError("statement exceeded its time budget");
    }
  }
};

Database::Database(const std::string& path, MutantId mutant)
    : Database(path.empty() || path == ":memory:" ? make_mem_storage()
                                                  : make_file_storage(path),
               mutant) {}

Database::Database(std::unique_ptr<Storage> storage, MutantId mutant)
    : io_(std::make_unique<SimIo>(std::move(storage))),
      mutants_(MutantSet::from_id(mutant)) {
  pager_ = std::make_unique<Pager>(*io_, mutants_);
  pager_->open();
}

void Database::reopen() { pager_->reopen(); }

const TableInfo& Database::table_or_throw(const std::string& name) const {
  const TableInfo* t = pager_->find_table(name);
  if (t == nullptr) {
    throw UserError(UserErrorCode::UnknownTable, "no such table: " + name);
  }
  return *t;
}

ExecResult Database::execute_sql(const std::string& sql) {
  return execute(parse_statement(sql, mutants_));
}

ExecResult Database::execute(const Statement& statement) {
  Budget budget{0, step_limit_, deadline_};
  struct V {
    Database& db;
    Budget& budget;
    ExecResult operator()(const CreateTableStmt& s) { return db.run_create(s); }
    ExecResult operator()(const DropTableStmt& s) { return db.run_drop(s); }
    ExecResult operator()(const InsertStmt& s) { return db.run_insert(s); }
    ExecResult operator()(const SelectStmt& s) { return db.run_select(s, budget); }
    ExecResult operator()(const UpdateStmt& s) { return db.run_update(s, budget); }
    ExecResult operator()(const DeleteStmt& s) { return db.run_delete(s, budget); }
  };
  return std::visit(V{*this, budget}, statement);
}

ExecResult Database::run_create(const CreateTableStmt& s) {
  if (pager_->find_table(s.table) != nullptr) {
    throw UserError(UserErrorCode::DuplicateTable,
                    "table already exists: " + s.table);
  }
  if (s.columns.empty()) {
    throw UserError(UserErrorCode::Syntax, "a table needs at least one column");
  }
  if (s.table.size() > kMaxNameLength || s.columns.size() > kMaxColumns) {
    throw UserError(UserErrorCode::SchemaFull,
                    "table definition exceeds engine limits");
  }
  std::set<std::string> seen;
  for (const ColumnDef& c : s.columns) {
    if (c.name.size() > kMaxNameLength) {
      throw UserError(UserErrorCode::SchemaFull, "column name too long: " + c.name);
    }
    if (!seen.insert(c.name).second) {
      throw UserError(UserErrorCode::DuplicateColumn,
                      "duplicate column name: " + c.name);
    }
  }
  pager_->commit_create_table(s.table, s.columns);
  return ExecResult{std::nullopt, 0};
}

ExecResult Database::run_drop(const DropTableStmt& s) {
  table_or_throw(s.table);
  pager_->commit_drop_table(s.table);
  return ExecResult{std::nullopt, 0};
}

ExecResult Database::run_insert(const InsertStmt& s) {
  const TableInfo& table = table_or_throw(s.table);
  // Map the written columns to schema positions.
  std::vector<size_t> positions;
  if (s.columns.empty()) {
    for (size_t i = 0; i < table.columns.size(); ++i) positions.push_back(i);
  } else {
    std::set<std::string> seen;
    for (const std::string& name : s.columns) {
      if (!seen.insert(name).second) {
        throw UserError(UserErrorCode::DuplicateColumn,
                        "column specified more than once: " + name);
      }
      size_t pos = table.columns.size();
      for (size_t i = 0; i < table.columns.size(); ++i) {
        if (table.columns[i].name == name) pos = i;
      }
      if (pos == table.columns.size()) {
        throw UserError(UserErrorCode::UnknownColumn,
                        "no such column: " + s.table + "." + name);
      }
      positions.push_back(pos);
    }
  }
  std::vector<Row> staged;
  for (const Row& given : s.rows) {
    if (given.size() != positions.size()) {
      throw UserError(UserErrorCode::ArityMismatch,
                      std::to_string(given.size()) + " values for " +
                          std::to_string(positions.size()) + " columns");
    }
    Row full(table.columns.size(), Value::null());
    for (size_t i = 0; i < positions.size(); ++i) {
      const ColumnDef& col = table.columns[positions[i]];
      if (!value_fits_column(given[i], col.type)) {
        throw UserError(UserErrorCode::TypeMismatch,
                        "value " + given[i].sql_literal() + " does not fit " +
                            value_type_name(col.type) + " column " + col.name);
      }
      full[positions[i]] = given[i];
    }
    if (Pager::record_size(full) > Pager::max_record_size) {
      throw UserError(UserErrorCode::RowTooLarge, "row does not fit in a page");
    }
    staged.push_back(std::move(full));
  }
  std::vector<Row> rows = pager_->read_table_rows(table);
  rows.insert(rows.end(), staged.begin(), staged.end());
  pager_->commit_table_rows(s.table, rows);
  return ExecResult{std::nullopt, s.rows.size()};
}

namespace {

// Constant WHERE clauses are evaluated exactly once, before the scan; the
// scan is then kept or skipped wholesale.
enum class WhereMode { KeepAll, DropAll, PerRow };

WhereMode classify_where(const ExprPtr& where, const MutantSet& mutants) {
  if (!where) return WhereMode::KeepAll;
  if (!expr_is_constant(where)) return WhereMode::PerRow;
  RowScope empty;
  Value v = eval_expr(where, empty, mutants);
  return truthiness(v) == Truth::True ? WhereMode::KeepAll : WhereMode::DropAll;
}

}  // namespace

ExecResult Database::run_select(const SelectStmt& s, Budget& budget) {
  ResultSet out;
  bool first_arm = true;
  size_t arity = 0;
  for (const SelectCore& core : s.arms) {
    // Resolve FROM tables and materialize their rows.
    std::vector<const TableInfo*> tables;
    std::vector<std::vector<Row>> table_rows;
    for (const std::string& name : core.from) {
      const TableInfo& t = table_or_throw(name);
      tables.push_back(&t);
      table_rows.push_back(pager_->read_table_rows(t));
    }
    std::vector<std::string> names;
    if (core.star) {
      if (core.from.empty()) {
        throw UserError(UserErrorCode::Syntax, "SELECT * requires a FROM clause");
      }
      for (const TableInfo* t : tables) {
        for (const ColumnDef& c : t->columns) names.push_back(c.name);
      }
    } else {
      for (const ExprPtr& p : core.projections) names.push_back(print_expr(p));
    }
    if (first_arm) {
      out.columns = names;
      arity = names.size();
      first_arm = false;
    } else if (names.size() != arity) {
      throw UserError(UserErrorCode::ArityMismatch,
                      "SELECTs to the left and right of UNION ALL do not have "
                      "the same number of result columns");
    }

    WhereMode mode = classify_where(core.where, mutants_);
    if (mode == WhereMode::DropAll) continue;

    std::vector<Row> arm_rows;
    std::set<std::vector<Value>, bool (*)(const Row&, const Row&)> seen(
        [](const Row& a, const Row& b) { return compare_rows(a, b) < 0; });

    // Cross product in FROM order; with no FROM there is one empty binding.
    size_t outer = core.from.size() >= 1 ? table_rows[0].size() : 1;
    size_t inner = core.from.size() >= 2 ? table_rows[1].size() : 1;
    for (size_t i = 0; i < outer; ++i) {
      for (size_t j = 0; j < inner; ++j) {
        budget.step();
        RowScope scope;
        if (core.from.size() >= 1) {
          scope.add_table(tables[0]->name, column_names(*tables[0]),
                          &table_rows[0][i]);
        }
        if (core.from.size() >= 2) {
          scope.add_table(tables[1]->name, column_names(*tables[1]),
                          &table_rows[1][j]);
        }
        if (mode == WhereMode::PerRow &&
            truthiness(eval_expr(core.where, scope, mutants_)) != Truth::True) {
          continue;
        }
        Row row;
        if (core.star) {
          row.insert(row.end(), table_rows[0][i].begin(), table_rows[0][i].end());
          if (core.from.size() >= 2) {
            row.insert(row.end(), table_rows[1][j].begin(), table_rows[1][j].end());
          }
        } else {
          for (const ExprPtr& p : core.projections) {
            row.push_back(eval_expr(p, scope, mutants_));
          }
        }
        if (core.distinct && !seen.insert(row).second) continue;
        arm_rows.push_back(std::move(row));
      }
    }
    out.rows.insert(out.rows.end(), std::make_move_iterator(arm_rows.begin()),
                    std::make_move_iterator(arm_rows.end()));
  }
  if (s.limit) {
    uint64_t limit = *s.limit;
    if (mutants_.limit_off_by_one && limit > 0) limit -= 1;
    if (out.rows.size() > limit) out.rows.resize(limit);
  }
  return ExecResult{std::move(out), 0};
}

ExecResult Database::run_update(const UpdateStmt& s, Budget& budget) {
  const TableInfo& table = table_or_throw(s.table);
  std::vector<size_t> positions;
  for (const auto& [name, _] : s.assignments) {
    size_t pos = table.columns.size();
    for (size_t i = 0; i < table.columns.size(); ++i) {
      if (table.columns[i].name == name) pos = i;
    }
    if (pos == table.columns.size()) {
      throw UserError(UserErrorCode::UnknownColumn,
                      "no such column: " + s.table + "." + name);
    }
    positions.push_back(pos);
  }
  WhereMode mode = classify_where(s.where, mutants_);
  if (mode == WhereMode::DropAll) return ExecResult{std::nullopt, 0};

  std::vector<Row> rows = pager_->read_table_rows(table);
  std::vector<std::string> names = column_names(table);
  uint64_t affected = 0;
  for (size_t i = 0; i < rows.size();) {
    budget.step();
    RowScope scope;
    scope.add_table(table.name, names, &rows[i]);
    if (mode == WhereMode::PerRow &&
        truthiness(eval_expr(s.where, scope, mutants_)) != Truth::True) {
      ++i;
      continue;
    }
    // All assignments read the pre-update row.
    Row updated = rows[i];
    for (size_t a = 0; a < s.assignments.size(); ++a) {
      Value v = eval_expr(s.assignments[a].second, scope, mutants_);
      const ColumnDef& col = table.columns[positions[a]];
      if (!value_fits_column(v, col.type)) {
        throw UserError(UserErrorCode::TypeMismatch,
                        "value " + v.sql_literal() + " does not fit " +
                            value_type_name(col.type) + " column " + col.name);
      }
      updated[positions[a]] = v;
    }
    if (Pager::record_size(updated) > Pager::max_record_size) {
      throw UserError(UserErrorCode::RowTooLarge, "row does not fit in a page");
    }
    bool identity = compare_rows(updated, rows[i]) == 0;
    rows[i] = std::move(updated);
    ++affected;
    if (mutants_.update_cursor_sticks && identity) {
      continue;  // cursor fails to advance past a no-op update
    }
    ++i;
  }
  if (affected > 0) pager_->commit_table_rows(s.table, rows);
  return ExecResult{std::nullopt, affected};
}

ExecResult Database::run_delete(const DeleteStmt& s, Budget& budget) {
  const TableInfo& table = table_or_throw(s.table);
  ExprPtr where = s.where;
  if (where && expr_is_constant(where) && mutants_.delete_skips_const_where) {
    where = nullptr;  // the constant term is dropped instead of compiled
  }
  if (!where) {
    uint64_t affected = table.row_count;
    if (affected > 0) pager_->commit_table_rows(s.table, {});
    return ExecResult{std::nullopt, affected};
  }
  if (expr_is_constant(where)) {
    RowScope empty;
    if (truthiness(eval_expr(where, empty, mutants_)) != Truth::True) {
      return ExecResult{std::nullopt, 0};
    }
    uint64_t affected = table.row_count;
    if (affected > 0) pager_->commit_table_rows(s.table, {});
    return ExecResult{std::nullopt, affected};
  }
  std::vector<Row> rows = pager_->read_table_rows(table);
  std::vector<std::string> names = column_names(table);
  std::vector<Row> kept;
  kept.reserve(rows.size());
  for (Row& row : rows) {
    budget.step();
    RowScope scope;
    scope.add_table(table.name, names, &row);
    if (truthiness(eval_expr(where, scope, mutants_)) == Truth::True) continue;
    kept.push_back(std::move(row));
  }
  uint64_t affected = rows.size() - kept.size();
  if (affected > 0) pager_->commit_table_rows(s.table, kept);
  return ExecResult{std::nullopt, affected};
}

}  // namespace wdb
