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

#include "wdb/shadow.hpp"

#include <algorithm>
#include <set>

#include "wdb/error.hpp"
#include "wdb/eval.hpp"

namespace wdb {

namespace {

[[noreturn]] void model_fail(const std::string& message) {
  throw ModelError("shadow model: " + message);
}

std::vector<std::string> schema_names(const std::vector<ColumnDef>& schema) {
  std::vector<std::string> names;
  names.reserve(schema.size());
  for (const ColumnDef& c : schema) names.push_back(c.name);
  return names;
}

bool value_fits(const Value& v, ValueType t) {
  return v.is_null() || v.type() == t;
}

// Resolves expression column references against a scope of table schemas so
// validation can reject unknown or ambiguous names before execution.
void check_expr_scope(const ExprPtr& e,
                      const std::vector<std::pair<std::string,
                                                  const std::vector<ColumnDef>*>>& scope) {
  if (!e) return;
  struct V {
    const std::vector<std::pair<std::string, const std::vector<ColumnDef>*>>& scope;
    void recurse(const ExprPtr& e) const { check_expr_scope(e, scope); }
    void operator()(const Expr::ColumnRef& c) const {
      int hits = 0;
      for (const auto& [table, schema] : scope) {
        if (!c.table.empty() && table != c.table) continue;
        for (const ColumnDef& col : *schema) {
          if (col.name == c.column) ++hits;
        }
      }
      if (hits == 0) model_fail("unresolvable column: " + c.column);
      if (hits > 1) model_fail("ambiguous column: " + c.column);
    }
    void operator()(const Expr::Literal&) const {}
    void operator()(const Expr::Unary& u) const { recurse(u.operand); }
    void operator()(const Expr::Binary& b) const {
      recurse(b.lhs);
      recurse(b.rhs);
    }
    void operator()(const Expr::Between& b) const {
      recurse(b.subject);
      recurse(b.lo);
      recurse(b.hi);
    }
    void operator()(const Expr::Paren& p) const { recurse(p.inner); }
  };
  std::visit(V{scope}, e->node);
}

}  // namespace

const ShadowState::Table& ShadowState::table(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) model_fail("no such table: " + name);
  return it->second;
}

void ShadowState::validate(const Statement& s) const {
  struct V {
    const ShadowState& st;
    void operator()(const CreateTableStmt& c) const {
      if (st.has_table(c.table)) model_fail("table already exists: " + c.table);
      if (c.columns.empty()) model_fail("table without columns: " + c.table);
      std::set<std::string> seen;
      for (const ColumnDef& col : c.columns) {
        if (!seen.insert(col.name).second) {
          model_fail("duplicate column: " + col.name);
        }
      }
    }
    void operator()(const DropTableStmt& d) const { st.table(d.table); }
    void operator()(const InsertStmt& ins) const {
      const Table& t = st.table(ins.table);
      std::vector<size_t> positions;
      if (ins.columns.empty()) {
        for (size_t i = 0; i < t.schema.size(); ++i) positions.push_back(i);
      } else {
        std::set<std::string> seen;
        for (const std::string& name : ins.columns) {
          if (!seen.insert(name).second) model_fail("duplicate insert column: " + name);
          bool found = false;
          for (size_t i = 0; i < t.schema.size(); ++i) {
            if (t.schema[i].name == name) {
              positions.push_back(i);
              found = true;
            }
          }
          if (!found) model_fail("unknown insert column: " + name);
        }
      }
      for (const Row& row : ins.rows) {
        if (row.size() != positions.size()) model_fail("insert arity mismatch");
        for (size_t i = 0; i < row.size(); ++i) {
          if (!value_fits(row[i], t.schema[positions[i]].type)) {
            model_fail("insert type mismatch on column " +
                       t.schema[positions[i]].name);
          }
        }
      }
    }
    void operator()(const SelectStmt& sel) const {
      size_t arity = 0;
      bool first = true;
      for (const SelectCore& core : sel.arms) {
        std::vector<std::pair<std::string, const std::vector<ColumnDef>*>> scope;
        size_t width = 0;
        for (const std::string& name : core.from) {
          const Table& t = st.table(name);
          scope.emplace_back(name, &t.schema);
          width += t.schema.size();
        }
        size_t this_arity;
        if (core.star) {
          if (core.from.empty()) model_fail("SELECT * without FROM");
          this_arity = width;
        } else {
          for (const ExprPtr& p : core.projections) check_expr_scope(p, scope);
          this_arity = core.projections.size();
        }
        check_expr_scope(core.where, scope);
        if (first) {
          arity = this_arity;
          first = false;
        } else if (arity != this_arity) {
          model_fail("UNION ALL arity mismatch");
        }
      }
    }
    void operator()(const UpdateStmt& u) const {
      const Table& t = st.table(u.table);
      std::vector<std::pair<std::string, const std::vector<ColumnDef>*>> scope = {
          {u.table, &t.schema}};
      for (const auto& [name, expr] : u.assignments) {
        bool found = false;
        for (const ColumnDef& col : t.schema) {
          if (col.name == name) found = true;
        }
        if (!found) model_fail("unknown update column: " + name);
        check_expr_scope(expr, scope);
      }
      check_expr_scope(u.where, scope);
    }
    void operator()(const DeleteStmt& d) const {
      const Table& t = st.table(d.table);
      std::vector<std::pair<std::string, const std::vector<ColumnDef>*>> scope = {
          {d.table, &t.schema}};
      check_expr_scope(d.where, scope);
    }
  };
  std::visit(V{*this}, s);
}

void ShadowState::apply(const Statement& s) {
  validate(s);
  struct V {
    ShadowState& st;
    void operator()(const CreateTableStmt& c) const {
      Table t;
      t.schema = c.columns;
      st.tables_.emplace(c.table, std::move(t));
      ++st.creates;
    }
    void operator()(const DropTableStmt& d) const {
      st.tables_.erase(d.table);
      ++st.creates;
    }
    void operator()(const InsertStmt& ins) const {
      Table& t = st.tables_[ins.table];
      std::vector<size_t> positions;
      if (ins.columns.empty()) {
        for (size_t i = 0; i < t.schema.size(); ++i) positions.push_back(i);
      } else {
        for (const std::string& name : ins.columns) {
          for (size_t i = 0; i < t.schema.size(); ++i) {
            if (t.schema[i].name == name) positions.push_back(i);
          }
        }
      }
      for (const Row& given : ins.rows) {
        Row full(t.schema.size(), Value::null());
        for (size_t i = 0; i < positions.size(); ++i) full[positions[i]] = given[i];
        t.rows.push_back(std::move(full));
      }
      ++st.writes;
    }
    void operator()(const SelectStmt&) const { ++st.reads; }
    void operator()(const UpdateStmt& u) const {
      Table& t = st.tables_[u.table];
      std::vector<std::string> names = schema_names(t.schema);
      std::vector<size_t> positions;
      for (const auto& [name, _] : u.assignments) {
        for (size_t i = 0; i < t.schema.size(); ++i) {
          if (t.schema[i].name == name) positions.push_back(i);
        }
      }
      for (Row& row : t.rows) {
        RowScope scope;
        scope.add_table(u.table, names, &row);
        if (u.where &&
            truthiness(eval_expr(u.where, scope)) != Truth::True) {
          continue;
        }
        Row updated = row;
        for (size_t a = 0; a < u.assignments.size(); ++a) {
          Value v = eval_expr(u.assignments[a].second, scope);
          if (!value_fits(v, t.schema[positions[a]].type)) {
            model_fail("update type mismatch on column " +
                       t.schema[positions[a]].name);
          }
          updated[positions[a]] = v;
        }
        row = std::move(updated);
      }
      ++st.writes;
    }
    void operator()(const DeleteStmt& d) const {
      Table& t = st.tables_[d.table];
      std::vector<std::string> names = schema_names(t.schema);
      std::vector<Row> kept;
      for (Row& row : t.rows) {
        RowScope scope;
        scope.add_table(d.table, names, &row);
        if (d.where &&
            truthiness(eval_expr(d.where, scope)) != Truth::True) {
          kept.push_back(std::move(row));
        }
      }
      if (!d.where) kept.clear();
      t.rows = std::move(kept);
      ++st.writes;
    }
  };
  std::visit(V{*this}, s);
}

ResultSet ShadowState::query(const SelectStmt& s) const {
  validate(Statement{s});
  ResultSet out;
  bool first = true;
  for (const SelectCore& core : s.arms) {
    std::vector<const Table*> tables;
    std::vector<std::vector<std::string>> names;
    for (const std::string& name : core.from) {
      const Table& t = table(name);
      tables.push_back(&t);
      names.push_back(schema_names(t.schema));
    }
    if (first) {
      if (core.star) {
        for (size_t k = 0; k < tables.size(); ++k) {
          for (const std::string& n : names[k]) out.columns.push_back(n);
        }
      } else {
        for (const ExprPtr& p : core.projections) {
          out.columns.push_back(print_expr(p));
        }
      }
      first = false;
    }
    std::set<std::vector<Value>, bool (*)(const Row&, const Row&)> seen(
        [](const Row& a, const Row& b) { return compare_rows(a, b) < 0; });
    size_t outer = core.from.size() >= 1 ? tables[0]->rows.size() : 1;
    size_t inner = core.from.size() >= 2 ? tables[1]->rows.size() : 1;
    for (size_t i = 0; i < outer; ++i) {
      for (size_t j = 0; j < inner; ++j) {
        RowScope scope;
        if (core.from.size() >= 1) {
          scope.add_table(core.from[0], names[0], &tables[0]->rows[i]);
        }
        if (core.from.size() >= 2) {
          scope.add_table(core.from[1], names[1], &tables[1]->rows[j]);
        }
        if (core.where &&
            truthiness(eval_expr(core.where, scope)) != Truth::True) {
          continue;
        }
        Row row;
        if (core.star) {
          row.insert(row.end(), tables[0]->rows[i].begin(), tables[0]->rows[i].end());
          if (core.from.size() >= 2) {
            row.insert(row.end(), tables[1]->rows[j].begin(),
                       tables[1]->rows[j].end());
          }
        } else {
          for (const ExprPtr& p : core.projections) {
            row.push_back(eval_expr(p, scope));
          }
        }
        if (core.distinct && !seen.insert(row).second) continue;
        out.rows.push_back(std::move(row));
      }
    }
  }
  if (s.limit && out.rows.size() > *s.limit) out.rows.resize(*s.limit);
  return out;
}

std::string ShadowState::dump() const {
  std::string out;
  out += "reads=" + std::to_string(reads) + " writes=" + std::to_string(writes) +
         " creates=" + std::to_string(creates) + "\n";
  for (const auto& [name, t] : tables_) {
    out += "table " + name + " (";
    for (size_t i = 0; i < t.schema.size(); ++i) {
      if (i) out += ", ";
      out += t.schema[i].name;
      out += ' ';
      out += value_type_name(t.schema[i].type);
    }
    out += ")\n";
    std::vector<Row> sorted = t.rows;
    std::sort(sorted.begin(), sorted.end(),
              [](const Row& a, const Row& b) { return compare_rows(a, b) < 0; });
    for (const Row& row : sorted) {
      out += "  (";
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ", ";
        out += row[i].sql_literal();
      }
      out += ")\n";
    }
  }
  return out;
}

std::string describe(const Discrepancy& d) {
  const char* kind = "?";
  switch (d.kind) {
    case Discrepancy::Kind::MissingTable: kind = "missing-table"; break;
    case Discrepancy::Kind::ExtraTable: kind = "extra-table"; break;
    case Discrepancy::Kind::SchemaMismatch: kind = "schema-mismatch"; break;
    case Discrepancy::Kind::RowsDiffer: kind = "rows-differ"; break;
    case Discrepancy::Kind::EngineFailure: kind = "engine-failure"; break;
  }
  return std::string(kind) + " " + d.table + ": " + d.detail;
}

std::vector<Discrepancy> shadow_diff(const ShadowState& shadow, Database& db) {
  std::vector<Discrepancy> out;
  const auto& engine_tables = db.catalog();
  for (const TableInfo& t : engine_tables) {
    if (!shadow.has_table(t.name)) {
      out.push_back({Discrepancy::Kind::ExtraTable, t.name,
                     "present in the engine but not in the shadow"});
    }
  }
  for (const auto& [name, st] : shadow.tables()) {
    const TableInfo* et = nullptr;
    for (const TableInfo& t : engine_tables) {
      if (t.name == name) et = &t;
    }
    if (et == nullptr) {
      out.push_back({Discrepancy::Kind::MissingTable, name,
                     "present in the shadow but not in the engine"});
      continue;
    }
    bool schema_ok = et->columns.size() == st.schema.size();
    for (size_t i = 0; schema_ok && i < st.schema.size(); ++i) {
      schema_ok = et->columns[i].name == st.schema[i].name &&
                  et->columns[i].type == st.schema[i].type;
    }
    if (!schema_ok) {
      out.push_back({Discrepancy::Kind::SchemaMismatch, name,
                     "column definitions differ"});
      continue;
    }
    SelectStmt all;
    SelectCore core;
    core.star = true;
    core.from = {name};
    all.arms.push_back(std::move(core));
    try {
      ExecResult r = db.execute(Statement{all});
      if (!same_multiset(r.result->rows, st.rows)) {
        out.push_back({Discrepancy::Kind::RowsDiffer, name,
                       "engine has " + std::to_string(r.result->rows.size()) +
                           " rows, shadow has " + std::to_string(st.rows.size())});
      }
    } catch (const UserError& e) {
      out.push_back({Discrepancy::Kind::EngineFailure, name, e.what()});
    }
  }
  return out;
}

}  // namespace wdb
