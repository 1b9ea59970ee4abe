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

#include "wdb/workload.hpp"

#include <sstream>

#include "wdb/error.hpp"

namespace wdb {

void WorkloadDistribution::validate() const {
  if (read < 0 || write < 0 || create < 0 || read + write + create <= 0) {
    throw ConfigError("workload distribution needs non-negative weights with a "
                      "positive sum");
  }
}

WorkloadDistribution WorkloadDistribution::parse(const std::string& text) {
  WorkloadDistribution d;
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  if (!(in >> d.read >> c1 >> d.write >> c2 >> d.create) || c1 != ',' || c2 != ',') {
    throw ConfigError("distribution must be R,W,C: " + text);
  }
  d.validate();
  return d;
}

namespace {

std::vector<std::string> table_names(const ShadowState& shadow) {
  std::vector<std::string> names;
  for (const auto& [name, _] : shadow.tables()) names.push_back(name);
  return names;
}

// Seeds the literal pool with values from a random existing row so
// comparisons and deletes tend to touch real data.
void refresh_pool(const ShadowState& shadow, const std::string& table,
                  GenContext& ctx) {
  ctx.value_pool.clear();
  const auto& t = shadow.table(table);
  if (t.rows.empty()) return;
  const Row& sample = t.rows[ctx.rng().below(t.rows.size())];
  for (const Value& v : sample) {
    if (!v.is_null()) ctx.value_pool.push_back(v);
  }
}

Statement gen_create(const ShadowState& shadow, GenContext& ctx) {
  CreateTableStmt c;
  std::string name = ctx.next_table_name();
  while (shadow.has_table(name)) name = ctx.next_table_name();
  c.table = name;
  size_t ncols = 1 + ctx.rng().below(8);
  static const ValueType kTypes[] = {ValueType::Integer, ValueType::Real,
                                     ValueType::Text, ValueType::Blob};
  for (size_t i = 0; i < ncols; ++i) {
    c.columns.push_back(ColumnDef{"c" + std::to_string(i),
                                  kTypes[ctx.rng().below(4)]});
  }
  return c;
}

Statement gen_insert(const ShadowState& shadow, const std::string& table,
                     GenContext& ctx) {
  const auto& t = shadow.table(table);
  InsertStmt ins;
  ins.table = table;
  size_t nrows = 1 + ctx.rng().below(
                         static_cast<uint64_t>(ctx.limits().max_insert_rows));
  if (ctx.rng().chance(0.2) && t.schema.size() > 1) {
    // Named-column insert over a shuffled subset; missing columns go NULL.
    std::vector<size_t> order(t.schema.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[ctx.rng().below(i)]);
    }
    size_t keep = 1 + ctx.rng().below(order.size());
    order.resize(keep);
    for (size_t i : order) ins.columns.push_back(t.schema[i].name);
    for (size_t r = 0; r < nrows; ++r) {
      Row row;
      for (size_t i : order) {
        row.push_back(ctx.rng().chance(ctx.limits().null_probability)
                          ? Value::null()
                          : gen::gen_value(t.schema[i].type, ctx));
      }
      ins.rows.push_back(std::move(row));
    }
  } else {
    for (size_t r = 0; r < nrows; ++r) {
      ins.rows.push_back(gen::gen_row(t.schema, ctx));
    }
  }
  return ins;
}

// A selective predicate: equality against a value drawn from a live row.
ExprPtr selective_where(const ShadowState& shadow, const std::string& table,
                        GenContext& ctx) {
  const auto& t = shadow.table(table);
  if (t.rows.empty()) return nullptr;
  const Row& sample = t.rows[ctx.rng().below(t.rows.size())];
  size_t col = ctx.rng().below(sample.size());
  if (sample[col].is_null()) {
    return Expr::unary(UnaryOp::IsNull, Expr::column(t.schema[col].name));
  }
  return Expr::binary(BinaryOp::Eq, Expr::column(t.schema[col].name),
                      Expr::literal(sample[col]));
}

Statement gen_update(const ShadowState& shadow, const std::string& table,
                     GenContext& ctx) {
  const auto& t = shadow.table(table);
  UpdateStmt u;
  u.table = table;
  gen::ExprScope scope = gen::ExprScope::single(table, t.schema);
  size_t nassign = 1 + ctx.rng().below(2);
  for (size_t i = 0; i < nassign; ++i) {
    const ColumnDef& col = t.schema[ctx.rng().below(t.schema.size())];
    u.assignments.emplace_back(col.name, gen::gen_typed_expr(col.type, scope, ctx));
  }
  if (ctx.rng().chance(0.85)) {
    if (ctx.rng().chance(0.6)) {
      u.where = selective_where(shadow, table, ctx);
    }
    if (!u.where) u.where = gen::gen_expr(scope, ctx, /*boolean_root=*/true);
  }
  return u;
}

Statement gen_delete(const ShadowState& shadow, const std::string& table,
                     GenContext& ctx) {
  const auto& t = shadow.table(table);
  DeleteStmt d;
  d.table = table;
  if (ctx.rng().chance(0.7)) {
    d.where = selective_where(shadow, table, ctx);
  }
  if (!d.where) {
    gen::ExprScope scope = gen::ExprScope::single(table, t.schema);
    d.where = gen::gen_expr(scope, ctx, /*boolean_root=*/true);
  }
  return d;
}

}  // namespace

Statement gen_workload_statement(const WorkloadDistribution& dist,
                                 const ShadowState& shadow, GenContext& ctx) {
  dist.validate();
  std::vector<std::string> names = table_names(shadow);
  // Goal: every interaction respects database state. An empty database can
  // only satisfy a CREATE.
  if (names.empty()) return gen_create(shadow, ctx);

  double weights[3] = {dist.read, dist.write, dist.create};
  size_t cls = ctx.rng().weighted(weights, 3);
  if (cls == 2) {
    bool at_cap = shadow.tables().size() >= ctx.limits().table_soft_cap;
    bool drop = (at_cap || ctx.rng().chance(0.05)) && names.size() >= 2;
    if (drop) {
      DropTableStmt d;
      d.table = names[ctx.rng().below(names.size())];
      return d;
    }
    return gen_create(shadow, ctx);
  }

  std::string table = names[ctx.rng().below(names.size())];
  refresh_pool(shadow, table, ctx);
  if (cls == 0) {
    gen::SelectOptions opts;
    opts.allow_union = true;
    return Statement{gen::gen_select(shadow, ctx, opts)};
  }
  double w[3] = {0.45, 0.30, 0.25};  // insert, update, delete
  switch (ctx.rng().weighted(w, 3)) {
    case 0: return gen_insert(shadow, table, ctx);
    case 1: return gen_update(shadow, table, ctx);
    default: return gen_delete(shadow, table, ctx);
  }
}

std::vector<Statement> gen_interactions(size_t n, const WorkloadDistribution& dist,
                                        ShadowState& shadow, GenContext& ctx) {
  std::vector<Statement> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Statement s = gen_workload_statement(dist, shadow, ctx);
    shadow.apply(s);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace wdb
