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

#include "wdb/oracles.hpp"

#include <sstream>

#include "wdb/error.hpp"

namespace wdb {

namespace {

using gen::ExprScope;

std::vector<std::string> table_names(const ShadowState& shadow) {
  std::vector<std::string> names;
  for (const auto& [name, _] : shadow.tables()) names.push_back(name);
  return names;
}

std::vector<std::string> nonempty_table_names(const ShadowState& shadow) {
  std::vector<std::string> names;
  for (const auto& [name, t] : shadow.tables()) {
    if (!t.rows.empty()) names.push_back(name);
  }
  return names;
}

void seed_pool_from_row(GenContext& ctx, const Row& row) {
  ctx.value_pool.clear();
  for (const Value& v : row) {
    if (!v.is_null()) ctx.value_pool.push_back(v);
  }
}

SelectStmt star_where(const std::string& table, ExprPtr where) {
  SelectStmt s;
  SelectCore core;
  core.star = true;
  core.from = {table};
  core.where = std::move(where);
  s.arms.push_back(std::move(core));
  return s;
}

ExprPtr paren(ExprPtr e) { return Expr::paren(std::move(e)); }

}  // namespace

PropertyPlan pqs_plan(const ShadowState& shadow, GenContext& ctx) {
  PlanBuilder b("pqs", ctx);
  std::vector<std::string> names = table_names(shadow);
  auto t1 = gen::pick(names, ctx);
  auto t2 = gen::pick(names, ctx);
  if (!t1 || !t2) return std::move(b).vacuous("no tables to pick from");

  const auto& schema1 = shadow.table(*t1).schema;
  const auto& schema2 = shadow.table(*t2).schema;
  size_t c1 = ctx.rng().below(schema1.size());
  size_t c2 = ctx.rng().below(schema2.size());
  Row r1 = gen::gen_row(schema1, ctx);
  Row r2 = gen::gen_row(schema2, ctx);

  InsertStmt ins1{*t1, {}, {r1}};
  InsertStmt ins2{*t2, {}, {r2}};

  if (*t1 == *t2) {
    // Same pick twice: a self cross product would make every reference
    // ambiguous, so the property degenerates to the single-table form with
    // r1 as the pivot for both predicates.
    b.note("pqs pivot on " + *t1 + "." + schema1[c1].name + " and ." +
           schema2[c2].name + " (single table)");
    b.interact(Statement{ins1});
    b.interact(Statement{ins2});
    seed_pool_from_row(ctx, r1);
    ExprPtr p1 = gen::gen_pivot_true_expr(*t1, schema1, r1, ctx);
    ExprPtr p2 = gen::gen_pivot_true_expr(*t1, schema1, r1, ctx);
    SelectStmt sel;
    SelectCore core;
    core.projections = {Expr::column(schema1[c1].name),
                        Expr::column(schema1[c2].name)};
    core.from = {*t1};
    core.where = Expr::binary(BinaryOp::And, paren(p1), paren(p2));
    sel.arms.push_back(std::move(core));
    int rs = b.interact_select(Statement{sel});
    b.assert_row_in(rs, Row{r1[c1], r1[c2]});
    return std::move(b).build();
  }

  b.note("pqs pivot on " + *t1 + "." + schema1[c1].name + " x " + *t2 + "." +
         schema2[c2].name);
  b.interact(Statement{ins1});
  b.interact(Statement{ins2});
  seed_pool_from_row(ctx, r1);
  ExprPtr p1 = gen::gen_pivot_true_expr(*t1, schema1, r1, ctx, /*qualify=*/true);
  seed_pool_from_row(ctx, r2);
  ExprPtr p2 = gen::gen_pivot_true_expr(*t2, schema2, r2, ctx, /*qualify=*/true);
  SelectStmt sel;
  SelectCore core;
  core.projections = {Expr::column(*t1, schema1[c1].name),
                      Expr::column(*t2, schema2[c2].name)};
  core.from = {*t1, *t2};
  core.where = Expr::binary(BinaryOp::And, paren(p1), paren(p2));
  sel.arms.push_back(std::move(core));
  int rs = b.interact_select(Statement{sel});
  b.assert_row_in(rs, Row{r1[c1], r2[c2]});
  return std::move(b).build();
}

PropertyPlan norec_plan(const ShadowState& shadow, GenContext& ctx) {
  PlanBuilder b("norec", ctx);
  std::vector<std::string> names = nonempty_table_names(shadow);
  auto t = gen::pick(names, ctx);
  if (!t) return std::move(b).vacuous("no non-empty table");
  const auto& table = shadow.table(*t);
  auto row = gen::pick(table.rows, ctx);
  seed_pool_from_row(ctx, *row);

  ExprScope scope = ExprScope::single(*t, table.schema);
  ExprPtr p = gen::gen_expr(scope, ctx, /*boolean_root=*/true);

  int filtered = b.interact_select(Statement{star_where(*t, p)});

  SelectStmt project;
  SelectCore core;
  core.projections = {paren(p)};
  core.from = {*t};
  project.arms.push_back(std::move(core));
  int projected = b.interact_select(Statement{project});

  b.assert_norec_count(filtered, projected);
  return std::move(b).build();
}

PropertyPlan tlp_where_plan(const ShadowState& shadow, GenContext& ctx) {
  PlanBuilder b("tlp", ctx);
  std::vector<std::string> names = table_names(shadow);
  auto t = gen::pick(names, ctx);
  if (!t) return std::move(b).vacuous("no tables to pick from");
  const auto& table = shadow.table(*t);
  if (!table.rows.empty()) {
    seed_pool_from_row(ctx, table.rows[ctx.rng().below(table.rows.size())]);
  } else {
    ctx.value_pool.clear();
  }

  ExprScope scope = ExprScope::single(*t, table.schema);
  ExprPtr p = gen::gen_expr(scope, ctx, /*boolean_root=*/true);
  ExprPtr part = gen::gen_expr(scope, ctx);

  int whole = b.interact_select(Statement{star_where(*t, p)});

  auto arm = [&](ExprPtr cond) {
    SelectCore core;
    core.star = true;
    core.from = {*t};
    core.where = Expr::binary(BinaryOp::And, paren(p), std::move(cond));
    return core;
  };
  SelectStmt parts;
  parts.arms.push_back(arm(paren(part)));
  parts.arms.push_back(arm(paren(Expr::unary(UnaryOp::Not, paren(part)))));
  parts.arms.push_back(arm(paren(Expr::unary(UnaryOp::IsNull, paren(part)))));
  int partitioned = b.interact_select(Statement{parts});

  b.assert_multiset_eq(whole, partitioned);
  return std::move(b).build();
}

PropertyPlan delete_select_plan(const ShadowState& shadow, GenContext& ctx) {
  PlanBuilder b("delsel", ctx);
  std::vector<std::string> names = nonempty_table_names(shadow);
  auto t = gen::pick(names, ctx);
  if (!t) return std::move(b).vacuous("no non-empty table");
  const auto& table = shadow.table(*t);
  Row pivot = *gen::pick(table.rows, ctx);
  seed_pool_from_row(ctx, pivot);

  // A delete that must not touch the pivot, then the deletion of the pivot
  // itself. Both directions are asserted: the pivot survives the first
  // delete and is gone after the second.
  ExprPtr keep_out = gen::gen_pivot_false_expr(*t, table.schema, pivot, ctx);
  ExprPtr hit = gen::gen_pivot_true_expr(*t, table.schema, pivot, ctx);

  DeleteStmt spare{*t, keep_out};
  b.interact(Statement{spare});
  int after_spare = b.interact_select(Statement{star_where(*t, hit)});
  b.assert_row_in(after_spare, pivot);

  DeleteStmt remove{*t, hit};
  b.interact(Statement{remove});
  int after_remove = b.interact_select(Statement{star_where(*t, hit)});
  b.assert_row_not_in(after_remove, pivot);
  return std::move(b).build();
}

PropertyPlan union_all_plan(const ShadowState& shadow, GenContext& ctx) {
  PlanBuilder b("unionall", ctx);
  if (shadow.tables().empty()) {
    return std::move(b).vacuous("no tables to select from");
  }
  gen::SelectOptions opts;
  opts.allow_limit = false;  // a shared LIMIT would break cardinality addition
  opts.allow_union = false;
  SelectStmt s1 = gen::gen_select(shadow, ctx, opts);
  SelectStmt s2 = gen::gen_select(shadow, ctx, opts);

  int a = b.interact_select(Statement{s1});
  int bb = b.interact_select(Statement{s2});
  b.assume_columns_eq(a, bb);

  SelectStmt compound;
  compound.arms = s1.arms;
  compound.arms.insert(compound.arms.end(), s2.arms.begin(), s2.arms.end());
  int whole = b.interact_select(Statement{compound});
  b.assert_card_sum(a, bb, whole);
  return std::move(b).build();
}

PropertyPlan shadow_diff_plan(const ShadowState& shadow, GenContext& ctx) {
  PlanBuilder b("shadow", ctx);
  b.assert_tables_match();
  if (!shadow.tables().empty()) {
    gen::SelectOptions opts;
    opts.allow_union = true;
    SelectStmt s = gen::gen_select(shadow, ctx, opts);
    int slot = b.interact_select(Statement{s});
    b.assert_result_matches_shadow(slot, s);
  }
  return std::move(b).build();
}

const char* oracle_name(OracleId id) {
  switch (id) {
    case OracleId::Pqs: return "pqs";
    case OracleId::Norec: return "norec";
    case OracleId::Tlp: return "tlp";
    case OracleId::Delsel: return "delsel";
    case OracleId::UnionAll: return "unionall";
    case OracleId::Shadow: return "shadow";
  }
  return "?";
}

std::vector<OracleId> parse_oracles(const std::string& csv) {
  static const OracleId kAll[] = {OracleId::Pqs,    OracleId::Norec,
                                  OracleId::Tlp,    OracleId::Delsel,
                                  OracleId::UnionAll, OracleId::Shadow};
  std::vector<OracleId> out;
  if (csv == "all" || csv.empty()) {
    out.assign(std::begin(kAll), std::end(kAll));
    return out;
  }
  if (csv == "none") return out;
  std::istringstream in(csv);
  std::string name;
  while (std::getline(in, name, ',')) {
    bool found = false;
    for (OracleId id : kAll) {
      if (name == oracle_name(id)) {
        out.push_back(id);
        found = true;
      }
    }
    if (!found) throw ConfigError("unknown oracle: " + name);
  }
  return out;
}

PropertyPlan make_oracle_plan(OracleId id, const ShadowState& shadow,
                              GenContext& ctx) {
  switch (id) {
    case OracleId::Pqs: return pqs_plan(shadow, ctx);
    case OracleId::Norec: return norec_plan(shadow, ctx);
    case OracleId::Tlp: return tlp_where_plan(shadow, ctx);
    case OracleId::Delsel: return delete_select_plan(shadow, ctx);
    case OracleId::UnionAll: return union_all_plan(shadow, ctx);
    case OracleId::Shadow: return shadow_diff_plan(shadow, ctx);
  }
  throw ConfigError("unknown oracle id");
}

std::set<UserErrorCode> parse_expected_errors(const std::string& csv) {
  static const UserErrorCode kCodes[] = {
      UserErrorCode::Syntax,         UserErrorCode::UnknownTable,
      UserErrorCode::UnknownColumn,  UserErrorCode::AmbiguousColumn,
      UserErrorCode::DuplicateTable, UserErrorCode::DuplicateColumn,
      UserErrorCode::ArityMismatch,  UserErrorCode::TypeMismatch,
      UserErrorCode::RowTooLarge,    UserErrorCode::SchemaFull,
      UserErrorCode::BadLiteral,
  };
  std::set<UserErrorCode> out;
  if (csv.empty()) return out;
  std::istringstream in(csv);
  std::string name;
  while (std::getline(in, name, ',')) {
    bool found = false;
    for (UserErrorCode code : kCodes) {
      if (name == user_error_code_name(code)) {
        out.insert(code);
        found = true;
      }
    }
    if (!found) throw ConfigError("unknown error class: " + name);
  }
  return out;
}

}  // namespace wdb
