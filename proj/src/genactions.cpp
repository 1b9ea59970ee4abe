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

#include "wdb/genactions.hpp"

#include <algorithm>

#include "wdb/error.hpp"
#include "wdb/eval.hpp"
#include "wdb/parser.hpp"

namespace wdb {

namespace gen {

ExprScope ExprScope::single(const std::string& table,
                            const std::vector<ColumnDef>& schema) {
  ExprScope s;
  s.entries.push_back(Entry{table, &schema});
  return s;
}

namespace {

const char kTextAlphabet[] = "abcdefgxyzABC012_%";

std::string gen_text(GenContext& ctx) {
  size_t len = ctx.rng().below(9);
  std::string s;
  for (size_t i = 0; i < len; ++i) {
    s += kTextAlphabet[ctx.rng().below(sizeof(kTextAlphabet) - 1)];
  }
  return s;
}

}  // namespace

Value gen_value(ValueType type, GenContext& ctx) {
  Rng& rng = ctx.rng();
  switch (type) {
    case ValueType::Null:
      return Value::null();
    case ValueType::Integer:
      if (rng.chance(0.1)) {
        return Value::integer(rng.range(-4, 4) * (int64_t{1} << 40));
      }
      return Value::integer(rng.range(-3, 12));
    case ValueType::Real: {
      static const double kPool[] = {0.0, 1.0, -1.0, 0.5, -2.5, 3.25, 100.0};
      if (rng.chance(0.6)) return Value::real(kPool[rng.below(7)]);
      return Value::real(static_cast<double>(rng.range(-400, 400)) / 8.0);
    }
    case ValueType::Text:
      return Value::text(gen_text(ctx));
    case ValueType::Blob: {
      size_t len = rng.below(6);
      std::vector<uint8_t> bytes;
      for (size_t i = 0; i < len; ++i) {
        bytes.push_back(static_cast<uint8_t>(rng.below(256)));
      }
      return Value::blob(std::move(bytes));
    }
  }
  return Value::null();
}

Row gen_row(const std::vector<ColumnDef>& schema, GenContext& ctx) {
  Row row;
  row.reserve(schema.size());
  for (const ColumnDef& c : schema) {
    if (ctx.rng().chance(ctx.limits().null_probability)) {
      row.push_back(Value::null());
    } else {
      row.push_back(gen_value(c.type, ctx));
    }
  }
  return row;
}

namespace {

struct ExprGen {
  const ExprScope& scope;
  GenContext& ctx;

  bool has_columns() const {
    for (const auto& e : scope.entries) {
      if (!e.schema->empty()) return true;
    }
    return false;
  }

  ExprPtr column_ref() const {
    size_t total = 0;
    for (const auto& e : scope.entries) total += e.schema->size();
    size_t k = ctx.rng().below(total);
    for (const auto& e : scope.entries) {
      if (k < e.schema->size()) {
        const std::string& col = (*e.schema)[k].name;
        // Qualify whenever the reference could otherwise be ambiguous.
        if (scope.entries.size() > 1 || scope.qualify_all) {
          return Expr::column(e.table, col);
        }
        return Expr::column(col);
      }
      k -= e.schema->size();
    }
    return Expr::column(scope.entries.front().table,
                        scope.entries.front().schema->front().name);
  }

  ExprPtr literal() const {
    Rng& rng = ctx.rng();
    if (!ctx.value_pool.empty() && rng.chance(0.5)) {
      return Expr::literal(ctx.value_pool[rng.below(ctx.value_pool.size())]);
    }
    if (rng.chance(0.08)) return Expr::literal(Value::null());
    static const ValueType kTypes[] = {ValueType::Integer, ValueType::Real,
                                       ValueType::Text, ValueType::Blob};
    double w[4] = {0.45, 0.2, 0.3, 0.05};
    return Expr::literal(gen_value(kTypes[rng.weighted(w, 4)], ctx));
  }

  ExprPtr leaf(bool boolean) const {
    Rng& rng = ctx.rng();
    if (boolean) {
      // TRUE/FALSE keywords keep constant predicates in the stream.
      return Expr::literal(Value::integer(rng.chance(0.5) ? 1 : 0), true);
    }
    if (has_columns() && rng.chance(0.6)) return column_ref();
    return literal();
  }

  // Children of composite nodes are parenthesized whenever they are not
  // atomic, so structural printing is unambiguous by construction.
  static ExprPtr wrap(ExprPtr e) {
    if (std::holds_alternative<Expr::ColumnRef>(e->node) ||
        std::holds_alternative<Expr::Literal>(e->node) ||
        std::holds_alternative<Expr::Paren>(e->node)) {
      return e;
    }
    return Expr::paren(std::move(e));
  }

  ExprPtr like_pattern() const {
    Rng& rng = ctx.rng();
    if (rng.chance(0.25)) return gen(0, false);  // non-text operand
    std::string p = gen_text(ctx);
    if (!ctx.value_pool.empty() && rng.chance(0.4)) {
      // prefix of a real value, with a wildcard tail
      std::string base = ctx.value_pool[rng.below(ctx.value_pool.size())].render_text();
      p = base.substr(0, rng.below(base.size() + 1));
    }
    if (rng.chance(0.7)) p += '%';
    return Expr::literal(Value::text(p));
  }

  ExprPtr gen(int depth, bool boolean) const {
    Rng& rng = ctx.rng();
    if (depth >= ctx.limits().max_expr_depth ||
        (depth > 0 && rng.chance(0.3))) {
      return leaf(boolean);
    }
    // production weights: cmp, and, or, not, isnull, isnotnull, between,
    // like, boolean-keyword, leaf
    double w[10] = {0.26, 0.14, 0.10, 0.08, 0.06, 0.04, 0.07, 0.08, 0.05, 0.12};
    if (boolean) w[9] = 0.0;  // a bare leaf may not be boolean-valued
    switch (rng.weighted(w, 10)) {
      case 0: {
        static const BinaryOp kCmp[] = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt,
                                        BinaryOp::Le, BinaryOp::Gt, BinaryOp::Ge};
        return Expr::binary(kCmp[rng.below(6)], wrap(gen(depth + 1, false)),
                            wrap(gen(depth + 1, false)));
      }
      case 1:
        return Expr::binary(BinaryOp::And, wrap(gen(depth + 1, false)),
                            wrap(gen(depth + 1, false)));
      case 2:
        return Expr::binary(BinaryOp::Or, wrap(gen(depth + 1, false)),
                            wrap(gen(depth + 1, false)));
      case 3:
        return Expr::unary(UnaryOp::Not, wrap(gen(depth + 1, false)));
      case 4:
        return Expr::unary(UnaryOp::IsNull, wrap(gen(depth + 1, false)));
      case 5:
        return Expr::unary(UnaryOp::IsNotNull, wrap(gen(depth + 1, false)));
      case 6:
        return Expr::between(wrap(gen(depth + 1, false)),
                             wrap(gen(depth + 1, false)),
                             wrap(gen(depth + 1, false)));
      case 7:
        return Expr::binary(BinaryOp::Like, wrap(gen(depth + 1, false)),
                            wrap(like_pattern()));
      case 8:
        return Expr::literal(Value::integer(rng.chance(0.5) ? 1 : 0), true);
      default:
        return leaf(boolean);
    }
  }
};

}  // namespace

ExprPtr gen_expr(const ExprScope& scope, GenContext& ctx, bool boolean_root) {
  return ExprGen{scope, ctx}.gen(0, boolean_root);
}

ExprPtr gen_typed_expr(ValueType type, const ExprScope& scope, GenContext& ctx) {
  Rng& rng = ctx.rng();
  if (rng.chance(0.08)) return Expr::literal(Value::null());
  // A column of the right type keeps identity updates in the stream.
  std::vector<ExprPtr> columns;
  for (const auto& e : scope.entries) {
    for (const ColumnDef& c : *e.schema) {
      if (c.type != type) continue;
      columns.push_back(scope.entries.size() > 1 ? Expr::column(e.table, c.name)
                                                 : Expr::column(c.name));
    }
  }
  if (!columns.empty() && rng.chance(0.35)) {
    return columns[rng.below(columns.size())];
  }
  if (type == ValueType::Integer && rng.chance(0.3)) {
    // Boolean expressions are INTEGER-valued (or NULL), so any predicate fits.
    return gen_expr(scope, ctx, /*boolean_root=*/true);
  }
  return Expr::literal(gen_value(type, ctx));
}

namespace {

// Reference evaluation of an expression against one pivot row.
Value eval_on_pivot(const ExprPtr& e, const std::string& table,
                    const std::vector<ColumnDef>& schema, const Row& pivot) {
  std::vector<std::string> names;
  for (const ColumnDef& c : schema) names.push_back(c.name);
  RowScope scope;
  scope.add_table(table, names, &pivot);
  return eval_expr(e, scope);
}

}  // namespace

ExprPtr rectify_true(ExprPtr candidate, const std::string& table,
                     const std::vector<ColumnDef>& schema, const Row& pivot_row) {
  Value v = eval_on_pivot(candidate, table, schema, pivot_row);
  if (v.is_null()) {
    return Expr::unary(UnaryOp::IsNull, ExprGen::wrap(std::move(candidate)));
  }
  if (v.type() == ValueType::Integer && v.as_integer() == 1) return candidate;
  return Expr::unary(UnaryOp::Not, ExprGen::wrap(std::move(candidate)));
}

ExprPtr rectify_false(ExprPtr candidate, const std::string& table,
                      const std::vector<ColumnDef>& schema, const Row& pivot_row) {
  Value v = eval_on_pivot(candidate, table, schema, pivot_row);
  if (v.is_null()) {
    return Expr::unary(UnaryOp::IsNotNull, ExprGen::wrap(std::move(candidate)));
  }
  if (v.type() == ValueType::Integer && v.as_integer() == 0) return candidate;
  return Expr::unary(UnaryOp::Not, ExprGen::wrap(std::move(candidate)));
}

ExprPtr gen_pivot_true_expr(const std::string& table,
                            const std::vector<ColumnDef>& schema,
                            const Row& pivot_row, GenContext& ctx, bool qualify) {
  ExprScope scope = ExprScope::single(table, schema);
  scope.qualify_all = qualify;
  return rectify_true(gen_expr(scope, ctx, /*boolean_root=*/true), table,
                      schema, pivot_row);
}

ExprPtr gen_pivot_false_expr(const std::string& table,
                             const std::vector<ColumnDef>& schema,
                             const Row& pivot_row, GenContext& ctx, bool qualify) {
  ExprScope scope = ExprScope::single(table, schema);
  scope.qualify_all = qualify;
  return rectify_false(gen_expr(scope, ctx, /*boolean_root=*/true), table,
                       schema, pivot_row);
}

SelectStmt gen_select(const ShadowState& shadow, GenContext& ctx,
                      const SelectOptions& options) {
  Rng& rng = ctx.rng();
  std::vector<std::string> names;
  for (const auto& [name, _] : shadow.tables()) names.push_back(name);
  engine_check(!names.empty(), "gen_select needs at least one table");

  SelectStmt out;
  size_t arm_count = options.allow_union && rng.chance(0.15) ? 2 : 1;
  for (size_t a = 0; a < arm_count; ++a) {
    SelectCore core;
    core.from.push_back(names[rng.below(names.size())]);
    if (options.allow_cross && names.size() >= 2 && rng.chance(0.12)) {
      std::string second = names[rng.below(names.size())];
      if (second != core.from[0]) core.from.push_back(second);
    }
    gen::ExprScope scope;
    for (const std::string& t : core.from) {
      scope.entries.push_back({t, &shadow.table(t).schema});
    }
    if (rng.chance(0.5)) {
      core.star = true;
    } else {
      size_t nproj = 1 + rng.below(3);
      for (size_t i = 0; i < nproj; ++i) {
        core.projections.push_back(gen_expr(scope, ctx));
      }
    }
    if (rng.chance(0.8)) core.where = gen_expr(scope, ctx, /*boolean_root=*/true);
    if (options.allow_distinct && rng.chance(0.15)) core.distinct = true;
    out.arms.push_back(std::move(core));
  }
  // A compound whose arms disagree in width is rejected by the engine; the
  // generator only emits matching arms and leaves mismatches to the
  // union-all property's assume clause.
  if (out.arms.size() == 2) {
    auto width = [&](const SelectCore& c) {
      if (!c.star) return c.projections.size();
      size_t w = 0;
      for (const std::string& t : c.from) w += shadow.table(t).schema.size();
      return w;
    };
    if (width(out.arms[0]) != width(out.arms[1])) out.arms.resize(1);
  }
  if (options.allow_limit && rng.chance(0.25)) {
    out.limit = rng.below(20);
  }
  return out;
}

}  // namespace gen

// --- PlanBuilder ---

void PlanBuilder::note(std::string text) {
  plan_.steps.push_back(Interaction::note(std::move(text)));
}

void PlanBuilder::interact(const Statement& s) {
  plan_.steps.push_back(Interaction::statement(print_statement(s)));
}

int PlanBuilder::interact_select(const Statement& s) {
  int slot = ctx_.next_slot();
  plan_.steps.push_back(Interaction::statement(print_statement(s), slot));
  return slot;
}

void PlanBuilder::reopen() { plan_.steps.push_back(Interaction::reopen()); }

void PlanBuilder::assume_columns_eq(int slot_a, int slot_b) {
  AssumeData a;
  a.kind = AssumeData::Kind::ColumnsEq;
  a.slot_a = slot_a;
  a.slot_b = slot_b;
  plan_.steps.push_back(Interaction::assumption(a));
}

void PlanBuilder::assert_row_in(int slot, Row row) {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::RowIn;
  a.slot_a = slot;
  a.row = std::move(row);
  plan_.steps.push_back(Interaction::assertion(std::move(a)));
}

void PlanBuilder::assert_row_not_in(int slot, Row row) {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::RowNotIn;
  a.slot_a = slot;
  a.row = std::move(row);
  plan_.steps.push_back(Interaction::assertion(std::move(a)));
}

void PlanBuilder::assert_multiset_eq(int slot_a, int slot_b) {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::MultisetEq;
  a.slot_a = slot_a;
  a.slot_b = slot_b;
  plan_.steps.push_back(Interaction::assertion(a));
}

void PlanBuilder::assert_card_sum(int slot_a, int slot_b, int slot_whole) {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::CardSum;
  a.slot_a = slot_a;
  a.slot_b = slot_b;
  a.slot_c = slot_whole;
  plan_.steps.push_back(Interaction::assertion(a));
}

void PlanBuilder::assert_norec_count(int filtered_slot, int projected_slot) {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::NorecCount;
  a.slot_a = filtered_slot;
  a.slot_b = projected_slot;
  plan_.steps.push_back(Interaction::assertion(a));
}

void PlanBuilder::assert_tables_match() {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::TablesMatch;
  plan_.steps.push_back(Interaction::assertion(a));
}

void PlanBuilder::assert_result_matches_shadow(int slot, const SelectStmt& select) {
  AssertData a;
  a.oracle = plan_.name;
  a.kind = AssertData::Kind::ResultMatchesShadow;
  a.slot_a = slot;
  a.select_sql = print_statement(Statement{select});
  plan_.steps.push_back(Interaction::assertion(std::move(a)));
}

PropertyPlan PlanBuilder::vacuous(const std::string& reason) && {
  plan_.vacuous = true;
  plan_.vacuous_reason = reason;
  plan_.steps.clear();
  return std::move(plan_);
}

PropertyPlan PlanBuilder::build() && { return std::move(plan_); }

// --- Execution ---

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Pass: return "pass";
    case VerdictKind::Vacuous: return "vacuous";
    case VerdictKind::Fail: return "fail";
    case VerdictKind::EngineCrash: return "engine-crash";
    case VerdictKind::Timeout: return "timeout";
  }
  return "?";
}

InteractionRunner::InteractionRunner(Database& db, ShadowState& shadow,
                                     RunOptions options)
    : db_(db), shadow_(shadow), options_(std::move(options)) {}

StepOutcome InteractionRunner::run_sql(const Interaction& i) {
  db_.set_step_limit(options_.step_limit);
  if (options_.timeout_ms > 0) {
    db_.set_deadline(std::chrono::steady_clock::now() +
                     std::chrono::milliseconds(options_.timeout_ms));
  } else {
    db_.set_deadline(std::nullopt);
  }
  Statement parsed;
  bool have_parsed = false;
  try {
    parsed = parse_statement(i.sql, db_.mutants());
    have_parsed = true;
    ExecResult r = db_.execute(parsed);
    if (i.slot >= 0) {
      engine_check(r.result.has_value(), "slot capture on a non-SELECT");
      slots_[i.slot] = *r.result;
    }
  } catch (const UserError& e) {
    StepOutcome o;
    o.kind = options_.expected_errors.count(e.code())
                 ? StepOutcome::Kind::ExpectedError
                 : StepOutcome::Kind::UnexpectedError;
    o.detail = std::string(user_error_code_name(e.code())) + ": " + e.what();
    return o;
  } catch (const InternalInvariantViolation& e) {
    return {StepOutcome::Kind::EngineCrash, e.what(), "", ""};
  } catch (const TimeoutError& e) {
    return {StepOutcome::Kind::Timeout, e.what(), "", ""};
  } catch (const IoError& e) {
    return {StepOutcome::Kind::FaultHit, e.what(), "", ""};
  }
  // The engine accepted the statement; mirror it in the shadow. A ModelError
  // here is a harness defect and propagates.
  (void)have_parsed;
  shadow_.apply(parsed);
  return {};
}

StepOutcome InteractionRunner::run_assert(const AssertData& a) {
  auto slot_rows = [&](int slot) -> const ResultSet& {
    auto it = slots_.find(slot);
    if (it == slots_.end()) {
      throw ModelError("assertion references missing slot #" + std::to_string(slot));
    }
    return it->second;
  };
  auto fail = [&](const std::string& detail) {
    StepOutcome o;
    o.kind = StepOutcome::Kind::AssertFailed;
    o.assertion = a.summary();
    o.detail = detail;
    o.oracle_hint = a.oracle;
    return o;
  };
  try {
    switch (a.kind) {
      case AssertData::Kind::RowIn:
      case AssertData::Kind::RowNotIn: {
        const ResultSet& rs = slot_rows(a.slot_a);
        bool found = false;
        for (const Row& r : rs.rows) {
          if (compare_rows(r, a.row) == 0) found = true;
        }
        if (a.kind == AssertData::Kind::RowIn && !found) {
          return fail("expected row missing from the result");
        }
        if (a.kind == AssertData::Kind::RowNotIn && found) {
          return fail("deleted row still present in the result");
        }
        return {};
      }
      case AssertData::Kind::MultisetEq: {
        const ResultSet& x = slot_rows(a.slot_a);
        const ResultSet& y = slot_rows(a.slot_b);
        if (!same_multiset(x.rows, y.rows)) {
          return fail("result multisets differ: " + std::to_string(x.rows.size()) +
                      " vs " + std::to_string(y.rows.size()) + " rows");
        }
        return {};
      }
      case AssertData::Kind::CardSum: {
        size_t lhs = slot_rows(a.slot_a).rows.size() +
                     slot_rows(a.slot_b).rows.size();
        size_t rhs = slot_rows(a.slot_c).rows.size();
        if (lhs != rhs) {
          return fail("cardinalities differ: " + std::to_string(lhs) + " vs " +
                      std::to_string(rhs));
        }
        return {};
      }
      case AssertData::Kind::NorecCount: {
        const ResultSet& filtered = slot_rows(a.slot_a);
        const ResultSet& projected = slot_rows(a.slot_b);
        size_t ones = 0;
        for (const Row& r : projected.rows) {
          if (r.size() == 1 && r[0].type() == ValueType::Integer &&
              r[0].as_integer() == 1) {
            ++ones;
          }
        }
        if (filtered.rows.size() != ones) {
          return fail("filtered row count " + std::to_string(filtered.rows.size()) +
                      " != predicate true-count " + std::to_string(ones));
        }
        return {};
      }
      case AssertData::Kind::TablesMatch: {
        std::vector<Discrepancy> diff = shadow_diff(shadow_, db_);
        if (!diff.empty()) {
          return fail("shadow and database diverge: " + describe(diff.front()) +
                      (diff.size() > 1
                           ? " (+" + std::to_string(diff.size() - 1) + " more)"
                           : ""));
        }
        return {};
      }
      case AssertData::Kind::ResultMatchesShadow: {
        const ResultSet& got = slot_rows(a.slot_a);
        Statement sel = parse_statement(a.select_sql);
        const SelectStmt& select = std::get<SelectStmt>(sel);
        ResultSet want = shadow_.query(select);
        if (select.limit) {
          // Row identity under LIMIT is an engine implementation detail;
          // only the cardinality is checked.
          if (got.rows.size() != want.rows.size()) {
            return fail("LIMIT cardinality differs: engine " +
                        std::to_string(got.rows.size()) + ", shadow " +
                        std::to_string(want.rows.size()));
          }
        } else if (!same_multiset(got.rows, want.rows)) {
          return fail("engine result differs from shadow evaluation");
        }
        return {};
      }
    }
  } catch (const IoError& e) {
    return {StepOutcome::Kind::FaultHit, e.what(), "", ""};
  } catch (const InternalInvariantViolation& e) {
    return {StepOutcome::Kind::EngineCrash, e.what(), "", ""};
  } catch (const TimeoutError& e) {
    return {StepOutcome::Kind::Timeout, e.what(), "", ""};
  }
  return {};
}

StepOutcome InteractionRunner::step(const Interaction& i) {
  switch (i.kind) {
    case Interaction::Kind::Comment:
      return {};
    case Interaction::Kind::Sql:
      return run_sql(i);
    case Interaction::Kind::Reopen:
      try {
        db_.reopen();
      } catch (const IoError& e) {
        return {StepOutcome::Kind::FaultHit, e.what(), "", ""};
      }
      return {};
    case Interaction::Kind::Assume: {
      auto a = slots_.find(i.assume.slot_a);
      auto b = slots_.find(i.assume.slot_b);
      if (a == slots_.end() || b == slots_.end()) {
        throw ModelError("assumption references a missing slot");
      }
      if (a->second.columns.size() != b->second.columns.size()) {
        return {StepOutcome::Kind::AssumeFailed, "result arities differ", "", ""};
      }
      return {};
    }
    case Interaction::Kind::Assert:
      return run_assert(i.check);
  }
  return {};
}

std::string classify_failure(const StepOutcome& outcome,
                             const std::string& plan_name) {
  switch (outcome.kind) {
    case StepOutcome::Kind::EngineCrash: return "no-panic";
    case StepOutcome::Kind::Timeout: return "no-infinite-loop";
    case StepOutcome::Kind::UnexpectedError: return "no-error";
    case StepOutcome::Kind::AssertFailed:
      return outcome.oracle_hint.empty() ? plan_name : outcome.oracle_hint;
    default: return "";
  }
}

Verdict verdict_of(const StepOutcome& outcome, const std::string& plan_name) {
  Verdict v;
  switch (outcome.kind) {
    case StepOutcome::Kind::Ok:
    case StepOutcome::Kind::ExpectedError:
    case StepOutcome::Kind::FaultHit:
      v.kind = VerdictKind::Pass;
      return v;
    case StepOutcome::Kind::AssumeFailed:
      v.kind = VerdictKind::Vacuous;
      v.detail = outcome.detail;
      return v;
    case StepOutcome::Kind::AssertFailed:
      v.kind = VerdictKind::Fail;
      break;
    case StepOutcome::Kind::UnexpectedError:
      v.kind = VerdictKind::Fail;
      break;
    case StepOutcome::Kind::EngineCrash:
      v.kind = VerdictKind::EngineCrash;
      break;
    case StepOutcome::Kind::Timeout:
      v.kind = VerdictKind::Timeout;
      break;
  }
  v.oracle = classify_failure(outcome, plan_name);
  v.assertion = outcome.assertion;
  v.detail = outcome.detail;
  return v;
}

Verdict run_property(const PropertyPlan& plan, Database& db, ShadowState& shadow,
                     const RunOptions& options,
                     std::vector<Interaction>* executed) {
  if (plan.vacuous) {
    Verdict v;
    v.kind = VerdictKind::Vacuous;
    v.detail = plan.vacuous_reason;
    return v;
  }
  InteractionRunner runner(db, shadow, options);
  for (const Interaction& i : plan.steps) {
    StepOutcome o = runner.step(i);
    // Every attempted step lands in the transcript, even a faulted one:
    // replaying it repeats the same I/O operations, which keeps armed fault
    // triggers aligned.
    if (executed != nullptr) executed->push_back(i);
    switch (o.kind) {
      case StepOutcome::Kind::Ok:
        continue;
      case StepOutcome::Kind::ExpectedError:
        continue;  // statement failed as allowed; its effects are skipped
      case StepOutcome::Kind::AssumeFailed: {
        Verdict v;
        v.kind = VerdictKind::Vacuous;
        v.detail = o.detail;
        return v;
      }
      case StepOutcome::Kind::FaultHit: {
        // An armed fault interrupted the property; that is noise, not a bug.
        Verdict v;
        v.kind = VerdictKind::Vacuous;
        v.detail = "interrupted by a simulated fault: " + o.detail;
        return v;
      }
      default:
        return verdict_of(o, plan.name);
    }
  }
  return Verdict{};
}

RunResult run_interactions(const std::vector<Interaction>& transcript,
                           Database& db, ShadowState& shadow,
                           const RunOptions& options) {
  InteractionRunner runner(db, shadow, options);
  RunResult result;
  for (const Interaction& i : transcript) {
    StepOutcome o = runner.step(i);
    ++result.steps_run;
    switch (o.kind) {
      case StepOutcome::Kind::Ok:
      case StepOutcome::Kind::ExpectedError:
      case StepOutcome::Kind::FaultHit:
      case StepOutcome::Kind::AssumeFailed:
        continue;
      default: {
        result.verdict = verdict_of(o, "replay");
        return result;
      }
    }
  }
  result.verdict = Verdict{};
  return result;
}

}  // namespace wdb
