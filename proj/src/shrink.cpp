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

#include "wdb/shrink.hpp"

#include <functional>
#include <set>

#include "wdb/error.hpp"
#include "wdb/parser.hpp"

namespace wdb {

RunResult replay_transcript(const std::vector<Interaction>& transcript,
                            MutantId mutant, const FaultPlan& faults,
                            const RunOptions& options) {
  Database db(":memory:", mutant);
  FaultPlan rw;  // reopen entries are already explicit transcript steps
  for (const FaultEntry& e : faults.schedule) {
    if (e.kind != FaultKind::ReopenDatabase) rw.schedule.push_back(e);
  }
  db.io().arm(std::move(rw));
  ShadowState shadow;
  return run_interactions(transcript, db, shadow, options);
}

namespace {

// Shadow re-simulation plus slot bookkeeping; rejects candidates whose
// statements or assertions no longer make sense.
bool candidate_well_formed(const std::vector<Interaction>& candidate) {
  ShadowState sim;
  std::set<int> slots;
  auto slots_ok = [&](std::initializer_list<int> refs) {
    for (int s : refs) {
      if (s >= 0 && slots.count(s) == 0) return false;
    }
    return true;
  };
  for (const Interaction& i : candidate) {
    switch (i.kind) {
      case Interaction::Kind::Comment:
      case Interaction::Kind::Reopen:
        break;
      case Interaction::Kind::Sql: {
        try {
          Statement s = parse_statement(i.sql);
          sim.apply(s);
        } catch (const UserError&) {
          return false;
        } catch (const ModelError&) {
          return false;
        }
        if (i.slot >= 0) slots.insert(i.slot);
        break;
      }
      case Interaction::Kind::Assume:
        if (!slots_ok({i.assume.slot_a, i.assume.slot_b})) return false;
        break;
      case Interaction::Kind::Assert: {
        if (!slots_ok({i.check.slot_a, i.check.slot_b, i.check.slot_c})) {
          return false;
        }
        if (i.check.kind == AssertData::Kind::ResultMatchesShadow) {
          try {
            Statement s = parse_statement(i.check.select_sql);
            sim.validate(s);
          } catch (const UserError&) {
            return false;
          } catch (const ModelError&) {
            return false;
          }
        }
        break;
      }
    }
  }
  return true;
}

struct Reducer {
  const ReduceInput& input;
  size_t max_attempts;
  std::chrono::steady_clock::time_point deadline;
  ReduceStats stats;

  bool out_of_budget() const {
    return stats.attempts >= max_attempts ||
           std::chrono::steady_clock::now() > deadline;
  }

  bool reproduces(const std::vector<Interaction>& candidate) {
    if (out_of_budget()) return false;
    ++stats.attempts;
    if (!candidate_well_formed(candidate)) return false;
    RunResult r = replay_transcript(candidate, input.mutant, input.faults,
                                    input.options);
    if (r.verdict.kind != input.kind || r.verdict.oracle != input.oracle) {
      return false;
    }
    if (input.mutant != MutantId::None) {
      // The minimized transcript must single out the seeded defect: on the
      // healthy engine it has to run clean.
      RunResult healthy = replay_transcript(candidate, MutantId::None,
                                            input.faults, input.options);
      if (healthy.verdict.kind != VerdictKind::Pass) return false;
    }
    ++stats.accepted;
    return true;
  }

  // Classic ddmin over the interaction list.
  std::vector<Interaction> ddmin(std::vector<Interaction> current) {
    size_t granularity = 2;
    while (current.size() >= 2 && !out_of_budget()) {
      size_t chunk = std::max<size_t>(1, current.size() / granularity);
      bool reduced = false;
      for (size_t start = 0; start < current.size() && !out_of_budget();
           start += chunk) {
        std::vector<Interaction> candidate;
        candidate.reserve(current.size());
        for (size_t i = 0; i < current.size(); ++i) {
          if (i >= start && i < start + chunk) continue;
          candidate.push_back(current[i]);
        }
        if (candidate.empty()) continue;
        if (reproduces(candidate)) {
          current = std::move(candidate);
          granularity = std::max<size_t>(2, granularity - 1);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        if (chunk <= 1) break;
        granularity = std::min(current.size(), granularity * 2);
      }
    }
    return current;
  }

  // One pass of single-interaction removals; guarantees 1-minimality when it
  // completes within budget.
  std::vector<Interaction> one_minimal(std::vector<Interaction> current) {
    bool changed = true;
    while (changed && !out_of_budget()) {
      changed = false;
      for (size_t i = 0; i < current.size(); ++i) {
        std::vector<Interaction> candidate = current;
        candidate.erase(candidate.begin() + static_cast<long>(i));
        if (!candidate.empty() && reproduces(candidate)) {
          current = std::move(candidate);
          changed = true;
          break;
        }
      }
    }
    return current;
  }

  // --- statement simplification ---

  using ExprRewrite = std::function<ExprPtr(const ExprPtr&)>;

  // Applies `rewrite` to the subtree with preorder index `target`.
  static ExprPtr rewrite_at(const ExprPtr& e, int target, int& counter,
                            const ExprRewrite& rewrite) {
    if (!e) return e;
    int my_index = counter++;
    if (my_index == target) return rewrite(e);
    struct V {
      int target;
      int& counter;
      const ExprRewrite& rewrite;
      ExprPtr operator()(const Expr::ColumnRef&) const { return nullptr; }
      ExprPtr operator()(const Expr::Literal&) const { return nullptr; }
      ExprPtr operator()(const Expr::Unary& u) const {
        ExprPtr inner = rewrite_at(u.operand, target, counter, rewrite);
        return inner ? Expr::unary(u.op, inner) : nullptr;
      }
      ExprPtr operator()(const Expr::Binary& b) const {
        ExprPtr l = rewrite_at(b.lhs, target, counter, rewrite);
        if (l) return Expr::binary(b.op, l, b.rhs);
        ExprPtr r = rewrite_at(b.rhs, target, counter, rewrite);
        return r ? Expr::binary(b.op, b.lhs, r) : nullptr;
      }
      ExprPtr operator()(const Expr::Between& b) const {
        ExprPtr s = rewrite_at(b.subject, target, counter, rewrite);
        if (s) return Expr::between(s, b.lo, b.hi);
        ExprPtr lo = rewrite_at(b.lo, target, counter, rewrite);
        if (lo) return Expr::between(b.subject, lo, b.hi);
        ExprPtr hi = rewrite_at(b.hi, target, counter, rewrite);
        return hi ? Expr::between(b.subject, b.lo, hi) : nullptr;
      }
      ExprPtr operator()(const Expr::Paren& p) const {
        ExprPtr inner = rewrite_at(p.inner, target, counter, rewrite);
        return inner ? Expr::paren(inner) : nullptr;
      }
    };
    return std::visit(V{target, counter, rewrite}, e->node);
  }

  static int count_nodes(const ExprPtr& e) {
    if (!e) return 0;
    struct V {
      int operator()(const Expr::ColumnRef&) const { return 1; }
      int operator()(const Expr::Literal&) const { return 1; }
      int operator()(const Expr::Unary& u) const { return 1 + count_nodes(u.operand); }
      int operator()(const Expr::Binary& b) const {
        return 1 + count_nodes(b.lhs) + count_nodes(b.rhs);
      }
      int operator()(const Expr::Between& b) const {
        return 1 + count_nodes(b.subject) + count_nodes(b.lo) + count_nodes(b.hi);
      }
      int operator()(const Expr::Paren& p) const { return 1 + count_nodes(p.inner); }
    };
    return std::visit(V{}, e->node);
  }

  static bool is_true_literal(const ExprPtr& e) {
    const auto* lit = std::get_if<Expr::Literal>(&e->node);
    return lit != nullptr && lit->value.type() == ValueType::Integer &&
           lit->value.as_integer() == 1;
  }

  static bool zero_equivalent(const Value& v, Value* out) {
    switch (v.type()) {
      case ValueType::Integer:
        if (v.as_integer() == 0) return false;
        *out = Value::integer(0);
        return true;
      case ValueType::Real:
        if (v.as_real() == 0.0) return false;
        *out = Value::real(0.0);
        return true;
      case ValueType::Text:
        if (v.as_text().empty()) return false;
        *out = Value::text("");
        return true;
      case ValueType::Blob:
        if (v.as_blob().empty()) return false;
        *out = Value::blob({});
        return true;
      case ValueType::Null:
        return false;
    }
    return false;
  }

  // Candidate rewrites of one statement, in a fixed order. Returns the
  // rewritten SQL texts.
  static std::vector<std::string> statement_candidates(const std::string& sql) {
    std::vector<std::string> out;
    Statement stmt;
    try {
      stmt = parse_statement(sql);
    } catch (const UserError&) {
      return out;
    }

    auto add = [&](const Statement& s) { out.push_back(print_statement(s)); };

    // Structure first: fewer rows, no LIMIT.
    if (auto* ins = std::get_if<InsertStmt>(&stmt)) {
      if (ins->rows.size() > 1) {
        for (size_t r = 0; r < ins->rows.size(); ++r) {
          InsertStmt smaller = *ins;
          smaller.rows.erase(smaller.rows.begin() + static_cast<long>(r));
          add(Statement{smaller});
        }
      }
    }
    if (auto* sel = std::get_if<SelectStmt>(&stmt)) {
      if (sel->limit) {
        SelectStmt s = *sel;
        s.limit.reset();
        add(Statement{s});
      }
    }

    // Expression sites: each WHERE and each UPDATE right-hand side.
    struct Site {
      ExprPtr* expr;
    };
    Statement working = stmt;
    std::vector<ExprPtr*> sites;
    if (auto* sel = std::get_if<SelectStmt>(&working)) {
      for (SelectCore& core : sel->arms) {
        if (core.where) sites.push_back(&core.where);
      }
    } else if (auto* upd = std::get_if<UpdateStmt>(&working)) {
      for (auto& [_, expr] : upd->assignments) sites.push_back(&expr);
      if (upd->where) sites.push_back(&upd->where);
    } else if (auto* del = std::get_if<DeleteStmt>(&working)) {
      if (del->where) sites.push_back(&del->where);
    }

    for (ExprPtr* site : sites) {
      ExprPtr original = *site;
      int nodes = count_nodes(original);
      for (int target = 0; target < nodes; ++target) {
        // subtree -> TRUE
        {
          int counter = 0;
          ExprPtr rewritten = rewrite_at(
              original, target, counter, [](const ExprPtr& node) -> ExprPtr {
                if (is_true_literal(node)) return nullptr;
                return Expr::literal(Value::integer(1), true);
              });
          if (rewritten) {
            *site = rewritten;
            add(working);
            *site = original;
          }
        }
        // literal -> zero / empty
        {
          int counter = 0;
          ExprPtr rewritten = rewrite_at(
              original, target, counter, [](const ExprPtr& node) -> ExprPtr {
                const auto* lit = std::get_if<Expr::Literal>(&node->node);
                if (lit == nullptr) return nullptr;
                Value z;
                if (!zero_equivalent(lit->value, &z)) return nullptr;
                return Expr::literal(z);
              });
          if (rewritten) {
            *site = rewritten;
            add(working);
            *site = original;
          }
        }
      }
    }
    return out;
  }

  std::vector<Interaction> simplify_statements(std::vector<Interaction> current) {
    bool changed = true;
    while (changed && !out_of_budget()) {
      changed = false;
      for (size_t i = 0; i < current.size() && !changed; ++i) {
        if (current[i].kind != Interaction::Kind::Sql) continue;
        for (const std::string& rewritten :
             statement_candidates(current[i].sql)) {
          if (out_of_budget()) break;
          if (rewritten == current[i].sql) continue;
          std::vector<Interaction> candidate = current;
          candidate[i].sql = rewritten;
          if (reproduces(candidate)) {
            current = std::move(candidate);
            changed = true;
            break;
          }
        }
      }
    }
    return current;
  }
};

}  // namespace

std::vector<Interaction> reduce(const ReduceInput& input, size_t max_attempts,
                                std::chrono::milliseconds budget,
                                ReduceStats* stats) {
  RunResult original = replay_transcript(input.transcript, input.mutant,
                                         input.faults, input.options);
  if (original.verdict.kind != input.kind ||
      original.verdict.oracle != input.oracle) {
    throw NotReproducibleError(
        "transcript replay yields " +
        std::string(verdict_kind_name(original.verdict.kind)) + "/" +
        original.verdict.oracle + ", expected " +
        std::string(verdict_kind_name(input.kind)) + "/" + input.oracle);
  }

  Reducer reducer{input, max_attempts,
                  std::chrono::steady_clock::now() + budget, ReduceStats{}};
  reducer.stats.original_size = input.transcript.size();

  // Drop everything after the failing step and strip comments up front.
  std::vector<Interaction> current;
  for (size_t i = 0; i < original.steps_run && i < input.transcript.size(); ++i) {
    if (input.transcript[i].kind == Interaction::Kind::Comment) continue;
    current.push_back(input.transcript[i]);
  }
  if (!reducer.reproduces(current)) current = input.transcript;

  current = reducer.ddmin(std::move(current));
  current = reducer.simplify_statements(std::move(current));
  current = reducer.one_minimal(std::move(current));

  reducer.stats.reduced_size = current.size();
  if (stats != nullptr) *stats = reducer.stats;
  return current;
}

}  // namespace wdb
