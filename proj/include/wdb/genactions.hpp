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

#ifndef WDB_GENACTIONS_HPP
#define WDB_GENACTIONS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wdb/engine.hpp"
#include "wdb/error.hpp"
#include "wdb/interaction.hpp"
#include "wdb/rng.hpp"
#include "wdb/shadow.hpp"

namespace wdb {

struct GenLimits {
  int max_expr_depth = 4;
  double null_probability = 0.1;
  int max_insert_rows = 4;
  size_t table_soft_cap = 12;
};

// Context threaded through every generation action: one deterministic stream
// plus the limits. Same seed and same shadow means an identical trace.
class GenContext {
 public:
  GenContext(uint64_t seed, GenLimits limits = GenLimits{})
      : rng_(seed), limits_(limits) {}

  Rng& rng() { return rng_; }
  const GenLimits& limits() const { return limits_; }

  // Monotonic result-slot ids; stable across reduction.
  int next_slot() { return slot_counter_++; }
  // Monotonic table naming; names are never reused within a campaign.
  std::string next_table_name() {
    return "t" + std::to_string(table_counter_++);
  }

  // Literal pool: generators draw some literals from recently seen row
  // values so comparisons have a chance of matching real data.
  std::vector<Value> value_pool;

 private:
  Rng rng_;
  GenLimits limits_;
  int slot_counter_ = 0;
  uint64_t table_counter_ = 0;
};

namespace gen {

// Uniform choice; empty collections yield nullopt and the caller turns that
// into a vacuous property instance.
template <typename T>
std::optional<T> pick(const std::vector<T>& collection, GenContext& ctx) {
  if (collection.empty()) return std::nullopt;
  return collection[ctx.rng().below(collection.size())];
}

// One column per schema entry, matching its strict type; NULL with the
// configured probability.
Row gen_row(const std::vector<ColumnDef>& schema, GenContext& ctx);
Value gen_value(ValueType type, GenContext& ctx);

// Expression scope: the tables visible to column references. References are
// qualified whenever more than one table is in scope.
struct ExprScope {
  struct Entry {
    std::string table;
    const std::vector<ColumnDef>* schema;
  };
  std::vector<Entry> entries;
  // Qualify every reference even in single-table scope (for expressions that
  // will be embedded in a wider FROM).
  bool qualify_all = false;

  static ExprScope single(const std::string& table,
                          const std::vector<ColumnDef>& schema);
};

// Well-scoped expression within the depth limit. With boolean_root the root
// production always yields Integer 1/0 or NULL, so WHERE-style truthiness
// coincides with counting 1s.
ExprPtr gen_expr(const ExprScope& scope, GenContext& ctx,
                 bool boolean_root = false);

// Expression whose value always fits a column of the given type (used for
// UPDATE ... SET right-hand sides).
ExprPtr gen_typed_expr(ValueType type, const ExprScope& scope, GenContext& ctx);

// The rectification rule: keep a candidate that already evaluates to 1 on
// the pivot row, wrap a false one in NOT, and test a NULL one with IS NULL.
// The false variant inverts the rule. Candidates must be boolean-rooted.
ExprPtr rectify_true(ExprPtr candidate, const std::string& table,
                     const std::vector<ColumnDef>& schema, const Row& pivot_row);
ExprPtr rectify_false(ExprPtr candidate, const std::string& table,
                      const std::vector<ColumnDef>& schema, const Row& pivot_row);

// Rectified pivot predicates: the result provably evaluates to Integer 1
// (or, for the false variant, Integer 0) on the pivot row under reference
// semantics.
ExprPtr gen_pivot_true_expr(const std::string& table,
                            const std::vector<ColumnDef>& schema,
                            const Row& pivot_row, GenContext& ctx,
                            bool qualify = false);
ExprPtr gen_pivot_false_expr(const std::string& table,
                             const std::vector<ColumnDef>& schema,
                             const Row& pivot_row, GenContext& ctx,
                             bool qualify = false);

struct SelectOptions {
  bool allow_limit = true;
  bool allow_distinct = true;
  bool allow_union = false;
  bool allow_cross = true;
};

// Random single or compound SELECT over the shadow's tables.
SelectStmt gen_select(const ShadowState& shadow, GenContext& ctx,
                      const SelectOptions& options);

}  // namespace gen

// --- Property plans ---

// A compiled generation action: picks and generations already resolved to a
// concrete interaction sequence ending in assertions.
struct PropertyPlan {
  std::string name;
  std::vector<Interaction> steps;
  bool vacuous = false;          // preconditions unmet at build time
  std::string vacuous_reason;
};

// Incremental plan construction used by the oracle factories and by
// user-written properties in tests.
class PlanBuilder {
 public:
  PlanBuilder(std::string name, GenContext& ctx) : ctx_(ctx) {
    plan_.name = std::move(name);
  }

  void note(std::string text);
  // Executes the statement without capturing its result.
  void interact(const Statement& s);
  // Captures the SELECT's result into a fresh slot.
  int interact_select(const Statement& s);
  void reopen();
  void assume_columns_eq(int slot_a, int slot_b);
  void assert_row_in(int slot, Row row);
  void assert_row_not_in(int slot, Row row);
  void assert_multiset_eq(int slot_a, int slot_b);
  void assert_card_sum(int slot_a, int slot_b, int slot_whole);
  void assert_norec_count(int filtered_slot, int projected_slot);
  void assert_tables_match();
  void assert_result_matches_shadow(int slot, const SelectStmt& select);
  // Marks the plan vacuous; a vacuous plan carries no steps.
  PropertyPlan vacuous(const std::string& reason) &&;
  PropertyPlan build() &&;

 private:
  GenContext& ctx_;
  PropertyPlan plan_;
};

// --- Execution ---

enum class VerdictKind { Pass, Vacuous, Fail, EngineCrash, Timeout };

struct Verdict {
  VerdictKind kind = VerdictKind::Pass;
  std::string oracle;     // failing oracle label, empty for Pass/Vacuous
  std::string assertion;  // failing assertion summary
  std::string detail;
};

const char* verdict_kind_name(VerdictKind k);

struct RunOptions {
  // Per-interaction budgets; zero disables the step limit.
  uint64_t step_limit = 2'000'000;
  uint64_t timeout_ms = 1000;
  // UserError codes that statements may raise without counting as bugs.
  std::set<UserErrorCode> expected_errors;
};

// Outcome of one interaction.
struct StepOutcome {
  enum class Kind {
    Ok,
    AssumeFailed,     // property instance is vacuous
    AssertFailed,
    ExpectedError,    // UserError in the expected set; effects skipped
    UnexpectedError,  // UserError outside the expected set
    EngineCrash,      // internal invariant violation
    Timeout,
    FaultHit,         // simulated IoError; interaction marked failed
  };
  Kind kind = Kind::Ok;
  std::string detail;
  std::string assertion;
  // Oracle label carried by a failing assertion, if it names one.
  std::string oracle_hint;
};

// Executes interactions against one engine + shadow pair, keeping captured
// result slots. Successful statements are applied to the shadow; failed ones
// are skipped there. ModelError propagates: that is a harness defect, not a
// database bug.
class InteractionRunner {
 public:
  InteractionRunner(Database& db, ShadowState& shadow, RunOptions options);

  StepOutcome step(const Interaction& i);

  Database& db() { return db_; }
  ShadowState& shadow() { return shadow_; }
  const std::map<int, ResultSet>& slots() const { return slots_; }

 private:
  StepOutcome run_sql(const Interaction& i);
  StepOutcome run_assert(const AssertData& a);

  Database& db_;
  ShadowState& shadow_;
  RunOptions options_;
  std::map<int, ResultSet> slots_;
};

// Runs a plan's steps on top of the given engine/shadow pair. Assumption
// failures and plan preconditions yield Vacuous; an IoError from an armed
// fault also yields Vacuous (fault noise is not a property failure). The
// transcript of executed steps is appended to `executed` when provided.
Verdict run_property(const PropertyPlan& plan, Database& db, ShadowState& shadow,
                     const RunOptions& options,
                     std::vector<Interaction>* executed = nullptr);

// First-failure execution of a whole transcript (used by replay and the
// reducer). Returns the verdict and how many interactions actually ran.
struct RunResult {
  Verdict verdict;
  size_t steps_run = 0;
};
RunResult run_interactions(const std::vector<Interaction>& transcript,
                           Database& db, ShadowState& shadow,
                           const RunOptions& options);

// Maps a failing step outcome to its oracle label: assertion failures carry
// the plan's own name; crashes, timeouts and unexpected errors map to the
// built-in classifier labels.
std::string classify_failure(const StepOutcome& outcome,
                             const std::string& plan_name);

Verdict verdict_of(const StepOutcome& outcome, const std::string& plan_name);

}  // namespace wdb

#endif  // WDB_GENACTIONS_HPP
