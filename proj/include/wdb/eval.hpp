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

#ifndef WDB_EVAL_HPP
#define WDB_EVAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "wdb/ast.hpp"
#include "wdb/mutant.hpp"
#include "wdb/value.hpp"

namespace wdb {

// Row binding for expression evaluation: one entry per FROM table, in FROM
// order. Qualified references resolve by table name; unqualified ones search
// all entries. A name satisfiable by more than one entry is ambiguous.
class RowScope {
 public:
  void add_table(const std::string& table, const std::vector<std::string>& columns,
                 const Row* row);

  // Resolves to the bound value; throws UserError (unknown/ambiguous column).
  const Value& resolve(const std::string& table, const std::string& column) const;

 private:
  struct Entry {
    std::string table;
    std::vector<std::string> columns;
    const Row* row;
  };
  std::vector<Entry> entries_;
};

// Kleene truth value of an arbitrary SQL value: NULL is unknown; INTEGER and
// REAL are true iff nonzero; TEXT and BLOB go through their longest numeric
// prefix (SQLite's boolean-context coercion).
enum class Truth { False, True, Unknown };
Truth truthiness(const Value& v);
Value truth_to_value(Truth t);

// Three-valued expression evaluation. Boolean results are Integer 1/0 or
// NULL. Comparisons with a NULL operand yield NULL; AND/OR follow Kleene
// logic; LIKE coerces non-text operands to their text rendering; BETWEEN
// desugars to (subject >= lo) AND (subject <= hi).
Value eval_expr(const ExprPtr& e, const RowScope& scope,
                const MutantSet& mutants = MutantSet{});

// Case-insensitive ASCII match with % and _ wildcards.
bool like_match(const std::string& text, const std::string& pattern);

}  // namespace wdb

#endif  // WDB_EVAL_HPP
