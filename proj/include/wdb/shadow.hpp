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

#ifndef WDB_SHADOW_HPP
#define WDB_SHADOW_HPP

#include <map>
#include <string>
#include <vector>

#include "wdb/ast.hpp"
#include "wdb/engine.hpp"

namespace wdb {

// The generator's model of the database, updated during generation and used
// as the differential oracle's reference semantics. Throws ModelError on
// interactions that do not fit the model: that is a generator bug, never a
// database bug.
class ShadowState {
 public:
  struct Table {
    std::vector<ColumnDef> schema;
    std::vector<Row> rows;  // a multiset; order carries no meaning
  };

  uint64_t reads = 0;
  uint64_t writes = 0;
  uint64_t creates = 0;

  const std::map<std::string, Table>& tables() const { return tables_; }
  bool has_table(const std::string& name) const {
    return tables_.count(name) != 0;
  }
  const Table& table(const std::string& name) const;

  // Checks that a statement is well-formed against the model (names resolve,
  // arities and strict types line up) without changing anything. The reducer
  // uses this to reject candidates that reference dropped definitions.
  void validate(const Statement& s) const;

  // Applies a statement's effect under reference semantics and bumps the
  // interaction-class counter.
  void apply(const Statement& s);

  // Reference SELECT evaluation. Row order is unspecified; callers compare
  // multisets, and LIMIT results by cardinality only.
  ResultSet query(const SelectStmt& s) const;

  // Canonical sorted text dump for reports and golden tests.
  std::string dump() const;

 private:
  std::map<std::string, Table> tables_;
};

struct Discrepancy {
  enum class Kind { MissingTable, ExtraTable, SchemaMismatch, RowsDiffer,
                    EngineFailure };
  Kind kind;
  std::string table;
  std::string detail;
};

std::string describe(const Discrepancy& d);

// Compares the shadow against the live database: catalogs must match and each
// table's engine SELECT * must equal the shadow rows as a multiset. Engine
// errors during the comparison surface as EngineFailure discrepancies; an
// empty result means the two agree.
std::vector<Discrepancy> shadow_diff(const ShadowState& shadow, Database& db);

}  // namespace wdb

#endif  // WDB_SHADOW_HPP
