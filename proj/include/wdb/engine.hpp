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

#ifndef WDB_ENGINE_HPP
#define WDB_ENGINE_HPP

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wdb/ast.hpp"
#include "wdb/mutant.hpp"
#include "wdb/pager.hpp"
#include "wdb/parser.hpp"
#include "wdb/simio.hpp"

namespace wdb {

struct ExecResult {
  std::optional<ResultSet> result;  // set for SELECT
  uint64_t affected = 0;            // set for DML
};

// One database handle: parser, evaluator, executor, catalog and paged storage
// behind a simulated I/O layer. Single-threaded; a handle may move between
// threads but must never be shared. Each statement runs as its own implicit
// transaction, committed by the pager's single header write.
class Database {
 public:
  // path "" or ":memory:" opens volatile storage; anything else is a file.
  explicit Database(const std::string& path, MutantId mutant = MutantId::None);
  // Takes ownership of pre-built storage (tests inject fault-prone setups).
  Database(std::unique_ptr<Storage> storage, MutantId mutant = MutantId::None);

  // Closes existing caches and reconstructs state from persisted bytes.
  void reopen();

  SimIo& io() { return *io_; }
  const MutantSet& mutants() const { return mutants_; }
  const std::vector<TableInfo>& catalog() const { return pager_->tables(); }

  // Execution budgets, checked at every row step; either limit aborts the
  // statement with TimeoutError. Zero step limit means unlimited; an empty
  // deadline disables the wall clock check.
  void set_step_limit(uint64_t steps) { step_limit_ = steps; }
  void set_deadline(std::optional<std::chrono::steady_clock::time_point> d) {
    deadline_ = d;
  }

  ExecResult execute(const Statement& statement);
  ExecResult execute_sql(const std::string& sql);

 private:
  struct Budget;
  ExecResult run_create(const CreateTableStmt& s);
  ExecResult run_drop(const DropTableStmt& s);
  ExecResult run_insert(const InsertStmt& s);
  ExecResult run_select(const SelectStmt& s, Budget& budget);
  ExecResult run_update(const UpdateStmt& s, Budget& budget);
  ExecResult run_delete(const DeleteStmt& s, Budget& budget);
  const TableInfo& table_or_throw(const std::string& name) const;

  std::unique_ptr<SimIo> io_;
  std::unique_ptr<Pager> pager_;
  MutantSet mutants_;
  uint64_t step_limit_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace wdb

#endif  // WDB_ENGINE_HPP
