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

#ifndef WDB_MUTANT_HPP
#define WDB_MUTANT_HPP

#include <string>
#include <vector>

namespace wdb {

// Registry of compile-time-known, run-time-selectable engine defects. Each
// mutant is a guarded branch at a single engine site; with MutantId::None the
// guards are dead and the engine is defect-free. At most one mutant is active
// per engine instance, fixed at construction.
enum class MutantId {
  None,
  M0,  // parser: rejects TRUE/FALSE as predicates
  M1,  // executor: DELETE ignores a constant WHERE (treats it as absent)
  M2,  // evaluator: AND with a NULL operand yields 0 instead of Kleene result
  M3,  // pager: reopen reinstalls the open-time header instead of re-reading
  M4,  // evaluator: LIKE on a non-text operand trips an internal assertion
  M5,  // executor: LIMIT k returns k-1 rows
  M6,  // executor: UPDATE cursor does not advance past an identity update
};

struct MutantInfo {
  MutantId id;
  std::string name;         // "M0".."M6"
  std::string description;  // what the defect does
  std::string site;         // engine component holding the guarded branch
  std::string expected_oracle;  // oracle label expected to detect it
};

const std::vector<MutantInfo>& list_mutants();

// "M3" -> MutantId::M3; "none"/"" -> None; throws ConfigError otherwise.
MutantId mutant_from_name(const std::string& name);
const MutantInfo& mutant_info(MutantId id);

// Per-instance view of the active mutant, split by site so engine components
// test one boolean instead of re-deriving the id.
struct MutantSet {
  bool reject_true_false = false;       // M0
  bool delete_skips_const_where = false;  // M1
  bool and_null_gives_false = false;    // M2
  bool stale_header_on_reopen = false;  // M3
  bool like_requires_text = false;      // M4
  bool limit_off_by_one = false;        // M5
  bool update_cursor_sticks = false;    // M6

  static MutantSet from_id(MutantId id);
};

}  // namespace wdb

#endif  // WDB_MUTANT_HPP
