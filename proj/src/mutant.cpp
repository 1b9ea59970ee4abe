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

#include "wdb/mutant.hpp"

#include "wdb/error.hpp"

namespace wdb {

const std::vector<MutantInfo>& list_mutants() {
  static const std::vector<MutantInfo> kMutants = {
      {MutantId::M0, "M0", "parser rejects TRUE/FALSE used as predicates",
       "parser", "no-error"},
      {MutantId::M1, "M1",
       "DELETE treats a constant WHERE clause as if it were absent",
       "executor/delete", "delsel"},
      {MutantId::M2, "M2",
       "AND with a NULL operand evaluates to 0 instead of the Kleene result",
       "evaluator/binop", "pqs"},
      {MutantId::M3, "M3",
       "reopen reinstalls the open-time header snapshot instead of re-reading "
       "the file",
       "pager/reopen", "shadow"},
      {MutantId::M4, "M4",
       "LIKE asserts its operands are TEXT instead of coercing them",
       "evaluator/like", "no-panic"},
      {MutantId::M5, "M5", "SELECT ... LIMIT k returns k-1 rows",
       "executor/limit", "shadow"},
      {MutantId::M6, "M6",
       "UPDATE row cursor fails to advance when the new row equals the old",
       "executor/update", "no-infinite-loop"},
  };
  return kMutants;
}

MutantId mutant_from_name(const std::string& name) {
  if (name.empty() || name == "none" || name == "NONE") return MutantId::None;
  for (const auto& m : list_mutants()) {
    if (m.name == name) return m.id;
  }
  throw ConfigError("unknown mutant id: " + name);
}

const MutantInfo& mutant_info(MutantId id) {
  for (const auto& m : list_mutants()) {
    if (m.id == id) return m;
  }
  throw ConfigError("no info for MutantId::None");
}

MutantSet MutantSet::from_id(MutantId id) {
  MutantSet s;
  switch (id) {
    case MutantId::None: break;
    case MutantId::M0: s.reject_true_false = true; break;
    case MutantId::M1: s.delete_skips_const_where = true; break;
    case MutantId::M2: s.and_null_gives_false = true; break;
    case MutantId::M3: s.stale_header_on_reopen = true; break;
    case MutantId::M4: s.like_requires_text = true; break;
    case MutantId::M5: s.limit_off_by_one = true; break;
    case MutantId::M6: s.update_cursor_sticks = true; break;
  }
  return s;
}

}  // namespace wdb
