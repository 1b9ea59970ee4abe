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

#ifndef WDB_ORACLES_HPP
#define WDB_ORACLES_HPP

#include <set>
#include <string>
#include <vector>

#include "wdb/genactions.hpp"
#include "wdb/shadow.hpp"

namespace wdb {

// The built-in property suite, each expressed as a plan factory over the
// current shadow. A factory that cannot meet its precondition returns a
// vacuous plan. The crash oracles (no-panic, no-infinite-loop, no-error)
// need no plans: every interaction is classified against them.
enum class OracleId { Pqs, Norec, Tlp, Delsel, UnionAll, Shadow };

const char* oracle_name(OracleId id);
// Comma-separated names, or "all"; throws ConfigError on unknown names.
std::vector<OracleId> parse_oracles(const std::string& csv);

PropertyPlan make_oracle_plan(OracleId id, const ShadowState& shadow,
                              GenContext& ctx);

// Pivot containment over a two-table cross product (one table when the two
// picks collide).
PropertyPlan pqs_plan(const ShadowState& shadow, GenContext& ctx);
// Optimized WHERE filtering vs per-row predicate projection.
PropertyPlan norec_plan(const ShadowState& shadow, GenContext& ctx);
// Ternary partition recomposition, compared as multisets.
PropertyPlan tlp_where_plan(const ShadowState& shadow, GenContext& ctx);
// Deleted rows are gone; rows the delete must not touch survive.
PropertyPlan delete_select_plan(const ShadowState& shadow, GenContext& ctx);
// UNION ALL preserves cardinality.
PropertyPlan union_all_plan(const ShadowState& shadow, GenContext& ctx);
// Shadow/database table equality plus one differential query.
PropertyPlan shadow_diff_plan(const ShadowState& shadow, GenContext& ctx);

// "type-mismatch,row-too-large" -> codes statements may raise without being
// reported (the expected-errors configuration).
std::set<UserErrorCode> parse_expected_errors(const std::string& csv);

}  // namespace wdb

#endif  // WDB_ORACLES_HPP
