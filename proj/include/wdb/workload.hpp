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

#ifndef WDB_WORKLOAD_HPP
#define WDB_WORKLOAD_HPP

#include <string>
#include <vector>

#include "wdb/genactions.hpp"
#include "wdb/shadow.hpp"

namespace wdb {

// Read/write/create weights. Not all zero; they are normalized on use.
struct WorkloadDistribution {
  double read = 1;
  double write = 1;
  double create = 1;

  void validate() const;
  // "R,W,C" (as in --dist 2,1,0.5)
  static WorkloadDistribution parse(const std::string& text);
};

// Generates the next interaction for the current shadow state without
// applying it. Every statement is well-formed by construction: names come
// from the shadow, inserted values fit the strict column types, and UPDATE
// right-hand sides are type-safe. When the shadow has no tables the first
// interaction is forced to be a CREATE so reads and writes are satisfiable.
Statement gen_workload_statement(const WorkloadDistribution& dist,
                                 const ShadowState& shadow, GenContext& ctx);

// Batch form: N interactions, each well-formed against the shadow as updated
// by all prior ones; the shadow is advanced in place.
std::vector<Statement> gen_interactions(size_t n, const WorkloadDistribution& dist,
                                        ShadowState& shadow, GenContext& ctx);

}  // namespace wdb

#endif  // WDB_WORKLOAD_HPP
