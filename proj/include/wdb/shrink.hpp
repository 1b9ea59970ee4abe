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

#ifndef WDB_SHRINK_HPP
#define WDB_SHRINK_HPP

#include <chrono>
#include <stdexcept>
#include <vector>

#include "wdb/genactions.hpp"
#include "wdb/interaction.hpp"
#include "wdb/mutant.hpp"

namespace wdb {

// Replaying the allegedly failing transcript did not reproduce the original
// oracle label. Signals nondeterminism, which is itself a reportable defect.
class NotReproducibleError : public std::runtime_error {
 public:
  explicit NotReproducibleError(const std::string& message)
      : std::runtime_error(message) {}
};

// Replays a transcript on a fresh in-memory database with the given mutant
// and the plan's read/write fault entries re-armed (reopen entries replay
// from the transcript itself).
RunResult replay_transcript(const std::vector<Interaction>& transcript,
                            MutantId mutant, const FaultPlan& faults,
                            const RunOptions& options);

struct ReduceInput {
  std::vector<Interaction> transcript;
  VerdictKind kind = VerdictKind::Fail;
  std::string oracle;  // label that must be preserved exactly
  MutantId mutant = MutantId::None;
  FaultPlan faults;
  RunOptions options;
};

struct ReduceStats {
  size_t attempts = 0;
  size_t accepted = 0;
  size_t original_size = 0;
  size_t reduced_size = 0;
};

// Stateful reduction: ddmin over the interaction sequence followed by
// per-statement simplification (rows dropped from inserts, LIMIT removed,
// subtrees replaced by TRUE, literals shrunk toward zero / empty), to a
// locally 1-minimal transcript. Candidates are gated by shadow
// re-simulation; dangling references are rejected, never repaired. When a
// mutant is active, a candidate must also NOT fail on the unmutated engine,
// so the repro demonstrates the defect rather than a broken assertion.
// Deterministic for a given input and budget.
std::vector<Interaction> reduce(const ReduceInput& input,
                                size_t max_attempts = 4000,
                                std::chrono::milliseconds budget =
                                    std::chrono::milliseconds(60000),
                                ReduceStats* stats = nullptr);

}  // namespace wdb

#endif  // WDB_SHRINK_HPP
