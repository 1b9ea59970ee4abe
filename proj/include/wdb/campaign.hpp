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

#ifndef WDB_CAMPAIGN_HPP
#define WDB_CAMPAIGN_HPP

#include <optional>
#include <string>
#include <vector>

#include "wdb/oracles.hpp"
#include "wdb/shrink.hpp"
#include "wdb/workload.hpp"

namespace wdb {

struct CampaignConfig {
  uint64_t seed = 1;
  uint64_t interactions = 1000;
  WorkloadDistribution dist;
  std::vector<OracleId> oracles = parse_oracles("all");
  MutantId mutant = MutantId::None;
  FaultPlan fault_plan;
  uint64_t timeout_ms = 1000;
  uint64_t step_limit = 2'000'000;
  uint64_t oracle_cadence = 10;  // one oracle draw every k interactions
  bool shrink_enabled = true;
  bool per_step_diff = false;  // shadow diff after every interaction
  std::set<UserErrorCode> expected_errors;
  std::string db_path;  // empty: in-memory
  GenLimits limits;

  // Stable hash over the semantically relevant fields; recorded in reports
  // so a replay can prove it ran the same configuration.
  std::string fingerprint() const;
};

struct CampaignStats {
  uint64_t interactions_run = 0;
  uint64_t statements_failed_by_fault = 0;
  uint64_t reopens = 0;
  uint64_t plans_run = 0;
  uint64_t plans_passed = 0;
  uint64_t plans_vacuous = 0;

  double vacuous_rate() const {
    return plans_run == 0 ? 0.0
                          : static_cast<double>(plans_vacuous) /
                                static_cast<double>(plans_run);
  }
};

struct BugReport {
  uint64_t seed = 0;
  std::string config_fingerprint;
  VerdictKind kind = VerdictKind::Fail;
  std::string oracle;
  std::string assertion;
  std::string detail;
  MutantId mutant = MutantId::None;
  std::vector<Interaction> transcript;  // up to and including the failure
  std::vector<Interaction> minimized;
  std::string shadow_dump;  // canonical shadow snapshot at failure
  FaultPlan fault_plan;
  uint64_t shrink_ms = 0;
};

struct CampaignResult {
  int exit_code = 0;  // 0 clean, 1 bug found (2 = config error, via throw)
  Verdict verdict;
  CampaignStats stats;
  std::optional<BugReport> report;
  std::string transcript_text;  // byte-stable; equal across identical runs
};

// Interleaves workload generation with oracle plans at the configured
// cadence; stops at the first failure, reduces it, and (when report_dir is
// set) writes repro.sql, report.json, shadow.txt and faults.txt there.
CampaignResult run_campaign(const CampaignConfig& config,
                            const std::string& report_dir = "");

void write_report(const BugReport& report, const std::string& dir);

struct ReplayOutcome {
  Verdict verdict;
  // "STILL-FAILING" when the stored label reproduces, "FIXED" when the run
  // comes back clean, "DIFFERENT" when it fails some other way.
  std::string status;
};

// Replays a report directory's minimized repro against a fresh engine.
// mutant_override replaces the recorded mutant (MutantId::None simulates the
// fixed engine; nullopt replays the recorded one).
ReplayOutcome replay_report(const std::string& dir,
                            std::optional<MutantId> mutant_override = {});

// --- mutant detection matrix ---

struct MatrixCell {
  MutantId mutant = MutantId::None;
  std::string oracle_set;  // "none" or one oracle name
  bool detected = false;
  uint64_t seed = 0;        // first detecting seed
  std::string label;        // first failure's oracle label
  size_t transcript_len = 0;
  size_t minimized_len = 0;
  uint64_t shrink_ms = 0;
  bool clean_without_mutant = false;  // same seeds pass with the mutant off
};

struct MatrixOptions {
  uint64_t interactions = 1000;
  size_t seeds_designated = 50;  // budget for each mutant's expected oracle
  size_t seeds_other = 8;        // budget for the remaining grid cells
  bool full_grid = true;         // false: only the designated column per mutant
  bool shrink_designated = true;
};

struct MatrixResult {
  std::vector<MatrixCell> cells;
  bool all_expected_detected = false;
  std::string render() const;  // the detection table
  const MatrixCell* designated_cell(MutantId id) const;
};

MatrixResult run_matrix(const MatrixOptions& options,
                        const std::string& report_dir = "");

// The fault schedule matrix campaigns arm so reopen-sensitive defects are
// reachable: one ReopenDatabase trigger every `interval` I/O operations.
FaultPlan periodic_reopen_plan(uint64_t interval, size_t count);

}  // namespace wdb

#endif  // WDB_CAMPAIGN_HPP
