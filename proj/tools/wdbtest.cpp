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

// Campaign runner and replay tool. `wdbtest run` generates a workload with
// interleaved oracle checks and writes a bug report on the first failure;
// `wdbtest replay` re-executes a report or a seed+config; `wdbtest matrix`
// runs the seeded-mutant detection matrix.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wdb/campaign.hpp"
#include "wdb/error.hpp"

namespace {

struct RunFlags {
  uint64_t seed = 1;
  uint64_t interactions = 1000;
  std::string dist = "1,1,1";
  std::string oracles = "all";
  std::string mutant = "none";
  std::string fault_plan_file;
  uint64_t timeout_ms = 1000;
  uint64_t step_limit = 2'000'000;
  uint64_t cadence = 10;
  std::string shrink = "on";
  std::string report_dir = "wdb-reports";
  std::string expected_errors;
  std::string db_path;
  bool per_step_diff = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--seed", flags.seed, "campaign seed")->envname("WDB_SEED");
  cmd->add_option("--interactions", flags.interactions,
                  "number of workload interactions")
      ->envname("WDB_INTERACTIONS");
  cmd->add_option("--dist", flags.dist, "read,write,create weights")
      ->envname("WDB_DIST");
  cmd->add_option("--oracles", flags.oracles,
                  "comma list of pqs,norec,tlp,delsel,unionall,shadow, or "
                  "all/none")
      ->envname("WDB_ORACLES");
  cmd->add_option("--mutant", flags.mutant, "seeded defect to activate (M0-M6)")
      ->envname("WDB_MUTANT");
  cmd->add_option("--fault-plan", flags.fault_plan_file,
                  "file with one 'op#<n> <kind> [page]' per line")
      ->envname("WDB_FAULT_PLAN");
  cmd->add_option("--timeout-ms", flags.timeout_ms,
                  "per-interaction wall clock budget")
      ->envname("WDB_TIMEOUT_MS");
  cmd->add_option("--step-limit", flags.step_limit,
                  "per-interaction row-step budget (0 = unlimited)")
      ->envname("WDB_STEP_LIMIT");
  cmd->add_option("--cadence", flags.cadence, "oracle draw every k interactions")
      ->envname("WDB_CADENCE");
  cmd->add_option("--shrink", flags.shrink, "on|off")->envname("WDB_SHRINK");
  cmd->add_option("--report-dir", flags.report_dir, "where bug reports go")
      ->envname("WDB_REPORT_DIR");
  cmd->add_option("--expect-errors", flags.expected_errors,
                  "error classes statements may raise without being bugs")
      ->envname("WDB_EXPECT_ERRORS");
  cmd->add_option("--db-path", flags.db_path,
                  "database file (default: in-memory)")
      ->envname("WDB_DB_PATH");
  cmd->add_flag("--per-step-diff", flags.per_step_diff,
                "shadow diff after every interaction")
      ->envname("WDB_PER_STEP_DIFF");
}

wdb::CampaignConfig to_config(const RunFlags& flags) {
  wdb::CampaignConfig config;
  config.seed = flags.seed;
  config.interactions = flags.interactions;
  config.dist = wdb::WorkloadDistribution::parse(flags.dist);
  config.oracles = wdb::parse_oracles(flags.oracles);
  config.mutant = wdb::mutant_from_name(flags.mutant);
  if (!flags.fault_plan_file.empty()) {
    std::ifstream in(flags.fault_plan_file);
    if (!in) throw wdb::ConfigError("cannot read " + flags.fault_plan_file);
    std::stringstream buf;
    buf << in.rdbuf();
    config.fault_plan = wdb::FaultPlan::from_text(buf.str());
  }
  config.timeout_ms = flags.timeout_ms;
  config.step_limit = flags.step_limit;
  config.oracle_cadence = flags.cadence;
  if (flags.shrink == "on") {
    config.shrink_enabled = true;
  } else if (flags.shrink == "off") {
    config.shrink_enabled = false;
  } else {
    throw wdb::ConfigError("--shrink takes on or off");
  }
  config.per_step_diff = flags.per_step_diff;
  config.expected_errors = wdb::parse_expected_errors(flags.expected_errors);
  config.db_path = flags.db_path;
  return config;
}

int do_run(const RunFlags& flags) {
  wdb::CampaignConfig config = to_config(flags);
  wdb::CampaignResult result = wdb::run_campaign(config, flags.report_dir);
  std::printf("interactions: %llu  plans: %llu pass / %llu vacuous (%.1f%%)\n",
              static_cast<unsigned long long>(result.stats.interactions_run),
              static_cast<unsigned long long>(result.stats.plans_passed),
              static_cast<unsigned long long>(result.stats.plans_vacuous),
              100.0 * result.stats.vacuous_rate());
  if (result.exit_code == 0) {
    std::printf("clean: no failures for seed %llu\n",
                static_cast<unsigned long long>(config.seed));
    return 0;
  }
  const wdb::BugReport& report = *result.report;
  std::printf("FAILURE oracle=%s verdict=%s\n  %s\n", report.oracle.c_str(),
              wdb::verdict_kind_name(report.kind), report.detail.c_str());
  std::printf("transcript: %zu interactions, minimized to %zu (%llu ms)\n",
              report.transcript.size(), report.minimized.size(),
              static_cast<unsigned long long>(report.shrink_ms));
  std::printf("report written to %s\n", flags.report_dir.c_str());
  return 1;
}

int do_replay(const std::string& report_dir, const std::string& mutant,
              const RunFlags& flags, bool have_seed) {
  if (!report_dir.empty()) {
    std::optional<wdb::MutantId> override_id;
    if (!mutant.empty()) override_id = wdb::mutant_from_name(mutant);
    wdb::ReplayOutcome outcome = wdb::replay_report(report_dir, override_id);
    std::printf("%s (verdict=%s oracle=%s)\n", outcome.status.c_str(),
                wdb::verdict_kind_name(outcome.verdict.kind),
                outcome.verdict.oracle.c_str());
    return outcome.status == "STILL-FAILING" ? 1 : 0;
  }
  if (!have_seed) {
    throw wdb::ConfigError("replay needs --report-dir or a seed + config");
  }
  // Re-running the campaign from its seed must reproduce the identical
  // transcript; run it twice and check.
  wdb::CampaignConfig config = to_config(flags);
  config.shrink_enabled = false;
  wdb::CampaignResult first = wdb::run_campaign(config);
  wdb::CampaignResult second = wdb::run_campaign(config);
  bool identical = first.transcript_text == second.transcript_text &&
                   first.exit_code == second.exit_code;
  std::printf("%s: exit %d, %zu transcript bytes\n",
              identical ? "DETERMINISTIC" : "NONDETERMINISTIC", first.exit_code,
              first.transcript_text.size());
  if (!identical) return 2;
  return first.exit_code;
}

int do_matrix(uint64_t interactions, bool quick, const std::string& report_dir) {
  wdb::MatrixOptions options;
  options.interactions = interactions;
  if (quick) {
    options.full_grid = false;
    options.seeds_other = 0;
  }
  wdb::MatrixResult result = wdb::run_matrix(options, report_dir);
  std::fputs(result.render().c_str(), stdout);
  std::printf("expected detections: %s\n",
              result.all_expected_detected ? "all present" : "MISSING");
  return result.all_expected_detected ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wdb random-testing workbench"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one testing campaign");
  add_run_flags(run, run_flags);

  RunFlags replay_flags;
  std::string replay_report_dir;
  std::string replay_mutant;
  CLI::App* replay = app.add_subcommand("replay", "replay a report or a config");
  replay->add_option("--report-dir", replay_report_dir, "bug report directory");
  replay->add_option("--with-mutant", replay_mutant,
                     "override the recorded mutant (none = fixed engine)");
  add_run_flags(replay, replay_flags);

  uint64_t matrix_interactions = 1000;
  bool matrix_quick = false;
  std::string matrix_report_dir;
  CLI::App* matrix =
      app.add_subcommand("matrix", "mutant x oracle detection matrix");
  matrix->add_option("--interactions", matrix_interactions,
                     "interactions per campaign");
  matrix->add_flag("--quick", matrix_quick, "designated cells only");
  matrix->add_option("--report-dir", matrix_report_dir,
                     "write reports for designated detections");

  CLI::App* mutants = app.add_subcommand("mutants", "list seeded mutants");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(run_flags);
    if (replay->parsed()) {
      bool have_seed = replay->count("--seed") > 0;
      return do_replay(replay_report_dir, replay_mutant, replay_flags, have_seed);
    }
    if (matrix->parsed()) {
      return do_matrix(matrix_interactions, matrix_quick, matrix_report_dir);
    }
    if (mutants->parsed()) {
      for (const wdb::MutantInfo& m : wdb::list_mutants()) {
        std::printf("%s  site=%-16s expected=%-16s %s\n", m.name.c_str(),
                    m.site.c_str(), m.expected_oracle.c_str(),
                    m.description.c_str());
      }
      return 0;
    }
  } catch (const wdb::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const wdb::NotReproducibleError& e) {
    std::fprintf(stderr, "not reproducible: %s\n", e.what());
    return 2;
  } catch (const wdb::ModelError& e) {
    std::fprintf(stderr, "harness defect: %s\n", e.what());
    return 2;
  }
  return 0;
}
