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

#include "wdb/campaign.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "wdb/error.hpp"

namespace wdb {

namespace {

using nlohmann::json;

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string oracle_csv(const std::vector<OracleId>& oracles) {
  if (oracles.empty()) return "none";
  std::string out;
  for (size_t i = 0; i < oracles.size(); ++i) {
    if (i) out += ',';
    out += oracle_name(oracles[i]);
  }
  return out;
}

RunOptions run_options(const CampaignConfig& config) {
  RunOptions o;
  o.step_limit = config.step_limit;
  o.timeout_ms = config.timeout_ms;
  o.expected_errors = config.expected_errors;
  return o;
}

bool shadow_oracle_enabled(const CampaignConfig& config) {
  for (OracleId id : config.oracles) {
    if (id == OracleId::Shadow) return true;
  }
  return false;
}

AssertData tables_match_assert() {
  AssertData a;
  a.kind = AssertData::Kind::TablesMatch;
  a.oracle = "shadow";
  return a;
}

}  // namespace

std::string CampaignConfig::fingerprint() const {
  std::ostringstream s;
  s << seed << '|' << interactions << '|' << dist.read << ',' << dist.write
    << ',' << dist.create << '|' << oracle_csv(oracles) << '|'
    << (mutant == MutantId::None ? "none" : mutant_info(mutant).name) << '|'
    << fault_plan.to_text() << '|' << timeout_ms << '|' << step_limit << '|'
    << oracle_cadence << '|' << per_step_diff << '|' << limits.max_expr_depth
    << ',' << limits.null_probability << ',' << limits.max_insert_rows << ','
    << limits.table_soft_cap;
  std::ostringstream hex;
  hex << std::hex << fnv1a(s.str());
  return hex.str();
}

CampaignResult run_campaign(const CampaignConfig& config,
                            const std::string& report_dir) {
  config.dist.validate();
  if (config.oracle_cadence == 0) {
    throw ConfigError("oracle cadence must be positive");
  }

  Database db(config.db_path, config.mutant);
  db.io().arm(config.fault_plan);
  ShadowState shadow;
  GenContext ctx(config.seed, config.limits);
  RunOptions options = run_options(config);
  InteractionRunner runner(db, shadow, options);

  CampaignResult result;
  std::vector<Interaction> transcript;
  bool check_diff = shadow_oracle_enabled(config);

  Verdict failure;
  bool failed = false;

  auto record_failure = [&](const StepOutcome& outcome, const std::string& plan) {
    failure = verdict_of(outcome, plan);
    failed = true;
  };

  // Every step goes through here so the transcript always matches what ran.
  auto execute = [&](const Interaction& i) {
    transcript.push_back(i);
    return runner.step(i);
  };

  auto handle_reopen_requests = [&]() {
    while (!failed && db.io().take_reopen_request()) {
      ++result.stats.reopens;
      execute(Interaction::reopen());
      if (check_diff) {
        // Committed data must survive the reopen; check before anything else
        // touches the database.
        StepOutcome o = execute(Interaction::assertion(tables_match_assert()));
        if (o.kind == StepOutcome::Kind::AssertFailed ||
            o.kind == StepOutcome::Kind::EngineCrash ||
            o.kind == StepOutcome::Kind::Timeout) {
          record_failure(o, "shadow");
        }
      }
    }
  };

  for (uint64_t i = 1; i <= config.interactions && !failed; ++i) {
    Statement s = gen_workload_statement(config.dist, shadow, ctx);
    StepOutcome o = execute(Interaction::statement(print_statement(s)));
    ++result.stats.interactions_run;
    switch (o.kind) {
      case StepOutcome::Kind::Ok:
      case StepOutcome::Kind::ExpectedError:
        break;
      case StepOutcome::Kind::FaultHit:
        ++result.stats.statements_failed_by_fault;
        break;
      case StepOutcome::Kind::AssumeFailed:
        break;  // workload statements carry no assumptions
      default:
        record_failure(o, "workload");
        break;
    }
    if (failed) break;
    handle_reopen_requests();
    if (failed) break;

    if (config.per_step_diff && check_diff) {
      StepOutcome d = execute(Interaction::assertion(tables_match_assert()));
      if (d.kind != StepOutcome::Kind::Ok &&
          d.kind != StepOutcome::Kind::FaultHit) {
        record_failure(d, "shadow");
        break;
      }
    }

    if (i % config.oracle_cadence == 0 && !config.oracles.empty()) {
      if (check_diff && !config.per_step_diff) {
        StepOutcome d = execute(Interaction::assertion(tables_match_assert()));
        if (d.kind != StepOutcome::Kind::Ok &&
            d.kind != StepOutcome::Kind::FaultHit) {
          record_failure(d, "shadow");
          break;
        }
      }
      OracleId id = config.oracles[ctx.rng().below(config.oracles.size())];
      PropertyPlan plan = make_oracle_plan(id, shadow, ctx);
      ++result.stats.plans_run;
      Verdict v = run_property(plan, db, shadow, options, &transcript);
      switch (v.kind) {
        case VerdictKind::Pass:
          ++result.stats.plans_passed;
          break;
        case VerdictKind::Vacuous:
          ++result.stats.plans_vacuous;
          break;
        default:
          failure = v;
          failed = true;
          break;
      }
      if (!failed) handle_reopen_requests();
    }
  }

  result.transcript_text = render_script(transcript);
  if (!failed) {
    result.exit_code = 0;
    return result;
  }

  result.exit_code = 1;
  result.verdict = failure;

  BugReport report;
  report.seed = config.seed;
  report.config_fingerprint = config.fingerprint();
  report.kind = failure.kind;
  report.oracle = failure.oracle;
  report.assertion = failure.assertion;
  report.detail = failure.detail;
  report.mutant = config.mutant;
  report.transcript = transcript;
  report.shadow_dump = shadow.dump();
  report.fault_plan = config.fault_plan;

  if (config.shrink_enabled) {
    ReduceInput in;
    in.transcript = transcript;
    in.kind = failure.kind;
    in.oracle = failure.oracle;
    in.mutant = config.mutant;
    in.faults = config.fault_plan;
    in.options = options;
    auto started = std::chrono::steady_clock::now();
    report.minimized = reduce(in);
    report.shrink_ms = static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started)
            .count());
  } else {
    report.minimized = transcript;
  }

  if (!report_dir.empty()) write_report(report, report_dir);
  result.report = std::move(report);
  return result;
}

void write_report(const BugReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto write_file = [&](const std::string& name, const std::string& contents) {
    std::ofstream out(dir + "/" + name, std::ios::binary);
    if (!out) throw IoError("cannot write report file: " + dir + "/" + name);
    out << contents;
  };

  std::string header = "-- repro | oracle: " + report.oracle +
                       " | seed: " + std::to_string(report.seed) + "\n";
  write_file("repro.sql", header + render_script(report.minimized));
  write_file("shadow.txt", report.shadow_dump);
  write_file("faults.txt", report.fault_plan.to_text());

  json j;
  j["seed"] = report.seed;
  j["config_fingerprint"] = report.config_fingerprint;
  j["verdict"] = verdict_kind_name(report.kind);
  j["oracle"] = report.oracle;
  j["assertion"] = report.assertion;
  j["detail"] = report.detail;
  j["mutant"] =
      report.mutant == MutantId::None ? "none" : mutant_info(report.mutant).name;
  j["original_interactions"] = report.transcript.size();
  j["minimized_interactions"] = report.minimized.size();
  j["shrink_ms"] = report.shrink_ms;
  write_file("report.json", j.dump(2) + "\n");
}

ReplayOutcome replay_report(const std::string& dir,
                            std::optional<MutantId> mutant_override) {
  std::ifstream meta(dir + "/report.json");
  if (!meta) throw ConfigError("no report.json under " + dir);
  json j = json::parse(meta);
  std::string expected_label = j.at("oracle").get<std::string>();
  std::string expected_kind = j.at("verdict").get<std::string>();
  MutantId mutant = mutant_from_name(j.at("mutant").get<std::string>());
  if (mutant_override) mutant = *mutant_override;

  std::ifstream sql(dir + "/repro.sql");
  if (!sql) throw ConfigError("no repro.sql under " + dir);
  std::stringstream buffer;
  buffer << sql.rdbuf();
  std::vector<Interaction> transcript = parse_script(buffer.str());

  FaultPlan faults;
  std::ifstream ff(dir + "/faults.txt");
  if (ff) {
    std::stringstream fb;
    fb << ff.rdbuf();
    faults = FaultPlan::from_text(fb.str());
  }

  RunResult r = replay_transcript(transcript, mutant, faults, RunOptions{});
  ReplayOutcome out;
  out.verdict = r.verdict;
  if (r.verdict.kind == VerdictKind::Pass ||
      r.verdict.kind == VerdictKind::Vacuous) {
    out.status = "FIXED";
  } else if (r.verdict.oracle == expected_label &&
             verdict_kind_name(r.verdict.kind) == expected_kind) {
    out.status = "STILL-FAILING";
  } else {
    out.status = "DIFFERENT";
  }
  return out;
}

// --- matrix ---

FaultPlan periodic_reopen_plan(uint64_t interval, size_t count) {
  FaultPlan plan;
  for (size_t k = 1; k <= count; ++k) {
    FaultEntry e;
    e.op = interval * k;
    e.kind = FaultKind::ReopenDatabase;
    plan.schedule.push_back(e);
  }
  return plan;
}

const MatrixCell* MatrixResult::designated_cell(MutantId id) const {
  const std::string designated = mutant_info(id).expected_oracle;
  std::string column = designated;
  // Crash-class oracles live in the "none" column: they need no plans.
  if (designated == "no-panic" || designated == "no-infinite-loop" ||
      designated == "no-error") {
    column = "none";
  }
  for (const MatrixCell& c : cells) {
    if (c.mutant == id && c.oracle_set == column) return &c;
  }
  return nullptr;
}

MatrixResult run_matrix(const MatrixOptions& options,
                        const std::string& report_dir) {
  MatrixResult result;
  static const char* kColumns[] = {"none",   "pqs",      "norec", "tlp",
                                   "delsel", "unionall", "shadow"};
  result.all_expected_detected = true;

  for (const MutantInfo& info : list_mutants()) {
    std::string designated = info.expected_oracle;
    if (designated == "no-panic" || designated == "no-infinite-loop" ||
        designated == "no-error") {
      designated = "none";
    }
    for (const char* column : kColumns) {
      bool is_designated = designated == column;
      if (!options.full_grid && !is_designated) continue;
      MatrixCell cell;
      cell.mutant = info.id;
      cell.oracle_set = column;
      size_t budget = is_designated ? options.seeds_designated : options.seeds_other;

      for (uint64_t seed = 1; seed <= budget; ++seed) {
        CampaignConfig config;
        config.seed = seed;
        config.interactions = options.interactions;
        config.oracles = parse_oracles(column);
        config.mutant = info.id;
        config.fault_plan = periodic_reopen_plan(1500, 40);
        config.shrink_enabled = is_designated && options.shrink_designated;
        CampaignResult r = run_campaign(
            config, is_designated && !report_dir.empty()
                        ? report_dir + "/" + info.name + "-" + column
                        : "");
        if (r.exit_code == 1) {
          cell.detected = true;
          cell.seed = seed;
          cell.label = r.verdict.oracle;
          cell.transcript_len = r.report->transcript.size();
          cell.minimized_len = r.report->minimized.size();
          cell.shrink_ms = r.report->shrink_ms;
          // The same configuration with the mutant off has to come back
          // clean, otherwise the "detection" is a false positive.
          CampaignConfig clean = config;
          clean.mutant = MutantId::None;
          clean.shrink_enabled = false;
          cell.clean_without_mutant = run_campaign(clean).exit_code == 0;
          break;
        }
      }
      if (is_designated) {
        bool ok = cell.detected && cell.label == info.expected_oracle &&
                  cell.clean_without_mutant;
        if (!ok) result.all_expected_detected = false;
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

std::string MatrixResult::render() const {
  std::ostringstream out;
  out << "mutant | oracle set | detected | seed | label | transcript | "
         "minimized | clean-when-off\n";
  out << "-------+------------+----------+------+-------+------------+"
         "-----------+---------------\n";
  for (const MatrixCell& c : cells) {
    std::string name = mutant_info(c.mutant).name;
    out << name << std::string(7 - name.size(), ' ') << "| ";
    out << c.oracle_set << std::string(c.oracle_set.size() < 11 ? 11 - c.oracle_set.size() : 1, ' ') << "| ";
    if (c.detected) {
      out << "yes      | " << c.seed << "    | " << c.label << " | "
          << c.transcript_len << " | " << c.minimized_len << " | "
          << (c.clean_without_mutant ? "yes" : "NO");
    } else {
      out << "no       | -    | -     | -          | -         | -";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace wdb
