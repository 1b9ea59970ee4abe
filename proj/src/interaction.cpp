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

#include "wdb/interaction.hpp"

#include <json.hpp>
#include <sstream>

#include "wdb/error.hpp"

namespace wdb {

namespace {

using nlohmann::json;

json value_to_json(const Value& v) {
  switch (v.type()) {
    case ValueType::Null:
      return json{{"t", "null"}};
    case ValueType::Integer:
      return json{{"t", "int"}, {"v", v.as_integer()}};
    case ValueType::Real:
      // through our own formatter so the bytes are replay-stable
      return json{{"t", "real"}, {"v", format_real(v.as_real())}};
    case ValueType::Text:
      return json{{"t", "text"}, {"v", v.as_text()}};
    case ValueType::Blob: {
      std::string hex;
      for (uint8_t b : v.as_blob()) {
        const char* digits = "0123456789abcdef";
        hex += digits[b >> 4];
        hex += digits[b & 0xF];
      }
      return json{{"t", "blob"}, {"v", hex}};
    }
  }
  return json{{"t", "null"}};
}

Value value_from_json(const json& j) {
  std::string t = j.at("t").get<std::string>();
  if (t == "null") return Value::null();
  if (t == "int") return Value::integer(j.at("v").get<int64_t>());
  if (t == "real") return Value::real(std::stod(j.at("v").get<std::string>()));
  if (t == "text") return Value::text(j.at("v").get<std::string>());
  if (t == "blob") {
    std::string hex = j.at("v").get<std::string>();
    std::vector<uint8_t> bytes;
    for (size_t i = 0; i + 1 < hex.size(); i += 2) {
      bytes.push_back(static_cast<uint8_t>(std::stoi(hex.substr(i, 2), nullptr, 16)));
    }
    return Value::blob(std::move(bytes));
  }
  throw ConfigError("bad value tag in transcript: " + t);
}

const char* assert_kind_name(AssertData::Kind k) {
  switch (k) {
    case AssertData::Kind::RowIn: return "row-in";
    case AssertData::Kind::RowNotIn: return "row-not-in";
    case AssertData::Kind::MultisetEq: return "multiset-eq";
    case AssertData::Kind::CardSum: return "card-sum";
    case AssertData::Kind::NorecCount: return "norec-count";
    case AssertData::Kind::TablesMatch: return "tables-match";
    case AssertData::Kind::ResultMatchesShadow: return "result-matches-shadow";
  }
  return "?";
}

AssertData::Kind assert_kind_from_name(const std::string& name) {
  if (name == "row-in") return AssertData::Kind::RowIn;
  if (name == "row-not-in") return AssertData::Kind::RowNotIn;
  if (name == "multiset-eq") return AssertData::Kind::MultisetEq;
  if (name == "card-sum") return AssertData::Kind::CardSum;
  if (name == "norec-count") return AssertData::Kind::NorecCount;
  if (name == "tables-match") return AssertData::Kind::TablesMatch;
  if (name == "result-matches-shadow") return AssertData::Kind::ResultMatchesShadow;
  throw ConfigError("unknown assertion kind: " + name);
}

}  // namespace

std::string AssertData::to_json() const {
  json j;
  j["kind"] = assert_kind_name(kind);
  if (!oracle.empty()) j["oracle"] = oracle;
  if (slot_a >= 0) j["a"] = slot_a;
  if (slot_b >= 0) j["b"] = slot_b;
  if (slot_c >= 0) j["c"] = slot_c;
  if (!row.empty()) {
    json r = json::array();
    for (const Value& v : row) r.push_back(value_to_json(v));
    j["row"] = r;
  }
  if (!select_sql.empty()) j["select"] = select_sql;
  return j.dump();
}

AssertData AssertData::from_json(const std::string& text) {
  json j = json::parse(text);
  AssertData a;
  a.kind = assert_kind_from_name(j.at("kind").get<std::string>());
  a.oracle = j.value("oracle", std::string());
  a.slot_a = j.value("a", -1);
  a.slot_b = j.value("b", -1);
  a.slot_c = j.value("c", -1);
  if (j.contains("row")) {
    for (const json& r : j["row"]) a.row.push_back(value_from_json(r));
  }
  a.select_sql = j.value("select", std::string());
  return a;
}

std::string AssertData::summary() const {
  std::string s = assert_kind_name(kind);
  if (slot_a >= 0) s += " #" + std::to_string(slot_a);
  if (slot_b >= 0) s += " #" + std::to_string(slot_b);
  if (slot_c >= 0) s += " #" + std::to_string(slot_c);
  return s;
}

std::string AssumeData::to_json() const {
  json j;
  j["kind"] = "columns-eq";
  j["a"] = slot_a;
  j["b"] = slot_b;
  return j.dump();
}

AssumeData AssumeData::from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("kind").get<std::string>() != "columns-eq") {
    throw ConfigError("unknown assumption kind in transcript");
  }
  AssumeData a;
  a.slot_a = j.at("a").get<int>();
  a.slot_b = j.at("b").get<int>();
  return a;
}

Interaction Interaction::statement(std::string sql, int slot) {
  Interaction i;
  i.kind = Kind::Sql;
  i.sql = std::move(sql);
  i.slot = slot;
  return i;
}

Interaction Interaction::reopen() {
  Interaction i;
  i.kind = Kind::Reopen;
  return i;
}

Interaction Interaction::assumption(AssumeData a) {
  Interaction i;
  i.kind = Kind::Assume;
  i.assume = std::move(a);
  return i;
}

Interaction Interaction::assertion(AssertData a) {
  Interaction i;
  i.kind = Kind::Assert;
  i.check = std::move(a);
  return i;
}

Interaction Interaction::note(std::string text) {
  Interaction i;
  i.kind = Kind::Comment;
  i.comment = std::move(text);
  return i;
}

std::string render_script(const std::vector<Interaction>& transcript) {
  std::string out;
  for (const Interaction& i : transcript) {
    switch (i.kind) {
      case Interaction::Kind::Sql:
        out += i.sql;
        out += ';';
        if (i.slot >= 0) out += " -- slot:" + std::to_string(i.slot);
        break;
      case Interaction::Kind::Reopen:
        out += "-- fault: reopen";
        break;
      case Interaction::Kind::Assume:
        out += "-- assume: " + i.assume.to_json();
        break;
      case Interaction::Kind::Assert:
        out += "-- assert: " + i.check.to_json();
        break;
      case Interaction::Kind::Comment:
        out += "-- " + i.comment;
        break;
    }
    out += '\n';
  }
  return out;
}

std::vector<Interaction> parse_script(const std::string& text) {
  std::vector<Interaction> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("-- fault: reopen", 0) == 0) {
      out.push_back(Interaction::reopen());
      continue;
    }
    if (line.rfind("-- assume: ", 0) == 0) {
      out.push_back(Interaction::assumption(AssumeData::from_json(line.substr(11))));
      continue;
    }
    if (line.rfind("-- assert: ", 0) == 0) {
      out.push_back(Interaction::assertion(AssertData::from_json(line.substr(11))));
      continue;
    }
    if (line.rfind("--", 0) == 0) {
      out.push_back(Interaction::note(line.size() > 3 ? line.substr(3) : ""));
      continue;
    }
    // Statement line: strip the trailing slot marker and semicolon. Generated
    // text never contains newlines, so one line is one statement.
    int slot = -1;
    size_t marker = line.rfind("; -- slot:");
    std::string sql;
    if (marker != std::string::npos) {
      slot = std::stoi(line.substr(marker + 10));
      sql = line.substr(0, marker);
    } else {
      size_t semi = line.rfind(';');
      if (semi == std::string::npos) {
        throw ConfigError("script statement line lacks a terminating ';': " + line);
      }
      sql = line.substr(0, semi);
    }
    out.push_back(Interaction::statement(std::move(sql), slot));
  }
  return out;
}

}  // namespace wdb
