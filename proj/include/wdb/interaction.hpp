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

#ifndef WDB_INTERACTION_HPP
#define WDB_INTERACTION_HPP

#include <string>
#include <vector>

#include "wdb/value.hpp"

namespace wdb {

// Assertions and assumptions are plain data so transcripts replay from text.
// Result slots are stable ids assigned when a capturing statement is
// generated; they survive reduction unchanged.
struct AssertData {
  enum class Kind {
    RowIn,               // row is a member of slot_a's result multiset
    RowNotIn,            // row is absent from slot_a's result
    MultisetEq,          // slot_a and slot_b hold equal row multisets
    CardSum,             // |slot_a| + |slot_b| == |slot_c|
    NorecCount,          // |slot_a| == #(value 1) in single-column slot_b
    TablesMatch,         // shadow_diff(shadow, db) is empty
    ResultMatchesShadow  // slot_a equals the shadow evaluation of select_sql
  };
  Kind kind = Kind::TablesMatch;
  // Oracle label the assertion belongs to; a failure classifies under it
  // wherever the transcript is replayed.
  std::string oracle;
  int slot_a = -1;
  int slot_b = -1;
  int slot_c = -1;
  Row row;
  std::string select_sql;

  std::string to_json() const;
  static AssertData from_json(const std::string& json);
  std::string summary() const;
};

struct AssumeData {
  enum class Kind {
    ColumnsEq  // slot_a and slot_b have the same column count
  };
  Kind kind = Kind::ColumnsEq;
  int slot_a = -1;
  int slot_b = -1;

  std::string to_json() const;
  static AssumeData from_json(const std::string& json);
};

// One step of a transcript: a statement, a fault primitive, an assumption,
// an assertion, or a comment (ignored by execution).
struct Interaction {
  enum class Kind { Sql, Reopen, Assume, Assert, Comment };
  Kind kind = Kind::Sql;
  std::string sql;   // Kind::Sql: canonical statement text
  int slot = -1;     // Kind::Sql: result slot, -1 when not captured
  AssumeData assume;
  AssertData check;
  std::string comment;

  static Interaction statement(std::string sql, int slot = -1);
  static Interaction reopen();
  static Interaction assumption(AssumeData a);
  static Interaction assertion(AssertData a);
  static Interaction note(std::string text);
};

// Script form: one line per interaction. Statements end with ';' and carry
// their slot in a trailing comment; faults, assumptions and assertions are
// '--'-prefixed machine lines. Round-trips through parse_script.
std::string render_script(const std::vector<Interaction>& transcript);
std::vector<Interaction> parse_script(const std::string& text);

}  // namespace wdb

#endif  // WDB_INTERACTION_HPP
