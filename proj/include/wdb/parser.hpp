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

#ifndef WDB_PARSER_HPP
#define WDB_PARSER_HPP

#include <string>

#include "wdb/ast.hpp"
#include "wdb/mutant.hpp"

namespace wdb {

// Parses one statement (optional trailing semicolon). Throws UserError with
// the byte offset of the first failure; never an internal error, no matter
// the input.
Statement parse_statement(const std::string& sql,
                          const MutantSet& mutants = MutantSet{});

// Expression entry point, used by tests and the reducer.
ExprPtr parse_expression(const std::string& text,
                         const MutantSet& mutants = MutantSet{});

}  // namespace wdb

#endif  // WDB_PARSER_HPP
