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

#ifndef WDB_ERROR_HPP
#define WDB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wdb {

// Stable machine-readable codes for user-level failures. The expected-errors
// configuration matches on these, not on message text.
enum class UserErrorCode {
  Syntax,
  UnknownTable,
  UnknownColumn,
  AmbiguousColumn,
  DuplicateTable,
  DuplicateColumn,
  ArityMismatch,
  TypeMismatch,
  RowTooLarge,
  SchemaFull,
  BadLiteral,
};

const char* user_error_code_name(UserErrorCode code);

// Malformed input, unknown names, constraint violations. Always the engine's
// fault to *detect*, never to raise spuriously.
class UserError : public std::runtime_error {
 public:
  UserError(UserErrorCode code, const std::string& message, size_t offset = npos)
      : std::runtime_error(message), code_(code), offset_(offset) {}

  UserErrorCode code() const { return code_; }
  // Byte offset of the first failure for parse errors, npos otherwise.
  size_t offset() const { return offset_; }
  bool has_offset() const { return offset_ != npos; }

  static constexpr size_t npos = static_cast<size_t>(-1);

 private:
  UserErrorCode code_;
  size_t offset_;
};

// A broken internal consistency assertion. Raised only by the engine's own
// checks; user input can never legitimately trigger one.
class InternalInvariantViolation : public std::logic_error {
 public:
  explicit InternalInvariantViolation(const std::string& message)
      : std::logic_error(message) {}
};

// Storage-level failure, simulated or real.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

// Per-interaction execution budget exceeded (wall clock or row steps).
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& message) : std::runtime_error(message) {}
};

// A generated interaction does not fit the shadow state. Signals a bug in the
// generator or reducer, never in the database.
class ModelError : public std::logic_error {
 public:
  explicit ModelError(const std::string& message) : std::logic_error(message) {}
};

// Invalid tool configuration (bad distribution, unknown mutant, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

inline void engine_check(bool condition, const std::string& message) {
  if (!condition) throw InternalInvariantViolation(message);
}

}  // namespace wdb

#endif  // WDB_ERROR_HPP
