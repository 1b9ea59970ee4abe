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

#ifndef WDB_SIMIO_HPP
#define WDB_SIMIO_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wdb {

constexpr uint32_t kPageSize = 4096;

// Raw page storage. Pages are kPageSize bytes; writes may extend the file.
class Storage {
 public:
  virtual ~Storage() = default;
  virtual uint32_t page_count() const = 0;
  virtual std::vector<uint8_t> read_page(uint32_t page) = 0;
  virtual void write_page(uint32_t page, const std::vector<uint8_t>& bytes) = 0;
};

std::unique_ptr<Storage> make_mem_storage();
// Opens or creates a database file.
std::unique_ptr<Storage> make_file_storage(const std::string& path);

enum class FaultKind { ReadError, WriteError, ReopenDatabase };

const char* fault_kind_name(FaultKind k);
FaultKind fault_kind_from_name(const std::string& name);

// One scheduled fault. A bare operation-count trigger fires at exactly the
// n-th I/O operation after arming. A page-constrained trigger fires at the
// first matching operation (read for ReadError, write for WriteError) on
// that page with index >= n.
struct FaultEntry {
  uint64_t op = 0;
  FaultKind kind = FaultKind::ReadError;
  std::optional<uint32_t> page;
};

struct FaultPlan {
  std::vector<FaultEntry> schedule;

  // Line-oriented text form: one "op#<n> <kind> [page]" per line.
  std::string to_text() const;
  static FaultPlan from_text(const std::string& text);
  // Triggers strictly ordered by operation count, at most one per trigger.
  void validate() const;
};

// Storage wrapper that counts I/O operations and fires armed faults. With an
// empty plan it is observationally identical to the wrapped storage.
class SimIo {
 public:
  explicit SimIo(std::unique_ptr<Storage> storage);

  // Replaces any previous plan and restarts the operation counter.
  void arm(FaultPlan plan);
  const FaultPlan& plan() const { return plan_; }

  std::vector<uint8_t> read_page(uint32_t page);
  void write_page(uint32_t page, const std::vector<uint8_t>& bytes);
  uint32_t page_count() const { return storage_->page_count(); }

  uint64_t op_count() const { return op_count_; }

  // ReopenDatabase faults cannot fire mid-statement; the supervising runner
  // polls this flag between interactions and performs the reopen.
  bool take_reopen_request();

 private:
  void before_op(bool is_write, uint32_t page);

  std::unique_ptr<Storage> storage_;
  FaultPlan plan_;
  std::vector<bool> fired_;
  uint64_t op_count_ = 0;
  bool reopen_requested_ = false;
};

}  // namespace wdb

#endif  // WDB_SIMIO_HPP
