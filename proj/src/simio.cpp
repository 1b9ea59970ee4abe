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

#include "wdb/simio.hpp"

#include <cstdio>
#include <cstring>
#include <sstream>

#include "wdb/error.hpp"

namespace wdb {

namespace {

class MemStorage : public Storage {
 public:
  uint32_t page_count() const override {
    return static_cast<uint32_t>(pages_.size());
  }

  std::vector<uint8_t> read_page(uint32_t page) override {
    if (page >= pages_.size()) {
      throw IoError("read past end of storage: page " + std::to_string(page));
    }
    return pages_[page];
  }

  void write_page(uint32_t page, const std::vector<uint8_t>& bytes) override {
    if (bytes.size() != kPageSize) {
      throw IoError("write of " + std::to_string(bytes.size()) +
                    " bytes is not a full page");
    }
    if (page >= pages_.size()) {
      pages_.resize(page + 1, std::vector<uint8_t>(kPageSize, 0));
    }
    pages_[page] = bytes;
  }

 private:
  std::vector<std::vector<uint8_t>> pages_;
};

class FileStorage : public Storage {
 public:
  explicit FileStorage(const std::string& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "r+b");
    if (file_ == nullptr) file_ = std::fopen(path.c_str(), "w+b");
    if (file_ == nullptr) throw IoError("cannot open database file: " + path);
    std::fseek(file_, 0, SEEK_END);
    long size = std::ftell(file_);
    if (size < 0 || size % kPageSize != 0) {
      std::fclose(file_);
      throw IoError("database file size is not a multiple of the page size: " + path);
    }
    pages_ = static_cast<uint32_t>(size / kPageSize);
  }

  ~FileStorage() override {
    if (file_ != nullptr) std::fclose(file_);
  }

  uint32_t page_count() const override { return pages_; }

  std::vector<uint8_t> read_page(uint32_t page) override {
    if (page >= pages_) {
      throw IoError("read past end of storage: page " + std::to_string(page));
    }
    std::vector<uint8_t> buf(kPageSize);
    if (std::fseek(file_, static_cast<long>(page) * kPageSize, SEEK_SET) != 0 ||
        std::fread(buf.data(), 1, kPageSize, file_) != kPageSize) {
      throw IoError("short read on page " + std::to_string(page));
    }
    return buf;
  }

  void write_page(uint32_t page, const std::vector<uint8_t>& bytes) override {
    if (bytes.size() != kPageSize) {
      throw IoError("write of " + std::to_string(bytes.size()) +
                    " bytes is not a full page");
    }
    if (std::fseek(file_, static_cast<long>(page) * kPageSize, SEEK_SET) != 0 ||
        std::fwrite(bytes.data(), 1, kPageSize, file_) != kPageSize) {
      throw IoError("short write on page " + std::to_string(page));
    }
    std::fflush(file_);
    if (page >= pages_) pages_ = page + 1;
  }

 private:
  std::string path_;
  std::FILE* file_ = nullptr;
  uint32_t pages_ = 0;
};

}  // namespace

std::unique_ptr<Storage> make_mem_storage() {
  return std::make_unique<MemStorage>();
}

std::unique_ptr<Storage> make_file_storage(const std::string& path) {
  return std::make_unique<FileStorage>(path);
}

const char* fault_kind_name(FaultKind k) {
  switch (k) {
    case FaultKind::ReadError: return "read-error";
    case FaultKind::WriteError: return "write-error";
    case FaultKind::ReopenDatabase: return "reopen";
  }
  return "?";
}

FaultKind fault_kind_from_name(const std::string& name) {
  if (name == "read-error") return FaultKind::ReadError;
  if (name == "write-error") return FaultKind::WriteError;
  if (name == "reopen") return FaultKind::ReopenDatabase;
  throw ConfigError("unknown fault kind: " + name);
}

std::string FaultPlan::to_text() const {
  std::string out;
  for (const FaultEntry& e : schedule) {
    out += "op#" + std::to_string(e.op) + " " + fault_kind_name(e.kind);
    if (e.page) out += " " + std::to_string(*e.page);
    out += "\n";
  }
  return out;
}

FaultPlan FaultPlan::from_text(const std::string& text) {
  FaultPlan plan;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string opword, kind;
    if (!(ls >> opword >> kind) || opword.rfind("op#", 0) != 0) {
      throw ConfigError("bad fault plan line: " + line);
    }
    FaultEntry e;
    try {
      e.op = std::stoull(opword.substr(3));
    } catch (const std::exception&) {
      throw ConfigError("bad fault plan operation count: " + line);
    }
    e.kind = fault_kind_from_name(kind);
    uint32_t page;
    if (ls >> page) e.page = page;
    plan.schedule.push_back(e);
  }
  plan.validate();
  return plan;
}

void FaultPlan::validate() const {
  for (size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i].op <= schedule[i - 1].op) {
      throw ConfigError("fault plan triggers must be strictly ordered by "
                        "operation count");
    }
  }
}

SimIo::SimIo(std::unique_ptr<Storage> storage) : storage_(std::move(storage)) {}

void SimIo::arm(FaultPlan plan) {
  plan.validate();
  plan_ = std::move(plan);
  fired_.assign(plan_.schedule.size(), false);
  op_count_ = 0;
  reopen_requested_ = false;
}

void SimIo::before_op(bool is_write, uint32_t page) {
  ++op_count_;
  for (size_t i = 0; i < plan_.schedule.size(); ++i) {
    if (fired_[i]) continue;
    const FaultEntry& e = plan_.schedule[i];
    bool match;
    if (e.page) {
      bool kind_matches = (e.kind == FaultKind::WriteError) == is_write ||
                          e.kind == FaultKind::ReopenDatabase;
      match = op_count_ >= e.op && kind_matches && *e.page == page;
    } else {
      match = op_count_ == e.op;
    }
    if (!match) continue;
    fired_[i] = true;
    switch (e.kind) {
      case FaultKind::ReadError:
      case FaultKind::WriteError:
        throw IoError(std::string("simulated ") + fault_kind_name(e.kind) +
                      " at op#" + std::to_string(op_count_) + " on page " +
                      std::to_string(page));
      case FaultKind::ReopenDatabase:
        reopen_requested_ = true;
        break;
    }
    break;  // at most one fault per operation
  }
}

std::vector<uint8_t> SimIo::read_page(uint32_t page) {
  before_op(false, page);
  return storage_->read_page(page);
}

void SimIo::write_page(uint32_t page, const std::vector<uint8_t>& bytes) {
  before_op(true, page);  // a firing write fault leaves the data unmodified
  storage_->write_page(page, bytes);
}

bool SimIo::take_reopen_request() {
  bool r = reopen_requested_;
  reopen_requested_ = false;
  return r;
}

}  // namespace wdb
