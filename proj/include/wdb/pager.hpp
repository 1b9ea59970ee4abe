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

#ifndef WDB_PAGER_HPP
#define WDB_PAGER_HPP

#include <map>
#include <string>
#include <vector>

#include "wdb/ast.hpp"
#include "wdb/mutant.hpp"
#include "wdb/simio.hpp"
#include "wdb/value.hpp"

namespace wdb {

struct TableInfo {
  std::string name;
  std::vector<ColumnDef> columns;
  uint32_t first_page = 0;  // 0 = table has no rows
  uint32_t row_count = 0;
};

// Catalog + heap storage over SimIo. See docs/file-format.md for the layout.
//
// Statements mutate tables copy-on-write: a DML rewrites the affected table's
// page chain into fresh pages and then commits everything (catalog, chain
// head, page count) with the single header-page write. Any single I/O fault
// therefore leaves either the old or the new statement state visible, never a
// mix. Pages are never reused; orphaned chains are simply abandoned.
class Pager {
 public:
  Pager(SimIo& io, const MutantSet& mutants);

  // Reads the header, or initializes a fresh database if storage is empty.
  void open();
  // Drops every cache and reconstructs the catalog from persisted bytes.
  void reopen();

  const std::vector<TableInfo>& tables() const { return catalog_; }
  const TableInfo* find_table(const std::string& name) const;

  std::vector<Row> read_table_rows(const TableInfo& table);

  // Single-statement commits. Each writes fresh chain pages (if any) and
  // then the header.
  void commit_table_rows(const std::string& table, const std::vector<Row>& rows);
  void commit_create_table(const std::string& table,
                           const std::vector<ColumnDef>& columns);
  void commit_drop_table(const std::string& table);

  // Serialized row size check, shared with the executor's error reporting.
  static size_t record_size(const Row& row);
  static constexpr size_t max_record_size = kPageSize - 8 - 2;

 private:
  std::vector<uint8_t> read_page_cached(uint32_t page);
  void write_page_through(uint32_t page, std::vector<uint8_t> bytes);
  std::vector<uint8_t> serialize_header(const std::vector<TableInfo>& catalog,
                                        uint32_t page_count) const;
  void parse_header(const std::vector<uint8_t>& page);
  void commit_catalog(std::vector<TableInfo> new_catalog, uint32_t new_page_count);
  // Writes rows into fresh pages; returns the chain head (0 when empty).
  uint32_t write_chain(const std::vector<Row>& rows, uint32_t& page_count);

  SimIo& io_;
  MutantSet mutants_;
  std::vector<TableInfo> catalog_;
  uint32_t page_count_ = 0;
  std::map<uint32_t, std::vector<uint8_t>> cache_;
  // Header bytes captured at open; only the stale-reopen mutant reads them.
  std::vector<uint8_t> header_at_open_;
};

}  // namespace wdb

#endif  // WDB_PAGER_HPP
