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

#include "wdb/pager.hpp"

#include <cstring>

#include "wdb/error.hpp"

namespace wdb {

namespace {

constexpr char kMagic[4] = {'W', 'D', 'B', '1'};
constexpr size_t kPageHeaderSize = 8;  // u32 next, u16 record count, u16 used

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

struct Reader {
  const std::vector<uint8_t>& buf;
  size_t pos = 0;

  void need(size_t n) const {
    engine_check(pos + n <= buf.size(), "truncated page data");
  }
  uint8_t u8() {
    need(1);
    return buf[pos++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>(buf[pos] | (buf[pos + 1] << 8));
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  std::string str(size_t n) {
    need(n);
    std::string s(buf.begin() + static_cast<long>(pos),
                  buf.begin() + static_cast<long>(pos + n));
    pos += n;
    return s;
  }
};

void serialize_value(std::vector<uint8_t>& out, const Value& v) {
  out.push_back(static_cast<uint8_t>(v.type()));
  switch (v.type()) {
    case ValueType::Null:
      break;
    case ValueType::Integer:
      put_u64(out, static_cast<uint64_t>(v.as_integer()));
      break;
    case ValueType::Real: {
      uint64_t bits;
      double d = v.as_real();
      std::memcpy(&bits, &d, 8);
      put_u64(out, bits);
      break;
    }
    case ValueType::Text:
      put_u32(out, static_cast<uint32_t>(v.as_text().size()));
      out.insert(out.end(), v.as_text().begin(), v.as_text().end());
      break;
    case ValueType::Blob:
      put_u32(out, static_cast<uint32_t>(v.as_blob().size()));
      out.insert(out.end(), v.as_blob().begin(), v.as_blob().end());
      break;
  }
}

Value deserialize_value(Reader& r) {
  uint8_t tag = r.u8();
  switch (static_cast<ValueType>(tag)) {
    case ValueType::Null:
      return Value::null();
    case ValueType::Integer:
      return Value::integer(static_cast<int64_t>(r.u64()));
    case ValueType::Real: {
      uint64_t bits = r.u64();
      double d;
      std::memcpy(&d, &bits, 8);
      return Value::real(d);
    }
    case ValueType::Text: {
      uint32_t n = r.u32();
      return Value::text(r.str(n));
    }
    case ValueType::Blob: {
      uint32_t n = r.u32();
      r.need(n);
      std::vector<uint8_t> b(r.buf.begin() + static_cast<long>(r.pos),
                             r.buf.begin() + static_cast<long>(r.pos + n));
      r.pos += n;
      return Value::blob(std::move(b));
    }
  }
  throw InternalInvariantViolation("unknown value tag in stored record");
}

std::vector<uint8_t> serialize_record(const Row& row) {
  std::vector<uint8_t> out;
  put_u16(out, static_cast<uint16_t>(row.size()));
  for (const Value& v : row) serialize_value(out, v);
  return out;
}

}  // namespace

Pager::Pager(SimIo& io, const MutantSet& mutants) : io_(io), mutants_(mutants) {}

size_t Pager::record_size(const Row& row) {
  size_t n = 2;
  for (const Value& v : row) {
    n += 1;
    switch (v.type()) {
      case ValueType::Null: break;
      case ValueType::Integer:
      case ValueType::Real: n += 8; break;
      case ValueType::Text: n += 4 + v.as_text().size(); break;
      case ValueType::Blob: n += 4 + v.as_blob().size(); break;
    }
  }
  return n;
}

std::vector<uint8_t> Pager::serialize_header(
    const std::vector<TableInfo>& catalog, uint32_t page_count) const {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, kPageSize);
  put_u32(out, page_count);
  std::vector<uint8_t> schema;
  put_u32(schema, static_cast<uint32_t>(catalog.size()));
  for (const TableInfo& t : catalog) {
    engine_check(t.name.size() <= 255 && t.columns.size() <= 255,
                 "catalog entry exceeds format limits");
    schema.push_back(static_cast<uint8_t>(t.name.size()));
    schema.insert(schema.end(), t.name.begin(), t.name.end());
    put_u32(schema, t.first_page);
    put_u32(schema, t.row_count);
    schema.push_back(static_cast<uint8_t>(t.columns.size()));
    for (const ColumnDef& c : t.columns) {
      engine_check(c.name.size() <= 255, "column name exceeds format limits");
      schema.push_back(static_cast<uint8_t>(c.name.size()));
      schema.insert(schema.end(), c.name.begin(), c.name.end());
      schema.push_back(static_cast<uint8_t>(c.type));
    }
  }
  put_u32(out, static_cast<uint32_t>(schema.size()));
  if (out.size() + schema.size() > kPageSize) {
    throw UserError(UserErrorCode::SchemaFull,
                    "schema does not fit in the header page");
  }
  out.insert(out.end(), schema.begin(), schema.end());
  out.resize(kPageSize, 0);
  return out;
}

void Pager::parse_header(const std::vector<uint8_t>& page) {
  if (page.size() != kPageSize || std::memcmp(page.data(), kMagic, 4) != 0) {
    throw IoError("not a database file (bad magic)");
  }
  Reader r{page, 4};
  uint32_t stored_page_size = r.u32();
  if (stored_page_size != kPageSize) {
    throw IoError("unsupported page size: " + std::to_string(stored_page_size));
  }
  uint32_t page_count = r.u32();
  uint32_t schema_len = r.u32();
  engine_check(r.pos + schema_len <= kPageSize, "schema length exceeds header page");
  uint32_t table_count = r.u32();
  std::vector<TableInfo> catalog;
  for (uint32_t i = 0; i < table_count; ++i) {
    TableInfo t;
    t.name = r.str(r.u8());
    t.first_page = r.u32();
    t.row_count = r.u32();
    uint8_t ncols = r.u8();
    for (uint8_t c = 0; c < ncols; ++c) {
      ColumnDef col;
      col.name = r.str(r.u8());
      col.type = static_cast<ValueType>(r.u8());
      t.columns.push_back(std::move(col));
    }
    catalog.push_back(std::move(t));
  }
  catalog_ = std::move(catalog);
  page_count_ = page_count;
}

void Pager::open() {
  cache_.clear();
  if (io_.page_count() == 0) {
    catalog_.clear();
    page_count_ = 1;
    std::vector<uint8_t> header = serialize_header(catalog_, page_count_);
    io_.write_page(0, header);
    cache_[0] = header;
    header_at_open_ = std::move(header);
    return;
  }
  std::vector<uint8_t> header = io_.read_page(0);
  parse_header(header);
  cache_[0] = header;
  header_at_open_ = std::move(header);
}

void Pager::reopen() {
  if (mutants_.stale_header_on_reopen) {
    // Defect under test: the cached open-time header wins over the file.
    cache_.clear();
    parse_header(header_at_open_);
    cache_[0] = header_at_open_;
    return;
  }
  cache_.clear();
  std::vector<uint8_t> header = io_.read_page(0);
  parse_header(header);
  cache_[0] = header;
  header_at_open_ = std::move(header);
}

const TableInfo* Pager::find_table(const std::string& name) const {
  for (const TableInfo& t : catalog_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::vector<uint8_t> Pager::read_page_cached(uint32_t page) {
  auto it = cache_.find(page);
  if (it != cache_.end()) return it->second;
  std::vector<uint8_t> bytes = io_.read_page(page);
  cache_[page] = bytes;
  return bytes;
}

void Pager::write_page_through(uint32_t page, std::vector<uint8_t> bytes) {
  io_.write_page(page, bytes);  // an I/O fault here leaves the cache untouched
  cache_[page] = std::move(bytes);
}

std::vector<Row> Pager::read_table_rows(const TableInfo& table) {
  std::vector<Row> rows;
  rows.reserve(table.row_count);
  uint32_t page = table.first_page;
  while (page != 0) {
    engine_check(page < page_count_, "table chain points past the page count");
    std::vector<uint8_t> bytes = read_page_cached(page);
    Reader r{bytes, 0};
    uint32_t next = r.u32();
    uint16_t nrec = r.u16();
    r.u16();  // used-bytes, not needed for scans
    for (uint16_t i = 0; i < nrec; ++i) {
      uint16_t len = r.u16();
      size_t end = r.pos + len;
      engine_check(end <= bytes.size(), "record overruns its page");
      uint16_t ncols = r.u16();
      Row row;
      row.reserve(ncols);
      for (uint16_t c = 0; c < ncols; ++c) row.push_back(deserialize_value(r));
      engine_check(r.pos == end, "record length mismatch");
      engine_check(row.size() == table.columns.size(),
                   "stored record width does not match the table schema");
      rows.push_back(std::move(row));
    }
    page = next;
  }
  engine_check(rows.size() == table.row_count,
               "stored row count does not match the table chain");
  return rows;
}

uint32_t Pager::write_chain(const std::vector<Row>& rows, uint32_t& page_count) {
  if (rows.empty()) return 0;
  // Pack records into page payloads first, so page numbers and next-links are
  // known before anything is written.
  std::vector<std::vector<std::vector<uint8_t>>> page_records(1);
  size_t used = kPageHeaderSize;
  for (const Row& row : rows) {
    std::vector<uint8_t> rec = serialize_record(row);
    if (rec.size() > max_record_size) {
      throw UserError(UserErrorCode::RowTooLarge,
                      "row of " + std::to_string(rec.size()) +
                          " bytes does not fit in a page");
    }
    if (used + 2 + rec.size() > kPageSize) {
      page_records.emplace_back();
      used = kPageHeaderSize;
    }
    used += 2 + rec.size();
    page_records.back().push_back(std::move(rec));
  }
  uint32_t head = page_count;
  for (size_t p = 0; p < page_records.size(); ++p) {
    uint32_t page_no = page_count++;
    uint32_t next = (p + 1 < page_records.size()) ? page_no + 1 : 0;
    std::vector<uint8_t> bytes;
    bytes.reserve(kPageSize);
    put_u32(bytes, next);
    put_u16(bytes, static_cast<uint16_t>(page_records[p].size()));
    size_t used_total = kPageHeaderSize;
    for (const auto& rec : page_records[p]) used_total += 2 + rec.size();
    put_u16(bytes, static_cast<uint16_t>(used_total));
    for (const auto& rec : page_records[p]) {
      put_u16(bytes, static_cast<uint16_t>(rec.size()));
      bytes.insert(bytes.end(), rec.begin(), rec.end());
    }
    bytes.resize(kPageSize, 0);
    write_page_through(page_no, std::move(bytes));
  }
  return head;
}

void Pager::commit_catalog(std::vector<TableInfo> new_catalog,
                           uint32_t new_page_count) {
  std::vector<uint8_t> header = serialize_header(new_catalog, new_page_count);
  write_page_through(0, std::move(header));
  catalog_ = std::move(new_catalog);
  page_count_ = new_page_count;
}

void Pager::commit_table_rows(const std::string& table,
                              const std::vector<Row>& rows) {
  std::vector<TableInfo> staged = catalog_;
  TableInfo* entry = nullptr;
  for (TableInfo& t : staged) {
    if (t.name == table) entry = &t;
  }
  engine_check(entry != nullptr, "commit for a table missing from the catalog");
  uint32_t page_count = page_count_;
  entry->first_page = write_chain(rows, page_count);
  entry->row_count = static_cast<uint32_t>(rows.size());
  commit_catalog(std::move(staged), page_count);
}

void Pager::commit_create_table(const std::string& table,
                                const std::vector<ColumnDef>& columns) {
  std::vector<TableInfo> staged = catalog_;
  TableInfo t;
  t.name = table;
  t.columns = columns;
  staged.push_back(std::move(t));
  commit_catalog(std::move(staged), page_count_);
}

void Pager::commit_drop_table(const std::string& table) {
  std::vector<TableInfo> staged = catalog_;
  for (size_t i = 0; i < staged.size(); ++i) {
    if (staged[i].name == table) {
      staged.erase(staged.begin() + static_cast<long>(i));
      commit_catalog(std::move(staged), page_count_);
      return;
    }
  }
  engine_check(false, "drop for a table missing from the catalog");
}

}  // namespace wdb
