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

#include <doctest.h>

#include "wdb/error.hpp"

using namespace wdb;

namespace {

std::vector<uint8_t> page_of(uint8_t fill) {
  return std::vector<uint8_t>(kPageSize, fill);
}

}  // namespace

TEST_CASE("pages persist byte-exactly") {
  SimIo io(make_mem_storage());
  io.write_page(3, page_of(0xAB));
  CHECK(io.read_page(3) == page_of(0xAB));
  CHECK(io.page_count() == 4);
}

TEST_CASE("an armed op-count fault fires on exactly that operation") {
  SimIo io(make_mem_storage());
  FaultPlan plan;
  plan.schedule.push_back({5, FaultKind::ReadError, std::nullopt});
  io.arm(plan);
  io.write_page(0, page_of(1));  // op 1
  io.write_page(1, page_of(2));  // op 2
  CHECK(io.read_page(0) == page_of(1));  // 3
  CHECK(io.read_page(1) == page_of(2));  // 4
  CHECK_THROWS_AS(io.read_page(0), IoError);  // 5 fires
  CHECK(io.read_page(0) == page_of(1));  // 6, plan exhausted
}

TEST_CASE("a write fault leaves the data unmodified") {
  SimIo io(make_mem_storage());
  io.write_page(0, page_of(7));
  FaultPlan plan;
  plan.schedule.push_back({1, FaultKind::WriteError, std::nullopt});
  io.arm(plan);
  CHECK_THROWS_AS(io.write_page(0, page_of(9)), IoError);
  CHECK(io.read_page(0) == page_of(7));
}

TEST_CASE("an empty plan is observationally identical to plain storage") {
  auto plain = make_mem_storage();
  SimIo io(make_mem_storage());
  io.arm(FaultPlan{});
  for (uint32_t p = 0; p < 8; ++p) {
    auto bytes = page_of(static_cast<uint8_t>(p * 3));
    plain->write_page(p, bytes);
    io.write_page(p, bytes);
  }
  for (uint32_t p = 0; p < 8; ++p) {
    CHECK(plain->read_page(p) == io.read_page(p));
  }
}

TEST_CASE("arming a new plan replaces the old one and restarts counting") {
  SimIo io(make_mem_storage());
  FaultPlan first;
  first.schedule.push_back({2, FaultKind::ReadError, std::nullopt});
  io.arm(first);
  io.write_page(0, page_of(1));  // op 1 under plan one
  FaultPlan second;
  second.schedule.push_back({3, FaultKind::WriteError, std::nullopt});
  io.arm(second);
  // The old trigger at op 2 is gone; counting restarted.
  CHECK(io.read_page(0) == page_of(1));  // 1
  CHECK(io.read_page(0) == page_of(1));  // 2
  CHECK_THROWS_AS(io.write_page(0, page_of(2)), IoError);  // 3
}

TEST_CASE("page-constrained faults wait for a matching operation") {
  SimIo io(make_mem_storage());
  FaultPlan plan;
  plan.schedule.push_back({1, FaultKind::WriteError, 5});
  io.arm(plan);
  io.write_page(0, page_of(1));
  io.write_page(1, page_of(1));
  CHECK(io.read_page(0) == page_of(1));
  CHECK_THROWS_AS(io.write_page(5, page_of(1)), IoError);
  io.write_page(5, page_of(2));  // fired once, second write goes through
  CHECK(io.read_page(5) == page_of(2));
}

TEST_CASE("reopen faults raise a flag instead of failing the operation") {
  SimIo io(make_mem_storage());
  FaultPlan plan;
  plan.schedule.push_back({2, FaultKind::ReopenDatabase, std::nullopt});
  io.arm(plan);
  io.write_page(0, page_of(1));
  CHECK_FALSE(io.take_reopen_request());
  io.write_page(1, page_of(1));  // op 2: flag raised, write succeeds
  CHECK(io.read_page(1) == page_of(1));
  CHECK(io.take_reopen_request());
  CHECK_FALSE(io.take_reopen_request());  // consumed
}

TEST_CASE("fault firing is a pure function of plan and operation index") {
  auto run = [](uint64_t fail_at) {
    SimIo io(make_mem_storage());
    FaultPlan plan;
    plan.schedule.push_back({fail_at, FaultKind::ReadError, std::nullopt});
    io.arm(plan);
    std::vector<int> outcomes;
    io.write_page(0, page_of(1));
    for (int i = 0; i < 10; ++i) {
      try {
        io.read_page(0);
        outcomes.push_back(0);
      } catch (const IoError&) {
        outcomes.push_back(1);
      }
    }
    return outcomes;
  };
  CHECK(run(4) == run(4));
  CHECK(run(4) != run(5));
}

TEST_CASE("plans serialize to one line per trigger and back") {
  FaultPlan plan;
  plan.schedule.push_back({5, FaultKind::ReadError, std::nullopt});
  plan.schedule.push_back({9, FaultKind::WriteError, 3});
  plan.schedule.push_back({12, FaultKind::ReopenDatabase, std::nullopt});
  std::string text = plan.to_text();
  CHECK(text == "op#5 read-error\nop#9 write-error 3\nop#12 reopen\n");
  FaultPlan back = FaultPlan::from_text(text);
  CHECK(back.schedule.size() == 3);
  CHECK(back.schedule[1].page == 3);
  CHECK(back.schedule[2].kind == FaultKind::ReopenDatabase);
}

TEST_CASE("triggers must be strictly ordered") {
  FaultPlan plan;
  plan.schedule.push_back({5, FaultKind::ReadError, std::nullopt});
  plan.schedule.push_back({5, FaultKind::WriteError, std::nullopt});
  CHECK_THROWS_AS(plan.validate(), ConfigError);
  CHECK_THROWS_AS(FaultPlan::from_text("op#7 read-error\nop#3 reopen\n"),
                  ConfigError);
}
