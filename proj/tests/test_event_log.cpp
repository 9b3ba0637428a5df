#include <fstream>

#include "doctest.h"

#include "artrec/error.hpp"
#include "artrec/event_log.hpp"
#include "test_support.hpp"

using namespace artrec;

namespace {

Event make_event(std::uint64_t seq, const std::string& kind = "ping") {
  Event e;
  e.seq = seq;
  e.timestamp_ms = 1000 + static_cast<std::int64_t>(seq);
  e.session_id = "s" + std::to_string(seq % 3);
  e.kind = kind;
  e.payload = {{"n", seq}, {"text", "ünïcode \"quoted\"\n"}};
  return e;
}

void append_raw(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  out << text;
}

}  // namespace

TEST_SUITE("event_log") {

TEST_CASE("event JSON round trip") {
  const Event e = make_event(7);
  const Event back = Event::from_json(e.to_json());
  CHECK(back.seq == 7);
  CHECK(back.timestamp_ms == e.timestamp_ms);
  CHECK(back.session_id == e.session_id);
  CHECK(back.kind == e.kind);
  CHECK(back.payload == e.payload);
}

TEST_CASE("memory-only log counts appends and enforces sequence") {
  EventLog log;
  CHECK_FALSE(log.persistent());
  log.append(make_event(0));
  log.append(make_event(1));
  CHECK(log.size() == 2);
  CHECK_THROWS_AS(log.append(make_event(5)), Error);
}

TEST_CASE("persistent log reopens with its events") {
  testing::TempDir tmp;
  const auto path = tmp / "events.jsonl";
  {
    EventLog log(path);
    for (std::uint64_t i = 0; i < 4; ++i) log.append(make_event(i));
  }
  EventLog again(path);
  REQUIRE(again.recovered().size() == 4);
  CHECK(again.recovered()[3].payload == make_event(3).payload);
  again.append(make_event(4));
  CHECK(EventLog::read_file(path).size() == 5);
}

TEST_CASE("torn final line is cut off on reopen") {
  testing::TempDir tmp;
  const auto path = tmp / "events.jsonl";
  {
    EventLog log(path);
    for (std::uint64_t i = 0; i < 3; ++i) log.append(make_event(i));
  }
  const auto intact = std::filesystem::file_size(path);
  append_raw(path, R"({"seq":3,"ts":1,"session":"s","kind":"pi)");
  {
    EventLog log(path);
    CHECK(log.recovered().size() == 3);
    CHECK(std::filesystem::file_size(path) == intact);
    log.append(make_event(3));
  }
  const auto events = EventLog::read_file(path);
  REQUIRE(events.size() == 4);
  CHECK(events.back().seq == 3);
}

TEST_CASE("damage before the tail is a data error") {
  testing::TempDir tmp;
  const auto path = tmp / "events.jsonl";
  {
    EventLog log(path);
    log.append(make_event(0));
  }
  append_raw(path, "garbage line\n");
  append_raw(path, make_event(1).to_json().dump() + "\n");
  CHECK_THROWS_AS(EventLog{path}, Error);

  const auto gap = tmp / "gap.jsonl";
  append_raw(gap, make_event(0).to_json().dump() + "\n" + make_event(2).to_json().dump() + "\n");
  CHECK_THROWS_AS(EventLog::read_file(gap), Error);
}

}  // TEST_SUITE
