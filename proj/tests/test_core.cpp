#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "semlog/errors.hpp"
#include "semlog/log.hpp"
#include "semlog/roles.hpp"
#include "semlog/value.hpp"
#include "semlog/xes.hpp"

using namespace semlog;

namespace {

std::string temp_path(const std::string& name) {
  return "tmp_" + name;
}

EventLog sample_log() {
  // 3 traces, 10 events, all five value kinds
  EventLog log;
  log.xml_attrs = {{"xes.version", "1.0"}, {"xmlns", "http://www.xes-standard.org/"}};
  log.log_attributes.insert("concept:name", AttributeValue("sample"));

  const char* actions[] = {"Create_PurchaseOrder", "approve order", "Pay invoice"};
  int event_id = 0;
  for (int t = 0; t < 3; ++t) {
    Trace trace;
    trace.trace_attributes.insert("concept:name",
                                  AttributeValue("case-" + std::to_string(t)));
    int n = t == 0 ? 4 : 3;
    for (int e = 0; e < n; ++e) {
      Event ev;
      ev.attributes.insert("concept:name", AttributeValue(actions[e % 3]));
      ev.attributes.insert("id", AttributeValue(std::int64_t(event_id++)));
      ev.attributes.insert("amount", AttributeValue(2.5 * e - 3.5));
      ev.attributes.insert("approved", AttributeValue(e % 2 == 0));
      Timestamp ts;
      ts.utc_millis = 1'302'703'351'199 + event_id * 60'000;
      ts.tz_offset_minutes = 120;
      ev.attributes.insert("time:timestamp", AttributeValue(ts));
      trace.events.push_back(std::move(ev));
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

}  // namespace

TEST_CASE("timestamp rendering and parsing round trip") {
  Timestamp t = parse_timestamp("2011-04-13T14:02:31.199+02:00");
  CHECK(render_timestamp(t) == "2011-04-13T14:02:31.199+02:00");
  CHECK(t.tz_offset_minutes == 120);

  // offset shifts the UTC instant
  Timestamp utc = parse_timestamp("2011-04-13T12:02:31.199Z");
  CHECK(utc.utc_millis == t.utc_millis);
  CHECK(render_timestamp(utc) == "2011-04-13T12:02:31.199Z");

  CHECK(render_timestamp(parse_timestamp("2024-02-29T23:59:59.999Z")) ==
        "2024-02-29T23:59:59.999Z");
  CHECK(render_timestamp(parse_timestamp("1969-12-31T23:59:59.001Z")) ==
        "1969-12-31T23:59:59.001Z");

  // negative offset, no colon form accepted
  Timestamp neg = parse_timestamp("2019-06-01T12:00:00-0430");
  CHECK(render_timestamp(neg) == "2019-06-01T12:00:00.000-04:30");

  // fractions are truncated to milliseconds, short fractions padded
  CHECK(parse_timestamp("2020-01-01T10:00:00.5Z").utc_millis % 1000 == 500);
  CHECK(parse_timestamp("2020-01-01T10:00:00.123456Z").utc_millis % 1000 == 123);

  // no suffix means UTC
  Timestamp bare = parse_timestamp("2020-01-01T10:00:00");
  CHECK(bare.tz_offset_minutes == 0);
  CHECK(render_timestamp(bare) == "2020-01-01T10:00:00.000Z");
}

TEST_CASE("timestamp errors carry line context") {
  CHECK_THROWS_AS(parse_timestamp("garbage"), FormatError);
  CHECK_THROWS_AS(parse_timestamp("2020-13-01T00:00:00Z"), FormatError);
  CHECK_THROWS_AS(parse_timestamp("2020-01-01T00:00:00.Z"), FormatError);
  CHECK_THROWS_AS(parse_timestamp("2020-01-01T00:00:00Zx"), FormatError);
  try {
    parse_timestamp("nope", 7);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 7);
    CHECK(std::string(e.what()).find("(line 7)") != std::string::npos);
  }
}

TEST_CASE("doubles render in shortest round-trip form") {
  CHECK(render_double(2.5) == "2.5");
  CHECK(render_double(-3.5) == "-3.5");
  CHECK(render_double(0.1) == "0.1");
  CHECK(render_double(100.0) == "100");
  CHECK(AttributeValue(42.0).to_display_string() == "42");
  CHECK(AttributeValue(std::int64_t(-7)).to_display_string() == "-7");
  CHECK(AttributeValue(true).to_display_string() == "true");
}

TEST_CASE("attribute map keeps insertion order and unique names") {
  AttrMap m;
  CHECK(m.insert("b", AttributeValue("1")));
  CHECK(m.insert("a", AttributeValue("2")));
  CHECK_FALSE(m.insert("b", AttributeValue("3")));
  CHECK(m.size() == 2);
  CHECK(m.begin()->first == "b");
  CHECK(m.find("b")->text() == "1");
  m.set("b", AttributeValue("4"));
  CHECK(m.find("b")->text() == "4");
  CHECK(m.size() == 2);
  CHECK(m.find("missing") == nullptr);
}

TEST_CASE("semantic roles expose names, paths, and the name-level subset") {
  CHECK(role_name(SemanticRole::ActorInstance) == "ActorInstance");
  CHECK(parse_role("PassiveName") == SemanticRole::PassiveName);
  CHECK_FALSE(parse_role("NotARole").has_value());
  CHECK(role_attribute_path(SemanticRole::ActionName) == "semantic:action:name");
  CHECK(is_name_level(SemanticRole::ObjectStatus));
  CHECK_FALSE(is_name_level(SemanticRole::ActorInstance));
  CHECK_FALSE(is_name_level(SemanticRole::Other));
  int name_level = 0;
  for (SemanticRole r : all_roles())
    if (is_name_level(r)) ++name_level;
  CHECK(name_level == 6);
}

TEST_CASE("minimal and empty logs parse") {
  EventLog minimal = parse_xes(
      "<log><trace><event><string key=\"concept:name\" value=\"a\"/>"
      "</event></trace></log>",
      "test");
  REQUIRE(minimal.traces.size() == 1);
  REQUIRE(minimal.traces[0].events.size() == 1);
  const AttributeValue* v =
      minimal.traces[0].events[0].attributes.find("concept:name");
  REQUIRE(v != nullptr);
  CHECK(v->text() == "a");

  CHECK(parse_xes("<log/>", "test").traces.empty());
  CHECK(parse_xes("<?xml version=\"1.0\"?>\n<log></log>", "test").traces.empty());
}

TEST_CASE("all five attribute kinds parse to the right variants") {
  EventLog log = parse_xes(
      "<log><trace><event>"
      "<string key=\"s\" value=\"text\"/>"
      "<int key=\"i\" value=\"-42\"/>"
      "<float key=\"f\" value=\"2.5\"/>"
      "<boolean key=\"b\" value=\"true\"/>"
      "<date key=\"d\" value=\"2011-04-13T14:02:31.199+02:00\"/>"
      "</event></trace></log>",
      "test");
  const AttrMap& a = log.traces[0].events[0].attributes;
  CHECK(a.find("s")->kind() == AttrKind::String);
  CHECK(a.find("i")->integer() == -42);
  CHECK(a.find("f")->real() == 2.5);
  CHECK(a.find("b")->boolean() == true);
  CHECK(a.find("d")->kind() == AttrKind::Timestamp);
  CHECK(render_timestamp(a.find("d")->timestamp()) ==
        "2011-04-13T14:02:31.199+02:00");
}

TEST_CASE("entities and character references are decoded") {
  EventLog log = parse_xes(
      "<log><trace><event>"
      "<string key=\"s\" value=\"a &amp;&lt;&gt;&quot;&apos; b &#65;&#x42;\"/>"
      "</event></trace></log>",
      "test");
  CHECK(log.traces[0].events[0].attributes.find("s")->text() ==
        "a &<>\"' b AB");
}

TEST_CASE("escaping survives a write and re-read") {
  EventLog log;
  Trace trace;
  Event ev;
  ev.attributes.insert("odd <name> & co", AttributeValue("val \"x\" & 'y' <z>"));
  trace.events.push_back(ev);
  log.traces.push_back(trace);
  EventLog back = parse_xes(render_xes(log), "rendered");
  CHECK(back == log);
}

TEST_CASE("malformed XES reports line context") {
  auto expect_line = [](const std::string& doc, std::size_t line) {
    try {
      parse_xes(doc, "test");
      FAIL_CHECK("expected FormatError for: " << doc);
    } catch (const FormatError& e) {
      CHECK(e.line() == line);
    }
  };
  // unknown element kind
  expect_line("<log>\n<widget/>\n</log>", 2);
  // event directly under log
  expect_line("<log>\n<event/>\n</log>", 2);
  // duplicate attribute key in one event
  expect_line(
      "<log><trace><event><string key=\"a\" value=\"1\"/>\n"
      "<string key=\"a\" value=\"2\"/></event></trace></log>",
      2);
  // bad values
  expect_line("<log>\n<int key=\"i\" value=\"12x\"/>\n</log>", 2);
  expect_line("<log>\n<float key=\"f\" value=\"nan\"/>\n</log>", 2);
  expect_line("<log>\n<boolean key=\"b\" value=\"TRUE\"/>\n</log>", 2);
  expect_line("<log>\n<string value=\"no key\"/>\n</log>", 2);
  // structural problems
  expect_line("<log>\n<trace>\n</log>", 3);
  expect_line("<log>\ntext\n</log>", 2);
  CHECK_THROWS_AS(parse_xes("<notalog/>", "test"), FormatError);
  CHECK_THROWS_AS(read_xes("does_not_exist.xes"), IoError);
}

TEST_CASE("write then re-read is structurally equal, second write identical") {
  EventLog log = sample_log();
  CHECK(log.event_count() == 10);

  std::string path = temp_path("roundtrip.xes");
  write_xes(log, path);
  EventLog back = read_xes(path);
  CHECK(back == log);
  CHECK(render_xes(back) == render_xes(log));
  std::remove(path.c_str());
}

TEST_CASE("header elements and nested sub-attributes survive verbatim") {
  std::string doc =
      "<log xes.version=\"1.0\">\n"
      "  <extension name=\"Concept\" prefix=\"concept\" "
      "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
      "  <global scope=\"event\"><string key=\"concept:name\" "
      "value=\"__INVALID__\"/></global>\n"
      "  <classifier name=\"Activity\" keys=\"concept:name\"/>\n"
      "  <string key=\"concept:name\" value=\"demo\"/>\n"
      "  <trace>\n"
      "    <string key=\"concept:name\" value=\"c1\">\n"
      "      <string key=\"sub\" value=\"nested\"/>\n"
      "    </string>\n"
      "    <event><string key=\"concept:name\" value=\"a\"/></event>\n"
      "  </trace>\n"
      "</log>\n";
  EventLog log = parse_xes(doc, "test");
  CHECK(log.opaque_header.size() == 3);
  CHECK(log.opaque_header[0].find("concept.xesext") != std::string::npos);
  CHECK(log.traces[0].opaque_children.count("concept:name") == 1);

  std::string once = render_xes(log);
  CHECK(once.find("<classifier name=\"Activity\"") != std::string::npos);
  CHECK(once.find("<string key=\"sub\" value=\"nested\"/>") != std::string::npos);
  // write∘read∘write fixpoint
  CHECK(render_xes(parse_xes(once, "once")) == once);
}

TEST_CASE("added semantic attributes coexist with originals in the output") {
  EventLog log;
  Trace trace;
  Event ev;
  ev.attributes.insert("concept:name", AttributeValue("approve order"));
  ev.attributes.insert("semantic:action:name", AttributeValue("approve"));
  trace.events.push_back(ev);
  log.traces.push_back(trace);

  std::string out = render_xes(log);
  CHECK(out.find("key=\"concept:name\" value=\"approve order\"") !=
        std::string::npos);
  CHECK(out.find("key=\"semantic:action:name\" value=\"approve\"") !=
        std::string::npos);
  EventLog back = parse_xes(out, "rendered");
  CHECK(back == log);
}

TEST_CASE("empty log writes and re-reads") {
  EventLog empty;
  std::string path = temp_path("empty.xes");
  write_xes(empty, path);
  EventLog back = read_xes(path);
  CHECK(back.traces.empty());
  CHECK(back == empty);
  std::remove(path.c_str());
}

TEST_CASE("attribute profiles summarize event attributes") {
  EventLog log = parse_xes(
      "<log><trace>"
      "<string key=\"traceonly\" value=\"skip\"/>"
      "<event><float key=\"amount\" value=\"-3.5\"/>"
      "<string key=\"org:resource\" value=\"USER_123\"/></event>"
      "<event><float key=\"amount\" value=\"2.0\"/>"
      "<string key=\"org:resource\" value=\"USER_7\"/></event>"
      "<event><float key=\"amount\" value=\"2.0\"/></event>"
      "</trace></log>",
      "test");
  auto profiles = attribute_profiles(log);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].name == "amount");
  CHECK(profiles[0].inferred_type == AttrKind::Real);
  CHECK(profiles[0].distinct_values.size() == 2);
  CHECK(profiles[0].occurrence_count == 3);
  CHECK_FALSE(profiles[0].distinct_overflow);
  CHECK(profiles[1].name == "org:resource");
  CHECK(profiles[1].inferred_type == AttrKind::String);
  CHECK(profiles[1].distinct_values.size() == 2);
  for (const auto& p : profiles)
    CHECK(p.occurrence_count >= std::int64_t(p.distinct_values.size()));
}

TEST_CASE("mixed declared kinds widen int|float to float, else string") {
  EventLog log = parse_xes(
      "<log><trace>"
      "<event><int key=\"a\" value=\"1\"/><int key=\"b\" value=\"1\"/></event>"
      "<event><float key=\"a\" value=\"1.5\"/>"
      "<string key=\"b\" value=\"x\"/></event>"
      "</trace></log>",
      "test");
  auto profiles = attribute_profiles(log);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].inferred_type == AttrKind::Real);
  CHECK(profiles[1].inferred_type == AttrKind::String);
}

TEST_CASE("profiles ignore trace order") {
  EventLog log = sample_log();
  auto before = attribute_profiles(log);
  std::swap(log.traces[0], log.traces[2]);
  auto after = attribute_profiles(log);
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(before[i].name == after[i].name);
    CHECK(before[i].inferred_type == after[i].inferred_type);
    CHECK(before[i].distinct_values == after[i].distinct_values);
    CHECK(before[i].occurrence_count == after[i].occurrence_count);
  }
}

TEST_CASE("distinct values are capped with an overflow flag") {
  EventLog log;
  Trace trace;
  for (int i = 0; i < 10'001; ++i) {
    Event ev;
    ev.attributes.insert("id", AttributeValue(std::int64_t(i)));
    trace.events.push_back(std::move(ev));
  }
  log.traces.push_back(std::move(trace));
  auto profiles = attribute_profiles(log);
  REQUIRE(profiles.size() == 1);
  CHECK(profiles[0].occurrence_count == 10'001);
  CHECK(profiles[0].distinct_values.size() == 10'000);
  CHECK(profiles[0].distinct_overflow);
}

TEST_CASE("generated thousand-trace log round trips") {
  EventLog log;
  for (int t = 0; t < 1'000; ++t) {
    Trace trace;
    trace.trace_attributes.insert("concept:name",
                                  AttributeValue("c" + std::to_string(t)));
    for (int e = 0; e < 3; ++e) {
      Event ev;
      ev.attributes.insert("concept:name",
                           AttributeValue("act" + std::to_string(e)));
      ev.attributes.insert("n", AttributeValue(std::int64_t(t * 3 + e)));
      trace.events.push_back(std::move(ev));
    }
    log.traces.push_back(std::move(trace));
  }
  std::string path = temp_path("big.xes");
  write_xes(log, path);
  EventLog back = read_xes(path);
  CHECK(back == log);
  std::string again = temp_path("big2.xes");
  write_xes(back, again);
  std::ifstream a(path), b(again);
  std::string sa((std::istreambuf_iterator<char>(a)),
                 std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)),
                 std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  std::remove(path.c_str());
  std::remove(again.c_str());
}
