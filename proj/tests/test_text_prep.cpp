#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "semlog/categorize.hpp"
#include "semlog/errors.hpp"
#include "semlog/pos.hpp"
#include "semlog/rng.hpp"
#include "semlog/tokenize.hpp"
#include "semlog/xes.hpp"

using namespace semlog;

namespace {

PosTagger small_tagger() {
  return PosTagger::from_entries({
      {"create", PosTag::Verb},
      {"approve", PosTag::Verb},
      {"purchase", PosTag::Noun},
      {"order", PosTag::Noun},
      {"invoice", PosTag::Noun},
      {"user", PosTag::Noun},
      {"by", PosTag::Adp},
      {"and", PosTag::Cconj},
  });
}

}  // namespace

TEST_CASE("tokenize splits, lowercases, and drops numerics") {
  CHECK(tokenize("Create_PurchaseOrder") ==
        std::vector<std::string>{"create", "purchase", "order"});
  CHECK(tokenize("USER_123") == std::vector<std::string>{"user"});
  CHECK(tokenize("08_AWB45_005") == std::vector<std::string>{"awb"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("123").empty());
  CHECK(tokenize("  --:/.__  ").empty());
}

TEST_CASE("tokenize handles camel case and separator variety") {
  CHECK(tokenize("approve order") ==
        std::vector<std::string>{"approve", "order"});
  CHECK(tokenize("check-invoice.mismatch") ==
        std::vector<std::string>{"check", "invoice", "mismatch"});
  CHECK(tokenize("org:resource") == std::vector<std::string>{"org", "resource"});
  CHECK(tokenize("XMLFile") == std::vector<std::string>{"xml", "file"});
  CHECK(tokenize("USERName") == std::vector<std::string>{"user", "name"});
  CHECK(tokenize("Order2Cash") == std::vector<std::string>{"order", "cash"});
  CHECK(tokenize("a/b\\c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(tokenize("Fine, thanks!") == std::vector<std::string>{"fine", "thanks"});
}

TEST_CASE("tokenize output is stable under rejoining and never numeric") {
  const char* inputs[] = {"Create_PurchaseOrder", "USER_123", "08_AWB45_005",
                          "approve order", "Declaration FINAL_APPROVED by SUPERVISOR",
                          "t13 adjust document X request unlicensed", "a1b2c3"};
  for (const char* in : inputs) {
    auto once = tokenize(in);
    CHECK(tokenize(join_tokens(once)) == once);
    for (const auto& t : once) {
      CHECK_FALSE(t.empty());
      for (char c : t) {
        CHECK_FALSE(std::isdigit(static_cast<unsigned char>(c)));
        CHECK_FALSE(std::isupper(static_cast<unsigned char>(c)));
        CHECK(std::isalnum(static_cast<unsigned char>(c)));
      }
    }
  }
}

TEST_CASE("pos tagging follows lexicon then suffix rules") {
  PosTagger tagger = small_tagger();
  auto tagged = tagger.tag({"create", "purchase", "order"});
  REQUIRE(tagged.size() == 3);
  CHECK(tagged[0] == Token{"create", PosTag::Verb});
  CHECK(tagged[1] == Token{"purchase", PosTag::Noun});
  CHECK(tagged[2] == Token{"order", PosTag::Noun});

  CHECK(tagger.tag({"user"})[0].pos == PosTag::Noun);
  // unknown short code
  CHECK_FALSE(tagger.in_lexicon("awb"));
  CHECK(tagger.tag({"awb"})[0].pos == PosTag::Propn);

  // suffix heuristics for unknown words
  CHECK(tagger.tag_word("rejected") == PosTag::Verb);
  CHECK(tagger.tag_word("processing") == PosTag::Verb);
  CHECK(tagger.tag_word("declaration") == PosTag::Noun);
  CHECK(tagger.tag_word("shipment") == PosTag::Noun);
  CHECK(tagger.tag_word("completeness") == PosTag::Noun);
  CHECK(tagger.tag_word("manually") == PosTag::Adv);
  CHECK(tagger.tag_word("erroneous") == PosTag::Adj);
  CHECK(tagger.tag_word("administrative") == PosTag::Adj);
  CHECK(tagger.tag_word("conditional") == PosTag::Adj);

  // one-character tokens stay X, vowelless unknowns look like codes
  CHECK(tagger.tag_word("x") == PosTag::X);
  CHECK(tagger.tag_word("srm") == PosTag::Propn);
  CHECK(tagger.tag_word("wrkflw") == PosTag::Propn);
  // unknown long word with vowels falls back to noun
  CHECK(tagger.tag_word("vendor") == PosTag::Noun);

  // lexicon wins over every rule
  CHECK(tagger.tag_word("by") == PosTag::Adp);

  auto out = tagger.tag({"a", "b", "c", "d"});
  CHECK(out.size() == 4);
}

TEST_CASE("pos lexicon round trips through a file") {
  std::string path = "tmp_lexicon.tsv";
  {
    std::ofstream f(path);
    f << "# word list\n\ncreate\tVERB\norder\tNOUN\nby\tADP\n";
    f << "create\tNOUN\n";  // duplicate, first wins
  }
  PosTagger tagger = PosTagger::load(path);
  CHECK(tagger.size() == 3);
  CHECK(tagger.tag_word("create") == PosTag::Verb);
  CHECK(tagger.tag_word("by") == PosTag::Adp);
  std::remove(path.c_str());

  {
    std::ofstream f(path);
    f << "word\tNOTATAG\n";
  }
  CHECK_THROWS_AS(PosTagger::load(path), FormatError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(PosTagger::load("missing_lexicon.tsv"), IoError);
}

TEST_CASE("pos names round trip") {
  for (int i = 0; i <= int(PosTag::X); ++i) {
    PosTag t = PosTag(i);
    CHECK(parse_pos(pos_name(t)) == t);
  }
  CHECK_FALSE(parse_pos("VRB").has_value());
  CHECK(is_content_tag(PosTag::Noun));
  CHECK(is_content_tag(PosTag::Verb));
  CHECK(is_content_tag(PosTag::Adv));
  CHECK(is_content_tag(PosTag::Adj));
  CHECK_FALSE(is_content_tag(PosTag::Propn));
  CHECK_FALSE(is_content_tag(PosTag::X));
}

TEST_CASE("attributes partition into textual, miscellaneous, excluded") {
  EventLog log = parse_xes(
      "<log><trace>"
      "<event>"
      "<string key=\"concept:name\" value=\"Create_PurchaseOrder\"/>"
      "<string key=\"org:resource\" value=\"USER_123\"/>"
      "<boolean key=\"isClosed\" value=\"false\"/>"
      "<int key=\"delta\" value=\"-1\"/>"
      "<int key=\"count\" value=\"3\"/>"
      "<float key=\"amount\" value=\"2.5\"/>"
      "<date key=\"time:timestamp\" value=\"2020-01-01T00:00:00Z\"/>"
      "</event>"
      "<event>"
      "<string key=\"concept:name\" value=\"Approve_Invoice\"/>"
      "<string key=\"org:resource\" value=\"USER_45\"/>"
      "</event>"
      "</trace></log>",
      "test");
  auto partition = categorize_attributes(attribute_profiles(log), small_tagger());

  CHECK(partition.textual == std::set<std::string>{"concept:name"});
  CHECK(partition.miscellaneous ==
        std::set<std::string>{"org:resource", "isClosed", "count"});
  REQUIRE(partition.excluded.size() == 3);
  CHECK(partition.excluded.at("delta") == kReasonNumeric);
  CHECK(partition.excluded.at("amount") == kReasonNumeric);
  CHECK(partition.excluded.at("time:timestamp") == kReasonTimestamp);

  // tokenizations of every distinct string value are cached
  CHECK(partition.token_cache.count("Create_PurchaseOrder") == 1);
  CHECK(partition.token_cache.count("USER_45") == 1);
  const auto& cached = partition.token_cache.at("Create_PurchaseOrder");
  REQUIRE(cached.size() == 3);
  CHECK(cached[0] == Token{"create", PosTag::Verb});
}

TEST_CASE("single-shape or content-free string attributes are miscellaneous") {
  EventLog log = parse_xes(
      "<log><trace><event>"
      "<string key=\"same\" value=\"USER_1\"/>"
      "<string key=\"codes\" value=\"qq zz\"/>"
      "</event><event>"
      "<string key=\"same\" value=\"user.9\"/>"
      "<string key=\"codes\" value=\"rr ss tt\"/>"
      "</event></trace></log>",
      "test");
  auto partition = categorize_attributes(attribute_profiles(log), small_tagger());
  // "same" collapses to one tokenization; "codes" has no content tokens
  CHECK(partition.textual.empty());
  CHECK(partition.miscellaneous == std::set<std::string>{"same", "codes"});
}

TEST_CASE("partition covers every profiled attribute exactly once") {
  std::mt19937_64 gen(7);
  PosTagger tagger = small_tagger();
  for (int round = 0; round < 50; ++round) {
    EventLog log;
    Trace trace;
    int nattrs = 1 + int(gen() % 8);
    int nevents = 1 + int(gen() % 12);
    for (int e = 0; e < nevents; ++e) {
      Event ev;
      for (int a = 0; a < nattrs; ++a) {
        std::string name = "attr" + std::to_string(a);
        if (gen() % 4 == 0) continue;  // attribute missing on some events
        switch (gen() % 5) {
          case 0:
            ev.attributes.insert(name, AttributeValue("order " +
                                                      std::to_string(gen() % 5)));
            break;
          case 1:
            ev.attributes.insert(name,
                                 AttributeValue(std::int64_t(gen() % 7) - 3));
            break;
          case 2:
            ev.attributes.insert(name, AttributeValue(double(gen() % 100) / 4));
            break;
          case 3:
            ev.attributes.insert(name, AttributeValue(gen() % 2 == 0));
            break;
          case 4:
            ev.attributes.insert(
                name, AttributeValue(Timestamp{std::int64_t(gen() % 1'000'000), 0}));
            break;
        }
      }
      trace.events.push_back(std::move(ev));
    }
    log.traces.push_back(std::move(trace));

    auto profiles = attribute_profiles(log);
    auto partition = categorize_attributes(profiles, tagger);
    std::size_t covered = 0;
    for (const auto& p : profiles) {
      int hits = int(partition.textual.count(p.name)) +
                 int(partition.miscellaneous.count(p.name)) +
                 int(partition.excluded.count(p.name));
      CHECK(hits == 1);
      covered += std::size_t(hits);
    }
    CHECK(covered == profiles.size());
  }
}
