#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "semlog/errors.hpp"
#include "semlog/evaluation.hpp"
#include "semlog/tagger.hpp"
#include "semlog/tokenize.hpp"

using namespace semlog;

namespace {

TaggedChunk chunk(std::size_t b, std::size_t e, SemanticRole role) {
  return TaggedChunk{b, e, "", role};
}

bool same_counts(const MetricsReport& a, const MetricsReport& b) {
  if (a.per_role.size() != b.per_role.size()) return false;
  for (const auto& [role, c] : a.per_role) {
    auto it = b.per_role.find(role);
    if (it == b.per_role.end()) return false;
    if (c.tp != it->second.tp || c.fp != it->second.fp ||
        c.fn != it->second.fn)
      return false;
  }
  return true;
}

// pair matching written the slow explicit way, as an independent check
MetricsReport brute_force_chunks(
    const std::map<std::string, std::vector<TaggedChunk>>& predicted,
    const std::map<std::string, std::vector<TaggedChunk>>& gold) {
  MetricsReport report;
  for (const auto& [value, gold_chunks] : gold) {
    const auto& pred_chunks = predicted.at(value);
    std::vector<bool> pred_matched(pred_chunks.size(), false);
    for (const auto& g : gold_chunks) {
      if (g.role == SemanticRole::Other) continue;
      bool found = false;
      for (std::size_t i = 0; i < pred_chunks.size(); ++i) {
        const auto& p = pred_chunks[i];
        if (pred_matched[i] || p.role == SemanticRole::Other) continue;
        if (p.begin == g.begin && p.end == g.end && p.role == g.role) {
          pred_matched[i] = true;
          found = true;
          break;
        }
      }
      if (found)
        ++report.per_role[g.role].tp;
      else
        ++report.per_role[g.role].fn;
    }
    for (std::size_t i = 0; i < pred_chunks.size(); ++i)
      if (!pred_matched[i] && pred_chunks[i].role != SemanticRole::Other)
        ++report.per_role[pred_chunks[i].role].fp;
  }
  return report;
}

std::vector<int> random_valid_labels(std::mt19937_64& gen, std::size_t len) {
  std::vector<int> labels(len);
  int prev = -1;
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<int> options;
    for (int l = 0; l < kNumBioLabels; ++l)
      if (bio_transition_valid(prev, l)) options.push_back(l);
    labels[i] = options[gen() % options.size()];
    prev = labels[i];
  }
  return labels;
}

}  // namespace

TEST_CASE("score arithmetic") {
  auto s = compute_scores(3, 1, 2);
  CHECK(s.precision == doctest::Approx(0.75));
  CHECK(s.recall == doctest::Approx(0.6));
  CHECK(s.f1 == doctest::Approx(2 * 0.75 * 0.6 / 1.35));
  auto zero = compute_scores(0, 0, 0);
  CHECK(zero.precision == 0.0);
  CHECK(zero.recall == 0.0);
  CHECK(zero.f1 == 0.0);
  auto p_only = compute_scores(0, 0, 5);
  CHECK(p_only.precision == 0.0);
  CHECK(p_only.f1 == 0.0);
}

TEST_CASE("chunk metrics reward only span-and-role identity") {
  std::map<std::string, std::vector<TaggedChunk>> gold = {
      {"create purchase order",
       {chunk(0, 1, SemanticRole::ActionName),
        chunk(1, 3, SemanticRole::ObjectName)}}};
  std::map<std::string, std::vector<TaggedChunk>> pred = {
      {"create purchase order",
       {chunk(0, 1, SemanticRole::ActionName),
        chunk(2, 3, SemanticRole::ObjectName)}}};  // "order" alone
  auto report = chunk_metrics(pred, gold);
  CHECK(report.per_role[SemanticRole::ActionName].tp == 1);
  CHECK(report.per_role[SemanticRole::ObjectName].tp == 0);
  CHECK(report.per_role[SemanticRole::ObjectName].fp == 1);
  CHECK(report.per_role[SemanticRole::ObjectName].fn == 1);

  auto perfect = chunk_metrics(gold, gold);
  CHECK(perfect.micro().f1 == 1.0);
  for (const auto& [role, counts] : perfect.per_role) {
    CHECK(counts.fp == 0);
    CHECK(counts.fn == 0);
  }
}

TEST_CASE("chunk metrics ignore Other and demand matching keys") {
  std::map<std::string, std::vector<TaggedChunk>> gold = {
      {"v", {chunk(0, 2, SemanticRole::Other)}}};
  std::map<std::string, std::vector<TaggedChunk>> pred = {
      {"v", {chunk(0, 1, SemanticRole::Other), chunk(1, 2, SemanticRole::Other)}}};
  auto report = chunk_metrics(pred, gold);
  CHECK(report.totals().tp == 0);
  CHECK(report.totals().fp == 0);
  CHECK(report.totals().fn == 0);
  CHECK(report.gold_entities() == 0);

  std::map<std::string, std::vector<TaggedChunk>> extra = {
      {"v", {}}, {"w", {}}};
  CHECK_THROWS_AS(chunk_metrics(extra, gold), InvalidArgument);
  CHECK_THROWS_AS(chunk_metrics({{"x", {}}}, gold), InvalidArgument);
}

TEST_CASE("attribute metrics treat Other as no prediction") {
  std::map<std::string, SemanticRole> gold = {
      {"a", SemanticRole::ActorInstance}, {"b", SemanticRole::ObjectName},
      {"c", SemanticRole::ObjectName},    {"d", SemanticRole::Other},
      {"e", SemanticRole::ActionName},    {"f", SemanticRole::ActorName}};
  std::map<std::string, SemanticRole> pred = {
      {"a", SemanticRole::ActorName},   // wrong role: FP + FN
      {"b", SemanticRole::ObjectName},  // TP
      {"c", SemanticRole::Other},       // no prediction: FN
      {"d", SemanticRole::ObjectName},  // gold Other: FP only
      // e missing: FN
      {"f", SemanticRole::ActorName}};  // TP
  auto report = attribute_metrics(pred, gold);
  CHECK(report.per_role[SemanticRole::ActorInstance].fn == 1);
  CHECK(report.per_role[SemanticRole::ActorName].fp == 1);
  CHECK(report.per_role[SemanticRole::ActorName].tp == 1);
  CHECK(report.per_role[SemanticRole::ObjectName].tp == 1);
  CHECK(report.per_role[SemanticRole::ObjectName].fn == 1);
  CHECK(report.per_role[SemanticRole::ObjectName].fp == 1);
  CHECK(report.per_role[SemanticRole::ActionName].fn == 1);
  auto t = report.totals();
  CHECK(t.tp == 2);
  CHECK(t.fp == 2);
  CHECK(t.fn == 3);

  auto perfect = attribute_metrics(gold, gold);
  CHECK(perfect.micro().f1 == 1.0);
  CHECK(perfect.gold_entities() == 5);  // the Other attribute is not an entity
}

TEST_CASE("combined_report pools raw counts") {
  MetricsReport a;
  a.per_role[SemanticRole::ActionName] = {1, 0, 0};
  MetricsReport b;
  b.per_role[SemanticRole::ObjectName] = {1, 0, 0};
  auto merged = combined_report(a, b);
  CHECK(merged.micro().f1 == 1.0);
  CHECK(merged.gold_entities() == 2);

  auto same = combined_report(a, MetricsReport{});
  CHECK(same_counts(same, a));

  MetricsReport c;
  c.per_role[SemanticRole::ActionName] = {2, 3, 1};
  auto pooled = combined_report(a, c);
  CHECK(pooled.per_role[SemanticRole::ActionName].tp == 3);
  CHECK(pooled.per_role[SemanticRole::ActionName].fp == 3);
  CHECK(pooled.per_role[SemanticRole::ActionName].fn == 1);
  auto s = pooled.micro();
  CHECK(s.precision == doctest::Approx(3.0 / 6.0));
  CHECK(s.recall == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("randomized chunk metrics agree with explicit pair matching") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 250; ++trial) {
    std::map<std::string, std::vector<TaggedChunk>> gold, pred;
    std::size_t values = 1 + gen() % 4;
    for (std::size_t v = 0; v < values; ++v) {
      std::size_t len = 1 + gen() % 6;
      std::vector<std::string> tokens(len, "t");
      gold["v" + std::to_string(v)] =
          labels_to_chunks(tokens, random_valid_labels(gen, len));
      pred["v" + std::to_string(v)] =
          labels_to_chunks(tokens, random_valid_labels(gen, len));
    }
    auto fast = chunk_metrics(pred, gold);
    auto slow = brute_force_chunks(pred, gold);
    CHECK(same_counts(fast, slow));
    CHECK(std::abs(fast.micro().f1 - slow.micro().f1) <= 1e-12);

    // swapping the sides swaps precision and recall
    auto swapped = chunk_metrics(gold, pred);
    CHECK(swapped.micro().precision == doctest::Approx(fast.micro().recall));
    CHECK(swapped.micro().recall == doctest::Approx(fast.micro().precision));

    // harmonic-mean identity
    auto s = fast.micro();
    CHECK(std::abs(s.f1 * (s.precision + s.recall) -
                   2 * s.precision * s.recall) <= 1e-12);
  }
}

TEST_CASE("gold files parse into folds") {
  std::string text =
      "#LOG alpha\n"
      "#INSTANCES\n"
      "create\tB-ActionName\n"
      "invoice\tB-ObjectName\n"
      "\n"
      "reject\tB-ActionName\n"
      "#ATTRIBUTES\n"
      "doctype\tObjectName\n"
      "org:resource\tActorName\n"
      "#LOG beta\n"
      "#INSTANCES\n"
      "approve\tB-ActionName\n"
      "#ATTRIBUTES\n"
      "amount\tOther\n";
  auto folds = parse_gold(text, "test");
  REQUIRE(folds.size() == 2);
  CHECK(folds[0].log_id == "alpha");
  CHECK(folds[0].instances.size() == 2);
  CHECK(folds[0].instances[0].tokens ==
        std::vector<std::string>{"create", "invoice"});
  CHECK(folds[0].attribute_roles.at("doctype") == SemanticRole::ObjectName);
  CHECK(folds[1].log_id == "beta");
  CHECK(folds[1].instances.size() == 1);
  CHECK(folds[1].attribute_roles.at("amount") == SemanticRole::Other);
}

TEST_CASE("gold file errors carry line numbers") {
  CHECK_THROWS_AS(parse_gold("x\ty\n", "t"), FormatError);
  CHECK_THROWS_AS(parse_gold("#LOG \n", "t"), FormatError);
  CHECK_THROWS_AS(parse_gold("", "t"), FormatError);
  CHECK_THROWS_AS(
      parse_gold("#LOG a\n#ATTRIBUTES\nx\tNotARole\n", "t"), FormatError);
  CHECK_THROWS_AS(
      parse_gold("#LOG a\n#ATTRIBUTES\nx\tOther\nx\tOther\n", "t"),
      FormatError);
  CHECK_THROWS_AS(parse_gold("#LOG a\nstray\n", "t"), FormatError);
  CHECK_THROWS_AS(parse_gold("#LOG a\n#ATTRIBUTES\nnotab\n", "t"),
                  FormatError);

  try {
    parse_gold("#LOG a\n#ATTRIBUTES\nx\tNotARole\n", "t");
    CHECK(false);
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("load_gold reads from disk") {
  std::ofstream("tmp_gold.txt")
      << "#LOG a\n#INSTANCES\ncreate\tB-ActionName\n#ATTRIBUTES\n";
  auto folds = load_gold("tmp_gold.txt");
  CHECK(folds.size() == 1);
  CHECK(folds[0].instances.size() == 1);
  std::remove("tmp_gold.txt");
  CHECK_THROWS_AS(load_gold("tmp_gold_missing.txt"), IoError);
}

namespace {

EvalFold make_fold(const std::string& id, const std::string& corpus,
                   std::map<std::string, SemanticRole> attrs) {
  EvalFold fold;
  fold.log_id = id;
  fold.instances = parse_corpus(corpus, id);
  fold.attribute_roles = std::move(attrs);
  return fold;
}

EmbeddingStore fold_store() {
  EmbeddingStore store;
  store.dimension = 2;
  store.vectors["doctype"] = {1.0, 0.0};
  store.vectors["product"] = {0.9, 0.1};
  store.vectors["item"] = {0.8, 0.2};
  store.vectors["resource"] = {0.0, 1.0};
  store.vectors["group"] = {0.1, 0.9};
  store.vectors["owner"] = {0.2, 0.8};
  return store;
}

}  // namespace

TEST_CASE("loocv on two identical logs is symmetric") {
  std::string corpus =
      "create\tB-ActionName\ninvoice\tB-ObjectName\n\n"
      "approve\tB-ActionName\norder\tB-ObjectName\n";
  std::map<std::string, SemanticRole> attrs = {
      {"doctype", SemanticRole::ObjectName},
      {"resource", SemanticRole::ActorName}};
  std::vector<EvalFold> folds = {make_fold("one", corpus, attrs),
                                 make_fold("two", corpus, attrs)};
  PosTagger pos = PosTagger::from_entries({});
  auto result = loocv(folds, pos, fold_store(), LoocvOptions{});
  REQUIRE(result.folds.size() == 2);
  CHECK(same_counts(result.folds[0].instance, result.folds[1].instance));
  CHECK(same_counts(result.folds[0].attributes, result.folds[1].attributes));
  CHECK(same_counts(result.folds[0].combined, result.folds[1].combined));
  // identical train and test data: the tagger just reproduces the corpus
  CHECK(result.folds[0].instance.micro().f1 == 1.0);

  CHECK_THROWS_AS(loocv({folds[0]}, pos, fold_store(), LoocvOptions{}),
                  InvalidArgument);
}

TEST_CASE("loocv trains strictly on the other folds") {
  std::vector<EvalFold> folds = {
      make_fold("a", "create\tB-ActionName\ninvoice\tB-ObjectName\n",
                {{"doctype", SemanticRole::ObjectName},
                 {"resource", SemanticRole::ActorName}}),
      make_fold("b", "approve\tB-ActionName\norder\tB-ObjectName\n",
                {{"product", SemanticRole::ObjectName},
                 {"group", SemanticRole::ActorName}}),
      make_fold("c", "reject\tB-ActionName\nclaim\tB-ObjectName\n",
                {{"item", SemanticRole::ObjectName},
                 {"owner", SemanticRole::ActorName}})};
  PosTagger pos = PosTagger::from_entries({});
  auto result = loocv(folds, pos, fold_store(), LoocvOptions{});
  REQUIRE(result.folds.size() == 3);
  for (std::size_t held = 0; held < 3; ++held) {
    std::vector<TrainingSample> train;
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == held) continue;
      train.insert(train.end(), folds[i].instances.begin(),
                   folds[i].instances.end());
    }
    CHECK(result.folds[held].train_fingerprint == corpus_fingerprint(train));
  }
}

TEST_CASE("disjoint vocabularies evaluate worse held out than in sample") {
  std::vector<EvalFold> folds = {
      make_fold("a",
                "create\tB-ActionName\ninvoice\tB-ObjectName\n\n"
                "submit\tB-ActionName\nform\tB-ObjectName\n",
                {{"doctype", SemanticRole::ObjectName},
                 {"resource", SemanticRole::ActorName}}),
      make_fold("b",
                "order\tB-ObjectName\napproved\tB-ActionStatus\n\n"
                "budget\tB-ObjectName\nreviewed\tB-ActionStatus\n",
                {{"product", SemanticRole::ObjectName},
                 {"group", SemanticRole::ActorName}}),
      make_fold("c",
                "boss\tB-ActorName\nrejects\tB-ActionName\nclaim\tB-ObjectName\n\n"
                "owner\tB-ActorName\narchives\tB-ActionName\nreport\tB-ObjectName\n",
                {{"item", SemanticRole::ObjectName},
                 {"owner", SemanticRole::ActorName}})};
  PosTagger pos = PosTagger::from_entries({});
  LoocvOptions options;

  std::vector<TrainingSample> all;
  for (const auto& f : folds)
    all.insert(all.end(), f.instances.begin(), f.instances.end());
  auto full = train_tagger(all, options.tagger_epochs, options.seed, pos);
  std::map<std::string, std::vector<TaggedChunk>> gold, pred;
  for (const auto& s : all) {
    auto key = join_tokens(s.tokens);
    gold[key] = labels_to_chunks(s.tokens, s.labels);
    pred[key] = tag_tokens(full, pos.tag(s.tokens));
  }
  double train_f1 = chunk_metrics(pred, gold).micro().f1;

  auto result = loocv(folds, pos, fold_store(), options);
  MetricsReport held_out;
  for (const auto& fold : result.folds)
    held_out = combined_report(held_out, fold.instance);
  CHECK(train_f1 == 1.0);
  CHECK(held_out.micro().f1 < train_f1);
}

TEST_CASE("metric tables render deterministically") {
  MetricsReport report;
  report.per_role[SemanticRole::ActionName] = {3, 1, 2};
  report.per_role[SemanticRole::ObjectName] = {5, 0, 0};
  auto text = render_metrics(report, "instance level");
  CHECK(text.find("instance level") != std::string::npos);
  CHECK(text.find("ActionName") != std::string::npos);
  CHECK(text.find("overall") != std::string::npos);
  CHECK(text.find("0.750") != std::string::npos);
  CHECK(text == render_metrics(report, "instance level"));
}
