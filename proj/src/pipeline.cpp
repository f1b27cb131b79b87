#include "semlog/pipeline.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "semlog/analysis.hpp"
#include "semlog/attr_classify.hpp"
#include "semlog/categorize.hpp"
#include "semlog/errors.hpp"
#include "semlog/evaluation.hpp"
#include "semlog/tokenize.hpp"
#include "semlog/xes.hpp"

namespace semlog {

namespace {

using nlohmann::json;

double parse_real_value(const std::string& key, const std::string& value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw FormatError("config value for '" + key + "' must be a number, got '" +
                      value + "'");
  return out;
}

std::uint64_t parse_uint_value(const std::string& key,
                               const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw FormatError("config value for '" + key +
                      "' must be a non-negative integer, got '" + value + "'");
  return out;
}

bool is_path_key(const std::string& key) {
  static const std::set<std::string> keys = {
      "pos-lexicon", "corpus",    "embeddings",        "labeled-names",
      "actor-lexicon", "lifecycle-lexicon", "gazetteer", "tagger-model",
      "name-model"};
  return keys.count(key) != 0;
}

const char* kind_label(AttrKind k) {
  switch (k) {
    case AttrKind::String: return "string";
    case AttrKind::Integer: return "integer";
    case AttrKind::Real: return "real";
    case AttrKind::Boolean: return "boolean";
    case AttrKind::Timestamp: return "timestamp";
  }
  return "?";
}

std::vector<std::string> phrases_of(
    const std::vector<std::pair<std::string, SemanticRole>>& entries) {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& [phrase, role] : entries) out.push_back(phrase);
  return out;
}

std::vector<std::string> load_optional_phrases(const std::string& path) {
  return path.empty() ? std::vector<std::string>{} : load_phrase_list(path);
}

std::vector<std::pair<std::string, SemanticRole>> load_optional_lifecycle(
    const std::string& path) {
  return path.empty() ? std::vector<std::pair<std::string, SemanticRole>>{}
                      : load_lifecycle_lexicon(path);
}

/// Trains per config unless a pretrained model path is set. The corpus
/// is the caller's because annotate reuses it for context templates.
TaggerModel pipeline_tagger(const PipelineConfig& cfg, const PosTagger& pos,
                            const std::vector<TrainingSample>& corpus) {
  if (!cfg.tagger_model.empty()) return load_tagger_model(cfg.tagger_model);
  if (corpus.empty())
    throw InvalidArgument("tagger training corpus '" + cfg.corpus +
                          "' has no samples");
  auto actor = load_optional_phrases(cfg.actor_lexicon);
  auto lifecycle = load_optional_lifecycle(cfg.lifecycle_lexicon);
  auto samples = augment_corpus(
      corpus, actor, lifecycle, actor.empty() ? 0 : cfg.augment_actors,
      lifecycle.empty() ? 0 : cfg.augment_statuses, cfg.seed_tagger);
  return train_tagger(samples, cfg.tagger_epochs, cfg.seed_tagger, pos,
                      phrase_word_set(actor),
                      phrase_word_set(phrases_of(lifecycle)));
}

NameClassifier pipeline_name_classifier(const PipelineConfig& cfg,
                                        const EmbeddingStore& store) {
  if (!cfg.name_model.empty()) return load_name_classifier(cfg.name_model);
  auto labeled = load_labeled_names(cfg.labeled_names);
  return train_name_classifier(labeled, store, cfg.learning_rate,
                               cfg.classifier_epochs, cfg.l2);
}

std::string format_chunks(const std::vector<TaggedChunk>& chunks) {
  std::string out;
  for (const auto& c : chunks) {
    if (!out.empty()) out += "  ";
    out += c.text + "\\" + std::string(role_name(c.role));
  }
  return out;
}

json metrics_json(const MetricsReport& report) {
  json j;
  auto micro = report.micro();
  auto totals = report.totals();
  j["micro"] = {{"precision", micro.precision},
                {"recall", micro.recall},
                {"f1", micro.f1}};
  j["counts"] = {{"tp", totals.tp}, {"fp", totals.fp}, {"fn", totals.fn}};
  json roles = json::object();
  for (const auto& [role, counts] : report.per_role) {
    auto s = report.role_scores(role);
    roles[std::string(role_name(role))] = {
        {"tp", counts.tp},       {"fp", counts.fp},
        {"fn", counts.fn},       {"precision", s.precision},
        {"recall", s.recall},    {"f1", s.f1}};
  }
  j["roles"] = std::move(roles);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("write failure on '" + path + "'");
}

}  // namespace

PipelineConfig default_config() {
  PipelineConfig cfg;
  const std::string data = SEMLOG_DATA_DIR;
  cfg.pos_lexicon = data + "/pos_lexicon.tsv";
  cfg.corpus = data + "/corpus.tsv";
  cfg.embeddings = data + "/embeddings_50d.txt";
  cfg.labeled_names = data + "/attribute_names.tsv";
  cfg.actor_lexicon = data + "/actor_lexicon.txt";
  cfg.lifecycle_lexicon = data + "/lifecycle_lexicon.tsv";
  cfg.gazetteer = data + "/gazetteer.txt";
  return cfg;
}

void apply_config_entry(PipelineConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "tau") {
    double tau = parse_real_value(key, value);
    if (tau < 0.0 || tau > 1.0)
      throw FormatError("tau must lie in [0,1], got '" + value + "'");
    cfg.tau = tau;
  } else if (key == "policy") {
    if (value == "list")
      cfg.policy = MultiValuePolicy::SingleListAttribute;
    else if (value == "indexed")
      cfg.policy = MultiValuePolicy::IndexedAttributes;
    else
      throw FormatError("policy must be 'list' or 'indexed', got '" + value +
                        "'");
  } else if (key == "seed-tagger") {
    cfg.seed_tagger = parse_uint_value(key, value);
  } else if (key == "seed-sample") {
    cfg.seed_sample = parse_uint_value(key, value);
  } else if (key == "tagger-epochs") {
    cfg.tagger_epochs = std::uint32_t(parse_uint_value(key, value));
  } else if (key == "learning-rate") {
    cfg.learning_rate = parse_real_value(key, value);
  } else if (key == "classifier-epochs") {
    cfg.classifier_epochs = std::uint32_t(parse_uint_value(key, value));
  } else if (key == "l2") {
    cfg.l2 = parse_real_value(key, value);
  } else if (key == "max-contexts") {
    cfg.max_contexts = std::size_t(parse_uint_value(key, value));
  } else if (key == "domain-sample") {
    cfg.domain_sample = std::size_t(parse_uint_value(key, value));
  } else if (key == "augment-actors") {
    cfg.augment_actors = std::size_t(parse_uint_value(key, value));
  } else if (key == "augment-statuses") {
    cfg.augment_statuses = std::size_t(parse_uint_value(key, value));
  } else if (key == "pos-lexicon") {
    cfg.pos_lexicon = value;
  } else if (key == "corpus") {
    cfg.corpus = value;
  } else if (key == "embeddings") {
    cfg.embeddings = value;
  } else if (key == "labeled-names") {
    cfg.labeled_names = value;
  } else if (key == "actor-lexicon") {
    cfg.actor_lexicon = value;
  } else if (key == "lifecycle-lexicon") {
    cfg.lifecycle_lexicon = value;
  } else if (key == "gazetteer") {
    cfg.gazetteer = value;
  } else if (key == "tagger-model") {
    cfg.tagger_model = value;
  } else if (key == "name-model") {
    cfg.name_model = value;
  } else {
    throw FormatError("unknown config key '" + key + "'");
  }
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  auto dir = std::filesystem::path(path).parent_path();

  PipelineConfig cfg = default_config();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw FormatError(path + ": expected key=value", lineno);
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (is_path_key(key) && !value.empty() &&
        std::filesystem::path(value).is_relative())
      value = (dir / value).lexically_normal().string();
    try {
      apply_config_entry(cfg, key, value);
    } catch (const FormatError& e) {
      throw FormatError(path + ": " + e.what(), lineno);
    }
  }
  return cfg;
}

void cmd_categorize(const std::string& log_path, const PipelineConfig& cfg,
                    std::ostream& out) {
  EventLog log = read_xes(log_path);
  PosTagger pos = PosTagger::load(cfg.pos_lexicon);
  auto profiles = attribute_profiles(log);
  auto part = categorize_attributes(profiles, pos);

  for (const auto& profile : profiles) {
    out << profile.name << '\t';
    if (auto it = part.excluded.find(profile.name); it != part.excluded.end()) {
      out << "excluded\t" << it->second;
    } else if (part.textual.count(profile.name)) {
      out << "textual\t" << (profile.distinct_overflow ? ">=" : "")
          << profile.distinct_values.size() << " distinct values";
    } else {
      out << "miscellaneous\t" << kind_label(profile.inferred_type);
    }
    out << '\n';
  }
  out << part.textual.size() << " textual, " << part.miscellaneous.size()
      << " miscellaneous, " << part.excluded.size() << " excluded\n";
}

void cmd_train_tagger(const std::string& corpus_path,
                      const std::string& model_path, const PipelineConfig& cfg,
                      std::ostream& out) {
  auto corpus = load_corpus(corpus_path);
  if (corpus.empty())
    throw InvalidArgument("corpus '" + corpus_path + "' has no samples");
  PosTagger pos = PosTagger::load(cfg.pos_lexicon);

  PipelineConfig train_cfg = cfg;
  train_cfg.tagger_model.clear();
  train_cfg.corpus = corpus_path;
  TaggerModel model = pipeline_tagger(train_cfg, pos, corpus);

  std::map<std::string, std::vector<TaggedChunk>> predicted, gold;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::string key = std::to_string(i);
    predicted.emplace(key, tag_tokens(model, pos.tag(corpus[i].tokens)));
    gold.emplace(key, labels_to_chunks(corpus[i].tokens, corpus[i].labels));
  }
  auto report = chunk_metrics(predicted, gold);

  save_tagger_model(model, model_path);
  char f1[16];
  std::snprintf(f1, sizeof f1, "%.3f", report.micro().f1);
  out << "trained " << model.epochs << " epochs on " << corpus.size()
      << " corpus samples, " << model.feature_weights.size() << " features\n"
      << "training micro-F1 " << f1 << '\n'
      << "model written to " << model_path << '\n';
}

void cmd_tag(const std::vector<std::string>& values, const PipelineConfig& cfg,
             std::ostream& out) {
  PosTagger pos = PosTagger::load(cfg.pos_lexicon);
  auto corpus =
      cfg.tagger_model.empty() ? load_corpus(cfg.corpus)
                               : std::vector<TrainingSample>{};
  TaggerModel model = pipeline_tagger(cfg, pos, corpus);
  for (const auto& value : values)
    out << value << " -> " << format_chunks(tag_value(model, pos, value))
        << '\n';
}

void cmd_train_classifier(const std::string& names_path,
                          const std::string& model_path,
                          const PipelineConfig& cfg, std::ostream& out) {
  auto labeled = load_labeled_names(names_path);
  EmbeddingStore store = load_embeddings(cfg.embeddings);
  NameClassifier model = train_name_classifier(
      labeled, store, cfg.learning_rate, cfg.classifier_epochs, cfg.l2);

  std::size_t covered = 0, correct = 0;
  for (const auto& [name, role] : labeled) {
    auto [vec, ok] = embed_name(store, name);
    if (!ok) continue;
    ++covered;
    if (classify_name(model, store, name).role == role) ++correct;
  }
  save_name_classifier(model, model_path);

  out << "trained on " << covered << " of " << labeled.size()
      << " labeled names, " << model.classes.size() << " classes\n";
  char acc[16];
  std::snprintf(acc, sizeof acc, "%.3f",
                covered ? double(correct) / double(covered) : 0.0);
  out << "training accuracy " << acc << '\n'
      << "model written to " << model_path << '\n';
}

void cmd_annotate(const std::string& log_path, const std::string& out_path,
                  const std::string& sidecar_path, const PipelineConfig& cfg,
                  std::ostream& out) {
  EventLog log = read_xes(log_path);
  PosTagger pos = PosTagger::load(cfg.pos_lexicon);
  auto profiles = attribute_profiles(log);
  auto part = categorize_attributes(profiles, pos);

  auto corpus = load_corpus(cfg.corpus);
  TaggerModel tagger = pipeline_tagger(cfg, pos, corpus);
  EmbeddingStore store = load_embeddings(cfg.embeddings);
  NameClassifier names = pipeline_name_classifier(cfg, store);
  std::vector<ContextTemplate> contexts;
  try {
    contexts = select_contexts(corpus, cfg.max_contexts);
  } catch (const InvalidArgument&) {
    // classify_attribute falls back to the name result and says so
  }
  auto gazetteer = cfg.gazetteer.empty() ? std::unordered_set<std::string>{}
                                         : load_gazetteer(cfg.gazetteer);

  std::map<std::string, std::map<std::string, std::vector<TaggedChunk>>> taggings;
  std::map<std::string, SemanticRole> attribute_roles;
  std::vector<std::pair<std::string, json>> records;
  std::size_t noun_only_count = 0;

  auto decide = [&](json& rec, const std::string& name, AttributeKind kind,
                    const std::vector<std::string>& sample) {
    auto decision = classify_attribute(name, kind, sample, names, store,
                                       tagger, pos, contexts, cfg.tau);
    SemanticRole role = refine_instance_level(decision.role, sample, gazetteer, pos);
    rec["role"] = std::string(role_name(role));
    rec["confidence"] = decision.confidence;
    rec["method"] = decision.method;
    if (!decision.warning.empty()) rec["warning"] = decision.warning;
    if (role != decision.role) rec["instance_refined"] = true;
    if (role != SemanticRole::Other) attribute_roles[name] = role;
  };

  for (const auto& profile : profiles) {
    json rec;
    rec["attribute"] = profile.name;
    if (auto it = part.excluded.find(profile.name); it != part.excluded.end()) {
      rec["category"] = "excluded";
      rec["reason"] = it->second;
      records.emplace_back(profile.name, std::move(rec));
      continue;
    }

    std::vector<std::string> domain;
    domain.reserve(profile.distinct_values.size());
    for (const auto& v : profile.distinct_values)
      domain.push_back(v.to_display_string());
    auto sample = sample_domain(domain, cfg.domain_sample, cfg.seed_sample);

    if (part.textual.count(profile.name)) {
      rec["category"] = "textual";
      std::map<std::string, TaggedValue> tagged;
      for (const auto& value : domain) {
        auto cached = part.token_cache.find(value);
        std::vector<Token> tokens = cached != part.token_cache.end()
                                        ? cached->second
                                        : pos.tag(tokenize(value));
        auto chunks = tag_tokens(tagger, tokens);
        tagged.emplace(value, TaggedValue{std::move(tokens), std::move(chunks)});
      }
      if (detect_noun_only(tagged)) {
        ++noun_only_count;
        rec["treatment"] = "attribute-level";
        rec["noun_only"] = true;
        decide(rec, profile.name, AttributeKind::NounOnly, sample);
      } else {
        rec["treatment"] = "instance-level";
        rec["values"] = domain.size();
        auto& per_value = taggings[profile.name];
        for (auto& [value, tv] : tagged)
          per_value.emplace(value, std::move(tv.chunks));
      }
    } else {
      rec["category"] = "miscellaneous";
      rec["type"] = kind_label(profile.inferred_type);
      rec["treatment"] = "attribute-level";
      decide(rec, profile.name, AttributeKind::Miscellaneous, sample);
    }
    records.emplace_back(profile.name, std::move(rec));
  }

  // Boolean attributes sharing a status role collapse into one value per
  // event naming the flags that are set.
  std::vector<RoleAssignment> consolidated;
  for (SemanticRole status :
       {SemanticRole::ObjectStatus, SemanticRole::ActionStatus}) {
    std::set<std::string> group;
    for (const auto& profile : profiles) {
      if (profile.inferred_type != AttrKind::Boolean) continue;
      auto it = attribute_roles.find(profile.name);
      if (it != attribute_roles.end() && it->second == status)
        group.insert(profile.name);
    }
    if (group.size() < 2) continue;
    auto merged = consolidate_boolean_status(log, group);
    std::string source = join_list_value({group.begin(), group.end()});
    for (const auto& name : group) attribute_roles.erase(name);
    for (auto& [name, rec] : records)
      if (group.count(name)) rec["consolidated"] = true;
    for (std::size_t t = 0; t < merged.size(); ++t)
      for (std::size_t e = 0; e < merged[t].size(); ++e)
        if (merged[t][e])
          consolidated.push_back(
              {t, e, status, *merged[t][e], source, false, 0, 0});
  }

  auto assignments = collect_assignments(log, taggings, attribute_roles);
  assignments.insert(assignments.end(), consolidated.begin(),
                     consolidated.end());
  EventLog augmented = augment_log(log, assignments, cfg.policy);
  write_xes(augmented, out_path);

  std::ofstream side(sidecar_path, std::ios::trunc);
  if (!side) throw IoError("cannot open '" + sidecar_path + "' for writing");
  for (const auto& [name, rec] : records) side << rec.dump() << '\n';
  if (!side) throw IoError("write failure on '" + sidecar_path + "'");

  out << "read " << log.traces.size() << " traces, " << log.event_count()
      << " events\n"
      << "attributes: " << part.textual.size() << " textual ("
      << noun_only_count << " noun-only), " << part.miscellaneous.size()
      << " miscellaneous, " << part.excluded.size() << " excluded\n"
      << "wrote " << assignments.size() << " semantic values to " << out_path
      << '\n'
      << "decision report: " << sidecar_path << '\n';
}

void cmd_evaluate(const std::string& gold_path, const std::string& report_path,
                  const PipelineConfig& cfg, std::ostream& out) {
  auto folds = load_gold(gold_path);
  PosTagger pos = PosTagger::load(cfg.pos_lexicon);
  EmbeddingStore store = load_embeddings(cfg.embeddings);

  LoocvOptions options;
  options.tagger_epochs = cfg.tagger_epochs;
  options.seed = cfg.seed_tagger;
  options.learning_rate = cfg.learning_rate;
  options.classifier_epochs = cfg.classifier_epochs;
  options.l2 = cfg.l2;
  options.actor_words =
      phrase_word_set(load_optional_phrases(cfg.actor_lexicon));
  options.lifecycle_words = phrase_word_set(
      phrases_of(load_optional_lifecycle(cfg.lifecycle_lexicon)));

  auto result = loocv(folds, pos, store, options);
  for (const auto& fold : result.folds) {
    out << render_metrics(fold.instance, "fold " + fold.log_id + ": value chunks")
        << render_metrics(fold.attributes,
                          "fold " + fold.log_id + ": attribute roles")
        << render_metrics(fold.combined, "fold " + fold.log_id + ": combined");
  }
  out << render_metrics(result.aggregate, "aggregate over all folds");

  if (!report_path.empty()) {
    json j;
    j["folds"] = json::array();
    for (const auto& fold : result.folds) {
      json f;
      f["log"] = fold.log_id;
      f["train_fingerprint"] = fold.train_fingerprint;
      f["instance"] = metrics_json(fold.instance);
      f["attributes"] = metrics_json(fold.attributes);
      f["combined"] = metrics_json(fold.combined);
      j["folds"].push_back(std::move(f));
    }
    j["aggregate"] = metrics_json(result.aggregate);
    write_text_file(report_path, j.dump(2) + "\n");
    out << "report written to " << report_path << '\n';
  }
}

void cmd_analyze_refine(const std::string& log_path,
                        const std::string& out_path, std::ostream& out) {
  EventLog log = read_xes(log_path);
  auto map = refine_event_classes(log);
  std::string text = render_refinement(map);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
    out << "refinement written to " << out_path << '\n';
  }
}

void cmd_analyze_dfg(const std::string& log_path, const std::string& object,
                     double fraction, const std::string& out_path,
                     std::ostream& out) {
  EventLog log = read_xes(log_path);
  auto graph = object_dfg(log, object, fraction);
  if (out_path.empty()) {
    out << render_dot(graph);
  } else {
    export_dot(graph, out_path);
    out << "DOT graph for '" << object << "' (" << graph.traces
        << " traces) written to " << out_path << '\n';
  }
}

}  // namespace semlog
