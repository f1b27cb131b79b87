#include "semlog/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "semlog/errors.hpp"
#include "semlog/name_classifier.hpp"
#include "semlog/tagger.hpp"
#include "semlog/tokenize.hpp"

namespace semlog {

Scores compute_scores(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  Scores s;
  if (tp + fp > 0) s.precision = double(tp) / double(tp + fp);
  if (tp + fn > 0) s.recall = double(tp) / double(tp + fn);
  if (s.precision + s.recall > 0)
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

RoleCounts MetricsReport::totals() const {
  RoleCounts t;
  for (const auto& [role, c] : per_role) {
    t.tp += c.tp;
    t.fp += c.fp;
    t.fn += c.fn;
  }
  return t;
}

Scores MetricsReport::micro() const {
  RoleCounts t = totals();
  return compute_scores(t.tp, t.fp, t.fn);
}

Scores MetricsReport::role_scores(SemanticRole r) const {
  auto it = per_role.find(r);
  if (it == per_role.end()) return {};
  return compute_scores(it->second.tp, it->second.fp, it->second.fn);
}

std::int64_t MetricsReport::gold_entities() const {
  RoleCounts t = totals();
  return t.tp + t.fn;
}

MetricsReport chunk_metrics(
    const std::map<std::string, std::vector<TaggedChunk>>& predicted,
    const std::map<std::string, std::vector<TaggedChunk>>& gold) {
  if (predicted.size() != gold.size())
    throw InvalidArgument("prediction and gold cover different value sets");
  MetricsReport report;
  for (const auto& [value, gold_chunks] : gold) {
    auto pred_it = predicted.find(value);
    if (pred_it == predicted.end())
      throw InvalidArgument("no prediction for value '" + value + "'");
    const auto& pred_chunks = pred_it->second;
    auto same = [](const TaggedChunk& a, const TaggedChunk& b) {
      return a.begin == b.begin && a.end == b.end && a.role == b.role;
    };
    for (const auto& g : gold_chunks) {
      if (g.role == SemanticRole::Other) continue;
      bool hit = std::any_of(pred_chunks.begin(), pred_chunks.end(),
                             [&](const TaggedChunk& p) { return same(p, g); });
      auto& c = report.per_role[g.role];
      if (hit)
        ++c.tp;
      else
        ++c.fn;
    }
    for (const auto& p : pred_chunks) {
      if (p.role == SemanticRole::Other) continue;
      bool hit = std::any_of(gold_chunks.begin(), gold_chunks.end(),
                             [&](const TaggedChunk& g) { return same(p, g); });
      if (!hit) ++report.per_role[p.role].fp;
    }
  }
  return report;
}

MetricsReport attribute_metrics(
    const std::map<std::string, SemanticRole>& predicted,
    const std::map<std::string, SemanticRole>& gold) {
  MetricsReport report;
  for (const auto& [name, gold_role] : gold) {
    auto it = predicted.find(name);
    SemanticRole pred =
        it == predicted.end() ? SemanticRole::Other : it->second;
    if (gold_role == SemanticRole::Other) {
      if (pred != SemanticRole::Other) ++report.per_role[pred].fp;
      continue;
    }
    if (pred == gold_role) {
      ++report.per_role[gold_role].tp;
    } else {
      ++report.per_role[gold_role].fn;
      if (pred != SemanticRole::Other) ++report.per_role[pred].fp;
    }
  }
  return report;
}

MetricsReport combined_report(const MetricsReport& a, const MetricsReport& b) {
  MetricsReport merged = a;
  for (const auto& [role, c] : b.per_role) {
    auto& m = merged.per_role[role];
    m.tp += c.tp;
    m.fp += c.fp;
    m.fn += c.fn;
  }
  return merged;
}

std::string render_metrics(const MetricsReport& report,
                           const std::string& title) {
  std::ostringstream out;
  out << title << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "  %-18s %7s %7s %7s %7s %7s %7s\n", "role",
                "gold", "tp", "fp", "prec", "rec", "f1");
  out << line;
  for (const auto& [role, c] : report.per_role) {
    Scores s = compute_scores(c.tp, c.fp, c.fn);
    std::snprintf(line, sizeof line,
                  "  %-18s %7lld %7lld %7lld %7.3f %7.3f %7.3f\n",
                  std::string(role_name(role)).c_str(),
                  static_cast<long long>(c.tp + c.fn),
                  static_cast<long long>(c.tp), static_cast<long long>(c.fp),
                  s.precision, s.recall, s.f1);
    out << line;
  }
  RoleCounts t = report.totals();
  Scores s = report.micro();
  std::snprintf(line, sizeof line,
                "  %-18s %7lld %7lld %7lld %7.3f %7.3f %7.3f\n", "overall",
                static_cast<long long>(t.tp + t.fn),
                static_cast<long long>(t.tp), static_cast<long long>(t.fp),
                s.precision, s.recall, s.f1);
  out << line;
  return out.str();
}

std::vector<EvalFold> parse_gold(const std::string& content,
                                 const std::string& origin) {
  std::vector<EvalFold> folds;
  enum class Section { None, Instances, Attributes };
  Section section = Section::None;
  std::string instance_block;

  auto flush_instances = [&](EvalFold& fold) {
    if (instance_block.empty()) return;
    auto samples = parse_corpus(
        instance_block, origin + " (#INSTANCES of " + fold.log_id + ")");
    fold.instances.insert(fold.instances.end(), samples.begin(),
                          samples.end());
    instance_block.clear();
  };

  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#LOG", 0) == 0) {
      if (!folds.empty()) flush_instances(folds.back());
      std::string id = line.substr(4);
      std::size_t start = id.find_first_not_of(" \t");
      if (start == std::string::npos)
        throw FormatError(origin + ": #LOG needs an identifier", lineno);
      folds.emplace_back();
      folds.back().log_id = id.substr(start);
      section = Section::None;
      continue;
    }
    if (line == "#INSTANCES" || line == "#ATTRIBUTES") {
      if (folds.empty())
        throw FormatError(origin + ": section before any #LOG", lineno);
      flush_instances(folds.back());
      section = line == "#INSTANCES" ? Section::Instances : Section::Attributes;
      continue;
    }
    if (folds.empty()) {
      if (line.empty() || line[0] == '#') continue;
      throw FormatError(origin + ": content before any #LOG", lineno);
    }
    switch (section) {
      case Section::None:
        if (!line.empty())
          throw FormatError(origin + ": content outside a section", lineno);
        break;
      case Section::Instances:
        instance_block += line;
        instance_block += '\n';
        break;
      case Section::Attributes: {
        if (line.empty()) break;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
          throw FormatError(origin + ": expected attr<TAB>Role", lineno);
        std::string name = line.substr(0, tab);
        auto role = parse_role(line.substr(tab + 1));
        if (!role)
          throw FormatError(
              origin + ": unknown role '" + line.substr(tab + 1) + "'", lineno);
        if (!folds.back().attribute_roles.emplace(name, *role).second)
          throw FormatError(origin + ": duplicate attribute '" + name + "'",
                            lineno);
        break;
      }
    }
  }
  if (!folds.empty()) flush_instances(folds.back());
  if (folds.empty()) throw FormatError(origin + ": no #LOG sections");
  return folds;
}

std::vector<EvalFold> load_gold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gold file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gold(buf.str(), path);
}

LoocvResult loocv(const std::vector<EvalFold>& folds, const PosTagger& pos,
                  const EmbeddingStore& store, const LoocvOptions& options) {
  if (folds.size() < 2)
    throw InvalidArgument("leave-one-out needs at least two logs");

  LoocvResult result;
  for (std::size_t held = 0; held < folds.size(); ++held) {
    std::vector<TrainingSample> train;
    std::vector<std::pair<std::string, SemanticRole>> labeled;
    for (std::size_t i = 0; i < folds.size(); ++i) {
      if (i == held) continue;
      train.insert(train.end(), folds[i].instances.begin(),
                   folds[i].instances.end());
      for (const auto& [name, role] : folds[i].attribute_roles)
        labeled.emplace_back(name, role);
    }
    auto tagger =
        train_tagger(train, options.tagger_epochs, options.seed, pos,
                     options.actor_words, options.lifecycle_words);
    auto names = train_name_classifier(labeled, store, options.learning_rate,
                                       options.classifier_epochs, options.l2);

    std::map<std::string, std::vector<TaggedChunk>> gold_chunks;
    std::map<std::string, std::vector<TaggedChunk>> pred_chunks;
    for (const auto& sample : folds[held].instances) {
      std::string key = join_tokens(sample.tokens);
      if (gold_chunks.count(key)) continue;  // unique values count once
      gold_chunks[key] = labels_to_chunks(sample.tokens, sample.labels);
      pred_chunks[key] = tag_tokens(tagger, pos.tag(sample.tokens));
    }

    std::map<std::string, SemanticRole> pred_roles;
    for (const auto& [name, role] : folds[held].attribute_roles) {
      (void)role;
      pred_roles[name] = classify_name(names, store, name).role;
    }

    FoldReport fold;
    fold.log_id = folds[held].log_id;
    fold.instance = chunk_metrics(pred_chunks, gold_chunks);
    fold.attributes =
        attribute_metrics(pred_roles, folds[held].attribute_roles);
    fold.combined = combined_report(fold.instance, fold.attributes);
    fold.train_fingerprint = tagger.corpus_fp;
    result.aggregate = combined_report(result.aggregate, fold.combined);
    result.folds.push_back(std::move(fold));
  }
  return result;
}

}  // namespace semlog
