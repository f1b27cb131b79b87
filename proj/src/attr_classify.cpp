#include "semlog/attr_classify.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "semlog/bio.hpp"
#include "semlog/errors.hpp"
#include "semlog/rng.hpp"
#include "semlog/tokenize.hpp"

namespace semlog {

namespace {

bool is_noun_chunk(SemanticRole r) {
  return r == SemanticRole::ObjectName || r == SemanticRole::ActorName ||
         r == SemanticRole::PassiveName;
}

constexpr std::array<SemanticRole, 4> kVoteOrder = {
    SemanticRole::ObjectName, SemanticRole::ActorName,
    SemanticRole::PassiveName, SemanticRole::Other};

// Splices `inserted` over tokens[begin, end) and tags the result; returns
// the role of the chunk covering the inserted span, or Other-as-discard
// via the bool flag when the span is split or empty.
std::pair<SemanticRole, bool> one_vote(const TaggerModel& model,
                                       const PosTagger& pos,
                                       const std::vector<std::string>& tokens,
                                       std::size_t begin, std::size_t end,
                                       const std::vector<std::string>& inserted) {
  std::vector<std::string> words;
  words.reserve(tokens.size() - (end - begin) + inserted.size());
  words.insert(words.end(), tokens.begin(),
               tokens.begin() + static_cast<std::ptrdiff_t>(begin));
  words.insert(words.end(), inserted.begin(), inserted.end());
  words.insert(words.end(), tokens.begin() + static_cast<std::ptrdiff_t>(end),
               tokens.end());
  auto chunks = tag_tokens(model, pos.tag(words));
  std::size_t span_end = begin + inserted.size();
  for (const auto& c : chunks)
    if (c.begin <= begin && span_end <= c.end) return {c.role, true};
  return {SemanticRole::Other, false};
}

bool letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// True for user_019, batch06, 7days; false for plain words and plain numbers.
bool has_embedded_number(const std::string& value) {
  for (std::size_t i = 0; i + 1 < value.size(); ++i) {
    char a = value[i], b = value[i + 1];
    if ((letter(a) && digit(b)) || (digit(a) && letter(b))) return true;
    if ((a == '_' && digit(b)) || (digit(a) && b == '_')) return true;
  }
  return false;
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<ContextTemplate> select_contexts(
    const std::vector<TrainingSample>& corpus, std::size_t max_contexts) {
  struct Candidate {
    ContextTemplate tpl;
    std::size_t role_count;
  };
  std::vector<Candidate> candidates;
  for (const auto& sample : corpus) {
    auto roles = label_roles(sample.labels);
    if (roles.size() < 3) continue;
    ContextTemplate tpl;
    tpl.tokens = sample.tokens;
    tpl.source_text = join_tokens(sample.tokens);
    tpl.insertion_points.push_back(0);
    for (const auto& c : labels_to_chunks(sample.tokens, sample.labels)) {
      tpl.insertion_points.push_back(c.end);
      if (is_noun_chunk(c.role)) tpl.replacements.emplace_back(c.begin, c.end);
    }
    candidates.push_back({std::move(tpl), roles.size()});
  }
  if (candidates.empty())
    throw InvalidArgument(
        "no training sample spans three or more roles; cannot build "
        "insertion contexts");
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     if (a.role_count != b.role_count)
                       return a.role_count > b.role_count;
                     return a.tpl.source_text < b.tpl.source_text;
                   });
  if (candidates.size() > max_contexts) candidates.resize(max_contexts);
  std::vector<ContextTemplate> out;
  out.reserve(candidates.size());
  for (auto& c : candidates) out.push_back(std::move(c.tpl));
  return out;
}

SemanticRole insertion_vote(const TaggerModel& model, const PosTagger& pos,
                            const std::vector<ContextTemplate>& contexts,
                            const std::vector<std::string>& values) {
  std::array<std::size_t, kVoteOrder.size()> votes{};
  auto record = [&](SemanticRole r) {
    for (std::size_t i = 0; i < kVoteOrder.size(); ++i)
      if (kVoteOrder[i] == r) {
        ++votes[i];
        return;
      }
  };
  for (const auto& value : values) {
    auto inserted = tokenize(value);
    if (inserted.empty()) continue;
    for (const auto& ctx : contexts) {
      for (std::size_t p : ctx.insertion_points) {
        auto [role, ok] = one_vote(model, pos, ctx.tokens, p, p, inserted);
        if (ok) record(role);
      }
      for (auto [b, e] : ctx.replacements) {
        auto [role, ok] = one_vote(model, pos, ctx.tokens, b, e, inserted);
        if (ok) record(role);
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < votes.size(); ++i)
    if (votes[i] > votes[best]) best = i;
  if (votes[best] == 0) return SemanticRole::Other;
  return kVoteOrder[best];
}

AttributeDecision classify_attribute(
    const std::string& name, AttributeKind kind,
    const std::vector<std::string>& domain_sample, const NameClassifier& names,
    const EmbeddingStore& store, const TaggerModel& tagger,
    const PosTagger& pos, const std::vector<ContextTemplate>& contexts,
    double tau) {
  auto named = classify_name(names, store, name);
  AttributeDecision decision;
  decision.role = named.role;
  decision.confidence = named.confidence;
  decision.method = "name";
  if (kind == AttributeKind::Miscellaneous || named.confidence >= tau)
    return decision;
  if (contexts.empty()) {
    decision.method = "name-fallback";
    decision.warning = "no insertion contexts available for \"" + name +
                       "\"; keeping low-confidence name classification";
    return decision;
  }
  decision.role = insertion_vote(tagger, pos, contexts, domain_sample);
  decision.method = "vote";
  return decision;
}

bool is_named_entity(const std::string& value,
                     const std::unordered_set<std::string>& gazetteer,
                     const PosTagger& pos) {
  bool saw_piece = false;
  std::size_t i = 0;
  while (i < value.size()) {
    if (!letter(value[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < value.size() && letter(value[j])) ++j;
    std::string piece = value.substr(i, j - i);
    saw_piece = true;
    std::string lower = lowercase(piece);
    if (gazetteer.count(lower) == 0) {
      bool capitalized = std::isupper(static_cast<unsigned char>(piece[0])) &&
                         lower.compare(1, std::string::npos, piece, 1,
                                       std::string::npos) == 0;
      if (!capitalized || pos.in_lexicon(lower)) return false;
    }
    i = j;
  }
  return saw_piece;
}

SemanticRole refine_instance_level(
    SemanticRole role, const std::vector<std::string>& values,
    const std::unordered_set<std::string>& gazetteer, const PosTagger& pos) {
  if (role != SemanticRole::ActorName && role != SemanticRole::PassiveName)
    return role;
  bool promote = false;
  for (const auto& v : values)
    if (has_embedded_number(v)) {
      promote = true;
      break;
    }
  if (!promote && !values.empty()) {
    promote = std::all_of(values.begin(), values.end(), [&](const auto& v) {
      return is_named_entity(v, gazetteer, pos);
    });
  }
  if (!promote) return role;
  return role == SemanticRole::ActorName ? SemanticRole::ActorInstance
                                         : SemanticRole::PassiveInstance;
}

std::unordered_set<std::string> load_gazetteer(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open gazetteer file: " + path);
  std::unordered_set<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    names.insert(lowercase(line));
  }
  return names;
}

std::vector<std::string> sample_domain(const std::vector<std::string>& values,
                                       std::size_t cap, std::uint64_t seed) {
  auto picked = sample_indices(values.size(), cap, seed);
  std::vector<std::string> out;
  out.reserve(picked.size());
  for (std::size_t idx : picked) out.push_back(values[idx]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace semlog
