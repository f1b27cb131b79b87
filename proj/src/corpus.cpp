#include "semlog/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "semlog/errors.hpp"
#include "semlog/rng.hpp"
#include "semlog/tokenize.hpp"

namespace semlog {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<TrainingSample> parse_corpus(const std::string& content,
                                         const std::string& origin) {
  std::vector<TrainingSample> samples;
  TrainingSample current;

  auto flush = [&] {
    if (current.tokens.empty()) return;
    samples.push_back(std::move(current));
    current = {};
  };

  std::istringstream in(content);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw FormatError(origin + ": expected token<TAB>LABEL", lineno);
    std::string token = line.substr(0, tab);
    if (token.find_first_of(" \t") != std::string::npos)
      throw FormatError(origin + ": token contains whitespace", lineno);
    auto label = parse_bio_label(line.substr(tab + 1));
    if (!label)
      throw FormatError(
          origin + ": unknown label '" + line.substr(tab + 1) + "'", lineno);
    int prev = current.labels.empty() ? -1 : current.labels.back();
    if (!bio_transition_valid(prev, *label))
      throw FormatError(origin + ": label '" + bio_label_name(*label) +
                            "' cannot follow '" +
                            (prev < 0 ? "start of sample"
                                      : bio_label_name(prev)) +
                            "'",
                        lineno);
    current.tokens.push_back(std::move(token));
    current.labels.push_back(*label);
  }
  flush();
  return samples;
}

std::vector<TrainingSample> load_corpus(const std::string& path) {
  return parse_corpus(slurp(path), path);
}

std::vector<std::string> load_phrase_list(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::string> phrases;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    phrases.push_back(line);
  }
  return phrases;
}

std::vector<std::pair<std::string, SemanticRole>> load_lifecycle_lexicon(
    const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::pair<std::string, SemanticRole>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw FormatError(path + ": expected phrase<TAB>role", lineno);
    auto role = parse_role(line.substr(tab + 1));
    if (!role || (*role != SemanticRole::ActionStatus &&
                  *role != SemanticRole::ObjectStatus))
      throw FormatError(path + ": lifecycle role must be ActionStatus or "
                               "ObjectStatus",
                        lineno);
    entries.emplace_back(line.substr(0, tab), *role);
  }
  return entries;
}

namespace {

// phrase appended as one chunk: B-role on the first token, I-role after
void append_phrase(TrainingSample& sample, const std::string& phrase,
                   SemanticRole role) {
  bool first = true;
  for (auto& word : tokenize(phrase)) {
    sample.labels.push_back(first ? bio_b(role) : bio_i(role));
    sample.tokens.push_back(std::move(word));
    first = false;
  }
}

}  // namespace

std::vector<TrainingSample> augment_corpus(
    const std::vector<TrainingSample>& samples,
    const std::vector<std::string>& actor_lexicon,
    const std::vector<std::pair<std::string, SemanticRole>>& lifecycle_lexicon,
    std::size_t n_actor, std::size_t n_status, std::uint64_t seed) {
  if (n_actor > 0 && actor_lexicon.empty())
    throw InvalidArgument("actor lexicon is empty");
  if (n_status > 0 && lifecycle_lexicon.empty())
    throw InvalidArgument("lifecycle lexicon is empty");
  if ((n_actor > 0 || n_status > 0) && samples.empty())
    throw InvalidArgument("cannot augment an empty corpus");
  for (const auto& phrase : actor_lexicon)
    if (tokenize(phrase).empty())
      throw InvalidArgument("actor phrase '" + phrase + "' has no tokens");
  for (const auto& [phrase, role] : lifecycle_lexicon)
    if (tokenize(phrase).empty())
      throw InvalidArgument("lifecycle phrase '" + phrase + "' has no tokens");

  std::vector<TrainingSample> out = samples;
  out.reserve(samples.size() + n_actor + n_status);
  std::mt19937_64 gen(seed);

  for (std::size_t i = 0; i < n_actor; ++i) {
    TrainingSample sample = samples[rng_below(gen, samples.size())];
    sample.tokens.push_back("by");
    sample.labels.push_back(kBioO);
    append_phrase(sample, actor_lexicon[rng_below(gen, actor_lexicon.size())],
                  SemanticRole::ActorName);
    out.push_back(std::move(sample));
  }
  for (std::size_t i = 0; i < n_status; ++i) {
    TrainingSample sample = samples[rng_below(gen, samples.size())];
    const auto& [phrase, role] =
        lifecycle_lexicon[rng_below(gen, lifecycle_lexicon.size())];
    append_phrase(sample, phrase, role);
    out.push_back(std::move(sample));
  }
  return out;
}

std::uint64_t corpus_fingerprint(const std::vector<TrainingSample>& samples) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= std::uint8_t(data[i]);
      h *= 1099511628211ULL;
    }
  };
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      mix(s.tokens[i].data(), s.tokens[i].size());
      std::string label = bio_label_name(s.labels[i]);
      mix("\t", 1);
      mix(label.data(), label.size());
      mix("\n", 1);
    }
    mix("\n", 1);
  }
  return h;
}

}  // namespace semlog
