#ifndef SEMLOG_CORPUS_HPP
#define SEMLOG_CORPUS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semlog/bio.hpp"

namespace semlog {

struct TrainingSample {
  std::vector<std::string> tokens;
  std::vector<int> labels;  // BIO label ids, same length as tokens

  friend bool operator==(const TrainingSample& a, const TrainingSample& b) {
    return a.tokens == b.tokens && a.labels == b.labels;
  }
};

/// Reads CoNLL-style `token<TAB>LABEL` lines with blank lines between
/// samples. Validates BIO transitions; errors carry line numbers.
std::vector<TrainingSample> load_corpus(const std::string& path);
std::vector<TrainingSample> parse_corpus(const std::string& content,
                                         const std::string& origin);

/// One phrase per line; blank lines and '#' lines skipped.
std::vector<std::string> load_phrase_list(const std::string& path);

/// Lines of `phrase<TAB>ActionStatus` or `phrase<TAB>ObjectStatus`.
std::vector<std::pair<std::string, SemanticRole>> load_lifecycle_lexicon(
    const std::string& path);

/// Appends synthetic samples to the corpus: n_actor randomly chosen
/// samples extended with "by <actor phrase>" (ActorName chunk) and
/// n_status samples extended with a lifecycle phrase labeled with the
/// entry's status role. Selection is with replacement, seeded.
std::vector<TrainingSample> augment_corpus(
    const std::vector<TrainingSample>& samples,
    const std::vector<std::string>& actor_lexicon,
    const std::vector<std::pair<std::string, SemanticRole>>& lifecycle_lexicon,
    std::size_t n_actor, std::size_t n_status, std::uint64_t seed);

/// FNV-1a over a canonical rendering; stored in trained models so a
/// model file can be matched to the corpus it came from.
std::uint64_t corpus_fingerprint(const std::vector<TrainingSample>& samples);

}  // namespace semlog

#endif
