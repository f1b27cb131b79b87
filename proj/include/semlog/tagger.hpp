#ifndef SEMLOG_TAGGER_HPP
#define SEMLOG_TAGGER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semlog/corpus.hpp"
#include "semlog/pos.hpp"

namespace semlog {

/// Linear sequence labeler: per-feature emission weights plus label
/// transition weights, decoded with Viterbi over BIO-valid paths.
struct TaggerModel {
  /// feature string -> weight per label (kNumBioLabels entries)
  std::unordered_map<std::string, std::vector<double>> feature_weights;
  /// (kNumBioLabels+1) x kNumBioLabels, row kNumBioLabels = start state
  std::vector<double> transitions;
  /// words whose presence feeds the lexicon flags of the feature template
  std::unordered_set<std::string> actor_words;
  std::unordered_set<std::string> lifecycle_words;
  std::uint32_t epochs = 0;
  std::uint64_t seed = 0;
  std::uint64_t corpus_fp = 0;

  double transition(int prev, int next) const {
    std::size_t row = prev < 0 ? kNumBioLabels : std::size_t(prev);
    return transitions[row * kNumBioLabels + std::size_t(next)];
  }
};

/// The fixed feature template: 14 features for every position, so every
/// token contributes the same arity regardless of context.
std::vector<std::string> extract_features(
    const std::vector<Token>& tokens, std::size_t index,
    const std::unordered_set<std::string>& actor_words,
    const std::unordered_set<std::string>& lifecycle_words);

/// All words of all phrases, for the lexicon-flag features.
std::unordered_set<std::string> phrase_word_set(
    const std::vector<std::string>& phrases);

/// Structured averaged perceptron. Each epoch shuffles with the seeded
/// generator, decodes every sample with current weights, and applies the
/// standard mismatch update; the returned model holds averaged weights.
/// `pos` must be the tagger later used at decode time, or the POS
/// features will not line up.
TaggerModel train_tagger(
    const std::vector<TrainingSample>& samples, std::uint32_t epochs,
    std::uint64_t seed, const PosTagger& pos,
    const std::unordered_set<std::string>& actor_words = {},
    const std::unordered_set<std::string>& lifecycle_words = {});

/// Per-token, per-label emission scores (sum of active feature weights).
std::vector<std::vector<double>> emission_scores(
    const TaggerModel& model, const std::vector<Token>& tokens);

/// Highest-scoring BIO-valid label sequence. Ties resolve to the lowest
/// label id, scanning from the sequence end backwards.
std::vector<int> viterbi_decode(const TaggerModel& model,
                                const std::vector<Token>& tokens);

/// Decode pre-tagged tokens into chunks covering every token once.
std::vector<TaggedChunk> tag_tokens(const TaggerModel& model,
                                    const std::vector<Token>& tokens);

/// tokenize + POS-tag + decode. Empty value gives no chunks.
std::vector<TaggedChunk> tag_value(const TaggerModel& model,
                                   const PosTagger& pos, const std::string& value);

/// Tokens with POS plus the decoded chunks for one attribute value.
struct TaggedValue {
  std::vector<Token> tokens;
  std::vector<TaggedChunk> chunks;
};

/// True iff the attribute's every value yields only ObjectName chunks
/// (besides Other) and every token is tagged NOUN or PROPN. Empty
/// domains are not noun-only.
bool detect_noun_only(const std::map<std::string, TaggedValue>& taggings);

void save_tagger_model(const TaggerModel& model, const std::string& path);
TaggerModel load_tagger_model(const std::string& path);

/// Human-readable listing of metadata, transitions, and sorted weights.
std::string dump_tagger_model(const TaggerModel& model);

}  // namespace semlog

#endif
