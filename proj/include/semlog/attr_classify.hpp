#ifndef SEMLOG_ATTR_CLASSIFY_HPP
#define SEMLOG_ATTR_CLASSIFY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "semlog/corpus.hpp"
#include "semlog/name_classifier.hpp"
#include "semlog/pos.hpp"
#include "semlog/roles.hpp"
#include "semlog/tagger.hpp"

namespace semlog {

enum class AttributeKind { Miscellaneous, NounOnly };

/// A tagged value an attribute candidate can be spliced into. Insertion
/// points sit on chunk edges; replacements are the spans of its noun
/// chunks (object, actor, or passive names).
struct ContextTemplate {
  std::vector<std::string> tokens;
  std::vector<std::size_t> insertion_points;
  std::vector<std::pair<std::size_t, std::size_t>> replacements;
  std::string source_text;
};

/// Picks the corpus samples whose gold chunks span at least three distinct
/// roles, ordered by descending role count then source text, capped at
/// max_contexts. Throws InvalidArgument when no sample qualifies.
std::vector<ContextTemplate> select_contexts(
    const std::vector<TrainingSample>& corpus, std::size_t max_contexts);

/// Splices every value into every context at every insertion point and
/// replacement span, tags the result, and records the role of the chunk
/// covering the inserted tokens. Votes for roles other than ObjectName,
/// ActorName, PassiveName, and Other are discarded, as are insertions the
/// tagger splits across chunks. Majority wins; ties fall to the earliest
/// of ObjectName, ActorName, PassiveName, Other. No votes means Other.
SemanticRole insertion_vote(const TaggerModel& model, const PosTagger& pos,
                            const std::vector<ContextTemplate>& contexts,
                            const std::vector<std::string>& values);

struct AttributeDecision {
  SemanticRole role = SemanticRole::Other;
  double confidence = 0.0;  // name-classifier confidence behind the decision
  std::string method;       // "name", "vote", or "name-fallback"
  std::string warning;      // set only on the fallback path
};

constexpr double kDefaultTau = 0.8;
constexpr std::size_t kDomainSampleCap = 20;

/// Miscellaneous attributes take the name classifier's answer outright.
/// Noun-only attributes take it when its confidence reaches tau and are
/// otherwise decided by insertion voting; with no contexts available the
/// low-confidence name result is kept and a warning recorded.
AttributeDecision classify_attribute(
    const std::string& name, AttributeKind kind,
    const std::vector<std::string>& domain_sample, const NameClassifier& names,
    const EmbeddingStore& store, const TaggerModel& tagger,
    const PosTagger& pos, const std::vector<ContextTemplate>& contexts,
    double tau);

/// Moves ActorName and PassiveName to their instance-level counterparts
/// when any sampled value mixes digits into words (letter-digit adjacency
/// or an underscore next to a digit) or every sampled value reads as a
/// named entity. Other roles pass through untouched.
SemanticRole refine_instance_level(
    SemanticRole role, const std::vector<std::string>& values,
    const std::unordered_set<std::string>& gazetteer, const PosTagger& pos);

/// True iff every alphabetic piece of the raw value is a gazetteer name
/// (case-insensitively) or a capitalized word the lexicon does not know.
/// Values without any alphabetic piece are not named entities.
bool is_named_entity(const std::string& value,
                     const std::unordered_set<std::string>& gazetteer,
                     const PosTagger& pos);

/// One lowercased name per line; blank lines and # comments are skipped.
std::unordered_set<std::string> load_gazetteer(const std::string& path);

/// Deterministic sample of at most cap values, returned sorted.
std::vector<std::string> sample_domain(const std::vector<std::string>& values,
                                       std::size_t cap, std::uint64_t seed);

}  // namespace semlog

#endif
