#ifndef SEMLOG_EVALUATION_HPP
#define SEMLOG_EVALUATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "semlog/bio.hpp"
#include "semlog/corpus.hpp"
#include "semlog/embeddings.hpp"
#include "semlog/pos.hpp"
#include "semlog/roles.hpp"

namespace semlog {

struct RoleCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
};

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Zero denominators yield zero scores.
Scores compute_scores(std::int64_t tp, std::int64_t fp, std::int64_t fn);

struct MetricsReport {
  std::map<SemanticRole, RoleCounts> per_role;

  RoleCounts totals() const;
  Scores micro() const;
  Scores role_scores(SemanticRole r) const;
  /// Number of gold entities (tp + fn over all roles).
  std::int64_t gold_entities() const;
};

/// Chunk-exact scoring: a predicted chunk is correct only when a gold
/// chunk with the same token span and role exists for the same value.
/// Other chunks are ignored on both sides. The two maps must cover the
/// same values; anything else throws InvalidArgument.
MetricsReport chunk_metrics(
    const std::map<std::string, std::vector<TaggedChunk>>& predicted,
    const std::map<std::string, std::vector<TaggedChunk>>& gold);

/// Attribute-level scoring over the gold attributes. A predicted Other
/// counts as no prediction, a missing prediction as a false negative.
MetricsReport attribute_metrics(
    const std::map<std::string, SemanticRole>& predicted,
    const std::map<std::string, SemanticRole>& gold);

/// Pools raw counts; micro scores follow from the pooled counts.
MetricsReport combined_report(const MetricsReport& a, const MetricsReport& b);

/// Fixed-width per-role table with a micro-average row.
std::string render_metrics(const MetricsReport& report,
                           const std::string& title);

/// One log's gold annotations: its unique textual values as labeled
/// samples (doubling as tagger training data) plus attribute roles.
struct EvalFold {
  std::string log_id;
  std::vector<TrainingSample> instances;
  std::map<std::string, SemanticRole> attribute_roles;
};

/// Sectioned gold file: `#LOG id`, then `#INSTANCES` with corpus-format
/// samples, then `#ATTRIBUTES` with name<TAB>Role lines.
std::vector<EvalFold> parse_gold(const std::string& content,
                                 const std::string& origin);
std::vector<EvalFold> load_gold(const std::string& path);

struct LoocvOptions {
  std::uint32_t tagger_epochs = 5;
  std::uint64_t seed = 1;
  double learning_rate = 0.1;
  std::uint32_t classifier_epochs = 500;
  double l2 = 1e-3;
  std::unordered_set<std::string> actor_words;
  std::unordered_set<std::string> lifecycle_words;
};

struct FoldReport {
  std::string log_id;
  MetricsReport instance;
  MetricsReport attributes;
  MetricsReport combined;
  std::uint64_t train_fingerprint = 0;  // fingerprint of the fold's corpus
};

struct LoocvResult {
  std::vector<FoldReport> folds;
  MetricsReport aggregate;
};

/// Leave-one-out over the folds: train the tagger and the name classifier
/// on all other folds, evaluate instance and attribute predictions on the
/// held-out one, and pool everything into the aggregate.
LoocvResult loocv(const std::vector<EvalFold>& folds, const PosTagger& pos,
                  const EmbeddingStore& store, const LoocvOptions& options);

}  // namespace semlog

#endif
