#ifndef SEMLOG_BIO_HPP
#define SEMLOG_BIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "semlog/roles.hpp"

namespace semlog {

/// Dense BIO label ids: 0 is O, then B-/I- pairs in role declaration
/// order (1=B-ObjectName, 2=I-ObjectName, 3=B-ObjectStatus, ...).
/// This ordering doubles as the decoding tie-break: lower id wins.
constexpr int kNumBioLabels = 1 + 2 * kNumRoles;

constexpr int kBioO = 0;
constexpr int bio_b(SemanticRole r) { return 1 + 2 * int(r); }
constexpr int bio_i(SemanticRole r) { return 2 + 2 * int(r); }

constexpr bool bio_is_b(int label) { return label > 0 && label % 2 == 1; }
constexpr bool bio_is_i(int label) { return label > 0 && label % 2 == 0; }

/// Role of a B or I label; O maps to Other.
constexpr SemanticRole bio_role(int label) {
  return label == kBioO ? SemanticRole::Other : SemanticRole((label - 1) / 2);
}

/// I-X may only continue a B-X or I-X of the same role. prev=-1 means
/// start of sequence.
constexpr bool bio_transition_valid(int prev, int next) {
  if (!bio_is_i(next)) return true;
  if (prev < 0) return false;
  return (bio_is_b(prev) || bio_is_i(prev)) && bio_role(prev) == bio_role(next);
}

std::string bio_label_name(int label);
std::optional<int> parse_bio_label(std::string_view name);

/// Chunk of consecutive tokens sharing one semantic role. Runs of O
/// tokens form Other chunks, kept internally and filtered before output.
struct TaggedChunk {
  std::size_t begin = 0;  // token index range [begin, end)
  std::size_t end = 0;
  std::string text;  // space-joined token texts
  SemanticRole role = SemanticRole::Other;

  friend bool operator==(const TaggedChunk& a, const TaggedChunk& b) {
    return a.begin == b.begin && a.end == b.end && a.text == b.text &&
           a.role == b.role;
  }
};

/// Converts a BIO-valid label sequence into chunks covering every token
/// exactly once, ordered by start index.
std::vector<TaggedChunk> labels_to_chunks(const std::vector<std::string>& tokens,
                                          const std::vector<int>& labels);

/// Distinct non-Other roles spanned by a label sequence.
std::vector<SemanticRole> label_roles(const std::vector<int>& labels);

}  // namespace semlog

#endif
