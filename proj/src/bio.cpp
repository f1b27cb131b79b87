#include "semlog/bio.hpp"

#include <cassert>

namespace semlog {

std::string bio_label_name(int label) {
  if (label == kBioO) return "O";
  return std::string(bio_is_b(label) ? "B-" : "I-") +
         std::string(role_name(bio_role(label)));
}

std::optional<int> parse_bio_label(std::string_view name) {
  if (name == "O") return kBioO;
  if (name.size() < 3 || name[1] != '-') return std::nullopt;
  if (name[0] != 'B' && name[0] != 'I') return std::nullopt;
  auto role = parse_role(name.substr(2));
  if (!role || *role == SemanticRole::Other) return std::nullopt;
  return name[0] == 'B' ? bio_b(*role) : bio_i(*role);
}

std::vector<TaggedChunk> labels_to_chunks(const std::vector<std::string>& tokens,
                                          const std::vector<int>& labels) {
  assert(tokens.size() == labels.size());
  std::vector<TaggedChunk> chunks;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    bool extend = !chunks.empty() && chunks.back().end == i &&
                  ((labels[i] == kBioO &&
                    chunks.back().role == SemanticRole::Other) ||
                   (bio_is_i(labels[i]) &&
                    chunks.back().role == bio_role(labels[i])));
    if (extend) {
      chunks.back().end = i + 1;
      chunks.back().text += ' ';
      chunks.back().text += tokens[i];
    } else {
      chunks.push_back({i, i + 1, tokens[i], bio_role(labels[i])});
    }
  }
  return chunks;
}

std::vector<SemanticRole> label_roles(const std::vector<int>& labels) {
  bool seen[kNumRoles] = {};
  for (int l : labels)
    if (l != kBioO) seen[int(bio_role(l))] = true;
  std::vector<SemanticRole> roles;
  for (int r = 0; r < kNumRoles; ++r)
    if (seen[r]) roles.push_back(SemanticRole(r));
  return roles;
}

}  // namespace semlog
