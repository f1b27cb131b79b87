#ifndef SEMLOG_POS_HPP
#define SEMLOG_POS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semlog {

/// Universal POS tag set (the subset this pipeline can emit).
enum class PosTag {
  Noun,
  Verb,
  Adj,
  Adv,
  Propn,
  Adp,
  Det,
  Cconj,
  Pron,
  Num,
  Aux,
  Part,
  X,
};

struct Token {
  std::string text;
  PosTag pos = PosTag::X;

  friend bool operator==(const Token& a, const Token& b) {
    return a.text == b.text && a.pos == b.pos;
  }
};

std::string_view pos_name(PosTag t);
std::optional<PosTag> parse_pos(std::string_view name);

/// NOUN, VERB, ADV, or ADJ: the tags that make a value count as textual.
bool is_content_tag(PosTag t);

/// Lexicon lookup with suffix heuristics for unknown words. Deterministic
/// and self-contained; adequate for the 1-6 token labels event logs carry.
class PosTagger {
 public:
  /// Loads `word<TAB>TAG` lines. Blank lines and lines starting with '#'
  /// are skipped. The first entry for a word wins.
  static PosTagger load(const std::string& path);
  static PosTagger from_entries(
      const std::vector<std::pair<std::string, PosTag>>& entries);

  std::vector<Token> tag(const std::vector<std::string>& tokens) const;
  PosTag tag_word(const std::string& word) const;
  bool in_lexicon(const std::string& word) const;
  std::size_t size() const { return lexicon_.size(); }

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace semlog

#endif
