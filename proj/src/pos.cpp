#include "semlog/pos.hpp"

#include <array>
#include <fstream>

#include "semlog/errors.hpp"

namespace semlog {

namespace {

constexpr std::array<std::string_view, 13> kPosNames = {
    "NOUN", "VERB", "ADJ",  "ADV", "PROPN", "ADP", "DET",
    "CCONJ", "PRON", "NUM", "AUX", "PART",  "X"};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool has_vowel(const std::string& s) {
  for (char c : s)
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
  return false;
}

}  // namespace

std::string_view pos_name(PosTag t) { return kPosNames[std::size_t(t)]; }

std::optional<PosTag> parse_pos(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i)
    if (kPosNames[i] == name) return PosTag(i);
  return std::nullopt;
}

bool is_content_tag(PosTag t) {
  return t == PosTag::Noun || t == PosTag::Verb || t == PosTag::Adv ||
         t == PosTag::Adj;
}

PosTagger PosTagger::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open POS lexicon '" + path + "'");
  PosTagger tagger;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw FormatError(path + ": expected word<TAB>TAG", lineno);
    std::string word = line.substr(0, tab);
    auto tag = parse_pos(line.substr(tab + 1));
    if (!tag)
      throw FormatError(path + ": unknown POS tag '" + line.substr(tab + 1) +
                            "'",
                        lineno);
    tagger.lexicon_.emplace(word, *tag);
  }
  return tagger;
}

PosTagger PosTagger::from_entries(
    const std::vector<std::pair<std::string, PosTag>>& entries) {
  PosTagger tagger;
  for (const auto& [word, tag] : entries) tagger.lexicon_.emplace(word, tag);
  return tagger;
}

bool PosTagger::in_lexicon(const std::string& word) const {
  return lexicon_.count(word) != 0;
}

PosTag PosTagger::tag_word(const std::string& word) const {
  auto it = lexicon_.find(word);
  if (it != lexicon_.end()) return it->second;
  if (word.size() <= 1) return PosTag::X;
  if (ends_with(word, "ed") || ends_with(word, "ing")) return PosTag::Verb;
  if (ends_with(word, "tion") || ends_with(word, "ment") ||
      ends_with(word, "ness"))
    return PosTag::Noun;
  if (ends_with(word, "ly")) return PosTag::Adv;
  if (ends_with(word, "ous") || ends_with(word, "ive") ||
      ends_with(word, "al"))
    return PosTag::Adj;
  // short or vowelless unknowns are usually codes and abbreviations
  if (word.size() <= 4) return PosTag::Propn;
  if (!has_vowel(word)) return PosTag::Propn;
  return PosTag::Noun;
}

std::vector<Token> PosTagger::tag(
    const std::vector<std::string>& tokens) const {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back({t, tag_word(t)});
  return out;
}

}  // namespace semlog
