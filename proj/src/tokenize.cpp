#include "semlog/tokenize.hpp"

#include <cctype>

namespace semlog {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

// boundary between prev and cur inside one alphanumeric run
bool camel_boundary(char prev, char cur, char next, bool has_next) {
  if (is_digit(prev) != is_digit(cur)) return true;
  if (is_lower(prev) && is_upper(cur)) return true;
  // end of an uppercase run: "XMLFile" -> XML | File
  if (is_upper(prev) && is_upper(cur) && has_next && is_lower(next))
    return true;
  return false;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& value) {
  std::vector<std::string> tokens;
  std::string piece;

  auto flush = [&] {
    if (piece.empty()) return;
    std::string word;
    for (char c : piece)
      if (!is_digit(c))
        word += char(std::tolower(static_cast<unsigned char>(c)));
    if (!word.empty()) tokens.push_back(std::move(word));
    piece.clear();
  };

  for (std::size_t i = 0; i < value.size(); ++i) {
    char c = value[i];
    if (!is_alnum(c)) {
      flush();
      continue;
    }
    if (!piece.empty() &&
        camel_boundary(piece.back(), c,
                       i + 1 < value.size() ? value[i + 1] : '\0',
                       i + 1 < value.size()))
      flush();
    piece += c;
  }
  flush();
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace semlog
