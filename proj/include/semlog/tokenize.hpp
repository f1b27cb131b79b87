#ifndef SEMLOG_TOKENIZE_HPP
#define SEMLOG_TOKENIZE_HPP

#include <string>
#include <vector>

namespace semlog {

/// Splits a raw attribute value into lowercase word tokens. Split points
/// are every non-alphanumeric character, camel-case boundaries, and
/// letter/digit transitions. Purely numeric pieces are dropped and digits
/// are stripped from mixed pieces, so no token ever contains a digit.
std::vector<std::string> tokenize(const std::string& value);

/// Space-joins token texts. tokenize(join_tokens(tokenize(v))) gives the
/// same tokens as tokenize(v).
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace semlog

#endif
