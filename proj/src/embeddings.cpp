#include "semlog/embeddings.hpp"

#include <charconv>
#include <fstream>

#include "semlog/errors.hpp"
#include "semlog/tokenize.hpp"

namespace semlog {

EmbeddingStore load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings '" + path + "'");

  EmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::size_t pos = line.find_first_of(" \t");
    if (pos == std::string::npos || pos == 0)
      throw FormatError(path + ": expected word followed by vector", lineno);
    std::string word = line.substr(0, pos);

    std::vector<double> vec;
    if (store.dimension) vec.reserve(store.dimension);
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
        ++pos;
      if (pos == line.size()) break;
      double v = 0;
      auto r = std::from_chars(line.data() + pos, line.data() + line.size(), v);
      if (r.ec != std::errc{})
        throw FormatError(path + ": unparsable vector component", lineno);
      pos = std::size_t(r.ptr - line.data());
      if (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
        throw FormatError(path + ": unparsable vector component", lineno);
      vec.push_back(v);
    }
    if (vec.empty())
      throw FormatError(path + ": expected word followed by vector", lineno);
    if (store.dimension == 0)
      store.dimension = vec.size();
    else if (vec.size() != store.dimension)
      throw FormatError(path + ": vector has " + std::to_string(vec.size()) +
                            " components, expected " +
                            std::to_string(store.dimension),
                        lineno);
    store.vectors.emplace(std::move(word), std::move(vec));
  }
  return store;
}

std::pair<std::vector<double>, bool> embed_name(const EmbeddingStore& store,
                                                const std::string& name) {
  std::vector<double> mean(store.dimension, 0.0);
  std::size_t hits = 0;
  auto add = [&](const std::vector<double>& vec) {
    ++hits;
    for (std::size_t i = 0; i < store.dimension; ++i) mean[i] += vec[i];
  };
  for (const auto& token : tokenize(name)) {
    if (const auto* vec = store.find(token)) {
      add(*vec);
      continue;
    }
    // compound names like "doctype" carry no split point the tokenizer
    // can see, so fall back to the first two-way split into known halves
    for (std::size_t i = 2; i + 2 <= token.size(); ++i) {
      const auto* head = store.find(token.substr(0, i));
      const auto* tail = store.find(token.substr(i));
      if (head && tail) {
        add(*head);
        add(*tail);
        break;
      }
    }
  }
  if (hits == 0) return {std::move(mean), false};
  for (double& x : mean) x /= double(hits);
  return {std::move(mean), true};
}

}  // namespace semlog
