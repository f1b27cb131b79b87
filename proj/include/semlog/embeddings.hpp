#ifndef SEMLOG_EMBEDDINGS_HPP
#define SEMLOG_EMBEDDINGS_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace semlog {

struct EmbeddingStore {
  std::size_t dimension = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;

  const std::vector<double>* find(const std::string& word) const {
    auto it = vectors.find(word);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

/// Loads the plain-text format: one word per line followed by its vector
/// components, whitespace separated. The first line fixes the dimension;
/// duplicate words keep their first vector.
EmbeddingStore load_embeddings(const std::string& path);

/// Mean vector of the name's in-vocabulary tokens. An unknown token is
/// rescued by the first split into two known halves of two or more
/// characters each, which covers run-together compounds like "doctype".
/// The flag is false iff nothing was found; the vector is all zeros then.
std::pair<std::vector<double>, bool> embed_name(const EmbeddingStore& store,
                                                const std::string& name);

}  // namespace semlog

#endif
