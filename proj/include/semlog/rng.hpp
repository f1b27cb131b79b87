#ifndef SEMLOG_RNG_HPP
#define SEMLOG_RNG_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace semlog {

/// mt19937_64 produces a standard-mandated sequence, and these helpers
/// avoid std::uniform_int_distribution, whose mapping varies between
/// standard libraries. Together they make every seeded run reproducible.

inline std::size_t rng_below(std::mt19937_64& gen, std::size_t n) {
  return std::size_t(gen() % n);
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng_below(gen, i)]);
}

/// First k positions of a seeded shuffle of 0..n-1, in shuffled order.
/// k >= n returns 0..n-1 unshuffled.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                               std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (k >= n) return idx;
  std::mt19937_64 gen(seed);
  for (std::size_t i = 0; i < k; ++i)
    std::swap(idx[i], idx[i + rng_below(gen, n - i)]);
  idx.resize(k);
  return idx;
}

}  // namespace semlog

#endif
