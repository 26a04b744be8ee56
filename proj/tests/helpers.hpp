#pragma once

#include <random>
#include <vector>

#include "latdist/latdist.hpp"
#include "oracles.hpp"

namespace testutil {

using namespace latdist;

inline const SymbolMatrix& golay_generator() {
  static const SymbolMatrix g{{2, 2, 1, 2, 0, 1, 0, 0, 0, 0, 0}, {0, 2, 2, 1, 2, 0, 1, 0, 0, 0, 0},
                              {0, 0, 2, 2, 1, 2, 0, 1, 0, 0, 0}, {0, 0, 0, 2, 2, 1, 2, 0, 1, 0, 0},
                              {0, 0, 0, 0, 2, 2, 1, 2, 0, 1, 0}, {0, 0, 0, 0, 0, 2, 2, 1, 2, 0, 1}};
  return g;
}

inline LinearCode golay() { return LinearCode::from_generator(Field::prime(3), golay_generator()); }

inline LinearCode hamming74() {
  const SymbolMatrix g{{1, 0, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
  return LinearCode::from_generator(Field::prime(2), g);
}

inline SymbolMatrix random_matrix(std::mt19937_64& rng, const Field& f, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<Symbol> d(0, f.q() - 1);
  SymbolMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

// Random code of exact dimension k (resampled until full rank).
inline LinearCode random_code(std::mt19937_64& rng, const Field& f, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw invalid_input("random_code needs 1 <= k <= n");
  for (;;) {
    auto m = random_matrix(rng, f, k, n);
    try {
      auto c = LinearCode::from_generator(f, m);
      if (c.k() == k) return c;
    } catch (const invalid_input&) {
    }
  }
}

inline oracle::Arith arith(const Field& f) {
  if (f.is_prime()) return {f.q()};
  return {f.q(), f.m(), f.modulus()};
}

inline std::vector<oracle::Word> words(const SymbolMatrix& g) {
  std::vector<oracle::Word> out;
  for (std::size_t i = 0; i < g.rows(); ++i) out.emplace_back(g.row(i).begin(), g.row(i).end());
  return out;
}

inline std::size_t oracle_distance(const LinearCode& c) { return oracle::min_weight(arith(c.field()), words(c.generator())); }

inline oracle::IntRows random_basis(std::mt19937_64& rng, std::size_t rank, std::size_t dim, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  for (;;) {
    oracle::IntRows b(rank, std::vector<Integer>(dim));
    for (auto& r : b)
      for (auto& x : r) x = d(rng);
    if (oracle::gram_det(b) != 0) return b;
  }
}

}  // namespace testutil
