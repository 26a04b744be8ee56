#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "latdist/error.hpp"
#include "latdist/gf.hpp"
#include "latdist/matrix.hpp"

namespace latdist {

using SymbolMatrix = Matrix<Symbol>;
using Codeword = std::vector<Symbol>;

/// Number of nonzero symbols.
inline std::size_t weight(std::span<const Symbol> w) {
  return static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](Symbol s) { return s != 0; }));
}

// ---------------------------------------------------------------------------
// Linear algebra over a field.

struct RowEchelon {
  SymbolMatrix reduced;              // nonzero rows only, pivots normalized to 1
  std::vector<std::size_t> pivots;   // pivot column of each row, increasing
};

/// Reduced row echelon form with leftmost pivots.
inline RowEchelon rref(const Field& f, SymbolMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Symbol s = f.inv(m(r, c));
    for (auto& x : m.row(r)) x = f.mul(x, s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Symbol factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  SymbolMatrix out(r, m.cols());
  for (std::size_t i = 0; i < r; ++i) std::copy(m.row(i).begin(), m.row(i).end(), out.row(i).begin());
  return {std::move(out), std::move(pivots)};
}

inline std::size_t rank(const Field& f, const SymbolMatrix& m) { return rref(f, m).pivots.size(); }

/// Rows spanning {x : m * x^T = 0}.
inline SymbolMatrix nullspace(const Field& f, const SymbolMatrix& m) {
  const std::size_t n = m.cols();
  auto [red, pivots] = rref(f, m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  SymbolMatrix out(0, n);
  std::vector<Symbol> v(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(red(i, free));
    out.append_row(v);
  }
  return out;
}

/// Keeps the rows of m that are independent of the rows kept before them.
inline SymbolMatrix independent_rows(const Field& f, const SymbolMatrix& m) {
  struct Reduced {
    std::vector<Symbol> v;
    std::size_t pivot;
  };
  std::vector<Reduced> basis;
  SymbolMatrix out(0, m.cols());
  std::vector<Symbol> v;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    v.assign(m.row(i).begin(), m.row(i).end());
    for (const auto& b : basis) {
      const Symbol c = v[b.pivot];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, b.v[j]));
    }
    auto it = std::find_if(v.begin(), v.end(), [](Symbol s) { return s != 0; });
    if (it == v.end()) continue;
    const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    const Symbol s = f.inv(v[pivot]);
    for (auto& x : v) x = f.mul(x, s);
    // keep earlier basis vectors reduced at the new pivot
    for (auto& b : basis) {
      const Symbol c = b.v[pivot];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) b.v[j] = f.sub(b.v[j], f.mul(c, v[j]));
    }
    basis.push_back({v, pivot});
    out.append_row(m.row(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SystematicForm;
class LinearCode;
SystematicForm systematic_form(const LinearCode& c);

/// Linear [n, k] block code over a finite field.
class LinearCode {
 public:
  /// Rows that depend on earlier rows are dropped, so k = rank.
  static LinearCode from_generator(const Field& f, const SymbolMatrix& m) {
    check_entries(f, m);
    SymbolMatrix g = independent_rows(f, m);
    if (g.rows() == 0) throw invalid_input("generator matrix is zero");
    SymbolMatrix h = nullspace(f, g);
    return LinearCode(f, std::move(g), std::move(h));
  }

  static LinearCode from_parity(const Field& f, const SymbolMatrix& m) {
    check_entries(f, m);
    SymbolMatrix g = nullspace(f, m);
    if (g.rows() == 0) throw invalid_input("parity-check matrix has full column rank (trivial code)");
    SymbolMatrix h = independent_rows(f, m);
    return LinearCode(f, std::move(g), std::move(h));
  }

  const Field& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return g_.cols(); }
  std::size_t k() const noexcept { return g_.rows(); }
  const SymbolMatrix& generator() const noexcept { return g_; }
  const SymbolMatrix& parity_check() const noexcept { return h_; }

  /// Column permutation applied by systematic_form: column i of this code is
  /// column perm[i] of the source code.
  const std::optional<std::vector<std::size_t>>& systematic_permutation() const noexcept { return sys_perm_; }

  bool is_systematic() const {
    for (std::size_t i = 0; i < k(); ++i)
      for (std::size_t j = 0; j < k(); ++j)
        if (g_(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  Codeword encode(std::span<const Symbol> msg) const {
    if (msg.size() != k())
      throw invalid_input("message length " + std::to_string(msg.size()) + " != k = " + std::to_string(k()));
    Codeword c(n(), 0);
    for (std::size_t i = 0; i < k(); ++i) {
      if (!field_.contains(msg[i])) throw invalid_input("message symbol outside field");
      if (msg[i] == 0) continue;
      for (std::size_t j = 0; j < n(); ++j) c[j] = field_.add(c[j], field_.mul(msg[i], g_(i, j)));
    }
    return c;
  }

  /// Syndrome check H * w^T == 0.
  bool contains(std::span<const Symbol> w) const {
    if (w.size() != n())
      throw invalid_input("word length " + std::to_string(w.size()) + " != n = " + std::to_string(n()));
    for (Symbol s : w)
      if (!field_.contains(s)) return false;
    for (std::size_t i = 0; i < h_.rows(); ++i) {
      Symbol acc = 0;
      for (std::size_t j = 0; j < n(); ++j) acc = field_.add(acc, field_.mul(h_(i, j), w[j]));
      if (acc != 0) return false;
    }
    return true;
  }

 private:
  friend struct SystematicForm;
  friend SystematicForm systematic_form(const LinearCode&);

  LinearCode(Field f, SymbolMatrix g, SymbolMatrix h) : field_(f), g_(std::move(g)), h_(std::move(h)) {}

  static void check_entries(const Field& f, const SymbolMatrix& m) {
    if (m.empty()) throw invalid_input("empty matrix");
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (Symbol s : m.row(i))
        if (!f.contains(s))
          throw invalid_input("entry " + std::to_string(s) + " in row " + std::to_string(i) +
                              " is not a canonical element of GF(" + std::to_string(f.q()) + ")");
  }

  Field field_;
  SymbolMatrix g_;
  SymbolMatrix h_;
  std::optional<std::vector<std::size_t>> sys_perm_;
};

struct SystematicForm {
  LinearCode code;                       // generator (I_k | A)
  std::vector<std::size_t> permutation;  // column i of `code` is source column permutation[i]

  /// Maps a word of the systematic code back to source coordinates.
  Codeword to_source(std::span<const Symbol> w) const {
    Codeword out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[permutation[i]] = w[i];
    return out;
  }
  Codeword from_source(std::span<const Symbol> w) const {
    Codeword out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[permutation[i]];
    return out;
  }
};

/// Gauss-Jordan to (I_k | A). Column r is swapped with the first later column
/// holding a nonzero entry at or below row r only when column r has none.
inline SystematicForm systematic_form(const LinearCode& c) {
  const Field& f = c.field();
  SymbolMatrix g = c.generator();
  const std::size_t k = g.rows(), n = g.cols();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t r = 0; r < k; ++r) {
    auto pivot_row = [&](std::size_t col) {
      for (std::size_t p = r; p < k; ++p)
        if (g(p, col) != 0) return p;
      return k;
    };
    std::size_t p = pivot_row(r);
    if (p == k) {
      std::size_t col = r + 1;
      while (col < n && (p = pivot_row(col)) == k) ++col;
      if (col == n) throw invalid_input("generator matrix is rank deficient");
      g.swap_cols(r, col);
      std::swap(perm[r], perm[col]);
    }
    g.swap_rows(p, r);
    const Symbol s = f.inv(g(r, r));
    for (auto& x : g.row(r)) x = f.mul(x, s);
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r || g(i, r) == 0) continue;
      const Symbol factor = g(i, r);
      for (std::size_t j = 0; j < n; ++j) g(i, j) = f.sub(g(i, j), f.mul(factor, g(r, j)));
    }
  }

  // H = (-A^T | I_{n-k})
  SymbolMatrix h(n - k, n, 0);
  for (std::size_t i = 0; i < n - k; ++i) {
    for (std::size_t j = 0; j < k; ++j) h(i, j) = f.neg(g(j, k + i));
    h(i, k + i) = 1;
  }
  LinearCode out(f, std::move(g), std::move(h));
  out.sys_perm_ = perm;
  return {std::move(out), std::move(perm)};
}

// ---------------------------------------------------------------------------
// Exhaustive minimum distance.

struct OracleOptions {
  std::optional<std::size_t> cap;           // stop at the first word of weight <= cap
  double budget = 268435456.0;              // refuse when q^k exceeds this (2^28)
  unsigned threads = 1;
};

struct OracleResult {
  std::size_t distance = 0;
  Codeword witness;
};

namespace detail {

struct OracleChunk {
  std::size_t weight = std::numeric_limits<std::size_t>::max();
  std::uint64_t index = 0;
  Codeword word;
};

// Walks message indices [begin, end) in lexicographic order (last symbol
// fastest). Incrementing a digit adds its generator row once, including on
// wrap-around since q * row = 0.
inline OracleChunk oracle_chunk(const LinearCode& c, std::uint64_t begin, std::uint64_t end,
                                std::optional<std::size_t> cap) {
  const Field& f = c.field();
  const std::size_t k = c.k(), n = c.n();
  const std::uint64_t q = f.q();
  const SymbolMatrix& g = c.generator();

  std::vector<Symbol> msg(k, 0);
  std::uint64_t t = begin;
  for (std::size_t i = k; i-- > 0;) {
    msg[i] = static_cast<Symbol>(t % q);
    t /= q;
  }
  Codeword word = c.encode(msg);
  std::size_t w = weight(word);

  OracleChunk best;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    if (idx != 0 && w < best.weight) {
      best = {w, idx, word};
      if (cap && w <= *cap) break;
    }
    if (idx + 1 == end) break;
    for (std::size_t i = k; i-- > 0;) {
      auto row = g.row(i);
      const Symbol next = static_cast<Symbol>((msg[i] + 1) % q);
      const Symbol step = f.sub(next, msg[i]);  // symbol order is not additive in GF(2^m)
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] == 0) continue;
        const bool was_zero = word[j] == 0;
        word[j] = f.add(word[j], f.mul(step, row[j]));
        if (was_zero)
          ++w;
        else if (word[j] == 0)
          --w;
      }
      msg[i] = next;
      if (msg[i] != 0) break;
    }
  }
  return best;
}

}  // namespace detail

/// Minimum weight over all nonzero codewords by enumerating every message.
/// Ties go to the lexicographically first message; with `cap`, the first
/// message whose word has weight <= cap is returned.
inline OracleResult brute_force_distance(const LinearCode& c, const OracleOptions& opt = {}) {
  const double total = std::pow(static_cast<double>(c.field().q()), static_cast<double>(c.k()));
  if (total > opt.budget)
    throw budget_exceeded("exhaustive search over q^k = " + std::to_string(c.field().q()) + "^" +
                          std::to_string(c.k()) + " = " + std::to_string(total) + " messages exceeds budget " +
                          std::to_string(opt.budget));
  const auto count = static_cast<std::uint64_t>(total);
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(opt.threads, count));

  std::vector<detail::OracleChunk> results(chunks);
  auto bounds = [&](std::uint64_t i) { return count / chunks * i + std::min(i, count % chunks); };
  if (chunks == 1) {
    results[0] = detail::oracle_chunk(c, 0, count, opt.cap);
  } else {
    std::vector<std::jthread> workers;
    for (std::uint64_t i = 0; i < chunks; ++i)
      workers.emplace_back([&, i] { results[i] = detail::oracle_chunk(c, bounds(i), bounds(i + 1), opt.cap); });
  }

  // Chunks are contiguous and ordered, so this reproduces the sequential walk.
  const detail::OracleChunk* best = nullptr;
  for (const auto& r : results) {
    if (r.word.empty()) continue;
    if (opt.cap && r.weight <= *opt.cap) {
      best = &r;
      break;
    }
    if (!best || r.weight < best->weight) best = &r;
  }
  if (!best) throw invalid_input("code has no nonzero codeword");
  return {best->weight, best->word};
}

// ---------------------------------------------------------------------------
// Binary images of GF(2^m) codes.

/// Expands each symbol into its m polynomial-basis bits.
inline Codeword expand_binary(const Field& f, std::span<const Symbol> w) {
  if (f.is_prime()) throw invalid_input("binary expansion needs an extension field");
  Codeword out;
  out.reserve(w.size() * f.m());
  for (Symbol s : w)
    for (unsigned t = 0; t < f.m(); ++t) out.push_back((s >> t) & 1);
  return out;
}

/// Binary [mn, mk] image in the polynomial basis. Generator row i*m + j is the
/// expansion of x^j * g_i, so each entry g contributes the block
/// regular_rep(g)^T (rows are message bits, as in row-vector encoding).
inline LinearCode binary_image(const LinearCode& c) {
  const Field& f = c.field();
  if (f.is_prime()) throw invalid_input("binary image needs a GF(2^m) code");
  const unsigned m = f.m();
  SymbolMatrix g2(c.k() * m, c.n() * m, 0);
  for (std::size_t i = 0; i < c.k(); ++i) {
    for (std::size_t l = 0; l < c.n(); ++l) {
      const BitMatrix rep = f.regular_rep(c.generator()(i, l));
      for (unsigned j = 0; j < m; ++j)
        for (unsigned t = 0; t < m; ++t) g2(i * m + j, l * m + t) = rep(t, j);
    }
  }
  return LinearCode::from_generator(Field::prime(2), g2);
}

}  // namespace latdist
