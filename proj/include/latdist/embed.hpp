#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "latdist/code.hpp"
#include "latdist/error.hpp"
#include "latdist/integer.hpp"
#include "latdist/lattice.hpp"

namespace latdist {

/// Code embedded in an integer lattice. Code coordinates are
/// [code_begin, code_end); the remaining `tail_width` coordinates track
/// information vectors.
struct EmbeddedLattice {
  LatticeBasis<Integer> basis;
  LinearCode code;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint32_t q = 0;
  Integer N = 1;
  std::size_t tail_width = 0;
  std::size_t code_begin = 0;
  std::size_t code_end = 0;
};

namespace detail {

inline void require_prime_field(const LinearCode& c) {
  if (!c.field().is_prime())
    throw invalid_input("lattice embedding needs a prime field; use the binary image for GF(" +
                        std::to_string(c.field().q()) + ")");
}

}  // namespace detail

/// Construction A lattice of a systematic code: rows (I_k | A) and q*e_j for j >= k.
inline EmbeddedLattice embed_systematic(const LinearCode& c) {
  detail::require_prime_field(c);
  if (!c.is_systematic()) throw invalid_input("embed_systematic needs a generator of the form (I_k | A)");
  const std::size_t n = c.n(), k = c.k();
  const std::uint32_t q = c.field().q();
  std::vector<std::vector<Integer>> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Integer> r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = c.generator()(i, j);
    rows.push_back(std::move(r));
  }
  for (std::size_t j = k; j < n; ++j) {
    std::vector<Integer> r(n, 0);
    r[j] = q;
    rows.push_back(std::move(r));
  }
  return {LatticeBasis<Integer>(std::move(rows)), c, n, k, q, 1, 0, 0, n};
}

/// Rows [N*g_i | e_i] for each generator row and [N*q*e_j | 0] for every code coordinate.
inline EmbeddedLattice embed_general(const LinearCode& c, const Integer& N) {
  detail::require_prime_field(c);
  if (N < 1) throw invalid_input("scaling constant N must be at least 1, got " + N.str());
  const std::size_t n = c.n(), k = c.k();
  const std::uint32_t q = c.field().q();
  std::vector<std::vector<Integer>> rows;
  rows.reserve(n + k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Integer> r(n + k, 0);
    for (std::size_t j = 0; j < n; ++j) r[j] = N * c.generator()(i, j);
    r[n + i] = 1;
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> r(n + k, 0);
    r[j] = N * q;
    rows.push_back(std::move(r));
  }
  return {LatticeBasis<Integer>(std::move(rows)), c, n, k, q, N, k, 0, n};
}

/// Codeword behind a lattice vector, or none for vectors reducing to zero or
/// failing the syndrome check. The weight is that of the reduced word.
inline std::optional<std::pair<Codeword, std::size_t>> extract_codeword(std::span<const Integer> v,
                                                                         const EmbeddedLattice& e) {
  if (v.size() < e.code_end) throw invalid_input("vector shorter than the embedding");
  Codeword w(e.code_end - e.code_begin);
  const Integer q(e.q);
  for (std::size_t j = e.code_begin; j < e.code_end; ++j) {
    if (v[j] % e.N != 0)
      throw invalid_input("code coordinate " + std::to_string(j) + " is not divisible by N = " + e.N.str());
    Integer s = (v[j] / e.N) % q;
    if (s < 0) s += q;
    w[j - e.code_begin] = s.convert_to<Symbol>();
  }
  const std::size_t wt = weight(w);
  if (wt == 0 || !e.code.contains(w)) return std::nullopt;
  return std::pair{std::move(w), wt};
}

// ---------------------------------------------------------------------------
// Scaling-constant bounds.

using BoundReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<400>>;

struct ScalingInputs {
  std::size_t m = 0;  // rows of the Diophantine system
  std::size_t n = 0;  // lattice dimension
  BoundReal M = 1;    // max column norm
  BoundReal r_max = 1;
  double delta = 0.99;
  std::size_t beta = 2;
};

/// Hermite constant gamma_beta: exact for beta <= 8, 1 + beta/4 above.
template <class Real = BoundReal>
Real hermite_upper(std::size_t beta) {
  using std::pow;
  using std::sqrt;
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  switch (beta) {
    case 0: throw invalid_input("Hermite constant needs beta >= 1");
    case 1: return Real(1);
    case 2: return Real(2) / sqrt(Real(3));
    case 3: return pow(Real(2), Real(1) / 3);
    case 4: return sqrt(Real(2));
    case 5: return pow(Real(8), Real(1) / 5);
    case 6: return pow(Real(64) / 3, Real(1) / 6);
    case 7: return pow(Real(64), Real(1) / 7);
    case 8: return Real(2);
    default: return Real(1) + Real(beta) / 4;
  }
}

namespace detail {

inline void check_scaling(const ScalingInputs& s) {
  if (s.n < 1) throw invalid_input("bound needs n >= 1");
  if (!(s.M > 0)) throw invalid_input("bound needs M > 0");
  if (!(s.r_max > 0)) throw invalid_input("bound needs r_max > 0");
  check_delta(s.delta, true);
}

// 2 * sqrt((m+1)(n+1)) * r_max * M^m
inline BoundReal common_factor(const ScalingInputs& s) {
  BoundReal mp(1);
  for (std::size_t i = 0; i < s.m; ++i) mp *= s.M;
  return 2 * sqrt(BoundReal((s.m + 1) * (s.n + 1))) * s.r_max * mp;
}

inline Integer ceil_outward(const BoundReal& v) {
  const BoundReal bumped = v * (1 + BoundReal("1e-100"));
  return ceil(bumped).convert_to<Integer>();
}

}  // namespace detail

/// (4/(4 delta - 1))^{n/2} * 2 sqrt((m+1)(n+1)) * r_max * M^m, rounded up.
inline Integer scaling_bound_lll(const ScalingInputs& s) {
  detail::check_scaling(s);
  const BoundReal base = BoundReal(4) / (4 * BoundReal(s.delta) - 1);
  return detail::ceil_outward(pow(base, BoundReal(s.n) / 2) * detail::common_factor(s));
}

/// gamma_beta^{(n-1)/(beta-1)} * 2 sqrt((m+1)(n+1)) * r_max * M^m, rounded up.
inline Integer scaling_bound_bkz(const ScalingInputs& s) {
  if (s.beta < 2) throw invalid_input("block size must be at least 2");
  detail::check_scaling(s);
  const BoundReal g = hermite_upper<BoundReal>(s.beta);
  return detail::ceil_outward(pow(g, BoundReal(s.n - 1) / BoundReal(s.beta - 1)) * detail::common_factor(s));
}

/// Diophantine-system parameters of a code: the n-k parity equations
/// H x = 0 (mod q), with M the largest of the column norms of H and the norm
/// of the all-q right-hand side.
inline ScalingInputs scaling_inputs(const LinearCode& c, const BoundReal& r_max, double delta, std::size_t beta) {
  detail::require_prime_field(c);
  const auto& h = c.parity_check();
  ScalingInputs s;
  s.m = h.rows();
  s.n = c.n();
  Integer best = Integer(c.field().q()) * c.field().q() * h.rows();
  for (std::size_t j = 0; j < h.cols(); ++j) {
    Integer col = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) col += Integer(h(i, j)) * h(i, j);
    best = std::max(best, col);
  }
  s.M = sqrt(BoundReal(best));
  s.r_max = r_max;
  s.delta = delta;
  s.beta = beta;
  return s;
}

}  // namespace latdist
