#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "latdist/enumeration.hpp"
#include "latdist/error.hpp"
#include "latdist/gso.hpp"
#include "latdist/integer.hpp"
#include "latdist/lattice.hpp"

namespace latdist {

/// Magnitude cap on ambient coordinates [begin, end).
struct CoordBound {
  Integer r_max;
  std::size_t begin = 0;
  std::size_t end = std::numeric_limits<std::size_t>::max();
};

struct EnumSpec {
  double radius_sq = 0;
  std::optional<CoordBound> coord_bound;
  bool update_radius = false;
  bool collect_all = false;
  std::uint64_t node_budget = std::uint64_t{1} << 36;
  unsigned threads = 1;
  std::function<void(std::size_t done, std::size_t total, std::uint64_t nodes)> on_progress;
};

struct LatticeVector {
  std::vector<Integer> v;
  Integer norm_sq;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

struct EnumResult {
  std::vector<LatticeVector> vectors;  // sorted by (norm, vector)
  std::uint64_t nodes_visited = 0;
  std::pair<std::size_t, std::size_t> top_level_progress{0, 0};
  bool complete = true;
};

namespace detail {

inline bool vector_less(const LatticeVector& a, const LatticeVector& b) {
  if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
  return a.v < b.v;
}

inline Integer floor_radius(double r) { return Integer(std::floor(r)); }

template <class Int>
std::vector<typename LatticeBasis<Int>::Row> enumeration_rows(const LatticeBasis<Int>& b) {
  auto rows = nonzero_rows(b);
  if (rows.empty()) throw invalid_input("enumeration needs a basis of rank at least 1");
  return rows;
}

// Node filter for coordinates that the fixed coefficients already determine:
// coordinate c is final at level i when rows 0..i-1 all vanish there.
template <class Int>
std::function<bool(std::size_t, std::span<const std::int64_t>)> coord_filter(
    const std::vector<typename LatticeBasis<Int>::Row>& rows, const CoordBound& cb) {
  const std::size_t r = rows.size();
  const std::size_t d = rows.front().size();
  const std::size_t end = std::min(cb.end, d);
  if (cb.r_max > Integer(std::numeric_limits<std::int64_t>::max() / 4)) return {};
  const auto bound = cb.r_max.template convert_to<std::int64_t>();
  std::vector<std::vector<std::size_t>> at_level(r + 1);
  std::vector<std::vector<std::int64_t>> small(r, std::vector<std::int64_t>(d, 0));
  for (std::size_t c = cb.begin; c < end; ++c) {
    std::size_t level = 0;
    bool fits = true;
    for (std::size_t i = 0; i < r; ++i) {
      const auto& e = rows[i][c];
      if (is_zero(e)) continue;
      level = i + 1;
      if (abs(Integer(e)) > Integer(1) << 40) fits = false;
      else small[i][c] = Integer(e).template convert_to<std::int64_t>();
    }
    if (fits) at_level[level].push_back(c);
  }
  return [at_level = std::move(at_level), small = std::move(small), bound, r](std::size_t level,
                                                                             std::span<const std::int64_t> x) {
    for (std::size_t c : at_level[level]) {
      __int128 s = 0;
      for (std::size_t j = level; j < r; ++j) s += static_cast<__int128>(x[j - level]) * small[j][c];
      if (s > bound || s < -static_cast<__int128>(bound)) return false;
    }
    return true;
  };
}

}  // namespace detail

/// Calls `fn(vector, norm_sq)` for every nonzero lattice vector (one of +-v)
/// with exact squared norm within the current radius. `fn` runs under a lock
/// and may return a smaller radius. Rows must be linearly independent apart
/// from zero rows.
template <class Int, class Fn>
EnumResult enumerate_each(const LatticeBasis<Int>& b, const EnumSpec& spec, Fn&& fn) {
  if (!(spec.radius_sq > 0)) throw invalid_input("enumeration radius must be positive");
  if (spec.node_budget < 1) throw invalid_input("node budget must be at least 1");
  const auto rows = detail::enumeration_rows(b);
  const auto g = compute_gso<long double>(rows);
  for (bool dep : g.dependent)
    if (dep) throw invalid_input("enumeration needs linearly independent rows; reduce the basis first");

  EnumControl ctl;
  ctl.radius_sq = spec.radius_sq;
  ctl.node_budget = spec.node_budget;
  ctl.threads = std::max(1u, spec.threads);
  ctl.on_progress = spec.on_progress;
  if (spec.coord_bound) ctl.node_filter = detail::coord_filter<Int>(rows, *spec.coord_bound);

  const std::size_t d = rows.front().size();
  Integer limit = detail::floor_radius(spec.radius_sq);
  std::vector<Integer> v(d);
  EnumResult res;
  const auto stats = enumerate_block(slice_block(g, 0, g.size()), ctl, [&](const EnumHit& h) -> double {
    std::fill(v.begin(), v.end(), Integer(0));
    for (std::size_t i = 0; i < h.coeffs.size(); ++i) {
      if (h.coeffs[i] == 0) continue;
      const Integer x(h.coeffs[i]);
      for (std::size_t c = 0; c < d; ++c) v[c] += x * Integer(rows[i][c]);
    }
    Integer n2 = 0;
    for (const auto& e : v) n2 += e * e;
    if (n2 > limit) return std::numeric_limits<double>::infinity();
    if (spec.coord_bound) {
      const auto& cb = *spec.coord_bound;
      for (std::size_t c = cb.begin; c < std::min(cb.end, d); ++c)
        if (abs(v[c]) > cb.r_max) return std::numeric_limits<double>::infinity();
    }
    const std::optional<double> nr = fn(static_cast<const std::vector<Integer>&>(v), static_cast<const Integer&>(n2));
    if (nr) {
      const Integer nl = detail::floor_radius(*nr);
      if (nl < limit) limit = nl;
      return *nr;
    }
    return std::numeric_limits<double>::infinity();
  });
  res.nodes_visited = stats.nodes;
  res.top_level_progress = {stats.items_done, stats.items_total};
  res.complete = stats.complete;
  return res;
}

/// Kannan-Fincke-Pohst enumeration with the Schnorr-Euchner traversal.
template <class Int>
EnumResult enumerate(const LatticeBasis<Int>& b, const EnumSpec& spec) {
  std::vector<LatticeVector> hits;
  Integer best;
  bool have = false;
  auto res = enumerate_each(b, spec, [&](const std::vector<Integer>& v, const Integer& n2) -> std::optional<double> {
    if (!have || n2 < best) best = n2;
    have = true;
    if (spec.collect_all || !spec.update_radius || hits.empty() || n2 <= hits.front().norm_sq) {
      if (!spec.collect_all && !hits.empty() && n2 < hits.front().norm_sq) hits.clear();
      hits.push_back({v, n2});
    }
    if (spec.update_radius) return best.template convert_to<double>();
    return std::nullopt;
  });
  if (spec.update_radius)
    std::erase_if(hits, [&](const LatticeVector& h) { return h.norm_sq > best; });
  std::sort(hits.begin(), hits.end(), detail::vector_less);
  if (!spec.collect_all && hits.size() > 1) hits.resize(1);
  res.vectors = std::move(hits);
  return res;
}

/// Exact shortest nonzero vector: LLL, seed the radius with the shortest
/// row, then enumerate with radius updates.
template <class Int>
LatticeVector shortest_vector(const LatticeBasis<Int>& b, unsigned threads = 1) {
  if (b.empty()) throw invalid_input("shortest_vector on an empty basis");
  LatticeBasis<Int> red = b;
  lll(red, 0.99);
  red = prune_zero_rows(red);
  if (red.empty()) throw invalid_input("shortest_vector on a zero lattice");
  LatticeVector seed;
  for (std::size_t i = 0; i < red.size(); ++i) {
    const Integer n2(red.norm_sq(i));
    if (i == 0 || n2 < seed.norm_sq) {
      seed.norm_sq = n2;
      seed.v.assign(red[i].begin(), red[i].end());
    }
  }
  EnumSpec spec;
  spec.radius_sq = seed.norm_sq.template convert_to<double>();
  spec.update_radius = true;
  spec.threads = threads;
  spec.node_budget = std::numeric_limits<std::uint64_t>::max();
  auto res = enumerate(red, spec);
  if (res.vectors.empty()) return seed;
  return res.vectors.front();
}

}  // namespace latdist
