#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "latdist/error.hpp"
#include "latdist/gso.hpp"

// Schnorr-Euchner enumeration over a block of Gram-Schmidt data.
//
// Coefficients x_0..x_{r-1} are chosen top-down. At level i the projected
// squared length is partdist[i+1] + (x_i - c_i)^2 * B_i with center
// c_i = -sum_{j>i} x_j mu_{j,i}; candidates at a level are visited in
// zig-zag order around c_i, so the first one over the radius ends the level.
// While every higher coefficient is zero only x_i >= 0 is tried, which
// reports exactly one of +-v.

namespace latdist {

struct EnumHit {
  std::span<const std::int64_t> coeffs;  // coefficients w.r.t. the block rows
  double norm_sq;                        // floating projected squared norm
  std::size_t item;                      // work item the hit came from
  std::uint64_t seq;                     // order of the hit within its item
};

struct EnumControl {
  double radius_sq = 0;
  std::uint64_t node_budget = std::uint64_t{1} << 36;
  unsigned threads = 1;
  std::size_t target_items = 64;
  std::function<void(std::size_t done, std::size_t total, std::uint64_t nodes)> on_progress;
  /// Invoked on each node with coefficients [level, r) fixed; returning false prunes it.
  std::function<bool(std::size_t level, std::span<const std::int64_t> coeffs)> node_filter;
};

struct EnumStats {
  std::uint64_t nodes = 0;
  std::size_t items_done = 0;
  std::size_t items_total = 0;
  bool complete = true;
  double final_radius_sq = 0;
};

/// Block of Gram-Schmidt data converted to doubles, with local indices.
struct BlockGso {
  std::vector<std::vector<double>> mu;
  std::vector<double> norms;

  std::size_t size() const noexcept { return norms.size(); }
};

template <class Float>
BlockGso slice_block(const GsoData<Float>& g, std::size_t begin, std::size_t end) {
  BlockGso b;
  const std::size_t r = end - begin;
  b.mu.assign(r, std::vector<double>(r, 0.0));
  b.norms.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    b.norms[i] = static_cast<double>(g.norms[begin + i]);
    for (std::size_t j = 0; j < i; ++j) b.mu[i][j] = static_cast<double>(g.mu[begin + i][begin + j]);
  }
  return b;
}

namespace detail {

inline double slackened(double r) { return r * (1.0 + 1e-9) + 1e-6; }

struct EnumShared {
  std::atomic<double> radius;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::uint64_t budget;
  std::mutex mu;

  void lower_radius(double r) {
    double cur = radius.load(std::memory_order_relaxed);
    while (r < cur && !radius.compare_exchange_weak(cur, r, std::memory_order_relaxed)) {
    }
  }
};

class Walker {
 public:
  Walker(const BlockGso& g, EnumShared& shared, const EnumControl& ctl)
      : x(g.size(), 0), g_(g), r_(g.size()), shared_(shared), ctl_(ctl), c(r_, 0.0), partdist(r_ + 1, 0.0),
        sigma(r_, std::vector<double>(r_ + 1, 0.0)), dx(r_, 1), ddx(r_, 1), hi(r_, 0), top_zero(r_, true) {}

  std::vector<std::int64_t> x;

  // Enumerates levels lo-1 down to stop_level with levels [lo, r) fixed;
  // `emit(dist)` is called for each admissible candidate at stop_level.
  template <class Emit>
  void walk(std::size_t lo, std::size_t stop_level, double fixed_dist, Emit&& emit) {
    partdist[lo] = fixed_dist;
    for (std::size_t i = 0; i < r_; ++i) hi[i] = r_ - 1;
    bool all_zero = true;
    for (std::size_t j = lo; j < r_; ++j) all_zero = all_zero && x[j] == 0;
    std::size_t i = lo - 1;
    top_zero[i] = all_zero;
    init_level(i);
    for (;;) {
      const double y = static_cast<double>(x[i]) - c[i];
      const double dist = partdist[i + 1] + y * y * g_.norms[i];
      if (dist <= slackened(shared_.radius.load(std::memory_order_relaxed))) {
        if (++local_nodes_ >= 1024) {
          flush();
          if (shared_.stop.load(std::memory_order_relaxed)) return;
        }
        bool skip = stop_level == 0 && i == 0 && top_zero[0] && x[0] == 0;
        if (!skip && ctl_.node_filter && !ctl_.node_filter(i, std::span<const std::int64_t>(x).subspan(i)))
          skip = true;
        if (!skip) {
          if (i == stop_level) {
            emit(dist);
          } else {
            partdist[i] = dist;
            top_zero[i - 1] = top_zero[i] && x[i] == 0;
            --i;
            init_level(i);
            continue;
          }
        }
        next_candidate(i);
      } else {
        if (++i >= lo) return;
        next_candidate(i);
      }
    }
  }

  void flush() {
    const auto total = shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed) + local_nodes_;
    local_nodes_ = 0;
    if (total > shared_.budget) shared_.stop.store(true, std::memory_order_relaxed);
  }

 private:
  void init_level(std::size_t i) {
    for (std::size_t j = hi[i]; j > i; --j) sigma[i][j] = sigma[i][j + 1] - static_cast<double>(x[j]) * g_.mu[j][i];
    if (i > 0) hi[i - 1] = std::max(hi[i - 1], hi[i]);
    hi[i] = i;
    c[i] = sigma[i][i + 1];
    if (top_zero[i]) {
      x[i] = 0;
    } else {
      x[i] = std::llround(c[i]);
      dx[i] = ddx[i] = c[i] >= static_cast<double>(x[i]) ? 1 : -1;
    }
    if (i > 0) hi[i - 1] = std::max(hi[i - 1], i);
  }

  void next_candidate(std::size_t i) {
    if (top_zero[i]) {
      ++x[i];
    } else {
      x[i] += dx[i];
      ddx[i] = -ddx[i];
      dx[i] = ddx[i] - dx[i];
    }
    if (i > 0) hi[i - 1] = std::max(hi[i - 1], i);
  }

  const BlockGso& g_;
  std::size_t r_;
  EnumShared& shared_;
  const EnumControl& ctl_;
  std::uint64_t local_nodes_ = 0;

  std::vector<double> c, partdist;
  std::vector<std::vector<double>> sigma;  // sigma[i][j] = -sum_{l>=j} x_l mu_{l,i}
  std::vector<std::int64_t> dx, ddx;
  std::vector<std::size_t> hi;  // sigma[i][j] is stale for j <= hi[i]
  std::vector<bool> top_zero;   // x_j == 0 for all j > i
};

struct WorkItem {
  std::vector<std::int64_t> prefix;  // x[lo..r)
  double dist;
};

}  // namespace detail

/// Enumerates all nonzero block vectors (one per +-pair) with projected squared
/// norm within the radius. `visit(const EnumHit&)` runs under a lock and
/// returns the radius to continue with (values above the current one are
/// ignored). Work is split into prefix subtrees over the top levels; the
/// sequence of hits inside each subtree, and their global DFS order, does not
/// depend on the thread count.
template <class Visitor>
EnumStats enumerate_block(const BlockGso& g, const EnumControl& ctl, Visitor&& visit) {
  const std::size_t r = g.size();
  EnumStats stats;
  if (!(ctl.radius_sq > 0)) throw invalid_input("enumeration radius must be positive");
  if (r == 0) throw invalid_input("enumeration over an empty block");
  for (double b : g.norms)
    if (!(b > 0) || !std::isfinite(b)) throw numeric_failure("invalid Gram-Schmidt norms for enumeration");

  detail::EnumShared shared;
  shared.radius.store(ctl.radius_sq);
  shared.budget = ctl.node_budget;

  // Prefix subtrees: deepen the fixed top levels until there are enough items.
  std::vector<detail::WorkItem> items;
  std::size_t lo = r;
  {
    detail::Walker w(g, shared, ctl);
    const std::size_t target = std::max<std::size_t>(ctl.target_items, 8 * std::size_t{ctl.threads});
    // Items stay strict prefixes unless r == 1; an empty level keeps the previous one.
    for (std::size_t depth = 1; depth <= std::max<std::size_t>(1, r - 1); ++depth) {
      std::vector<detail::WorkItem> next_items;
      const std::size_t next_lo = r - depth;
      w.walk(r, next_lo, 0.0, [&](double dist) {
        next_items.push_back(
            {std::vector<std::int64_t>(w.x.begin() + static_cast<std::ptrdiff_t>(next_lo), w.x.end()), dist});
      });
      if (next_items.empty() && depth > 1) break;
      items = std::move(next_items);
      lo = next_lo;
      if (items.size() >= target || shared.stop.load()) break;
    }
    w.flush();
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  const std::size_t total = items.size();

  auto worker = [&] {
    detail::Walker w(g, shared, ctl);
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total || shared.stop.load(std::memory_order_relaxed)) break;
      const auto& item = items[idx];
      std::copy(item.prefix.begin(), item.prefix.end(), w.x.begin() + static_cast<std::ptrdiff_t>(lo));
      std::uint64_t seq = 0;
      auto report = [&](double dist) {
        std::lock_guard lock(shared.mu);
        const double nr = visit(EnumHit{std::span<const std::int64_t>(w.x), dist, idx, seq++});
        shared.lower_radius(nr);
      };
      if (lo == 0) {
        if (item.dist <= detail::slackened(shared.radius.load())) report(item.dist);
      } else {
        w.walk(lo, 0, item.dist, report);
      }
      w.flush();
      if (shared.stop.load()) break;
      const std::size_t d = done.fetch_add(1) + 1;
      if (ctl.on_progress) {
        std::lock_guard lock(shared.mu);
        ctl.on_progress(d, total, shared.nodes.load());
      }
    }
    w.flush();
  };

  if (ctl.threads <= 1 || total <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    const unsigned n = std::min<unsigned>(ctl.threads, static_cast<unsigned>(total));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  stats.nodes = shared.nodes.load();
  stats.items_done = done.load();
  stats.items_total = total;
  stats.complete = !shared.stop.load() && stats.items_done == total;
  stats.final_radius_sq = shared.radius.load();
  return stats;
}

/// Shortest nonzero vector of a projected block. Near-ties go to the
/// lexicographically smallest coefficient vector, so the answer does not
/// depend on threading.
struct BlockSvpResult {
  std::vector<std::int64_t> coeffs;  // empty when nothing lies within the radius
  double norm_sq = 0;
  EnumStats stats;
};

inline BlockSvpResult block_svp(const BlockGso& g, EnumControl ctl) {
  BlockSvpResult best;
  best.stats = enumerate_block(g, ctl, [&](const EnumHit& h) {
    const bool better = best.coeffs.empty() || h.norm_sq < best.norm_sq * (1 - 1e-12) ||
                        (h.norm_sq <= best.norm_sq * (1 + 1e-12) &&
                         std::lexicographical_compare(h.coeffs.begin(), h.coeffs.end(), best.coeffs.begin(),
                                                      best.coeffs.end()));
    if (better) {
      best.coeffs.assign(h.coeffs.begin(), h.coeffs.end());
      best.norm_sq = h.norm_sq;
    }
    return best.norm_sq;
  });
  return best;
}

}  // namespace latdist
