#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "latdist/enumeration.hpp"
#include "latdist/error.hpp"
#include "latdist/gso.hpp"
#include "latdist/integer.hpp"

namespace latdist {

/// Row basis of an integer lattice with lazily computed Gram-Schmidt data.
template <class Int = Integer>
class LatticeBasis {
 public:
  using Row = std::vector<Int>;

  LatticeBasis() = default;
  explicit LatticeBasis(std::vector<Row> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != rows_.front().size()) throw invalid_input("lattice rows have different lengths");
  }

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return rows_.empty() ? 0 : rows_.front().size(); }
  bool empty() const noexcept { return rows_.empty(); }

  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& operator[](std::size_t i) const { return rows_[i]; }

  /// Mutable access; marks the Gram-Schmidt data stale.
  std::vector<Row>& mutable_rows() {
    gso_.reset();
    return rows_;
  }

  bool gso_valid() const noexcept { return gso_.has_value(); }

  const GsoData<double>& gso() {
    if (!gso_) gso_ = compute_gso<double>(rows_);
    return *gso_;
  }

  /// Number of rows not flagged dependent by Gram-Schmidt.
  std::size_t rank() {
    const auto& g = gso();
    return static_cast<std::size_t>(std::count(g.dependent.begin(), g.dependent.end(), false));
  }

  Int norm_sq(std::size_t i) const {
    Int s = 0;
    for (const auto& v : rows_[i]) s += v * v;
    return s;
  }

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) { return a.rows_ == b.rows_; }

 private:
  std::vector<Row> rows_;
  std::optional<GsoData<double>> gso_;
};

struct ReductionParams {
  std::size_t beta = 20;
  double delta = 0.99;
  std::size_t max_rounds = 64;
  unsigned threads = 1;
  std::uint64_t node_budget = std::uint64_t{1} << 36;  // per block enumeration
};

struct ReductionStats {
  std::uint64_t swaps = 0;
  std::uint64_t insertions = 0;
  std::size_t tours = 0;
  bool converged = true;
  bool wide_precision = false;  // the double pass failed and was redone in WideFloat
};

namespace detail {

template <class Int, class Float>
Int round_to_int(const Float& v) {
  if constexpr (std::is_floating_point_v<Float>) {
    const Float r = std::round(v);
    if (std::fabs(r) < Float(4e18)) return Int(static_cast<long long>(r));
    return Int(r);
  } else {
    return boost::multiprecision::round(v).template convert_to<Int>();
  }
}

template <class Float>
Float fabs_any(const Float& v) {
  using std::fabs;
  using boost::multiprecision::fabs;
  return fabs(v);
}

/// LLL / BKZ engine over exact integer rows with floating Gram-Schmidt data.
/// Zero rows produced by linear dependencies are rotated to the front;
/// rows [zeros, size) are the active ones.
template <class Int, class Float>
class Reducer {
 public:
  using Row = std::vector<Int>;

  Reducer(std::vector<Row> rows, double delta) : b_(std::move(rows)), delta_(delta) {
    const std::size_t n = b_.size();
    d_ = n ? b_.front().size() : 0;
    bf_.assign(n, std::vector<Float>(d_));
    star_.assign(n, std::vector<Float>(d_));
    mu_.assign(n, std::vector<Float>(n, Float(0)));
    B_.assign(n, Float(0));
    for (std::size_t i = 0; i < n; ++i) refresh(i);
  }

  std::vector<Row>& rows() { return b_; }
  std::size_t zeros() const { return zeros_; }
  const ReductionStats& stats() const { return stats_; }

  void lll() { run(0); }

  /// Size-reduces every row against its predecessors without swapping.
  void size_reduce_all() {
    partition_zeros();
    for (std::size_t k = zeros_; k < b_.size(); ++k) {
      size_reduce(k);
      if (is_zero_row(k)) compute_row(k);
    }
  }

  /// Schnorr-Euchner BKZ. Leading zero rows are dropped from the active basis.
  void bkz(const ReductionParams& p) {
    lll();
    drop_zero_rows();
    const std::size_t n = b_.size();
    if (p.beta > n)
      throw invalid_input("block size " + std::to_string(p.beta) + " exceeds lattice rank " + std::to_string(n));
    if (n < 2) return;
    stats_.converged = false;
    for (std::size_t tour = 0; tour < p.max_rounds; ++tour) {
      bool clean = true;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const std::size_t end = std::min(j + p.beta, n);
        const double bj = static_cast<double>(B_[j]);
        const double target = p.delta * bj * (1.0 - 1e-9);
        EnumControl ctl;
        ctl.radius_sq = target;
        ctl.node_budget = p.node_budget;
        ctl.threads = end - j >= 30 ? p.threads : 1;
        ctl.target_items = 1;
        const auto svp = block_svp(block(j, end), ctl);
        if (svp.coeffs.empty() || !(svp.norm_sq < target)) continue;
        Row v(d_, Int(0));
        for (std::size_t i = 0; i < svp.coeffs.size(); ++i) {
          if (svp.coeffs[i] == 0) continue;
          const Int c(svp.coeffs[i]);
          for (std::size_t t = 0; t < d_; ++t) v[t] += c * b_[j + i][t];
        }
        insert(j, std::move(v));
        run(j);
        drop_zero_rows();
        ++stats_.insertions;
        clean = false;
      }
      ++stats_.tours;
      if (clean) {
        stats_.converged = true;
        break;
      }
    }
  }

 private:
  BlockGso block(std::size_t begin, std::size_t end) const {
    BlockGso g;
    const std::size_t r = end - begin;
    g.mu.assign(r, std::vector<double>(r, 0.0));
    g.norms.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      g.norms[i] = static_cast<double>(B_[begin + i]);
      for (std::size_t j = 0; j < i; ++j) g.mu[i][j] = static_cast<double>(mu_[begin + i][begin + j]);
    }
    return g;
  }

  void refresh(std::size_t i) {
    for (std::size_t c = 0; c < d_; ++c) bf_[i][c] = to_float<Float>(b_[i][c]);
  }

  bool is_zero_row(std::size_t i) const {
    return std::all_of(b_[i].begin(), b_[i].end(), [](const Int& v) { return is_zero(v); });
  }

  void compute_row(std::size_t k) {
    auto& s = star_[k];
    s = bf_[k];
    Float orig(0);
    for (std::size_t c = 0; c < d_; ++c) orig += s[c] * s[c];
    for (std::size_t j = zeros_; j < k; ++j) {
      if (B_[j] == Float(0)) {
        mu_[k][j] = Float(0);
        continue;
      }
      Float dot(0);
      for (std::size_t c = 0; c < d_; ++c) dot += s[c] * star_[j][c];
      const Float m = dot / B_[j];
      mu_[k][j] = m;
      for (std::size_t c = 0; c < d_; ++c) s[c] -= m * star_[j][c];
    }
    Float nrm(0);
    for (std::size_t c = 0; c < d_; ++c) nrm += s[c] * s[c];
    B_[k] = (nrm <= Float(1e-12) * orig) ? Float(0) : nrm;
  }

  void size_reduce(std::size_t k) {
    for (int pass = 0;; ++pass) {
      if (pass > 64) throw numeric_failure("size reduction does not converge; precision too low");
      compute_row(k);
      bool changed = false;
      for (std::size_t j = k; j-- > zeros_;) {
        const Float m = mu_[k][j];
        if (!(fabs_any(m) > Float(0.5 + 1e-11))) continue;  // exact halves would flip forever
        const Float xf = round_f(m);
        const Int x = round_to_int<Int>(xf);
        for (std::size_t c = 0; c < d_; ++c) b_[k][c] -= x * b_[j][c];
        for (std::size_t l = zeros_; l < j; ++l) mu_[k][l] -= xf * mu_[j][l];
        mu_[k][j] -= xf;
        changed = true;
      }
      if (!changed) return;
      refresh(k);
    }
  }

  static Float round_f(const Float& v) {
    using std::round;
    using boost::multiprecision::round;
    return round(v);
  }

  void swap_rows(std::size_t a, std::size_t c) {
    std::swap(b_[a], b_[c]);
    std::swap(bf_[a], bf_[c]);
  }

  void partition_zeros() {
    for (std::size_t i = zeros_; i < b_.size(); ++i) {
      if (!is_zero_row(i)) continue;
      for (std::size_t t = i; t > zeros_; --t) swap_rows(t, t - 1);
      ++zeros_;
    }
  }

  // LLL loop. Rows [zeros, start) must already be reduced with valid data.
  void run(std::size_t start) {
    const std::size_t n = b_.size();
    std::size_t k = start;
    if (k <= zeros_) {
      partition_zeros();
      if (zeros_ >= n) return;
      compute_row(zeros_);
      k = zeros_ + 1;
    }
    const Float delta(delta_);
    std::uint64_t guard = 0;
    while (k < n) {
      if (++guard > 200000000ULL) throw numeric_failure("LLL iteration limit reached");
      size_reduce(k);
      if (is_zero_row(k)) {
        for (std::size_t t = k; t > zeros_; --t) swap_rows(t, t - 1);
        ++zeros_;
        for (std::size_t i = zeros_; i <= k; ++i) compute_row(i);
        ++k;
        continue;
      }
      const Float m = mu_[k][k - 1];
      if (B_[k] < (delta - m * m) * B_[k - 1]) {
        swap_rows(k, k - 1);
        ++stats_.swaps;
        if (k - 1 == zeros_) {
          compute_row(zeros_);
          k = zeros_ + 1;
        } else {
          --k;
        }
      } else {
        ++k;
      }
    }
  }

  void insert(std::size_t j, Row v) {
    b_.insert(b_.begin() + static_cast<std::ptrdiff_t>(j), std::move(v));
    bf_.insert(bf_.begin() + static_cast<std::ptrdiff_t>(j), std::vector<Float>(d_));
    refresh(j);
    star_.insert(star_.begin() + static_cast<std::ptrdiff_t>(j), std::vector<Float>(d_));
    B_.insert(B_.begin() + static_cast<std::ptrdiff_t>(j), Float(0));
    for (auto& row : mu_) row.push_back(Float(0));
    mu_.insert(mu_.begin() + static_cast<std::ptrdiff_t>(j), std::vector<Float>(b_.size(), Float(0)));
  }

  void drop_zero_rows() {
    if (zeros_ == 0) return;
    const auto z = static_cast<std::ptrdiff_t>(zeros_);
    b_.erase(b_.begin(), b_.begin() + z);
    bf_.erase(bf_.begin(), bf_.begin() + z);
    star_.erase(star_.begin(), star_.begin() + z);
    B_.erase(B_.begin(), B_.begin() + z);
    mu_.erase(mu_.begin(), mu_.begin() + z);
    for (auto& row : mu_) row.erase(row.begin(), row.begin() + z);
    zeros_ = 0;
  }

  std::vector<Row> b_;
  std::size_t d_ = 0;
  double delta_;
  std::size_t zeros_ = 0;
  std::vector<std::vector<Float>> bf_, star_, mu_;
  std::vector<Float> B_;
  ReductionStats stats_;
};

inline void check_delta(double delta, bool allow_one) {
  if (!(delta > 0.5) || delta > 1.0 || (!allow_one && delta >= 1.0))
    throw invalid_input("delta must lie in (0.5, " + std::string(allow_one ? "1]" : "1)") + ", got " +
                        std::to_string(delta));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reduction predicates.

template <class Float>
bool is_size_reduced(const GsoData<Float>& g, double tol = 1e-9) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (static_cast<double>(detail::fabs_any(g.mu[i][j])) > 0.5 + tol) return false;
  return true;
}

/// delta * B_{i-1} <= B_i + mu_{i,i-1}^2 * B_{i-1} for all consecutive rows.
template <class Float>
bool satisfies_lovasz(const GsoData<Float>& g, double delta, double tol = 1e-9) {
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double prev = static_cast<double>(g.norms[i - 1]);
    const double m = static_cast<double>(g.mu[i][i - 1]);
    if (delta * prev > (static_cast<double>(g.norms[i]) + m * m * prev) * (1 + tol)) return false;
  }
  return true;
}

template <class Int>
std::vector<typename LatticeBasis<Int>::Row> nonzero_rows(const LatticeBasis<Int>& b) {
  std::vector<typename LatticeBasis<Int>::Row> out;
  for (const auto& r : b.rows())
    if (!std::all_of(r.begin(), r.end(), [](const Int& v) { return is_zero(v); })) out.push_back(r);
  return out;
}

/// Block condition delta^2 * B_i <= lambda_1(L_i)^2 for every projected block
/// L_i = pi_i(b_i, ..., b_{min(i+beta, n)-1}), each lambda_1 found by enumeration.
struct BlockCheck {
  bool ok = true;
  std::size_t first_violation = 0;
  double worst_ratio = 0;  // max of delta^2 * B_i / lambda_1^2
};

template <class Int>
BlockCheck check_bkz_blocks(const LatticeBasis<Int>& b, std::size_t beta, double delta) {
  const auto rows = nonzero_rows(b);
  const auto g = compute_gso<long double>(rows);
  BlockCheck out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t end = std::min(i + beta, g.size());
    EnumControl ctl;
    ctl.radius_sq = static_cast<double>(g.norms[i]);
    ctl.target_items = 1;
    const auto svp = block_svp(slice_block(g, i, end), ctl);
    const double lambda_sq = svp.coeffs.empty() ? static_cast<double>(g.norms[i]) : svp.norm_sq;
    const double ratio = delta * delta * static_cast<double>(g.norms[i]) / lambda_sq;
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (ratio > 1 + 1e-9 && out.ok) {
      out.ok = false;
      out.first_violation = i;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reductions.

/// Size reduction: |mu_ij| <= 1/2 via integer row operations only.
template <class Int>
void size_reduce(LatticeBasis<Int>& b) {
  detail::Reducer<Int, double> r(b.rows(), 0.99);
  r.size_reduce_all();
  b = LatticeBasis<Int>(std::move(r.rows()));
  if (!is_size_reduced(compute_gso<long double>(nonzero_rows(b)))) {
    detail::Reducer<Int, WideFloat> w(b.rows(), 0.99);
    w.size_reduce_all();
    b = LatticeBasis<Int>(std::move(w.rows()));
  }
}

namespace detail {

template <class Int>
bool lll_verified(const LatticeBasis<Int>& b, double delta) {
  const auto g = compute_gso<long double>(nonzero_rows(b));
  return is_size_reduced(g) && satisfies_lovasz(g, delta);
}

}  // namespace detail

/// LLL with dependent-row collapse: zero rows end up at the front.
template <class Int>
ReductionStats lll(LatticeBasis<Int>& b, double delta = 0.99) {
  detail::check_delta(delta, false);
  ReductionStats stats;
  try {
    detail::Reducer<Int, double> r(b.rows(), delta);
    r.lll();
    stats = r.stats();
    LatticeBasis<Int> out(std::move(r.rows()));
    if (detail::lll_verified(out, delta)) {
      b = std::move(out);
      return stats;
    }
    b = std::move(out);
  } catch (const numeric_failure&) {
  }
  detail::Reducer<Int, WideFloat> w(b.rows(), delta);
  w.lll();
  stats.swaps += w.stats().swaps;
  stats.wide_precision = true;
  b = LatticeBasis<Int>(std::move(w.rows()));
  return stats;
}

/// Block Korkin-Zolotarev reduction (Schnorr-Euchner loop). Zero rows from
/// dependent input are kept at the front, as with lll().
template <class Int>
ReductionStats bkz(LatticeBasis<Int>& b, const ReductionParams& p) {
  detail::check_delta(p.delta, true);
  if (p.beta < 2) throw invalid_input("block size must be at least 2");
  const double lll_delta = std::min(p.delta, 0.999);
  ReductionStats stats;
  auto finish = [&](std::vector<typename LatticeBasis<Int>::Row> rows) {
    const std::size_t dropped = b.size() - rows.size();
    std::vector<typename LatticeBasis<Int>::Row> out(dropped, typename LatticeBasis<Int>::Row(b.dim(), Int(0)));
    out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    return LatticeBasis<Int>(std::move(out));
  };
  try {
    detail::Reducer<Int, double> r(b.rows(), lll_delta);
    r.bkz(p);
    stats = r.stats();
    auto out = finish(std::move(r.rows()));
    if (detail::lll_verified(out, lll_delta)) {
      b = std::move(out);
      return stats;
    }
    b = std::move(out);
  } catch (const numeric_failure&) {
  }
  detail::Reducer<Int, WideFloat> w(b.rows(), lll_delta);
  w.bkz(p);
  stats.tours += w.stats().tours;
  stats.insertions += w.stats().insertions;
  stats.converged = w.stats().converged;
  stats.wide_precision = true;
  b = finish(std::move(w.rows()));
  return stats;
}

/// Removes zero rows.
template <class Int>
LatticeBasis<Int> prune_zero_rows(const LatticeBasis<Int>& b) {
  return LatticeBasis<Int>(nonzero_rows(b));
}

}  // namespace latdist
