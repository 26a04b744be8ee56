#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "latdist/code.hpp"
#include "latdist/embed.hpp"
#include "latdist/error.hpp"
#include "latdist/lattice.hpp"
#include "latdist/svp.hpp"

namespace latdist {

enum class Status { certified, heuristic, partial };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::certified: return "certified";
    case Status::heuristic: return "heuristic";
    case Status::partial: return "partial";
  }
  return "?";
}

inline std::optional<Status> parse_status(std::string_view s) {
  if (s == "certified") return Status::certified;
  if (s == "heuristic") return Status::heuristic;
  if (s == "partial") return Status::partial;
  return std::nullopt;
}

struct DistanceConfig {
  std::size_t beta = 20;
  double delta = 0.99;
  std::optional<Integer> scale;  // set: harvest on the scaled embedding with N = scale
  std::uint64_t node_budget = std::uint64_t{1} << 36;
  bool certify = true;
  unsigned threads = 1;
  std::size_t harvest_rounds = 1;
  std::uint64_t seed = 1;
  // Certify with the full radius (n+1) r_max^2 and |v_i| <= r_max instead of w_best - 1.
  bool full_radius = false;
  std::function<void(std::size_t done, std::size_t total, std::uint64_t nodes)> on_progress;
};

struct Candidate {
  Codeword word;
  std::size_t weight = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct DistanceStats {
  std::uint64_t nodes = 0;
  std::size_t reduction_rounds = 0;
  std::size_t candidates = 0;
  double wall_seconds = 0;
  std::string field;
  std::vector<std::size_t> history;  // d_best after harvest and after each improvement
};

struct DistanceResult {
  std::size_t d_best = 0;
  Codeword witness;
  Status status = Status::heuristic;
  std::pair<std::size_t, std::size_t> progress{0, 0};
  DistanceStats stats;
};

struct CertifyResult {
  std::optional<Candidate> better;
  bool exhausted = false;
  std::pair<std::size_t, std::size_t> progress{0, 0};
  std::uint64_t nodes = 0;
};

namespace detail {

inline void check_config(const DistanceConfig& cfg) {
  if (cfg.threads < 1) throw invalid_input("threads must be at least 1");
  if (cfg.node_budget < 1) throw invalid_input("node budget must be at least 1");
  if (cfg.beta < 2) throw invalid_input("block size must be at least 2");
  if (cfg.harvest_rounds < 1) throw invalid_input("harvest rounds must be at least 1");
  check_delta(cfg.delta, true);
}

/// Scales a nonzero word so its first nonzero symbol is 1.
inline Codeword normalized(const Field& f, Codeword w) {
  const auto lead = std::find_if(w.begin(), w.end(), [](Symbol s) { return s != 0; });
  if (lead == w.end() || *lead == 1) return w;
  const Symbol s = f.inv(*lead);
  for (auto& x : w) x = f.mul(x, s);
  return w;
}

inline bool candidate_less(const Candidate& a, const Candidate& b) {
  return a.weight != b.weight ? a.weight < b.weight : a.word < b.word;
}

inline void unimodular_shuffle(LatticeBasis<Integer>& b, std::mt19937_64& rng) {
  auto& rows = b.mutable_rows();
  const std::size_t r = rows.size();
  if (r < 2) return;
  std::uniform_int_distribution<std::size_t> pick(0, r - 1);
  for (std::size_t t = 0; t < 3 * r; ++t) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) j = (j + 1) % r;
    const bool neg = rng() & 1;
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      if (neg) rows[i][c] -= rows[j][c];
      else rows[i][c] += rows[j][c];
    }
  }
  std::shuffle(rows.begin(), rows.end(), rng);
}

struct HarvestRun {
  std::vector<Candidate> candidates;
  std::size_t tours = 0;
  std::optional<LatticeBasis<Integer>> construction_a;  // reduced tail-free lattice, when harvested on it
};

inline HarvestRun harvest_run(const LinearCode& c, const DistanceConfig& cfg) {
  check_config(cfg);
  detail::require_prime_field(c);
  std::optional<SystematicForm> sf;
  EmbeddedLattice e = cfg.scale ? embed_general(c, *cfg.scale) : (sf = systematic_form(c), embed_systematic(sf->code));

  HarvestRun run;
  std::set<Codeword> seen;
  for (std::size_t round = 0; round < cfg.harvest_rounds; ++round) {
    LatticeBasis<Integer> basis = e.basis;
    if (round > 0) {
      std::mt19937_64 rng(cfg.seed + round);
      unimodular_shuffle(basis, rng);
    }
    ReductionParams p;
    p.beta = std::min(cfg.beta, basis.size());
    p.delta = cfg.delta;
    p.threads = cfg.threads;
    if (p.beta >= 2) run.tours += bkz(basis, p).tours;
    else lll(basis, std::min(cfg.delta, 0.999));
    basis = prune_zero_rows(basis);
    for (const auto& row : basis.rows()) {
      auto hit = extract_codeword(row, e);
      if (!hit) continue;
      Codeword w = sf ? sf->to_source(hit->first) : std::move(hit->first);
      w = normalized(c.field(), std::move(w));
      if (seen.insert(w).second) run.candidates.push_back({std::move(w), hit->second});
    }
    if (round == 0 && !cfg.scale) run.construction_a = std::move(basis);
  }
  std::sort(run.candidates.begin(), run.candidates.end(), candidate_less);
  if (run.candidates.empty()) throw numeric_failure("reduced basis produced no codeword candidates");
  return run;
}

// Enumerates the reduced Construction A lattice below w_best. A hit of weight
// w' lowers the radius to w', so every word of the final weight is seen and the
// reported one is the smallest after normalization.
inline CertifyResult certify_on(const LinearCode& c, const SystematicForm& sf, const EmbeddedLattice& e,
                                const LatticeBasis<Integer>& reduced, std::size_t w_best, const DistanceConfig& cfg) {
  EnumSpec spec;
  spec.radius_sq = static_cast<double>(w_best - 1);
  if (cfg.full_radius) {
    spec.radius_sq = static_cast<double>((c.n() + 1) * w_best);
    spec.coord_bound = CoordBound{Integer(static_cast<long long>(std::ceil(std::sqrt(double(w_best))))), 0, c.n()};
  }
  spec.node_budget = cfg.node_budget;
  spec.threads = cfg.threads;
  spec.on_progress = cfg.on_progress;

  CertifyResult out;
  std::size_t best = w_best;
  auto res = enumerate_each(reduced, spec, [&](const std::vector<Integer>& v, const Integer&) -> std::optional<double> {
    auto hit = extract_codeword(v, e);
    if (!hit || hit->second > best) return std::nullopt;
    if (hit->second == best && !out.better) return std::nullopt;
    Codeword w = normalized(c.field(), sf.to_source(hit->first));
    if (!out.better || hit->second < best || w < out.better->word) out.better = Candidate{std::move(w), hit->second};
    best = hit->second;
    return static_cast<double>(best);
  });
  out.exhausted = res.complete;
  out.progress = res.top_level_progress;
  out.nodes = res.nodes_visited;
  return out;
}

inline LatticeBasis<Integer> reduce_for_certification(const EmbeddedLattice& e, const DistanceConfig& cfg,
                                                      std::size_t& tours) {
  LatticeBasis<Integer> basis = e.basis;
  ReductionParams p;
  p.beta = std::min(cfg.beta, basis.size());
  p.delta = cfg.delta;
  p.threads = cfg.threads;
  if (p.beta >= 2) tours += bkz(basis, p).tours;
  else lll(basis, std::min(cfg.delta, 0.999));
  return prune_zero_rows(basis);
}

}  // namespace detail

/// Low-weight codeword candidates from the reduced embedded lattice, in
/// source coordinates, one per scalar class, sorted by (weight, word).
inline std::vector<Candidate> harvest(const LinearCode& c, const DistanceConfig& cfg) {
  return detail::harvest_run(c, cfg).candidates;
}

/// Searches the Construction A lattice for codewords lighter than w_best.
/// `exhausted` means the search was complete: no lighter word exists beyond
/// the one returned in `better`.
inline CertifyResult certify(const LinearCode& c, std::size_t w_best, const DistanceConfig& cfg) {
  detail::check_config(cfg);
  detail::require_prime_field(c);
  if (w_best < 2) throw invalid_input("certification needs w_best >= 2");
  const SystematicForm sf = systematic_form(c);
  const EmbeddedLattice e = embed_systematic(sf.code);
  std::size_t tours = 0;
  const auto reduced = detail::reduce_for_certification(e, cfg, tours);
  return detail::certify_on(c, sf, e, reduced, w_best, cfg);
}

/// Minimum distance: harvest candidates, then certify by enumeration.
/// Certification is exact for q in {2, 3}; other primes give heuristic results.
inline DistanceResult min_distance(const LinearCode& c, const DistanceConfig& cfg) {
  detail::check_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  DistanceResult r;
  r.stats.field = c.field().spec();
  auto finish = [&] {
    r.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };
  if (c.k() == c.n()) {
    r.d_best = 1;
    r.witness.assign(c.n(), 0);
    r.witness[0] = 1;
    r.status = Status::certified;
    r.stats.history = {1};
    return finish();
  }
  detail::require_prime_field(c);

  auto run = detail::harvest_run(c, cfg);
  r.stats.reduction_rounds = run.tours;
  r.stats.candidates = run.candidates.size();
  r.d_best = run.candidates.front().weight;
  r.witness = run.candidates.front().word;
  r.stats.history.push_back(r.d_best);
  r.status = Status::heuristic;

  const std::uint32_t q = c.field().q();
  if (!cfg.certify || (q != 2 && q != 3)) return finish();
  if (r.d_best == 1) {
    r.status = Status::certified;
    return finish();
  }

  const SystematicForm sf = systematic_form(c);
  const EmbeddedLattice e = embed_systematic(sf.code);
  const LatticeBasis<Integer> reduced =
      run.construction_a ? *run.construction_a : detail::reduce_for_certification(e, cfg, r.stats.reduction_rounds);
  const auto cert = detail::certify_on(c, sf, e, reduced, r.d_best, cfg);
  r.stats.nodes = cert.nodes;
  r.progress = cert.progress;
  if (cert.better && cert.better->weight < r.d_best) {
    r.d_best = cert.better->weight;
    r.witness = cert.better->word;
    r.stats.history.push_back(r.d_best);
  }
  r.status = cert.exhausted ? Status::certified : Status::partial;
  return finish();
}

/// Minimum distance of the binary image of a GF(2^m) code.
inline DistanceResult binary_image_distance(const LinearCode& c, const DistanceConfig& cfg) {
  if (c.field().is_prime()) throw invalid_input("binary_image_distance needs a GF(2^m) code");
  auto r = min_distance(binary_image(c), cfg);
  r.stats.field = c.field().spec();
  return r;
}

}  // namespace latdist
