// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "latdist/cli.hpp"

using namespace latdist;
using namespace testutil;

namespace {

constexpr double kGolaySeconds = 10.0;
constexpr std::size_t kGolayWeight5Words = 11;
constexpr std::size_t kMaxHarvestRounds = 3;
constexpr int kSweepPerField = 50;
constexpr double kSweepSeconds = 300.0;
constexpr int kImageCodesPerField = 20;
constexpr std::size_t kImageMaxLength = 30, kImageMaxDim = 12;
constexpr int kReductionBases = 50;
constexpr std::size_t kReductionRank = 20;
constexpr std::size_t kReductionBeta = 10;
constexpr double kDelta = 0.99;
constexpr double kSizeTol = 1e-9;
constexpr std::size_t kGramRankLimit = 10;
constexpr int kEnumBases = 100;
constexpr std::size_t kEnumMaxRank = 6;
constexpr int kBoundTuples = 20;
constexpr long kBoundUnits = 1;
constexpr double kScaleSeconds = 900.0;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << ' ' << id << ' ' << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

struct CliRun {
  int code;
  RunReport rep;
  double seconds;
};

CliRun golay_cli(unsigned threads) {
  const std::string file = std::string(LATDIST_DATA_DIR) + "/golay11.txt";
  const std::string th = std::to_string(threads);
  const char* argv[] = {"latdist", "distance", file.c_str(), "--field", "3", "--threads", th.c_str()};
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const int code = run_cli(7, argv, out, err);
  const double s = since(t0);
  RunReport rep;
  if (code == 0 || code == 2) rep = report_from_json(nlohmann::ordered_json::parse(out.str()));
  return {code, rep, s};
}

struct SweepOutcome {
  bool ok = true;
  std::string first_problem;
  std::vector<std::pair<std::size_t, Status>> results;
  double seconds = 0;
};

SweepOutcome oracle_sweep(unsigned threads) {
  SweepOutcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  for (std::uint32_t q : {2u, 3u}) {
    const Field f = Field::prime(q);
    for (int t = 0; t < kSweepPerField; ++t) {
      const std::size_t n = 8 + rng() % 13;
      const std::size_t k = 2 + rng() % (std::min<std::size_t>(10, n - 1) - 1);
      const auto c = random_code(rng, f, n, k);
      DistanceConfig cfg;
      cfg.threads = threads;
      const auto r = min_distance(c, cfg);
      const auto ref = brute_force_distance(c);
      o.results.emplace_back(r.d_best, r.status);
      const bool good = r.status == Status::certified && r.d_best == ref.distance && weight(r.witness) == r.d_best &&
                        c.contains(r.witness);
      if (!good && o.ok) {
        o.ok = false;
        o.first_problem = "q=" + std::to_string(q) + " [" + std::to_string(n) + "," + std::to_string(k) +
                          "] got " + std::to_string(r.d_best) + " " + to_string(r.status) + ", oracle " +
                          std::to_string(ref.distance);
      }
    }
  }
  o.seconds = since(t0);
  return o;
}

void criterion_golay(CliRun& one) {
  one = golay_cli(1);
  const bool ok = one.code == 0 && one.rep.result.d_best == 5 && one.rep.result.status == Status::certified &&
                  weight(one.rep.result.witness) == 5 && golay().contains(one.rep.result.witness) &&
                  one.seconds < kGolaySeconds;
  char buf[160];
  std::snprintf(buf, sizeof buf, "d=%zu status=%s witness weight %zu, %.3fs (limit %.0fs)", one.rep.result.d_best,
                to_string(one.rep.result.status), weight(one.rep.result.witness), one.seconds, kGolaySeconds);
  report(1, "golay", ok, buf);
}

void criterion_harvest() {
  const auto c = golay();
  DistanceConfig cfg;
  cfg.beta = 2;
  cfg.delta = kDelta;
  cfg.scale = Integer(6);
  std::set<Codeword> words;
  std::size_t min_w = 0, rounds = 0;
  bool members = true;
  for (rounds = 1; rounds <= kMaxHarvestRounds; ++rounds) {
    cfg.harvest_rounds = rounds;
    const auto cands = harvest(c, cfg);
    min_w = cands.front().weight;
    for (const auto& x : cands) {
      members = members && c.contains(x.word);
      if (x.weight != 5) continue;
      for (Symbol s = 1; s < 3; ++s) {
        Codeword m = x.word;
        for (auto& v : m) v = c.field().mul(v, s);
        words.insert(m);
      }
    }
    if (words.size() >= kGolayWeight5Words) break;
  }
  const bool ok = members && min_w == 5 && words.size() >= kGolayWeight5Words;
  report(2, "harvest", ok,
         "min weight " + std::to_string(min_w) + ", " + std::to_string(words.size()) +
             " distinct weight-5 words (need " + std::to_string(kGolayWeight5Words) + ") after " +
             std::to_string(std::min(rounds, kMaxHarvestRounds)) + " round(s)");
}

void criterion_sweep(SweepOutcome& one) {
  one = oracle_sweep(1);
  const bool ok = one.ok && one.seconds < kSweepSeconds;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d codes, %.1fs (limit %.0fs)%s%s", 2 * kSweepPerField, one.seconds, kSweepSeconds,
                one.ok ? "" : "; first mismatch ", one.first_problem.c_str());
  report(3, "oracle_sweep", ok, buf);
}

void criterion_binary_image() {
  std::mt19937_64 rng(4242);
  bool ok = true;
  std::string problem;
  int count = 0;
  for (unsigned m : {2u, 6u}) {
    const Field f = Field::binary_extension(m);
    for (int t = 0; t < kImageCodesPerField; ++t) {
      const std::size_t n_max = kImageMaxLength / m, k_max = kImageMaxDim / m;
      const std::size_t n = 2 + rng() % (n_max - 1);
      const std::size_t k = 1 + rng() % std::min(k_max, n - 1);
      const auto c = random_code(rng, f, n, k);
      const auto img = binary_image(c);
      const auto r = binary_image_distance(c, {});
      const auto ref = brute_force_distance(img);
      ++count;
      if (r.d_best != ref.distance || r.status != Status::certified || !img.contains(r.witness)) {
        if (ok) problem = "GF(" + std::to_string(f.q()) + ") [" + std::to_string(n) + "," + std::to_string(k) + "]";
        ok = false;
      }
    }
  }
  report(4, "binary_image", ok, std::to_string(count) + " codes" + (ok ? "" : "; first mismatch " + problem));
}

void criterion_reduction() {
  std::mt19937_64 rng(777);
  bool ok = true;
  std::size_t gram_checked = 0;
  double worst = 0;
  std::string problem;
  for (int t = 0; t < kReductionBases; ++t) {
    const auto src = random_basis(rng, kReductionRank, kReductionRank, -100, 100);
    LatticeBasis<Integer> b(src);
    ReductionParams p;
    p.beta = kReductionBeta;
    p.delta = kDelta;
    bkz(b, p);
    const auto g = compute_gso<long double>(b.rows());
    const auto blocks = check_bkz_blocks(b, kReductionBeta, kDelta);
    worst = std::max(worst, blocks.worst_ratio);
    LatticeBasis<Integer> l(src);
    lll(l, kDelta);
    const bool lovasz = satisfies_lovasz(compute_gso<long double>(l.rows()), kDelta);
    bool gram = true;
    if (t % 5 == 0) {
      // rank <= 10 subsample: the leading rows of the input
      const oracle::IntRows sub(src.begin(), src.begin() + kGramRankLimit);
      LatticeBasis<Integer> s(sub);
      bkz(s, p);
      gram = oracle::gram_det(s.rows()) == oracle::gram_det(sub);
      ++gram_checked;
    }
    const bool good = is_size_reduced(g, kSizeTol) && blocks.ok && lovasz && gram && b.size() == kReductionRank;
    if (!good && ok) problem = "basis " + std::to_string(t);
    ok = ok && good;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d rank-%zu bases, beta %zu, worst delta^2 B_i/lambda^2 %.6f, %zu gram checks%s%s",
                kReductionBases, kReductionRank, kReductionBeta, worst, gram_checked, ok ? "" : "; first failure ",
                problem.c_str());
  report(5, "reduction", ok, buf);
}

void criterion_enumeration() {
  std::mt19937_64 rng(31337);
  bool ok = true;
  std::size_t vectors = 0;
  for (int t = 0; t < kEnumBases; ++t) {
    const std::size_t rank = 1 + rng() % kEnumMaxRank;
    const auto src = random_basis(rng, rank, rank + rng() % 3, -20, 20);
    LatticeBasis<Integer> red(src);
    lll(red);
    Integer shortest = -1;
    for (std::size_t i = 0; i < red.size(); ++i)
      if (shortest < 0 || red.norm_sq(i) < shortest) shortest = red.norm_sq(i);
    const double r2 = shortest.convert_to<double>() * (1 + static_cast<double>(rng() % 3) / 2);
    EnumSpec spec;
    spec.radius_sq = r2;
    spec.collect_all = true;
    const auto got = enumerate(LatticeBasis<Integer>(src), spec);
    std::set<std::vector<Integer>> mine;
    for (const auto& h : got.vectors) mine.insert(oracle::canonical(h.v));
    const auto ref = oracle::box_search(red.rows(), r2);
    vectors += ref.size();
    ok = ok && mine == ref && got.vectors.size() == ref.size();
  }
  report(6, "enumeration", ok, std::to_string(kEnumBases) + " bases, " + std::to_string(vectors) + " vectors matched");
}

void criterion_threads(const CliRun& golay1, const SweepOutcome& sweep1) {
  const auto golay8 = golay_cli(8);
  const auto sweep8 = oracle_sweep(8);
  const bool same_golay = golay8.code == golay1.code && golay8.rep.result.d_best == golay1.rep.result.d_best &&
                          golay8.rep.result.status == golay1.rep.result.status;
  const bool same_sweep = sweep8.results == sweep1.results;
  report(7, "thread_determinism", same_golay && same_sweep,
         std::string("golay ") + (same_golay ? "identical" : "differs") + ", sweep " +
             (same_sweep ? "identical" : "differs") + " for 1 vs 8 threads");

  // Soft benchmark, not gating: certification on a rank-56 lattice.
  std::mt19937_64 rng(99);
  const auto c = random_code(rng, Field::prime(2), 56, 28);
  double secs[2];
  std::size_t d[2];
  unsigned th[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    DistanceConfig cfg;
    cfg.threads = th[i];
    const auto t0 = Clock::now();
    d[i] = min_distance(c, cfg).d_best;
    secs[i] = since(t0);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "INFO 7 speedup: [56,28] GF(2) d=%zu/%zu, 1 thread %.2fs, 8 threads %.2fs, ratio %.2f, %u hardware threads",
                d[0], d[1], secs[0], secs[1], secs[0] / secs[1], std::thread::hardware_concurrency());
  std::cout << buf << std::endl;
}

void criterion_bounds() {
  std::mt19937_64 rng(8080);
  bool ok = true;
  long worst = 0;
  for (int t = 0; t < kBoundTuples; ++t) {
    ScalingInputs s;
    s.m = rng() % 30;
    s.n = 1 + rng() % 100;
    const unsigned long M = 1 + rng() % 50, r = 1 + rng() % 20;
    s.M = M;
    s.r_max = r;
    s.delta = std::uniform_real_distribution<double>(0.51, 1.0)(rng);
    s.beta = t == 0 ? 2 : 2 + rng() % 40;
    const auto Ms = std::to_string(M), rs = std::to_string(r);
    const Integer a = abs(scaling_bound_lll(s) - oracle::mpfr_bound(true, s.m, s.n, Ms, rs, s.delta, s.beta));
    const Integer b = abs(scaling_bound_bkz(s) - oracle::mpfr_bound(false, s.m, s.n, Ms, rs, s.delta, s.beta));
    worst = std::max({worst, a.convert_to<long>(), b.convert_to<long>()});
    ok = ok && a <= kBoundUnits && b <= kBoundUnits;
  }
  const BoundReal g2 = hermite_upper<BoundReal>(2);
  const bool gamma2 = abs(g2 - 2 / sqrt(BoundReal(3))) < BoundReal("1e-110");
  report(8, "bounds", ok && gamma2,
         std::to_string(kBoundTuples) + " tuples, worst difference " + std::to_string(worst) + " unit(s), gamma_2 " +
             (gamma2 ? "= 2/sqrt(3)" : "wrong"));
}

void criterion_scale() {
  std::mt19937_64 rng(6030);
  const auto c = random_code(rng, Field::prime(2), 60, 30);
  const auto t0 = Clock::now();
  const auto r = min_distance(c, {});
  const double s = since(t0);
  const bool ok = r.status == Status::certified && c.contains(r.witness) && weight(r.witness) == r.d_best &&
                  s < kScaleSeconds;
  char buf[200];
  std::snprintf(buf, sizeof buf, "[60,30] GF(2) d=%zu status=%s, %llu nodes, %.1fs (limit %.0fs)", r.d_best,
                to_string(r.status), static_cast<unsigned long long>(r.stats.nodes), s, kScaleSeconds);
  report(9, "scalability", ok, buf);
}

}  // namespace

int main() {
  CliRun golay1;
  SweepOutcome sweep1;
  const std::vector<std::function<void()>> steps = {
      [&] { criterion_golay(golay1); },
      criterion_harvest,
      [&] { criterion_sweep(sweep1); },
      criterion_binary_image,
      criterion_reduction,
      criterion_enumeration,
      [&] { criterion_threads(golay1, sweep1); },
      criterion_bounds,
      criterion_scale,
  };
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      steps[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing criteria" << std::endl;
  return failures ? 1 : 0;
}
