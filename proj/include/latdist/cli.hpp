#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latdist/code.hpp"
#include "latdist/distance.hpp"
#include "latdist/embed.hpp"
#include "latdist/error.hpp"
#include "latdist/io.hpp"
#include "latdist/lattice.hpp"
#include "latdist/report.hpp"

namespace latdist {

namespace cli_detail {

inline unsigned default_threads() {
  if (const char* env = std::getenv("LATDIST_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 4096) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

// "4" and "64" are accepted as GF(2^2) and GF(2^6).
inline Field field_from_text(const std::string& spec) {
  if (spec.find('^') == std::string::npos) {
    std::uint32_t q = 0;
    try {
      q = static_cast<std::uint32_t>(std::stoul(spec));
    } catch (...) {
      throw invalid_input("bad field spec '" + spec + "'");
    }
    if (q > 2 && std::has_single_bit(q)) return Field::binary_extension(static_cast<unsigned>(std::countr_zero(q)));
  }
  return Field::parse(spec);
}

struct LoadedCode {
  LinearCode code;
  std::string format;
};

inline bool is_alist(const std::string& path) { return path.size() >= 6 && path.ends_with(".alist"); }

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path, 0, "cannot open file");
  return in;
}

inline LoadedCode load_code(const std::string& path, const std::optional<std::string>& field_spec, bool parity) {
  auto in = open_input(path);
  if (is_alist(path)) {
    const Field f = field_spec ? field_from_text(*field_spec) : Field::prime(2);
    return {LinearCode::from_parity(f, read_alist(in, path, f)), "alist"};
  }
  const RawMatrix raw = read_plain_matrix(in, path);
  std::optional<Field> f;
  if (field_spec) f = field_from_text(*field_spec);
  else if (raw.q) f = field_from_text(std::to_string(*raw.q));
  else throw parse_error(path, 1, "header has no field order; pass --field");
  const SymbolMatrix m = to_symbols(raw, *f, path);
  return {parity ? LinearCode::from_parity(*f, m) : LinearCode::from_generator(*f, m), "plain"};
}

inline void emit(const RunReport& r, const std::string& format, const std::optional<std::string>& out_path,
                 std::ostream& out) {
  std::ostringstream text;
  if (format == "json") {
    text << to_json(r).dump(2) << '\n';
  } else {
    text << "n " << r.result.n << "\nk " << r.result.k << "\nd_best " << r.result.d_best << "\nstatus "
         << to_string(r.result.status) << "\nwitness";
    for (Symbol s : r.result.witness) text << ' ' << s;
    text << "\nprogress " << r.result.progress.first << '/' << r.result.progress.second << "\nnodes "
         << r.stats.nodes << "\nwall_seconds " << r.stats.wall_seconds << '\n';
  }
  if (out_path) {
    std::ofstream f(*out_path);
    if (!f) throw invalid_input("cannot write '" + *out_path + "'");
    f << text.str();
  } else {
    out << text.str();
  }
}

inline std::vector<std::vector<Integer>> read_integer_matrix(const std::string& path) {
  auto in = open_input(path);
  return read_plain_matrix(in, path).entries;
}

inline std::ostream& open_output(const std::optional<std::string>& path, std::ofstream& file, std::ostream& out) {
  if (!path) return out;
  file.open(*path);
  if (!file) throw invalid_input("cannot write '" + *path + "'");
  return file;
}

}  // namespace cli_detail

/// Command-line entry point; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Minimum distance of linear codes via lattice reduction and enumeration", "latdist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LATDIST_VERSION);

  // Shared options.
  std::string file;
  std::optional<std::string> field, out_path, scale;
  std::string format = "json";
  bool binary = false, parity = false, no_certify = false, check = false, full_radius = false;
  std::size_t beta = 20, rounds = 1;
  double delta = 0.99, progress_every = 5.0;
  unsigned threads = default_threads();
  std::uint64_t node_budget = std::uint64_t{1} << 36, seed = 1;
  double oracle_budget = 268435456.0;

  auto add_code_input = [&](CLI::App* sc) {
    sc->add_option("file", file, "Matrix file (plain, or .alist parity-check)")->required();
    sc->add_option("--field", field, "Field: 2, 3, 2^m or 2^m:0xMODULUS (default: q from the file)");
    sc->add_flag("--binary-image", binary, "Work on the binary image of a GF(2^m) code");
    sc->add_flag("--parity", parity, "Plain input is a parity-check matrix");
    sc->add_option("--out", out_path, "Write the report here instead of stdout");
    sc->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sc->add_option("--threads", threads, "Worker threads (default: LATDIST_THREADS or 1)")
        ->check(CLI::Range(1u, 4096u));
  };

  auto* dist = app.add_subcommand("distance", "Minimum distance by reduction and enumeration");
  add_code_input(dist);
  dist->add_option("--beta", beta, "BKZ block size")->check(CLI::Range(std::size_t{2}, std::size_t{512}));
  dist->add_option("--delta", delta, "Reduction parameter delta in (0.5, 1]");
  dist->add_option("--scale", scale, "Harvest on the scaled embedding with this N");
  dist->add_option("--node-budget", node_budget, "Enumeration node cap")->check(CLI::PositiveNumber);
  dist->add_flag("--no-certify", no_certify, "Stop after harvesting");
  dist->add_option("--harvest-rounds", rounds, "Randomized re-reduction passes")->check(CLI::PositiveNumber);
  dist->add_option("--seed", seed, "Seed for re-randomization");
  dist->add_option("--progress-interval", progress_every, "Seconds between progress lines on stderr");
  dist->add_flag("--full-radius", full_radius, "Certify with radius (n+1) r_max^2 and |v_i| <= r_max");

  auto* orc = app.add_subcommand("oracle", "Minimum distance by exhaustive enumeration");
  add_code_input(orc);
  orc->add_option("--budget", oracle_budget, "Refuse when q^k exceeds this");

  auto* red = app.add_subcommand("reduce", "LLL (beta 2) or BKZ reduction of an integer basis");
  red->add_option("file", file, "Integer matrix, one basis vector per row")->required();
  red->add_option("--beta", beta, "Block size; 2 means LLL")->check(CLI::Range(std::size_t{2}, std::size_t{512}));
  red->add_option("--delta", delta, "Reduction parameter");
  red->add_flag("--check", check, "Verify the reduction predicates");
  red->add_option("--out", out_path, "Write the basis here instead of stdout");
  red->add_option("--threads", threads, "Worker threads for block enumeration")->check(CLI::Range(1u, 4096u));

  std::size_t bm = 0, bn = 0;
  std::string bM = "1", brmax = "1";
  double bdelta = 0.99;
  std::size_t bbeta = 2;
  auto* bnd = app.add_subcommand("bound", "Scaling-constant bounds for the LLL and BKZ embeddings");
  bnd->add_option("--m", bm, "Rows of the Diophantine system")->required();
  bnd->add_option("--n", bn, "Lattice dimension")->required();
  bnd->add_option("--M", bM, "Max column norm");
  bnd->add_option("--rmax", brmax, "Candidate norm bound");
  bnd->add_option("--delta", bdelta, "LLL parameter");
  bnd->add_option("--beta", bbeta, "BKZ block size");
  bnd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* emb = app.add_subcommand("embed", "Write the lattice basis of a code");
  add_code_input(emb);
  emb->add_option("--scale", scale, "Scaled embedding with this N (default: systematic, N = 1)");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << LATDIST_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::validation_error);
  }

  try {
    if (*dist || *orc || *emb) {
      auto loaded = load_code(file, field, parity);
      const LinearCode& source = loaded.code;
      if (binary && source.field().is_prime())
        throw invalid_input("--binary-image needs a GF(2^m) field, got GF(" + std::to_string(source.field().q()) + ")");
      if (!binary && !source.field().is_prime())
        throw invalid_input("GF(" + std::to_string(source.field().q()) + ") codes need --binary-image");
      const LinearCode code = binary ? binary_image(source) : source;

      RunReport rep;
      rep.input = {file, loaded.format, source.field().spec(), binary, parity};
      rep.config.beta = beta;
      rep.config.delta = delta;
      rep.config.scale = scale;
      rep.config.threads = threads;
      rep.config.certify = !no_certify;
      rep.config.harvest_rounds = rounds;
      rep.config.seed = seed;
      rep.result.n = code.n();
      rep.result.k = code.k();

      if (*emb) {
        rep.command = "embed";
        const EmbeddedLattice e =
            scale ? embed_general(code, Integer(*scale)) : embed_systematic(systematic_form(code).code);
        std::ofstream f;
        write_plain_matrix(open_output(out_path, f, out), e.basis.rows());
        return 0;
      }

      if (*orc) {
        rep.command = "oracle";
        rep.config.node_budget = static_cast<std::uint64_t>(oracle_budget);
        OracleOptions opt;
        opt.budget = oracle_budget;
        opt.threads = threads;
        const auto t0 = std::chrono::steady_clock::now();
        const auto o = brute_force_distance(code, opt);
        rep.result.d_best = o.distance;
        rep.result.witness = o.witness;
        rep.result.status = Status::certified;
        rep.stats.history = {o.distance};
        rep.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(rep, format, out_path, out);
        return exit_code(rep.result.status);
      }

      rep.command = "distance";
      rep.config.node_budget = node_budget;
      DistanceConfig cfg;
      cfg.beta = beta;
      cfg.delta = delta;
      if (scale) {
        try {
          cfg.scale = Integer(*scale);
        } catch (const std::exception&) {
          throw invalid_input("--scale must be an integer, got '" + *scale + "'");
        }
      }
      cfg.node_budget = node_budget;
      cfg.certify = !no_certify;
      cfg.threads = threads;
      cfg.harvest_rounds = rounds;
      cfg.seed = seed;
      cfg.full_radius = full_radius;
      auto last = std::chrono::steady_clock::now();
      cfg.on_progress = [&](std::size_t done, std::size_t total, std::uint64_t nodes) {
        const auto now = std::chrono::steady_clock::now();
        if (std::chrono::duration<double>(now - last).count() < progress_every && done != total) return;
        last = now;
        err << "progress " << done << '/' << total << " nodes " << nodes << '\n';
      };
      const DistanceResult r = min_distance(code, cfg);
      rep.result.d_best = r.d_best;
      rep.result.witness = r.witness;
      rep.result.status = r.status;
      rep.result.progress = r.progress;
      rep.stats.wall_seconds = r.stats.wall_seconds;
      rep.stats.nodes = r.stats.nodes;
      rep.stats.reduction_rounds = r.stats.reduction_rounds;
      rep.stats.candidates = r.stats.candidates;
      rep.stats.history = r.stats.history;
      emit(rep, format, out_path, out);
      return exit_code(r.status);
    }

    if (*red) {
      LatticeBasis<Integer> b(read_integer_matrix(file));
      ReductionParams p;
      p.beta = std::min(beta, b.size());
      p.delta = delta;
      p.threads = threads;
      if (p.beta < 2) lll(b, std::min(delta, 0.999));
      else bkz(b, p);
      const std::size_t before = b.size();
      b = prune_zero_rows(b);
      if (before != b.size()) err << "removed " << before - b.size() << " dependent rows\n";
      std::ofstream f;
      write_plain_matrix(open_output(out_path, f, out), b.rows());
      if (!check) return 0;
      const auto g = compute_gso<long double>(b.rows());
      const bool sr = is_size_reduced(g);
      const bool lv = satisfies_lovasz(g, std::min(delta, 0.999));
      const auto blocks = check_bkz_blocks(b, std::min(beta, b.size()), delta);
      std::ostream& report = out_path ? out : err;
      report << "size_reduced " << (sr ? "yes" : "no") << '\n'
             << "lovasz " << (lv ? "yes" : "no") << '\n'
             << "block_condition " << (blocks.ok ? "yes" : "no") << " worst_ratio " << std::setprecision(6)
             << blocks.worst_ratio << '\n';
      return sr && lv && blocks.ok ? 0 : static_cast<int>(ExitCode::not_certified);
    }

    if (*bnd) {
      ScalingInputs s;
      s.m = bm;
      s.n = bn;
      try {
        s.M = BoundReal(bM);
        s.r_max = BoundReal(brmax);
      } catch (const std::exception&) {
        throw invalid_input("--M and --rmax must be decimal numbers");
      }
      s.delta = bdelta;
      s.beta = bbeta;
      const Integer t1 = scaling_bound_lll(s);
      const Integer t2 = scaling_bound_bkz(s);
      if (format == "json")
        out << nlohmann::ordered_json{{"lll", t1.str()}, {"bkz", t2.str()}}.dump(2) << '\n';
      else
        out << "lll " << t1 << "\nbkz " << t2 << '\n';
      return 0;
    }
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::parse_error);
  } catch (const budget_exceeded& e) {
    err << "budget: " << e.what() << '\n';
    return static_cast<int>(ExitCode::budget_refusal);
  } catch (const invalid_input& e) {
    err << "invalid input: " << e.what() << '\n';
    return static_cast<int>(ExitCode::validation_error);
  } catch (const numeric_failure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return static_cast<int>(ExitCode::numeric_failure);
  }
  return static_cast<int>(ExitCode::validation_error);
}

}  // namespace latdist
