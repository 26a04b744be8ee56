#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "latdist/distance.hpp"
#include "latdist/error.hpp"

#define LATDIST_VERSION "0.3.0"

namespace latdist {

/// Serialized record of one CLI run. Keys are written in declaration order.
struct RunReport {
  std::string command;

  struct Input {
    std::string file;
    std::string format;  // "plain" or "alist"
    std::string field;
    bool binary_image = false;
    bool parity = false;
    friend bool operator==(const Input&, const Input&) = default;
  } input;

  struct Config {
    std::size_t beta = 20;
    double delta = 0.99;
    std::optional<std::string> scale;
    unsigned threads = 1;
    std::uint64_t node_budget = 0;
    bool certify = true;
    std::size_t harvest_rounds = 1;
    std::uint64_t seed = 1;
    friend bool operator==(const Config&, const Config&) = default;
  } config;

  struct Result {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t d_best = 0;
    std::vector<Symbol> witness;
    Status status = Status::heuristic;
    std::pair<std::size_t, std::size_t> progress{0, 0};
    friend bool operator==(const Result&, const Result&) = default;
  } result;

  struct Stats {
    double wall_seconds = 0;
    std::uint64_t nodes = 0;
    std::size_t reduction_rounds = 0;
    std::size_t candidates = 0;
    std::vector<std::size_t> history;
    friend bool operator==(const Stats&, const Stats&) = default;
  } stats;

  std::string version = LATDIST_VERSION;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline nlohmann::ordered_json to_json(const RunReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["tool"] = "latdist";
  j["version"] = r.version;
  j["command"] = r.command;
  j["input"] = ordered_json{{"file", r.input.file},
                            {"format", r.input.format},
                            {"field", r.input.field},
                            {"binary_image", r.input.binary_image},
                            {"parity", r.input.parity}};
  ordered_json cfg{{"beta", r.config.beta}, {"delta", r.config.delta}};
  cfg["scale"] = r.config.scale ? ordered_json(*r.config.scale) : ordered_json(nullptr);
  cfg["threads"] = r.config.threads;
  cfg["node_budget"] = r.config.node_budget;
  cfg["certify"] = r.config.certify;
  cfg["harvest_rounds"] = r.config.harvest_rounds;
  cfg["seed"] = r.config.seed;
  j["config"] = std::move(cfg);
  j["result"] = ordered_json{{"n", r.result.n},
                             {"k", r.result.k},
                             {"d_best", r.result.d_best},
                             {"witness", r.result.witness},
                             {"status", to_string(r.result.status)},
                             {"progress", {r.result.progress.first, r.result.progress.second}}};
  j["stats"] = ordered_json{{"wall_seconds", r.stats.wall_seconds},
                            {"nodes", r.stats.nodes},
                            {"reduction_rounds", r.stats.reduction_rounds},
                            {"candidates", r.stats.candidates},
                            {"history", r.stats.history}};
  return j;
}

inline RunReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    RunReport r;
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    const auto& in = j.at("input");
    r.input.file = in.at("file").get<std::string>();
    r.input.format = in.at("format").get<std::string>();
    r.input.field = in.at("field").get<std::string>();
    r.input.binary_image = in.at("binary_image").get<bool>();
    r.input.parity = in.at("parity").get<bool>();
    const auto& cfg = j.at("config");
    r.config.beta = cfg.at("beta").get<std::size_t>();
    r.config.delta = cfg.at("delta").get<double>();
    if (!cfg.at("scale").is_null()) r.config.scale = cfg.at("scale").get<std::string>();
    r.config.threads = cfg.at("threads").get<unsigned>();
    r.config.node_budget = cfg.at("node_budget").get<std::uint64_t>();
    r.config.certify = cfg.at("certify").get<bool>();
    r.config.harvest_rounds = cfg.at("harvest_rounds").get<std::size_t>();
    r.config.seed = cfg.at("seed").get<std::uint64_t>();
    const auto& res = j.at("result");
    r.result.n = res.at("n").get<std::size_t>();
    r.result.k = res.at("k").get<std::size_t>();
    r.result.d_best = res.at("d_best").get<std::size_t>();
    r.result.witness = res.at("witness").get<std::vector<Symbol>>();
    const auto st = parse_status(res.at("status").get<std::string>());
    if (!st) throw invalid_input("unknown status '" + res.at("status").get<std::string>() + "'");
    r.result.status = *st;
    const auto& pr = res.at("progress");
    r.result.progress = {pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>()};
    const auto& s = j.at("stats");
    r.stats.wall_seconds = s.at("wall_seconds").get<double>();
    r.stats.nodes = s.at("nodes").get<std::uint64_t>();
    r.stats.reduction_rounds = s.at("reduction_rounds").get<std::size_t>();
    r.stats.candidates = s.at("candidates").get<std::size_t>();
    r.stats.history = s.at("history").get<std::vector<std::size_t>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("malformed report: ") + e.what());
  }
}

// Exit codes.
enum class ExitCode : int {
  certified = 0,
  not_certified = 2,  // heuristic or partial
  parse_error = 3,
  validation_error = 4,
  budget_refusal = 5,
  numeric_failure = 6,
};

inline int exit_code(Status s) {
  return static_cast<int>(s == Status::certified ? ExitCode::certified : ExitCode::not_certified);
}

}  // namespace latdist
