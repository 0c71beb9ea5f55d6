#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "tempconn/random.hpp"
#include "tempconn/steiner.hpp"
#include "tempconn/temporal_graph.hpp"

namespace tempconn {

struct SolveConfig {
  std::string method;
  PathMode mode = PathMode::NonStrict;
  std::optional<Vertex> root;        // set for rTC
  std::string inner = "treewidth-dp";  // rooted solver behind rooted-union
  std::string dst_method = "exact";    // DST solver behind dst-reduce
  int depth = 2;                       // greedy DST depth
  bool oracle = false;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_digests;  // name -> FNV-1a hex
  std::string method;
  std::optional<Weight> cost;
  bool feasible_check = false;
  std::optional<Weight> oracle_cost;
  std::optional<double> ratio;
  double wall_ms = 0;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

std::string digest_hex(std::string_view bytes);

// TC when cfg.root is empty, rTC otherwise. Methods:
//   TC:  brute | tree-dp | rooted-union | cycle-2approx | dsf-reduce
//   rTC: brute | treewidth-dp | dst-reduce
// Every output goes through feasible(); the oracle is brute_force.
RunReport solve_temporal(const TemporalGraph& g, const SolveConfig& cfg);

// exact | greedy; the oracle is dst_exact.
RunReport solve_dst_instance(const DstInstance& inst, const SolveConfig& cfg);
// brute; there is no separate oracle.
RunReport solve_dsf_instance(const DsfInstance& inst, const SolveConfig& cfg);

// Reduces the parsed source, solves both sides exactly, maps each optimum
// across and checks feasibility and cost. details.ok summarizes the checks.
// Kinds: rtc-to-dst | tc-to-dsf | dst-to-rtc | slc-to-tc | st12-to-tc.
RunReport reduce_roundtrip(const std::string& kind, const std::string& source_text, PathMode mode, Vertex root);

struct PipelineConfig {
  std::string command;
  std::optional<RandomGraphSpec> generator;  // otherwise input_text is parsed
  std::string input_text;
  std::uint64_t seed = 0;
  SolveConfig solve;
};

// generate or parse -> solve -> verify [-> oracle]. Failures are rethrown
// with the stage name prepended, keeping their error category.
RunReport run_pipeline(const PipelineConfig& cfg);

}  // namespace tempconn
