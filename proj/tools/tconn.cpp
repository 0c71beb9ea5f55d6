#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempconn/brute_force.hpp"
#include "tempconn/constructions.hpp"
#include "tempconn/error.hpp"
#include "tempconn/io.hpp"
#include "tempconn/pipeline.hpp"
#include "tempconn/random.hpp"
#include "tempconn/reachability.hpp"
#include "tempconn/reductions.hpp"

using namespace tempconn;
using nlohmann::json;

namespace {

constexpr int kExitInfeasible = 2;
constexpr int kExitVerification = 3;
constexpr int kExitInput = 4;

struct Globals {
  std::string mode = "nonstrict";
  std::uint64_t seed = 1;
  std::string output = "-";
  bool json_out = false;
};

void emit(const Globals& g, const std::string& text) { write_file(g.output, text); }

void emit_report(const Globals& g, const json& j, const std::string& plain) {
  emit(g, g.json_out ? j.dump(2) + "\n" : plain + "\n");
}

std::string summary(const RunReport& rep) {
  std::string s = "method " + rep.method + " cost " + (rep.cost ? std::to_string(*rep.cost) : "-") +
                  " feasible " + (rep.feasible_check ? "yes" : "no");
  if (rep.oracle_cost) s += " oracle " + std::to_string(*rep.oracle_cost);
  if (rep.ratio) s += " ratio " + std::to_string(*rep.ratio);
  return s;
}

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum temporal connectivity toolkit"};
  app.require_subcommand(1);
  Globals glob;
  app.add_option("--mode", glob.mode, "strict or nonstrict temporal paths")
      ->check(CLI::IsMember({"strict", "nonstrict"}));
  app.add_option("--seed", glob.seed, "random seed");
  app.add_option("-o,--output", glob.output, "output file, '-' for stdout");
  app.add_flag("--json", glob.json_out, "machine-readable output");
  app.fallthrough();
  const std::string cmd = command_line(argc, argv);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string gen_kind;
  RandomGraphSpec spec;
  spec.labels_per_edge = 3;
  RandomDstSpec dst_spec;
  bool fragile = false;
  std::string map_out;
  int gen_n = 6;
  gen->add_option("kind", gen_kind, "random-tree | random-cycle | random-general | random-dst | lower-bound")
      ->required()
      ->check(CLI::IsMember({"random-tree", "random-cycle", "random-general", "random-dst", "lower-bound"}));
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--labels", spec.labels_per_edge, "labels per edge (upper bound)");
  gen->add_option("--wmin", spec.weight_min, "minimum weight");
  gen->add_option("--wmax", spec.weight_max, "maximum weight");
  gen->add_option("--label-range", spec.label_range, "labels are drawn from 1..range (0: 2n)");
  gen->add_option("--extra", spec.extra_edges, "extra edges for random-general (-1: n/2)");
  gen->add_option("--arcs", dst_spec.arcs, "arc count for random-dst");
  bool any_graph = false;
  gen->add_flag("--any", any_graph, "random graphs: keep the first draw even if not temporally connected");
  gen->add_flag("--fragile", fragile, "lower-bound: emit the fragile variant");
  gen->add_option("--map-out", map_out, "lower-bound: annotation sidecar path");

  // check
  auto* check = app.add_subcommand("check", "report graph statistics and connectivity");
  std::string input = "-";
  std::string solution_path;
  std::optional<int> root;
  check->add_option("-i,--input", input, "temporal graph file, '-' for stdin");
  check->add_option("--solution", solution_path, "solution file to check");
  check->add_option("--root", root, "check r-connectivity from this vertex");

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string problem;
  SolveConfig scfg;
  solve->add_option("problem", problem, "tc | rtc | dst | dsf")->required()->check(CLI::IsMember({"tc", "rtc", "dst", "dsf"}));
  solve->add_option("-i,--input", input, "instance file, '-' for stdin");
  solve->add_option("--method", scfg.method, "solver")->required();
  solve->add_option("--root", root, "root vertex for rtc");
  solve->add_option("--inner", scfg.inner, "rooted solver used by rooted-union");
  solve->add_option("--dst-method", scfg.dst_method, "DST solver used by dst-reduce");
  solve->add_option("--depth", scfg.depth, "greedy DST depth");
  solve->add_flag("--oracle", scfg.oracle, "also run the exact oracle and report the ratio");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "transform an instance");
  std::string red_kind;
  bool roundtrip = false;
  int red_root = 0;
  reduce->add_option("kind", red_kind, "rtc-to-dst | tc-to-dsf | dst-to-rtc | slc-to-tc | st12-to-tc")
      ->required()
      ->check(CLI::IsMember({"rtc-to-dst", "tc-to-dsf", "dst-to-rtc", "slc-to-tc", "st12-to-tc"}));
  reduce->add_option("-i,--input", input, "source instance file, '-' for stdin");
  reduce->add_option("--root", red_root, "root vertex for rtc-to-dst");
  reduce->add_option("--map-out", map_out, "annotation sidecar path");
  reduce->add_flag("--roundtrip", roundtrip, "solve both sides exactly and check both solution maps");

  // verify
  auto* verify = app.add_subcommand("verify", "verify a construction");
  std::string what;
  std::string annotation_path;
  verify->add_option("what", what, "lower-bound")->required()->check(CLI::IsMember({"lower-bound"}));
  verify->add_option("-i,--input", input, "temporal graph file, '-' for stdin");
  verify->add_option("--annotation", annotation_path, "annotation sidecar (default: rebuilt from n)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum by exhaustive search");
  oracle->add_option("problem", problem, "tc | rtc | dst | dsf")->required()->check(CLI::IsMember({"tc", "rtc", "dst", "dsf"}));
  oracle->add_option("-i,--input", input, "instance file, '-' for stdin");
  oracle->add_option("--root", root, "root vertex for rtc");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const PathMode mode = parse_path_mode(glob.mode);
    scfg.mode = mode;

    if (gen->parsed()) {
      if (gen_kind == "lower-bound") {
        auto lb = build_lower_bound(gen_n);
        emit(glob, serialize(fragile ? build_fragile_variant(lb) : lb.graph));
        if (!map_out.empty()) write_file(map_out, write_lower_bound_annotation(lb));
      } else if (gen_kind == "random-dst") {
        dst_spec.n = gen_n;
        dst_spec.weight_max = spec.weight_max;
        emit(glob, serialize(gen_random_dst(dst_spec, glob.seed)));
      } else {
        spec.kind = parse_graph_kind(gen_kind.substr(7));
        spec.n = gen_n;
        spec.require_connected = !any_graph;
        spec.connect_mode = mode;
        emit(glob, serialize(gen_random(spec, glob.seed)));
      }
      return 0;
    }

    if (check->parsed()) {
      const std::string text = read_file(input);
      auto g = parse_temporal_graph(text);
      auto st = stats(g);
      json j{{"vertices", st.num_vertices},        {"temporal_edges", st.num_edges},
             {"distinct_labels", st.distinct_label_count}, {"max_degree", st.max_degree},
             {"lifetime", g.lifetime().value},      {"total_weight", st.total_weight},
             {"simple", g.is_simple()},             {"digest", digest_hex(text)}};
      bool ok = true;
      if (root) {
        j["r_connected"] = is_r_connected(g, *root, mode);
        ok = j["r_connected"].get<bool>();
      } else {
        j["connected"] = is_connected(g, mode);
        ok = j["connected"].get<bool>();
      }
      int code = ok ? 0 : kExitInfeasible;
      if (!solution_path.empty()) {
        auto sol = Solution::from_indices(g, parse_solution(read_file(solution_path)));
        bool feas = feasible(g, sol, mode, root);
        j["solution_cost"] = sol.cost;
        j["solution_feasible"] = feas;
        code = feas ? 0 : kExitVerification;
      }
      emit(glob, j.dump(glob.json_out ? 2 : -1) + "\n");
      return code;
    }

    if (solve->parsed() || oracle->parsed()) {
      const bool is_oracle = oracle->parsed();
      const std::string text = read_file(input);
      RunReport rep;
      if (problem == "tc" || problem == "rtc") {
        if (problem == "rtc" && !root) throw InputError("rtc needs --root");
        if (is_oracle) scfg.method = "brute";
        if (problem == "rtc") scfg.root = *root;
        PipelineConfig pc;
        pc.command = cmd;
        pc.input_text = text;
        pc.seed = glob.seed;
        pc.solve = scfg;
        rep = run_pipeline(pc);
      } else if (problem == "dst") {
        if (is_oracle) scfg.method = "exact";
        rep = solve_dst_instance(parse_dst(text), scfg);
      } else {
        if (is_oracle) scfg.method = "brute";
        rep = solve_dsf_instance(parse_dsf(text), scfg);
      }
      rep.command = cmd;
      rep.seed = glob.seed;
      rep.input_digests["input"] = digest_hex(text);
      emit_report(glob, rep.to_json(), summary(rep));
      return rep.feasible_check ? 0 : kExitVerification;
    }

    if (reduce->parsed()) {
      const std::string text = read_file(input);
      if (roundtrip) {
        auto rep = reduce_roundtrip(red_kind, text, mode, red_root);
        rep.command = cmd;
        rep.seed = glob.seed;
        emit_report(glob, rep.to_json(), summary(rep) + " ok " + (rep.details["ok"].get<bool>() ? "yes" : "no"));
        return rep.details["ok"].get<bool>() ? 0 : kExitVerification;
      }
      std::string target, sidecar;
      if (red_kind == "rtc-to-dst") {
        auto red = rtc_to_dst(parse_temporal_graph(text), red_root, mode);
        target = serialize(red.target);
        sidecar = write_map(red);
      } else if (red_kind == "tc-to-dsf") {
        auto red = tc_to_dsf(parse_temporal_graph(text), mode);
        target = serialize(red.target);
        sidecar = write_map(red);
      } else if (red_kind == "dst-to-rtc") {
        auto red = dst_to_rtc(parse_dst(text));
        target = serialize(red.target);
        sidecar = write_map(red);
      } else if (red_kind == "slc-to-tc") {
        auto red = slc_to_tc(parse_slc(text));
        target = serialize(red.target);
        sidecar = write_map(red);
      } else {
        auto red = st12_to_tc(parse_st12(text));
        target = serialize(red.target);
        sidecar = write_map(red);
      }
      emit(glob, target);
      if (!map_out.empty()) write_file(map_out, sidecar);
      return 0;
    }

    if (verify->parsed()) {
      auto g = parse_temporal_graph(read_file(input));
      if (g.num_vertices() % 3 != 0) throw InputError("a lower-bound graph has 3n vertices");
      const std::string annotation = annotation_path.empty()
                                         ? write_lower_bound_annotation(build_lower_bound(g.num_vertices() / 3))
                                         : read_file(annotation_path);
      auto lb = read_lower_bound_annotation(g, annotation);
      json j{{"n", lb.n}};
      bool ok = false;
      if (g == build_lower_bound(lb.n).graph) {
        auto rep = verify_lower_bound(lb, mode);
        j["variant"] = "lower-bound";
        j["connected"] = rep.connected;
        j["a_edges_checked"] = rep.removals.size();
        j["all_removals_disconnect"] = rep.all_removals_disconnect;
        j["non_a_edges"] = rep.non_a_edges;
        j["bound"] = rep.bound;
        j["pigeonhole_ok"] = rep.pigeonhole_ok;
        ok = rep.ok();
      } else {
        auto rep = verify_fragile(g, lb, mode);
        j["variant"] = "fragile";
        j["connected"] = rep.connected;
        j["remaining_edges"] = rep.remaining_edges;
        j["expected_edges"] = rep.expected_edges;
        ok = rep.ok();
      }
      j["ok"] = ok;
      emit(glob, j.dump(glob.json_out ? 2 : -1) + "\n");
      return ok ? 0 : kExitVerification;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const InternalError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
