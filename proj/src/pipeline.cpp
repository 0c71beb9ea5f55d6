#include "tempconn/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#include "tempconn/brute_force.hpp"
#include "tempconn/cycle_approx.hpp"
#include "tempconn/error.hpp"
#include "tempconn/io.hpp"
#include "tempconn/reachability.hpp"
#include "tempconn/reductions.hpp"
#include "tempconn/tree_dp.hpp"
#include "tempconn/treewidth_dp.hpp"

namespace tempconn {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json edge_list(const TemporalGraph& g, const Solution& sol) {
  json out = json::array();
  for (EdgeIndex e : sol.edge_indices) {
    const auto& te = g.edge(e);
    out.push_back({te.u, te.v, te.label.value});
  }
  return out;
}

json arc_list(const Digraph& g, const SteinerSolution& sol) {
  json out = json::array();
  for (ArcIndex a : sol.arc_indices) out.push_back({g.arc(a).from, g.arc(a).to, g.arc(a).weight});
  return out;
}

void set_ratio(RunReport& rep) {
  if (!rep.cost || !rep.oracle_cost) return;
  if (*rep.oracle_cost == 0) {
    if (*rep.cost == 0) rep.ratio = 1.0;
    return;
  }
  rep.ratio = static_cast<double>(*rep.cost) / static_cast<double>(*rep.oracle_cost);
}

template <typename Fn>
auto staged(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  auto wrap = [&](const std::exception& e) { return "stage " + stage + ": " + e.what(); };
  try {
    return fn();
  } catch (const InputError& e) {
    throw InputError(wrap(e));
  } catch (const InfeasibleError& e) {
    throw InfeasibleError(wrap(e));
  } catch (const RefusalError& e) {
    throw RefusalError(wrap(e));
  } catch (const PreconditionError& e) {
    throw PreconditionError(wrap(e));
  } catch (const InternalError& e) {
    throw InternalError(wrap(e));
  }
}

Solution rooted_by(const std::string& method, const TemporalGraph& g, Vertex r, const SolveConfig& cfg) {
  if (method == "brute") {
    auto s = brute_force(g, cfg.mode, r);
    if (!s) throw InfeasibleError("root " + std::to_string(r) + " cannot reach every vertex");
    return *s;
  }
  if (method == "treewidth-dp") return solve_rtc_treewidth(g, r, cfg.mode);
  if (method == "dst-reduce") {
    if (!is_r_connected(g, r, cfg.mode)) throw InfeasibleError("root " + std::to_string(r) + " cannot reach every vertex");
    auto red = rtc_to_dst(g, r, cfg.mode);
    SteinerSolution d;
    if (cfg.dst_method == "exact") {
      d = dst_exact(red.target);
    } else if (cfg.dst_method == "greedy") {
      d = dst_greedy(red.target, cfg.depth);
    } else {
      throw InputError("unknown DST method '" + cfg.dst_method + "'");
    }
    return red.backward(d);
  }
  throw InputError("unknown rTC method '" + method + "'");
}

}  // namespace

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["seed"] = seed;
  j["input_digests"] = input_digests;
  j["method"] = method;
  j["cost"] = cost ? json(*cost) : json(nullptr);
  j["feasible_check"] = feasible_check;
  j["oracle_cost"] = oracle_cost ? json(*oracle_cost) : json(nullptr);
  j["ratio"] = ratio ? json(*ratio) : json(nullptr);
  j["wall_ms"] = wall_ms;
  for (const auto& [k, v] : details.items()) j[k] = v;
  return j;
}

std::string digest_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

RunReport solve_temporal(const TemporalGraph& g, const SolveConfig& cfg) {
  RunReport rep;
  rep.method = cfg.method;
  const auto t0 = Clock::now();
  Solution sol;
  if (cfg.root) {
    sol = rooted_by(cfg.method, g, *cfg.root, cfg);
  } else if (cfg.method == "brute") {
    auto s = brute_force(g, cfg.mode);
    if (!s) throw InfeasibleError("the graph is not temporally connected");
    sol = *s;
  } else if (cfg.method == "tree-dp") {
    sol = solve_tree_tc(g, cfg.mode);
  } else if (cfg.method == "rooted-union") {
    sol = tc_via_rooted_union(g, cfg.mode, [&](const TemporalGraph& h, Vertex r, PathMode) {
      return rooted_by(cfg.inner, h, r, cfg);
    });
  } else if (cfg.method == "cycle-2approx") {
    auto res = solve_cycle_tc(g, cfg.mode);
    sol = res.solution;
    rep.details["rotation"] = res.rotation;
    json sectors = json::array();
    for (const auto& s : res.sectors) sectors.push_back({s.start, s.end, s.meet});
    rep.details["sectors"] = sectors;
  } else if (cfg.method == "dsf-reduce") {
    if (!is_connected(g, cfg.mode)) throw InfeasibleError("the graph is not temporally connected");
    auto red = tc_to_dsf(g, cfg.mode);
    sol = red.backward(dsf_brute(red.target));
  } else {
    throw InputError("unknown TC method '" + cfg.method + "'");
  }
  rep.wall_ms = ms_since(t0);
  rep.cost = sol.cost;
  rep.feasible_check = feasible(g, sol, cfg.mode, cfg.root);
  rep.details["edges"] = edge_list(g, sol);
  if (cfg.oracle) {
    auto o = brute_force(g, cfg.mode, cfg.root);
    if (o) rep.oracle_cost = o->cost;
    set_ratio(rep);
  }
  return rep;
}

RunReport solve_dst_instance(const DstInstance& inst, const SolveConfig& cfg) {
  RunReport rep;
  rep.method = cfg.method;
  const auto t0 = Clock::now();
  SteinerSolution sol;
  if (cfg.method == "exact") {
    sol = dst_exact(inst);
  } else if (cfg.method == "greedy") {
    sol = dst_greedy(inst, cfg.depth);
  } else {
    throw InputError("unknown DST method '" + cfg.method + "'");
  }
  rep.wall_ms = ms_since(t0);
  rep.cost = sol.cost;
  rep.feasible_check = dst_feasible(inst, sol);
  rep.details["arcs"] = arc_list(inst.graph, sol);
  if (cfg.method == "greedy") rep.details["depth"] = cfg.depth;
  if (cfg.oracle) {
    rep.oracle_cost = dst_exact(inst).cost;
    set_ratio(rep);
  }
  return rep;
}

RunReport solve_dsf_instance(const DsfInstance& inst, const SolveConfig& cfg) {
  if (cfg.method != "brute") throw InputError("unknown DSF method '" + cfg.method + "'");
  RunReport rep;
  rep.method = cfg.method;
  const auto t0 = Clock::now();
  auto sol = dsf_brute(inst);
  rep.wall_ms = ms_since(t0);
  rep.cost = sol.cost;
  rep.feasible_check = dsf_feasible(inst, sol);
  rep.details["arcs"] = arc_list(inst.graph, sol);
  return rep;
}

RunReport reduce_roundtrip(const std::string& kind, const std::string& source_text, PathMode mode, Vertex root) {
  RunReport rep;
  rep.method = kind;
  rep.input_digests["source"] = digest_hex(source_text);
  const auto t0 = Clock::now();
  json& d = rep.details;
  bool ok = true;
  auto record = [&](const char* key, bool value) {
    d[key] = value;
    ok = ok && value;
  };

  if (kind == "rtc-to-dst") {
    auto g = parse_temporal_graph(source_text);
    auto src = brute_force(g, mode, root);
    if (!src) throw InfeasibleError("source rTC instance is infeasible");
    auto red = rtc_to_dst(g, root, mode);
    auto tgt = dst_exact(red.target);
    auto fwd = red.forward(*src);
    auto back = red.backward(tgt);
    d["source_optimum"] = src->cost;
    d["target_optimum"] = tgt.cost;
    record("optima_equal", src->cost == tgt.cost);
    record("forward_feasible", dst_feasible(red.target, fwd));
    record("forward_no_increase", fwd.cost <= src->cost);
    record("backward_feasible", feasible(g, back, mode, root));
    record("backward_no_increase", back.cost <= tgt.cost);
    rep.cost = back.cost;
    rep.feasible_check = feasible(g, back, mode, root);
  } else if (kind == "tc-to-dsf") {
    auto g = parse_temporal_graph(source_text);
    auto src = brute_force(g, mode);
    if (!src) throw InfeasibleError("source TC instance is infeasible");
    auto red = tc_to_dsf(g, mode);
    auto tgt = dsf_brute(red.target);
    auto fwd = red.forward(*src);
    auto back = red.backward(tgt);
    d["source_optimum"] = src->cost;
    d["target_optimum"] = tgt.cost;
    record("optima_equal", src->cost == tgt.cost);
    record("forward_feasible", dsf_feasible(red.target, fwd));
    record("forward_no_increase", fwd.cost <= src->cost);
    record("backward_feasible", feasible(g, back, mode));
    record("backward_no_increase", back.cost <= tgt.cost);
    rep.cost = back.cost;
    rep.feasible_check = feasible(g, back, mode);
  } else if (kind == "dst-to-rtc") {
    auto inst = parse_dst(source_text);
    auto src = dst_exact(inst);
    auto red = dst_to_rtc(inst);
    auto tgt = brute_force(red.target, PathMode::NonStrict, red.root);
    if (!tgt) throw InternalError("target rTC instance is infeasible although the DST instance is feasible");
    auto fwd = red.forward(src);
    auto back = red.backward(*tgt);
    d["source_optimum"] = src.cost;
    d["target_optimum"] = tgt->cost;
    record("optima_equal", src.cost == tgt->cost);
    record("forward_feasible", feasible(red.target, fwd, PathMode::NonStrict, red.root));
    record("forward_no_increase", fwd.cost <= src.cost);
    record("backward_feasible", dst_feasible(inst, back));
    record("backward_no_increase", back.cost <= tgt->cost);
    rep.cost = back.cost;
    rep.feasible_check = dst_feasible(inst, back);
  } else if (kind == "slc-to-tc") {
    auto inst = parse_slc(source_text);
    auto red = slc_to_tc(inst);
    auto tgt = brute_force(red.target, PathMode::NonStrict);
    if (!tgt) throw InternalError("label cover gadget is not temporally connected");
    auto sigma = red.backward(*tgt);
    auto fwd = red.forward(sigma);
    d["target_optimum"] = tgt->cost;
    d["assignment_cost"] = sigma.cost();
    record("backward_feasible", slc_feasible(inst, sigma));
    record("backward_no_increase", sigma.cost() <= tgt->cost);
    record("forward_feasible", feasible(red.target, fwd, PathMode::NonStrict));
    record("forward_no_increase", fwd.cost <= sigma.cost());
    rep.cost = sigma.cost();
    rep.feasible_check = slc_feasible(inst, sigma);
  } else if (kind == "st12-to-tc") {
    auto inst = parse_st12(source_text);
    auto red = st12_to_tc(inst);
    auto tgt = brute_force(red.target, PathMode::NonStrict, std::nullopt, red.target.num_edges());
    if (!tgt) throw InfeasibleError("the Steiner gadget is not temporally connected");
    auto tree = red.backward(*tgt);
    auto fwd = red.forward(tree);
    d["target_optimum"] = tgt->cost;
    d["gadget_edges"] = red.gadget_edge_count();
    d["steiner_cost"] = steiner_cost(inst, tree);
    record("backward_feasible", steiner_feasible(inst, tree));
    record("backward_no_increase", steiner_cost(inst, tree) + red.gadget_edge_count() <= tgt->cost);
    record("forward_feasible", feasible(red.target, fwd, PathMode::NonStrict));
    rep.cost = steiner_cost(inst, tree);
    rep.feasible_check = steiner_feasible(inst, tree);
  } else {
    throw InputError("unknown reduction '" + kind + "'");
  }
  d["ok"] = ok;
  rep.wall_ms = ms_since(t0);
  return rep;
}

RunReport run_pipeline(const PipelineConfig& cfg) {
  TemporalGraph g = cfg.generator ? staged("generate", [&] { return gen_random(*cfg.generator, cfg.seed); })
                                  : staged("parse", [&] { return parse_temporal_graph(cfg.input_text); });
  const std::string canonical = serialize(g);
  RunReport rep = staged("solve", [&] { return solve_temporal(g, cfg.solve); });
  rep.command = cfg.command;
  rep.seed = cfg.seed;
  rep.input_digests["graph"] = digest_hex(canonical);
  staged("verify", [&] {
    if (!rep.feasible_check) throw InternalError("solver output failed the feasibility check");
    return 0;
  });
  return rep;
}

}  // namespace tempconn
