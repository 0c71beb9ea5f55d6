#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "doctest.h"
#include "tempconn/brute_force.hpp"
#include "tempconn/error.hpp"
#include "tempconn/random.hpp"
#include "tempconn/reachability.hpp"
#include "tempconn/reductions.hpp"
#include "tempconn/steiner.hpp"

using namespace tempconn;

namespace {

TimeLabel L(std::int64_t v) { return TimeLabel{v}; }

// Seeded general graph with at most max_edges temporal edges on which
// `accept` holds.
TemporalGraph pick_graph(std::uint64_t master, std::uint64_t index, int n_lo, int n_hi, int max_edges,
                         const std::function<bool(const TemporalGraph&)>& accept) {
  for (std::uint64_t k = 0;; ++k) {
    const std::uint64_t seed = derive_seed(master, index * 1000 + k);
    RandomGraphSpec spec;
    spec.kind = GraphKind::General;
    spec.n = n_lo + static_cast<int>(seed % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    spec.labels_per_edge = 2;
    spec.weight_min = 0;
    spec.weight_max = 5;
    spec.label_range = 4;
    auto g = gen_random(spec, seed);
    if (g.num_edges() <= max_edges && accept(g)) return g;
  }
}

// Minimum Steiner tree in an undirected weighted graph by edge subsets.
Weight steiner_subset_optimum(const SteinerInstance12& inst) {
  const int m = static_cast<int>(inst.edges.size());
  Weight best = INT64_MAX;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1u) ids.push_back(i);
    }
    if (steiner_feasible(inst, ids)) best = std::min(best, steiner_cost(inst, ids));
  }
  return best;
}

}  // namespace

TEST_CASE("rTC to DST sizes and a single edge") {
  TemporalGraph g(2);
  g.add_edge(0, 1, L(4), 6);
  auto red = rtc_to_dst(g, 0, PathMode::NonStrict);
  CHECK(red.target.graph.num_nodes() == 1 + 1 + 1);
  CHECK(red.target.terminals.size() == 1);
  auto d = dst_exact(red.target);
  CHECK(d.cost == 6);
  auto back = red.backward(d);
  CHECK(back.cost == 6);
  CHECK(feasible(g, back, PathMode::NonStrict, 0));
}

TEST_CASE("rTC to DST node count is 1 + M + n - 1") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto g = pick_graph(11, i, 3, 6, 10, [](const TemporalGraph&) { return true; });
    auto red = rtc_to_dst(g, 0, PathMode::NonStrict);
    CHECK(red.target.graph.num_nodes() == 1 + g.num_edges() + g.num_vertices() - 1);
    CHECK(static_cast<int>(red.target.terminals.size()) == g.num_vertices() - 1);
  }
}

TEST_CASE("rTC to DST optimum equality and solution maps") {
  for (PathMode mode : {PathMode::NonStrict, PathMode::Strict}) {
    for (std::uint64_t i = 0; i < 20; ++i) {
      auto g = pick_graph(12, i, 3, 6, 10, [&](const TemporalGraph& h) { return is_r_connected(h, 0, mode); });
      auto red = rtc_to_dst(g, 0, mode);
      auto rtc = brute_force(g, mode, 0);
      REQUIRE(rtc);
      auto dst = dst_exact(red.target);
      CHECK(dst.cost == rtc->cost);
      auto fwd = red.forward(*rtc);
      CHECK(dst_feasible(red.target, fwd));
      CHECK(fwd.cost <= rtc->cost);
      auto back = red.backward(dst);
      CHECK(feasible(g, back, mode, 0));
      CHECK(back.cost <= dst.cost);
    }
  }
}

TEST_CASE("rTC through greedy DST stays feasible") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto g = pick_graph(13, i, 3, 6, 10, [](const TemporalGraph& h) { return is_r_connected(h, 0, PathMode::NonStrict); });
    auto red = rtc_to_dst(g, 0, PathMode::NonStrict);
    auto back = red.backward(dst_greedy(red.target, 2));
    CHECK(feasible(g, back, PathMode::NonStrict, 0));
  }
}

TEST_CASE("TC to DSF demand count and arcs") {
  TemporalGraph g(3);
  g.add_edge(0, 1, L(1), 2);
  g.add_edge(0, 1, L(3), 1);
  g.add_edge(1, 2, L(2), 4);
  auto red = tc_to_dsf(g, PathMode::NonStrict);
  CHECK(red.target.demands.size() == 6);
  CHECK(red.target.graph.num_nodes() == 2 * 3 + 2 * 3);
  // wait arc between the two labels of {0,1}
  CHECK(red.target.graph.find_arc(red.h1(0), red.h1(1)).has_value());
  // label 1 hands off to label 2 of {1,2}; label 2 to label 3 of {0,1}
  CHECK(red.target.graph.find_arc(red.h2(0), red.h1(2)).has_value());
  CHECK(red.target.graph.find_arc(red.h2(2), red.h1(1)).has_value());
  CHECK_FALSE(red.target.graph.find_arc(red.h2(2), red.h1(0)).has_value());
  CHECK_FALSE(red.target.graph.find_arc(red.h2(1), red.h1(2)).has_value());
}

TEST_CASE("TC to DSF optimum equality and solution maps") {
  for (PathMode mode : {PathMode::NonStrict, PathMode::Strict}) {
    for (std::uint64_t i = 0; i < 15; ++i) {
      auto g = pick_graph(14, i, 3, 5, 8, [&](const TemporalGraph& h) { return is_connected(h, mode); });
      auto red = tc_to_dsf(g, mode);
      CHECK(static_cast<int>(red.target.demands.size()) == g.num_vertices() * (g.num_vertices() - 1));
      auto tc = brute_force(g, mode);
      REQUIRE(tc);
      auto dsf = dsf_brute(red.target);
      CHECK(dsf.cost == tc->cost);
      auto fwd = red.forward(*tc);
      CHECK(dsf_feasible(red.target, fwd));
      CHECK(fwd.cost <= tc->cost);
      auto back = red.backward(dsf);
      CHECK(feasible(g, back, mode));
      CHECK(back.cost <= dsf.cost);
    }
  }
}

TEST_CASE("DST to rTC census and a single arc") {
  DstInstance inst{Digraph(2), 0, {1}};
  inst.graph.add_arc(0, 1, 5);
  auto red = dst_to_rtc(inst);
  CHECK(red.target.num_vertices() == 2 + 2 * 1);
  auto r = brute_force(red.target, PathMode::NonStrict, red.root);
  REQUIRE(r);
  CHECK(r->cost == 5);
  auto back = red.backward(*r);
  CHECK(dst_feasible(inst, back));
  CHECK(back.cost == 5);
  for (int n = 3; n <= 6; ++n) {
    DstInstance big{Digraph(n), 0, {1}};
    CHECK(dst_to_rtc(big).target.num_vertices() == n + n * (n - 1));
  }
}

TEST_CASE("DST to rTC forward map") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const int n = 3 + static_cast<int>(derive_seed(21, i) % 3);
    auto inst = gen_random_dst({n, 22 / (n - 1), 5}, derive_seed(22, i));
    SteinerSolution d;
    try {
      d = dst_exact(inst);
    } catch (const InfeasibleError&) {
      continue;
    }
    auto red = dst_to_rtc(inst);
    auto fwd = red.forward(d);
    CHECK(feasible(red.target, fwd, PathMode::NonStrict, red.root));
    CHECK(fwd.cost <= d.cost);
    auto r = brute_force(red.target, PathMode::NonStrict, red.root);
    REQUIRE(r);
    CHECK(r->cost <= d.cost);
  }
}

TEST_CASE("DST to rTC admits a non-strict shortcut below the DST optimum") {
  // 0 = r, 1 = u, 2 = v, 3 = v'
  DstInstance inst{Digraph(4), 0, {2, 3}};
  inst.graph.add_arc(0, 1, 100);
  inst.graph.add_arc(1, 2, 1);
  inst.graph.add_arc(1, 3, 1);
  inst.graph.add_arc(0, 2, 1);
  CHECK(dst_exact(inst).cost == 102);
  auto red = dst_to_rtc(inst);
  auto r = brute_force(red.target, PathMode::NonStrict, red.root);
  REQUIRE(r);
  // r -> z^r_1 -> v, then v -> z^u_1 -> v' over two label-2 edges
  CHECK(r->cost == 3);
  CHECK_FALSE(dst_feasible(inst, red.backward(*r)));
}

TEST_CASE("label cover gadget on one pair and one color") {
  SlcInstance inst{1, 1, {{{0, 0}, {{0, 0}}}}};
  auto red = slc_to_tc(inst);
  CHECK(red.target.num_vertices() == 2 + 2 + 1 + 2);
  auto opt = brute_force(red.target, PathMode::NonStrict);
  REQUIRE(opt);
  CHECK(opt->cost == 2);
  auto sigma = red.backward(*opt);
  CHECK(sigma.u_colors[0] == std::set<int>{0});
  CHECK(sigma.w_colors[0] == std::set<int>{0});
  CHECK(slc_feasible(inst, sigma));
}

TEST_CASE("label cover gadget rejects an empty relation") {
  SlcInstance inst{2, 1, {{{0, 0}, {{0, 0}}}, {{0, 1}, {{0, 0}}}, {{1, 0}, {{0, 0}}}}};
  CHECK_THROWS_AS(slc_to_tc(inst), InputError);
}

TEST_CASE("label cover gadget maps every assignment both ways") {
  Rng rng(31);
  for (int round = 0; round < 6; ++round) {
    SlcInstance inst;
    inst.k = 2;
    inst.c = 2;
    for (int u = 0; u < 2; ++u) {
      for (int w = 0; w < 2; ++w) {
        auto& rel = inst.relations[{u, w}];
        while (rel.empty()) {
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              if (rng.below(3) == 0) rel.insert({a, b});
            }
          }
        }
      }
    }
    auto red = slc_to_tc(inst);
    std::size_t xs = 0;
    for (const auto& [key, rel] : inst.relations) xs += rel.size();
    CHECK(red.target.num_vertices() == static_cast<int>(2 * 2 + 2 * 2 * 2 + xs + 2));
    int best = INT32_MAX;
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
      SlcAssignment sigma{std::vector<std::set<int>>(2), std::vector<std::set<int>>(2)};
      for (int bit = 0; bit < 8; ++bit) {
        if (!(mask >> bit & 1u)) continue;
        auto& side = bit < 4 ? sigma.u_colors : sigma.w_colors;
        side[static_cast<std::size_t>(bit % 4 / 2)].insert(bit % 2);
      }
      auto sol = red.forward(sigma);
      CHECK(sol.cost == sigma.cost());
      CHECK(feasible(red.target, sol, PathMode::NonStrict) == slc_feasible(inst, sigma));
      if (slc_feasible(inst, sigma)) best = std::min(best, sigma.cost());
    }
    auto opt = brute_force(red.target, PathMode::NonStrict);
    REQUIRE(opt);
    CHECK(opt->cost == best);
    CHECK(slc_feasible(inst, red.backward(*opt)));
  }
}

TEST_CASE("label cover gadget routes U to W only through X") {
  SlcInstance inst{2, 2, {}};
  for (int u = 0; u < 2; ++u) {
    for (int w = 0; w < 2; ++w) inst.relations[{u, w}] = {{u, w}, {1, 1}};
  }
  auto red = slc_to_tc(inst);
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < red.target.num_edges(); ++e) {
    const auto& te = red.target.edge(e);
    bool touches_x = false;
    for (std::size_t i = 0; i < red.x_tuples.size(); ++i) touches_x = touches_x || te.touches(red.x_vertex(i));
    if (!touches_x) keep.push_back(e);
  }
  auto without_x = red.target.restricted_to(keep);
  for (int u = 0; u < 2; ++u) {
    auto arrival = earliest_arrival(without_x, red.u_vertex(u), L(0), PathMode::NonStrict);
    for (int w = 0; w < 2; ++w) CHECK_FALSE(arrival[static_cast<std::size_t>(red.w_vertex(w))].has_value());
  }
  CHECK(is_connected(red.target, PathMode::NonStrict));
}

TEST_CASE("ST(1,2) gadget on a weight-2 terminal pair") {
  SteinerInstance12 inst{2, {{0, 1, 2}}, {0, 1}};
  auto red = st12_to_tc(inst);
  // 4 per terminal, 2 per non-terminal, 2 through x
  CHECK(red.gadget_edge_count() == 4 * 2 + 2 * 1 + 2);
  auto opt = brute_force(red.target, PathMode::NonStrict);
  REQUIRE(opt);
  CHECK(opt->cost == 14);
  auto back = red.backward(*opt);
  CHECK(back == std::vector<int>{0});
  CHECK(steiner_cost(inst, back) == 2);
}

TEST_CASE("ST(1,2) gadget with a weight-1 pair has no non-terminal hub") {
  SteinerInstance12 inst{2, {{0, 1, 1}}, {0, 1}};
  auto red = st12_to_tc(inst);
  CHECK_FALSE(is_connected(red.target, PathMode::NonStrict));
}

TEST_CASE("ST(1,2) gadget on bipartite instances") {
  // terminals adjacent only to non-terminals, as in the vertex-cover family
  std::vector<SteinerInstance12> family = {
      {3, {{0, 2, 1}, {1, 2, 2}}, {0, 1}},
      {4, {{0, 2, 1}, {0, 3, 2}, {1, 2, 2}, {1, 3, 1}}, {0, 1}},
      {5, {{0, 3, 1}, {0, 4, 1}, {1, 3, 2}, {1, 4, 1}, {2, 3, 1}, {2, 4, 2}}, {0, 1, 2}},
  };
  for (const auto& inst : family) {
    auto red = st12_to_tc(inst);
    const int m = static_cast<int>(inst.terminals.size());
    CHECK(red.gadget_edge_count() <= 11 * m);
    auto full = Solution::from_indices(red.target, [&] {
      std::vector<EdgeIndex> all(static_cast<std::size_t>(red.target.num_edges()));
      std::iota(all.begin(), all.end(), 0);
      return all;
    }());
    REQUIRE(feasible(red.target, full, PathMode::NonStrict));
    for (EdgeIndex e = 0; e < red.target.num_edges(); ++e) {
      if (!red.gadget_edge[static_cast<std::size_t>(e)]) continue;
      std::vector<EdgeIndex> rest;
      for (EdgeIndex f = 0; f < red.target.num_edges(); ++f) {
        if (f != e) rest.push_back(f);
      }
      CHECK_FALSE(feasible(red.target, Solution::from_indices(red.target, rest), PathMode::NonStrict));
    }
    // gadget edges are forced, so the search only branches on Steiner pieces
    auto opt = brute_force(red.target, PathMode::NonStrict, std::nullopt, 40);
    REQUIRE(opt);
    const Weight st = steiner_subset_optimum(inst);
    CHECK(opt->cost == st + red.gadget_edge_count());
    auto back = red.backward(*opt);
    CHECK(steiner_feasible(inst, back));
    CHECK(steiner_cost(inst, back) == st);
  }
}
