#include <algorithm>
#include <optional>
#include <random>

#include "doctest.h"
#include "tempconn/error.hpp"
#include "tempconn/steiner.hpp"

using namespace tempconn;

namespace {

std::vector<ArcIndex> mask_arcs(std::uint32_t mask, int m) {
  std::vector<ArcIndex> idx;
  for (int a = 0; a < m; ++a) {
    if (mask >> a & 1u) idx.push_back(a);
  }
  return idx;
}

std::optional<Weight> dst_subset_optimum(const DstInstance& inst) {
  std::optional<Weight> best;
  const int m = inst.graph.num_arcs();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    auto s = SteinerSolution::from_indices(inst.graph, mask_arcs(mask, m));
    if (best && s.cost >= *best) continue;
    if (dst_feasible(inst, s)) best = s.cost;
  }
  return best;
}

std::optional<Weight> dsf_subset_optimum(const DsfInstance& inst) {
  std::optional<Weight> best;
  const int m = inst.graph.num_arcs();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    auto s = SteinerSolution::from_indices(inst.graph, mask_arcs(mask, m));
    if (best && s.cost >= *best) continue;
    if (dsf_feasible(inst, s)) best = s.cost;
  }
  return best;
}

Digraph random_digraph(std::mt19937_64& rng, int n, int arcs, int max_w) {
  Digraph g(n);
  std::uniform_int_distribution<int> vd(0, n - 1), wd(0, max_w);
  for (int tries = 0; g.num_arcs() < arcs && tries < 200; ++tries) {
    int u = vd(rng), v = vd(rng);
    if (u == v || g.find_arc(u, v)) continue;
    g.add_arc(u, v, wd(rng));
  }
  return g;
}

}  // namespace

TEST_CASE("digraph validation") {
  Digraph g(3);
  g.add_arc(0, 1, 2);
  CHECK_THROWS_AS(g.add_arc(0, 1, 5), InputError);
  CHECK_THROWS_AS(g.add_arc(1, 1, 1), InputError);
  CHECK_THROWS_AS(g.add_arc(0, 3, 1), InputError);
  CHECK_THROWS_AS(g.add_arc(0, 2, -1), InputError);
  CHECK(g.find_arc(0, 1) == 0);
  CHECK_FALSE(g.find_arc(1, 0).has_value());
}

TEST_CASE("exact DST small cases") {
  SUBCASE("terminal at the root") {
    DstInstance inst{Digraph(2), 0, {0}};
    inst.graph.add_arc(0, 1, 4);
    auto s = dst_exact(inst);
    CHECK(s.cost == 0);
    CHECK(s.arc_indices.empty());
  }
  SUBCASE("path") {
    DstInstance inst{Digraph(3), 0, {2}};
    inst.graph.add_arc(0, 1, 2);
    inst.graph.add_arc(1, 2, 3);
    auto s = dst_exact(inst);
    CHECK(s.cost == 5);
    CHECK(s.arc_indices == std::vector<ArcIndex>{0, 1});
  }
  SUBCASE("shared trunk beats two direct arcs") {
    DstInstance inst{Digraph(4), 0, {2, 3}};
    inst.graph.add_arc(0, 1, 3);
    inst.graph.add_arc(1, 2, 1);
    inst.graph.add_arc(1, 3, 1);
    inst.graph.add_arc(0, 2, 4);
    inst.graph.add_arc(0, 3, 4);
    CHECK(dst_exact(inst).cost == 5);
  }
  SUBCASE("unreachable terminal") {
    DstInstance inst{Digraph(3), 0, {2}};
    inst.graph.add_arc(0, 1, 1);
    inst.graph.add_arc(2, 1, 1);
    CHECK_THROWS_AS(dst_exact(inst), InfeasibleError);
    CHECK_THROWS_AS(dst_greedy(inst, 2), InfeasibleError);
  }
  SUBCASE("terminal cap") {
    DstInstance inst{Digraph(14), 0, {}};
    for (Node v = 1; v < 14; ++v) {
      inst.graph.add_arc(0, v, 1);
      inst.terminals.push_back(v);
    }
    CHECK_THROWS_AS(dst_exact(inst), RefusalError);
    CHECK(dst_exact(inst, 13).cost == 13);
  }
}

TEST_CASE("exact DST agrees with arc-subset enumeration") {
  std::mt19937_64 rng(0x5eed01);
  for (int round = 0; round < 60; ++round) {
    const int n = 3 + static_cast<int>(rng() % 5);
    DstInstance inst{random_digraph(rng, n, 4 + static_cast<int>(rng() % 9), 6), 0, {}};
    for (Node v = 1; v < n; ++v) {
      if (rng() % 2) inst.terminals.push_back(v);
    }
    auto oracle = dst_subset_optimum(inst);
    if (!oracle) {
      CHECK_THROWS_AS(dst_exact(inst), InfeasibleError);
      continue;
    }
    auto s = dst_exact(inst);
    CHECK(dst_feasible(inst, s));
    CHECK(s.cost == *oracle);
    for (int depth = 1; depth <= 3; ++depth) {
      auto gr = dst_greedy(inst, depth);
      CHECK(dst_feasible(inst, gr));
      CHECK(gr.cost >= s.cost);
    }
  }
}

TEST_CASE("greedy DST on a star") {
  DstInstance inst{Digraph(5), 0, {1, 2, 3, 4}};
  Weight total = 0;
  for (Node v = 1; v < 5; ++v) {
    inst.graph.add_arc(0, v, v * 2);
    total += v * 2;
  }
  for (int depth = 1; depth <= 4; ++depth) CHECK(dst_greedy(inst, depth).cost == total);
  CHECK(dst_exact(inst).cost == total);
}

TEST_CASE("zero-weight arcs never raise the DST optimum") {
  std::mt19937_64 rng(0x5eed02);
  for (int round = 0; round < 30; ++round) {
    const int n = 4 + static_cast<int>(rng() % 3);
    DstInstance inst{random_digraph(rng, n, 10, 5), 0, {1, 2}};
    Weight before = 0;
    try {
      before = dst_exact(inst).cost;
    } catch (const InfeasibleError&) {
      continue;
    }
    int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
    if (u == v || inst.graph.find_arc(u, v)) continue;
    inst.graph.add_arc(u, v, 0);
    CHECK(dst_exact(inst).cost <= before);
  }
}

TEST_CASE("DSF brute force small cases") {
  SUBCASE("single arc") {
    DsfInstance inst{Digraph(2), {{0, 1}}};
    inst.graph.add_arc(0, 1, 3);
    auto s = dsf_brute(inst);
    CHECK(s.arc_indices == std::vector<ArcIndex>{0});
    CHECK(s.cost == 3);
  }
  SUBCASE("shared arc counted once") {
    DsfInstance inst{Digraph(4), {{0, 2}, {1, 3}}};
    ArcIndex shared = inst.graph.add_arc(1, 2, 5);
    inst.graph.add_arc(0, 1, 1);
    inst.graph.add_arc(2, 3, 1);
    inst.graph.add_arc(0, 2, 9);
    auto s = dsf_brute(inst);
    CHECK(s.cost == 7);
    CHECK(std::count(s.arc_indices.begin(), s.arc_indices.end(), shared) == 1);
  }
  SUBCASE("unsatisfiable demand") {
    DsfInstance inst{Digraph(2), {{1, 0}}};
    inst.graph.add_arc(0, 1, 1);
    CHECK_THROWS_AS(dsf_brute(inst), InfeasibleError);
  }
  SUBCASE("duplicate demand rejected") {
    DsfInstance inst{Digraph(2), {{0, 1}, {0, 1}}};
    CHECK_THROWS_AS(dsf_brute(inst), InputError);
  }
}

TEST_CASE("DSF brute force agrees with arc-subset enumeration") {
  std::mt19937_64 rng(0x5eed03);
  for (int round = 0; round < 40; ++round) {
    const int n = 3 + static_cast<int>(rng() % 4);
    DsfInstance inst{random_digraph(rng, n, 5 + static_cast<int>(rng() % 8), 4), {}};
    for (int d = 0; d < 3; ++d) {
      Node s = static_cast<Node>(rng() % n), t = static_cast<Node>(rng() % n);
      if (s == t || std::find(inst.demands.begin(), inst.demands.end(), std::make_pair(s, t)) != inst.demands.end()) {
        continue;
      }
      inst.demands.emplace_back(s, t);
    }
    auto oracle = dsf_subset_optimum(inst);
    if (!oracle) {
      CHECK_THROWS_AS(dsf_brute(inst), InfeasibleError);
      continue;
    }
    auto s = dsf_brute(inst);
    CHECK(dsf_feasible(inst, s));
    CHECK(s.cost == *oracle);
  }
}
