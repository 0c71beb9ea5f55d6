#include <functional>
#include <random>

#include "doctest.h"
#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

using namespace tempconn;

namespace {

TimeLabel L(std::int64_t v) { return TimeLabel{v}; }

TemporalGraph random_graph(std::mt19937_64& rng, int n, int m, int max_label, bool multi) {
  TemporalGraph g(n);
  std::uniform_int_distribution<int> vd(0, n - 1), ld(0, max_label), wd(0, 5);
  for (int k = 0; k < m; ++k) {
    int u = vd(rng), v = vd(rng);
    if (u == v) continue;
    auto t = L(ld(rng));
    if (g.find_edge(u, v, t)) continue;
    if (!multi && !g.labels_of(u, v).empty()) continue;
    g.add_edge(u, v, t, wd(rng));
  }
  return g;
}

bool is_spanning_tree(const TemporalGraph& g, const Solution& s) {
  if (static_cast<int>(s.edge_indices.size()) != g.num_vertices() - 1) return false;
  std::vector<int> comp(static_cast<std::size_t>(g.num_vertices()));
  for (int i = 0; i < g.num_vertices(); ++i) comp[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    return comp[static_cast<std::size_t>(x)] == x ? x : comp[static_cast<std::size_t>(x)] = find(comp[static_cast<std::size_t>(x)]);
  };
  for (EdgeIndex e : s.edge_indices) {
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a == b) return false;
    comp[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

}  // namespace

TEST_CASE("graph validation") {
  TemporalGraph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 3, L(1), 1), InputError);
  CHECK_THROWS_AS(g.add_edge(1, 1, L(1), 1), InputError);
  g.add_edge(0, 1, L(1), 1);
  CHECK_THROWS_AS(g.add_edge(1, 0, L(1), 2), InputError);
  g.add_edge(1, 0, L(2), 2);
  CHECK(g.labels_of(0, 1).size() == 2);
  CHECK_FALSE(g.is_simple());
  CHECK(g.lifetime() == L(2));
}

TEST_CASE("earliest arrival basics") {
  TemporalGraph single(1);
  auto a = earliest_arrival(single, 0, L(0), PathMode::NonStrict);
  REQUIRE(a.size() == 1);
  CHECK(a[0] == L(0));

  TemporalGraph g(3);
  g.add_edge(0, 1, L(3), 1);
  g.add_edge(1, 2, L(2), 1);
  a = earliest_arrival(g, 0, L(0), PathMode::NonStrict);
  CHECK(a[0] == L(0));
  CHECK(a[1] == L(3));
  CHECK_FALSE(a[2].has_value());

  TemporalGraph same(3);
  same.add_edge(0, 1, L(1), 1);
  same.add_edge(1, 2, L(1), 1);
  CHECK(earliest_arrival(same, 0, L(0), PathMode::NonStrict)[2] == L(1));
  CHECK_FALSE(earliest_arrival(same, 0, L(0), PathMode::Strict)[2].has_value());

  CHECK_THROWS_AS(earliest_arrival(same, 3, L(0), PathMode::Strict), InputError);
}

TEST_CASE("first edge respects start") {
  TemporalGraph g(2);
  g.add_edge(0, 1, L(2), 1);
  CHECK(earliest_arrival(g, 0, L(2), PathMode::Strict)[1] == L(2));
  CHECK_FALSE(earliest_arrival(g, 0, L(3), PathMode::NonStrict)[1].has_value());
}

TEST_CASE("r-connectivity and connectivity") {
  TemporalGraph star(5);
  for (int i = 1; i <= 4; ++i) star.add_edge(0, i, L(1), 1);
  CHECK(is_r_connected(star, 0, PathMode::NonStrict));
  CHECK(is_r_connected(star, 0, PathMode::Strict));
  CHECK(is_r_connected(star, 1, PathMode::NonStrict));
  CHECK_FALSE(is_r_connected(star, 1, PathMode::Strict));
  CHECK_THROWS_AS(is_r_connected(star, 5, PathMode::Strict), InputError);

  TemporalGraph empty(2);
  CHECK_FALSE(is_r_connected(empty, 0, PathMode::NonStrict));
  CHECK(is_connected(TemporalGraph(1), PathMode::Strict));
}

TEST_CASE("feasible") {
  TemporalGraph star(5);
  for (int i = 1; i <= 4; ++i) star.add_edge(0, i, L(1), 1);
  auto all = Solution::from_indices(star, {0, 1, 2, 3});
  CHECK(all.cost == 4);
  CHECK(feasible(star, all, PathMode::NonStrict));
  CHECK_FALSE(feasible(star, Solution{}, PathMode::NonStrict));
  CHECK_FALSE(feasible(star, Solution::from_indices(star, {0, 1, 2}), PathMode::NonStrict, 0));
  CHECK_THROWS_AS(Solution::from_indices(star, {7}), InputError);
}

TEST_CASE("prune keeps a simple tree unchanged") {
  TemporalGraph g(4);
  g.add_edge(0, 1, L(1), 2);
  g.add_edge(1, 2, L(2), 3);
  g.add_edge(1, 3, L(4), 1);
  auto sol = Solution::from_indices(g, {0, 1, 2});
  auto pruned = prune_to_tree(g, sol, 0, PathMode::Strict);
  CHECK(pruned.edge_indices == sol.edge_indices);
  CHECK(pruned.cost == 6);
}

TEST_CASE("prune prefers the cheaper of two equally early routes") {
  TemporalGraph g(4);
  g.add_edge(0, 1, L(1), 1);  // route via 1: cost 1 + 2 = 3
  g.add_edge(1, 3, L(2), 2);
  g.add_edge(0, 2, L(1), 4);  // route via 2: cost 4 + 1 = 5
  g.add_edge(2, 3, L(2), 1);
  auto sol = Solution::from_indices(g, {0, 1, 2, 3});
  auto pruned = prune_to_tree(g, sol, 0, PathMode::NonStrict);
  CHECK(pruned.edge_indices == std::vector<EdgeIndex>{0, 1, 2});
  CHECK(pruned.cost == 7);
}

TEST_CASE("prune drops a later label on the same edge") {
  TemporalGraph g(3);
  EdgeIndex early = g.add_edge(0, 1, L(2), 1);
  g.add_edge(0, 1, L(5), 1);
  EdgeIndex tail = g.add_edge(1, 2, L(6), 1);
  auto pruned = prune_to_tree(g, Solution::from_indices(g, {0, 1, 2}), 0, PathMode::Strict);
  CHECK(pruned.edge_indices == std::vector<EdgeIndex>{early, tail});
}

TEST_CASE("prune rejects infeasible input") {
  TemporalGraph g(3);
  g.add_edge(0, 1, L(2), 1);
  CHECK_THROWS_AS(prune_to_tree(g, Solution::from_indices(g, {0}), 0, PathMode::Strict),
                  PreconditionError);
}

TEST_CASE("stats") {
  TemporalGraph g(3);
  auto s = stats(g);
  CHECK(s.num_edges == 0);
  CHECK(s.max_degree == 0);
  g.add_edge(0, 1, L(1), 2);
  g.add_edge(0, 2, L(1), 3);
  g.add_edge(0, 2, L(4), 3);
  s = stats(g);
  CHECK(s.num_edges == 3);
  CHECK(s.distinct_label_count == 2);
  CHECK(s.max_degree == 2);
  CHECK(s.total_weight == 8);
}

TEST_CASE("reachability properties on random graphs") {
  std::mt19937_64 rng(20260417);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 9;
    auto g = random_graph(rng, n, 3 * n, 6, true);
    ReachabilitySweeper sweeper(g);
    for (Vertex s = 0; s < n; ++s) {
      for (PathMode mode : {PathMode::NonStrict, PathMode::Strict}) {
        std::optional<ArrivalMap> previous;
        for (std::int64_t start = 0; start <= 7; ++start) {
          auto tree = sweeper.foremost(s, L(start), mode);
          for (Vertex v = 0; v < n; ++v) {
            if (!tree.arrival[static_cast<std::size_t>(v)]) continue;
            auto path = extract_path(g, tree, s, v);
            REQUIRE(path.has_value());
            CHECK(is_valid_path(g, *path, mode));
            if (!path->edge_indices.empty()) {
              CHECK(g.edge(path->edge_indices.front()).label >= L(start));
              CHECK(g.edge(path->edge_indices.back()).label == *tree.arrival[static_cast<std::size_t>(v)]);
            }
          }
          if (previous) {
            for (Vertex v = 0; v < n; ++v) {
              if (v == s) continue;
              const auto& now = tree.arrival[static_cast<std::size_t>(v)];
              const auto& before = (*previous)[static_cast<std::size_t>(v)];
              if (now) {
                REQUIRE(before.has_value());
                CHECK(*before <= *now);
              }
            }
          }
          previous = tree.arrival;
        }
        auto strict = sweeper.foremost(s, L(0), PathMode::Strict).arrival;
        auto loose = sweeper.foremost(s, L(0), PathMode::NonStrict).arrival;
        for (Vertex v = 0; v < n; ++v) {
          if (strict[static_cast<std::size_t>(v)]) CHECK(loose[static_cast<std::size_t>(v)].has_value());
        }
      }
    }
    for (PathMode mode : {PathMode::NonStrict, PathMode::Strict}) {
      if (!is_connected(g, mode)) continue;
      std::uniform_int_distribution<int> vd(0, n - 1);
      int u = vd(rng), v = vd(rng);
      if (u != v && !g.find_edge(u, v, L(3))) {
        auto bigger = g;
        bigger.add_edge(u, v, L(3), 1);
        CHECK(is_connected(bigger, mode));
      }
    }
  }
}

TEST_CASE("prune invariants on random graphs") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 8;
    auto g = random_graph(rng, n, 4 * n, 5, true);
    for (PathMode mode : {PathMode::NonStrict, PathMode::Strict}) {
      std::vector<EdgeIndex> all(static_cast<std::size_t>(g.num_edges()));
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) all[static_cast<std::size_t>(e)] = e;
      auto sol = Solution::from_indices(g, all);
      if (!feasible(g, sol, mode, 0)) continue;
      auto pruned = prune_to_tree(g, sol, 0, mode);
      ++checked;
      CHECK(is_spanning_tree(g, pruned));
      CHECK(feasible(g, pruned, mode, 0));
      CHECK(pruned.cost <= sol.cost);
      auto again = prune_to_tree(g, pruned, 0, mode);
      CHECK(again.edge_indices == pruned.edge_indices);
    }
  }
  CHECK(checked > 50);
}
