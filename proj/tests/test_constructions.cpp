#include <algorithm>
#include <map>
#include <string>
#include "doctest.h"
#include "tempconn/constructions.hpp"
#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

using namespace tempconn;

TEST_CASE("hamiltonian partition small cases") {
  auto p2 = hamiltonian_partition(2);
  REQUIRE(p2.paths.size() == 1);
  CHECK(p2.paths[0] == std::vector<Vertex>{0, 1});

  auto p4 = hamiltonian_partition(4);
  REQUIRE(p4.paths.size() == 2);
  CHECK(p4.paths[0] == std::vector<Vertex>{0, 3, 1, 2});
  CHECK(p4.paths[1] == std::vector<Vertex>{1, 0, 2, 3});
  CHECK(is_valid_partition(p4));

  // Figure 1(a), shifted to 0-based vertex names.
  auto p6 = hamiltonian_partition(6);
  CHECK(p6.paths[0] == std::vector<Vertex>{0, 5, 1, 4, 2, 3});
  CHECK(p6.paths[1] == std::vector<Vertex>{1, 0, 2, 5, 3, 4});
  CHECK(p6.paths[2] == std::vector<Vertex>{2, 1, 3, 0, 4, 5});

  CHECK_THROWS_AS(hamiltonian_partition(5), InputError);
  CHECK_THROWS_AS(hamiltonian_partition(0), InputError);
}

TEST_CASE("hamiltonian partition for all even n up to 20") {
  for (int n = 2; n <= 20; n += 2) CHECK_MESSAGE(is_valid_partition(hamiltonian_partition(n)), n);
}

TEST_CASE("lower-bound counts") {
  auto lb6 = build_lower_bound(6);
  CHECK(lb6.graph.num_vertices() == 18);
  CHECK(lb6.graph.num_edges() == 42);
  auto lb8 = build_lower_bound(8);
  CHECK(lb8.graph.num_vertices() == 24);
  CHECK(lb8.graph.num_edges() == 65);
  CHECK(stats(lb6.graph).distinct_label_count <= 21);
  CHECK_THROWS_AS(build_lower_bound(4), InputError);
  CHECK_THROWS_AS(build_lower_bound(7), InputError);
}

TEST_CASE("lower-bound census") {
  for (int n = 6; n <= 14; n += 2) {
    auto lb = build_lower_bound(n);
    const auto& g = lb.graph;
    auto role = [&](Vertex x) { return x < n ? 'A' : (x < 2 * n ? 'H' : 'M'); };
    std::map<std::string, int> count;
    for (const auto& e : g.edges()) {
      std::string key{role(e.u), role(e.v)};
      std::sort(key.begin(), key.end());
      ++count[key];
    }
    CHECK(count["AA"] == n * (n - 1) / 2);
    CHECK(count["AH"] == n);
    CHECK(count["AM"] == n);
    CHECK(count["HM"] == 2 * n);
    CHECK(count["MM"] == 2 * (n / 2 - 2) + 1);
    CHECK(count.size() == 5);
    CHECK(g.num_edges() == n * (n + 9) / 2 - 3);
    CHECK(g.is_simple());
    // The anchor label n+1 coincides with one entry label.
    CHECK(stats(g).distinct_label_count == 7 * n / 2 - 3);
    // epsilon / scale < 1 / (4n)
    CHECK(lb.epsilon_scaled.value * 4 * n < g.scale());
    for (const auto& [e, i] : lb.a_edge_path_index) CHECK(g.edge(e).label.value == i * g.scale());
  }
}

TEST_CASE("lower-bound M-M labels follow the listed order") {
  auto lb = build_lower_bound(8);
  const auto s = lb.graph.scale();
  CHECK(lb.graph.find_edge(lb.m(1), lb.m(8), TimeLabel{s}));
  CHECK(lb.graph.find_edge(lb.m(3), lb.m(8), TimeLabel{s - 1}));
  CHECK(lb.graph.find_edge(lb.m(5), lb.m(8), TimeLabel{s - 2}));
  CHECK(lb.graph.find_edge(lb.m(3), lb.m(6), TimeLabel{s - 3}));
  CHECK(lb.graph.find_edge(lb.m(1), lb.m(4), TimeLabel{s - 4}));
}

TEST_CASE("verify lower bound") {
  for (int n = 6; n <= 14; n += 2) {
    auto report = verify_lower_bound(build_lower_bound(n), PathMode::NonStrict);
    CHECK_MESSAGE(report.connected, n);
    CHECK_MESSAGE(report.all_removals_disconnect, n);
    CHECK(report.pigeonhole_ok);
    CHECK(static_cast<int>(report.removals.size()) == n * (n - 1) / 2);
  }
  auto r6 = verify_lower_bound(build_lower_bound(6), PathMode::NonStrict);
  CHECK(r6.non_a_edges == 27);
  CHECK(r6.bound == 30);
}

TEST_CASE("verifier catches a corrupted A-edge label") {
  auto lb = build_lower_bound(6);
  int caught = 0;
  for (const auto& [e, i] : lb.a_edge_path_index) {
    auto bad = lb;
    // Move the edge to a neighbouring path's label.
    std::int64_t wrong = (i == 1 ? 2 : i - 1) * bad.graph.scale();
    if (bad.graph.find_edge(bad.graph.edge(e).u, bad.graph.edge(e).v, TimeLabel{wrong})) continue;
    bad.graph.set_label(e, TimeLabel{wrong});
    if (!verify_lower_bound(bad, PathMode::NonStrict).ok()) ++caught;
  }
  CHECK(caught == 15);
}

TEST_CASE("fragile variant") {
  for (int n : {6, 8}) {
    auto lb = build_lower_bound(n);
    auto g = build_fragile_variant(lb);
    int differing = 0;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).label != lb.graph.edge(e).label) {
        ++differing;
        CHECK(lb.graph.edge(e).label == lb.epsilon_scaled);
        CHECK(g.edge(e).label.value == g.scale());
      }
    }
    CHECK(differing == 1);
    auto report = verify_fragile(g, lb, PathMode::NonStrict);
    CHECK(report.connected);
    CHECK(report.remaining_edges == 6 * n - 4);
    CHECK(report.ok());
    CHECK_FALSE(verify_fragile(lb.graph, lb, PathMode::NonStrict).connected);
  }
  CHECK(verify_fragile(build_fragile_variant(build_lower_bound(6)), build_lower_bound(6),
                       PathMode::NonStrict).remaining_edges == 32);
}

TEST_CASE("annotation round trip") {
  auto lb = build_lower_bound(6);
  auto text = write_lower_bound_annotation(lb);
  auto back = read_lower_bound_annotation(lb.graph, text);
  CHECK(back.a_edge_path_index == lb.a_edge_path_index);
  CHECK_THROWS_AS(read_lower_bound_annotation(lb.graph, "lb 6\nbogus 1\n"), ParseError);
}
