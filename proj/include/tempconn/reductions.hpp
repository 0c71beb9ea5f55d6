#pragma once

#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "tempconn/steiner.hpp"
#include "tempconn/temporal_graph.hpp"

namespace tempconn {

// Single-source temporal connectivity as a directed Steiner tree instance.
// Node 0 is the root r', node 1 + e stands for temporal edge e, and the
// remaining n - 1 nodes are the terminals u' for u != r in vertex order.
struct RtcToDst {
  TemporalGraph source;
  Vertex root = 0;
  PathMode mode = PathMode::NonStrict;
  DstInstance target;

  Node root_node() const { return 0; }
  Node edge_node(EdgeIndex e) const { return 1 + e; }
  Node terminal_node(Vertex u) const;

  // Feasible rTC solution -> feasible DST solution of no larger cost.
  SteinerSolution forward(const Solution& sol) const;
  // Temporal edges whose nodes are reachable from r' in the DST solution.
  Solution backward(const SteinerSolution& sol) const;
};

RtcToDst rtc_to_dst(const TemporalGraph& g, Vertex r, PathMode mode);

// All-pairs temporal connectivity as a directed Steiner forest instance.
// Temporal edge e owns h1 = 2e and h2 = 2e + 1; vertex i owns s_i = 2M + 2i
// and t_i = 2M + 2i + 1.
struct TcToDsf {
  TemporalGraph source;
  PathMode mode = PathMode::NonStrict;
  DsfInstance target;
  std::vector<ArcIndex> use_arc;  // h1 -> h2 per temporal edge

  Node h1(EdgeIndex e) const { return 2 * e; }
  Node h2(EdgeIndex e) const { return 2 * e + 1; }
  Node s(Vertex i) const { return 2 * source.num_edges() + 2 * i; }
  Node t(Vertex i) const { return 2 * source.num_edges() + 2 * i + 1; }

  SteinerSolution forward(const Solution& sol) const;
  // Temporal edges whose h1 -> h2 arc is selected.
  Solution backward(const SteinerSolution& sol) const;
};

TcToDsf tc_to_dsf(const TemporalGraph& g, PathMode mode);

// Directed Steiner tree instance as a non-strict rTC instance. Original node
// u keeps index u; the auxiliary vertex z^u_i (1 <= i <= n - 1) has index
// n + u(n - 1) + i - 1.
struct DstToRtc {
  DstInstance source;
  TemporalGraph target;
  Vertex root = 0;

  int n() const { return source.graph.num_nodes(); }
  Vertex aux(Node u, int i) const;
  // Edge {u, z^u_i} at label i, and {z^u_i, v} at label i + 1 for arc (u, v).
  EdgeIndex entry_edge(Node u, int i) const;
  EdgeIndex exit_edge(ArcIndex a, int i) const;

  // Copies each tree arc (u, v) on the z^u_{d(u)+1} path, where d is the
  // hop depth from the root; adds every root edge at label n + 1.
  Solution forward(const SteinerSolution& sol) const;
  // Keeps arc (u, v) when some complete u - z^u_i - v pattern is present.
  // The result is not checked; callers decide what to do with it.
  SteinerSolution backward(const Solution& sol) const;

  std::vector<std::vector<EdgeIndex>> entry_edges;  // [u][i - 1]
  std::vector<std::vector<EdgeIndex>> exit_edges;   // [arc][i - 1]
};

DstToRtc dst_to_rtc(const DstInstance& inst);

// Symmetric label cover: bipartite U x W with |U| = |W| = k, colors 0..c-1
// and an allowed color-pair relation for each (u, w).
struct SlcInstance {
  int k = 0;
  int c = 0;
  std::map<std::pair<int, int>, std::set<std::pair<int, int>>> relations;
};

struct SlcAssignment {
  std::vector<std::set<int>> u_colors;
  std::vector<std::set<int>> w_colors;

  int cost() const;
};

void validate(const SlcInstance& inst);
bool slc_feasible(const SlcInstance& inst, const SlcAssignment& sigma);

// Layout: U = 0..k-1, W = k..2k-1, (u, a) = 2k + u c + a,
// (w, b) = 2k + k c + w c + b, then one vertex per (u, w, a, b) in relation
// order, then p and q.
struct SlcToTc {
  SlcInstance source;
  TemporalGraph target;
  std::vector<std::tuple<int, int, int, int>> x_tuples;
  Vertex p = 0;
  Vertex q = 0;
  std::vector<std::vector<EdgeIndex>> u_color_edge;  // [u][a], label 1
  std::vector<std::vector<EdgeIndex>> w_color_edge;  // [w][b], label 4

  Vertex u_vertex(int u) const { return u; }
  Vertex w_vertex(int w) const { return source.k + w; }
  Vertex u_color(int u, int a) const { return 2 * source.k + u * source.c + a; }
  Vertex w_color(int w, int b) const { return 2 * source.k + source.k * source.c + w * source.c + b; }
  Vertex x_vertex(std::size_t idx) const { return 2 * source.k + 2 * source.k * source.c + static_cast<Vertex>(idx); }

  Solution forward(const SlcAssignment& sigma) const;
  SlcAssignment backward(const Solution& sol) const;
};

SlcToTc slc_to_tc(const SlcInstance& inst);

// Undirected Steiner tree with edge weights 1 and 2.
struct SteinerInstance12 {
  int num_vertices = 0;
  std::vector<std::tuple<int, int, int>> edges;  // (u, v, weight)
  std::vector<int> terminals;
};

void validate(const SteinerInstance12& inst);
Weight steiner_cost(const SteinerInstance12& inst, const std::vector<int>& edge_ids);
bool steiner_feasible(const SteinerInstance12& inst, const std::vector<int>& edge_ids);

// Layout: original vertices, one subdivision vertex per weight-2 edge in
// edge order, then p, q, x, a_1..a_m, b_1..b_m. All weights are 1.
struct St12ToTc {
  SteinerInstance12 source;
  TemporalGraph target;
  std::vector<std::vector<EdgeIndex>> parts;  // label-3 pieces per source edge
  std::vector<bool> gadget_edge;              // true for edges outside the Steiner graph
  Vertex p = 0;
  Vertex q = 0;
  Vertex x = 0;
  std::vector<Vertex> a;
  std::vector<Vertex> b;

  int gadget_edge_count() const;
  // Every gadget edge plus the pieces of the chosen Steiner edges.
  Solution forward(const std::vector<int>& edge_ids) const;
  // Source edges all of whose pieces are present.
  std::vector<int> backward(const Solution& sol) const;
};

St12ToTc st12_to_tc(const SteinerInstance12& inst);

}  // namespace tempconn
