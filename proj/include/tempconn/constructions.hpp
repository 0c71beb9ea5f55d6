#pragma once

#include <map>
#include <string>
#include <vector>

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

// n/2 edge-disjoint Hamiltonian paths covering K_n (n even).
struct HamiltonianPartition {
  int n = 0;
  std::vector<std::vector<Vertex>> paths;
};

HamiltonianPartition hamiltonian_partition(int n);

// True when every path is a permutation of 0..n-1 and the path edges cover
// each edge of K_n exactly once.
bool is_valid_partition(const HamiltonianPartition& p);

// The dense lower-bound graph on 3n vertices. Vertex a_j is j-1, h_j is
// n+j-1, m_j is 2n+j-1 (1-based names, 0-based ids).
struct LowerBoundGraph {
  int n = 0;
  TemporalGraph graph;
  std::vector<Vertex> a_vertices;
  std::vector<Vertex> h_vertices;
  std::vector<Vertex> m_vertices;
  std::map<EdgeIndex, int> a_edge_path_index;  // 1-based path index
  TimeLabel epsilon_scaled;

  Vertex a(int j) const { return a_vertices.at(static_cast<std::size_t>(j - 1)); }
  Vertex h(int j) const { return h_vertices.at(static_cast<std::size_t>(j - 1)); }
  Vertex m(int j) const { return m_vertices.at(static_cast<std::size_t>(j - 1)); }
};

LowerBoundGraph build_lower_bound(int n);

struct EdgeRemovalCheck {
  EdgeIndex edge = -1;
  int path_index = 0;
  bool still_reachable = false;  // h_{2i} -> h_{2i-1} after removal; must be false
};

struct LowerBoundReport {
  bool connected = false;
  std::vector<EdgeRemovalCheck> removals;
  int non_a_edges = 0;
  int bound = 0;  // 5n
  bool all_removals_disconnect = false;
  bool pigeonhole_ok = false;

  bool ok() const { return connected && all_removals_disconnect && pigeonhole_ok; }
};

LowerBoundReport verify_lower_bound(const LowerBoundGraph& lb, PathMode mode);

// Copy of lb.graph with {a_1, m_1} relabelled from epsilon to 1.
TemporalGraph build_fragile_variant(const LowerBoundGraph& lb);

struct FragileReport {
  bool connected = false;
  int remaining_edges = 0;
  int expected_edges = 0;  // 6n - 4

  bool ok() const { return connected && remaining_edges == expected_edges; }
};

// Drops every A-edge whose path index exceeds 1 and checks connectivity of
// what is left.
FragileReport verify_fragile(const TemporalGraph& g, const LowerBoundGraph& lb, PathMode mode);

// Sidecar annotation (`lb <n>` then `aedge <edge> <path>` lines).
std::string write_lower_bound_annotation(const LowerBoundGraph& lb);

// Rebuilds role information for `g` from an annotation. The graph must be
// the construction for the recorded n, up to the fragile relabelling.
LowerBoundGraph read_lower_bound_annotation(const TemporalGraph& g, const std::string& text);

}  // namespace tempconn
