#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

using Node = int;
using ArcIndex = int;

struct Arc {
  Node from = 0;
  Node to = 0;
  Weight weight = 0;
};

// Weighted digraph with at most one arc per ordered node pair.
class Digraph {
 public:
  explicit Digraph(int num_nodes = 0);

  // Throws InputError on out-of-range endpoints, self-loops, negative
  // weights and duplicate (from, to) pairs.
  ArcIndex add_arc(Node from, Node to, Weight weight);

  int num_nodes() const { return num_nodes_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcIndex a) const { return arcs_.at(static_cast<std::size_t>(a)); }
  const std::vector<ArcIndex>& out_arcs(Node x) const { return out_.at(static_cast<std::size_t>(x)); }
  std::optional<ArcIndex> find_arc(Node from, Node to) const;
  bool valid_node(Node x) const { return x >= 0 && x < num_nodes_; }

 private:
  int num_nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcIndex>> out_;
  std::map<std::pair<Node, Node>, ArcIndex> index_;
};

struct DstInstance {
  Digraph graph;
  Node root = 0;
  std::vector<Node> terminals;  // sorted, unique
};

struct DsfInstance {
  Digraph graph;
  std::vector<std::pair<Node, Node>> demands;  // unique
};

struct SteinerSolution {
  std::vector<ArcIndex> arc_indices;  // sorted, unique
  Weight cost = 0;

  static SteinerSolution from_indices(const Digraph& g, std::vector<ArcIndex> indices);
};

// Validates root/terminal/demand ranges and uniqueness; throws InputError.
void validate(const DstInstance& inst);
void validate(const DsfInstance& inst);

// Nodes reachable from `source` over the selected arcs.
std::vector<bool> reachable(const Digraph& g, const SteinerSolution& sol, Node source);

bool dst_feasible(const DstInstance& inst, const SteinerSolution& sol);
bool dsf_feasible(const DsfInstance& inst, const SteinerSolution& sol);

inline constexpr int kDstTerminalCap = 12;
inline constexpr int kDsfArcCap = 22;

// Exact directed Steiner tree by terminal-subset dynamic programming with
// shortest-path relaxation between merges. Terminals equal to the root are
// free. Throws RefusalError above the terminal cap and InfeasibleError when
// a terminal is unreachable.
SteinerSolution dst_exact(const DstInstance& inst, int terminal_cap = kDstTerminalCap);

// Recursive density greedy on the metric closure, limited to `depth`
// levels; closure arcs are expanded back to shortest paths on output.
SteinerSolution dst_greedy(const DstInstance& inst, int depth);

// Exact directed Steiner forest by branch and bound over the positive-weight
// arcs (zero-weight arcs are always available and not counted by the cap).
SteinerSolution dsf_brute(const DsfInstance& inst, int arc_cap = kDsfArcCap);

}  // namespace tempconn
