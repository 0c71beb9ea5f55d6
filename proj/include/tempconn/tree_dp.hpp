#pragma once

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

// True when the underlying graph is a spanning tree of the vertex set.
bool underlying_is_tree(const TemporalGraph& g);

// Exact all-pairs minimum temporal connectivity on a temporal tree. Each
// tree edge is used with at most one label per direction. Throws InputError
// if the underlying graph is not a tree and InfeasibleError if the tree is
// not temporally connected.
Solution solve_tree_tc(const TemporalGraph& g, PathMode mode);

}  // namespace tempconn
