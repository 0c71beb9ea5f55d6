#pragma once

#include <functional>

#include "tempconn/temporal_graph.hpp"
#include "tempconn/tree_decomposition.hpp"

namespace tempconn {

inline constexpr int kTreewidthCap = 4;

// Exact single-source minimum temporal connectivity on graphs of bounded
// treewidth. Each vertex other than r picks a parent edge whose label is its
// arrival time; bag states record, per bag vertex, whether its parent edge
// is still owed by the subtree and its position in the (time, tie-rank)
// order. A decomposition that is not nice or not rooted at {r} is converted
// first. Throws RefusalError above width_cap and InfeasibleError when r
// cannot reach everyone.
Solution solve_rtc_treewidth(const TemporalGraph& g, Vertex r, const TreeDecomposition& td, PathMode mode,
                             int width_cap = kTreewidthCap);

// Convenience overload that builds the decomposition itself.
Solution solve_rtc_treewidth(const TemporalGraph& g, Vertex r, PathMode mode, int width_cap = kTreewidthCap);

using RootedSolver = std::function<Solution(const TemporalGraph&, Vertex, PathMode)>;

// Union of rooted solutions over every vertex as the root. Any root solver
// failure propagates (InfeasibleError when some root cannot reach everyone).
Solution tc_via_rooted_union(const TemporalGraph& g, PathMode mode, const RootedSolver& rooted);

}  // namespace tempconn
