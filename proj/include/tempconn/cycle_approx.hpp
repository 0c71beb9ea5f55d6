#pragma once

#include <optional>
#include <vector>

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

// Vertex ids must follow the cycle: the underlying edges are exactly
// {i, i+1 mod n} for n >= 3.
bool underlying_is_cycle(const TemporalGraph& g);

using PathCostTable = std::vector<std::vector<std::optional<Weight>>>;

// inc(i, k): cheapest temporal path v_i, v_{i+1}, ..., v_k (indices mod n).
// Entry (i, i) is 0. Throws InputError on a non-cycle.
PathCostTable inc_path_costs(const TemporalGraph& g, PathMode mode);

// dec(j, k): cheapest temporal path v_j, v_{j-1}, ..., v_k.
PathCostTable dec_path_costs(const TemporalGraph& g, PathMode mode);

// A run of cycle vertices start..end (cyclic). The increasing path runs
// from start to meet, the decreasing path from end down to meet+1.
struct Sector {
  int start = 0;
  int end = 0;
  int meet = 0;
  std::vector<EdgeIndex> inc_edges;
  std::vector<EdgeIndex> dec_edges;
};

struct CycleResult {
  Solution solution;
  Weight dp_value = 0;  // sum of sector costs; the union may be cheaper
  int rotation = 0;     // vertex used as the first sector start
  std::vector<Sector> sectors;
};

// Sector-partition approximation, at most twice the optimum. Throws
// InputError on a non-cycle and InfeasibleError when the cycle is not
// temporally connected.
CycleResult solve_cycle_tc(const TemporalGraph& g, PathMode mode);

}  // namespace tempconn
