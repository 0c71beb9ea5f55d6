#pragma once

#include <optional>

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

inline constexpr int kBruteForceEdgeCap = 22;

// Exact minimum-cost feasible subset by branch and bound. Zero-weight edges
// are always available and do not count toward `edge_cap`; only
// positive-weight edges are branched on. Returns nullopt when even the full
// edge set is infeasible. Throws RefusalError above the cap.
std::optional<Solution> brute_force(const TemporalGraph& g, PathMode mode,
                                    std::optional<Vertex> root = std::nullopt,
                                    int edge_cap = kBruteForceEdgeCap);

}  // namespace tempconn
