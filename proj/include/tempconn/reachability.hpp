#pragma once

#include <optional>
#include <vector>

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

using ArrivalMap = std::vector<std::optional<TimeLabel>>;

// Arrivals plus the edge used to reach each vertex first (-1 for the source
// and for unreachable vertices).
struct ForemostTree {
  ArrivalMap arrival;
  std::vector<EdgeIndex> parent_edge;
};

// Foremost-path sweep over label buckets. The bucket layout is computed once,
// so repeated queries (all sources, or many candidate edge subsets) are cheap.
// `enabled`, when given, has one flag per edge and masks out the rest.
class ReachabilitySweeper {
 public:
  explicit ReachabilitySweeper(const TemporalGraph& g);

  ForemostTree foremost(Vertex source, TimeLabel start, PathMode mode,
                        const std::vector<bool>* enabled = nullptr) const;

  bool reaches_all(Vertex source, PathMode mode, const std::vector<bool>* enabled = nullptr) const;
  bool all_pairs(PathMode mode, const std::vector<bool>* enabled = nullptr) const;

 private:
  struct Bucket {
    TimeLabel label;
    std::vector<EdgeIndex> edges;
  };
  const TemporalGraph& g_;
  std::vector<Bucket> buckets_;
};

// The first edge of a counted path must carry a label >= start, in both
// modes. The source itself maps to start.
ArrivalMap earliest_arrival(const TemporalGraph& g, Vertex source, TimeLabel start, PathMode mode);

// Witness for a vertex reachable in `tree` from `source`, or nullopt.
std::optional<TemporalPath> extract_path(const TemporalGraph& g, const ForemostTree& tree,
                                         Vertex source, Vertex target);

bool is_r_connected(const TemporalGraph& g, Vertex r, PathMode mode);
bool is_connected(const TemporalGraph& g, PathMode mode);

// Restricts g to the solution's edges. With a root this checks
// r-connectivity, otherwise all-pairs connectivity.
bool feasible(const TemporalGraph& g, const Solution& sol, PathMode mode,
              std::optional<Vertex> root = std::nullopt);

// Reduces a feasible rooted solution to a temporal spanning tree with one
// label per edge. Each vertex keeps its earliest arrival; among equally early
// routes the cheaper one wins, then the smaller last edge index.
Solution prune_to_tree(const TemporalGraph& g, const Solution& sol, Vertex r, PathMode mode);

}  // namespace tempconn
