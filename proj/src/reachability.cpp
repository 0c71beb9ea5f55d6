#include "tempconn/reachability.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <tuple>

#include "tempconn/error.hpp"

namespace tempconn {

namespace {

void check_vertex(const TemporalGraph& g, Vertex x, const char* what) {
  if (!g.valid_vertex(x)) {
    throw InputError(std::string(what) + " " + std::to_string(x) + " out of range for n = " +
                     std::to_string(g.num_vertices()));
  }
}

}  // namespace

ReachabilitySweeper::ReachabilitySweeper(const TemporalGraph& g) : g_(g) {
  std::vector<EdgeIndex> order(static_cast<std::size_t>(g.num_edges()));
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) order[static_cast<std::size_t>(e)] = e;
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeIndex a, EdgeIndex b) { return g.edge(a).label < g.edge(b).label; });
  for (EdgeIndex e : order) {
    if (buckets_.empty() || buckets_.back().label != g.edge(e).label) {
      buckets_.push_back({g.edge(e).label, {}});
    }
    buckets_.back().edges.push_back(e);
  }
}

ForemostTree ReachabilitySweeper::foremost(Vertex source, TimeLabel start, PathMode mode,
                                           const std::vector<bool>* enabled) const {
  check_vertex(g_, source, "source");
  const auto n = static_cast<std::size_t>(g_.num_vertices());
  ForemostTree out;
  out.arrival.assign(n, std::nullopt);
  out.parent_edge.assign(n, -1);
  out.arrival[static_cast<std::size_t>(source)] = start;

  auto ready = [&](Vertex x, TimeLabel t) {
    const auto& a = out.arrival[static_cast<std::size_t>(x)];
    if (!a) return false;
    if (x == source) return start <= t;
    return can_follow(*a, t, mode);
  };
  auto usable = [&](EdgeIndex e) {
    return enabled == nullptr || (*enabled)[static_cast<std::size_t>(e)];
  };

  std::vector<std::pair<Vertex, EdgeIndex>> fresh;
  for (const auto& bucket : buckets_) {
    if (bucket.label < start) continue;
    const TimeLabel t = bucket.label;
    fresh.clear();
    if (mode == PathMode::Strict) {
      for (EdgeIndex e : bucket.edges) {
        if (!usable(e)) continue;
        const auto& te = g_.edge(e);
        for (Vertex x : {te.u, te.v}) {
          Vertex y = te.other(x);
          if (ready(x, t) && !out.arrival[static_cast<std::size_t>(y)]) fresh.emplace_back(y, e);
        }
      }
      for (auto [y, e] : fresh) {
        if (!out.arrival[static_cast<std::size_t>(y)]) {
          out.arrival[static_cast<std::size_t>(y)] = t;
          out.parent_edge[static_cast<std::size_t>(y)] = e;
        }
      }
      continue;
    }
    // Non-strict: closure inside the bucket, repeated until nothing changes.
    bool changed = true;
    while (changed) {
      changed = false;
      for (EdgeIndex e : bucket.edges) {
        if (!usable(e)) continue;
        const auto& te = g_.edge(e);
        for (Vertex x : {te.u, te.v}) {
          Vertex y = te.other(x);
          if (ready(x, t) && !out.arrival[static_cast<std::size_t>(y)]) {
            out.arrival[static_cast<std::size_t>(y)] = t;
            out.parent_edge[static_cast<std::size_t>(y)] = e;
            changed = true;
          }
        }
      }
    }
  }
  return out;
}

bool ReachabilitySweeper::reaches_all(Vertex source, PathMode mode,
                                      const std::vector<bool>* enabled) const {
  auto tree = foremost(source, TimeLabel{0}, mode, enabled);
  return std::all_of(tree.arrival.begin(), tree.arrival.end(),
                     [](const auto& a) { return a.has_value(); });
}

bool ReachabilitySweeper::all_pairs(PathMode mode, const std::vector<bool>* enabled) const {
  for (Vertex s = 0; s < g_.num_vertices(); ++s) {
    if (!reaches_all(s, mode, enabled)) return false;
  }
  return true;
}

ArrivalMap earliest_arrival(const TemporalGraph& g, Vertex source, TimeLabel start, PathMode mode) {
  return ReachabilitySweeper(g).foremost(source, start, mode).arrival;
}

std::optional<TemporalPath> extract_path(const TemporalGraph& g, const ForemostTree& tree,
                                         Vertex source, Vertex target) {
  if (!tree.arrival.at(static_cast<std::size_t>(target))) return std::nullopt;
  TemporalPath path;
  Vertex x = target;
  path.vertices.push_back(x);
  while (x != source) {
    EdgeIndex e = tree.parent_edge[static_cast<std::size_t>(x)];
    if (e < 0) throw InternalError("broken parent chain in foremost tree");
    path.edge_indices.push_back(e);
    x = g.edge(e).other(x);
    path.vertices.push_back(x);
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edge_indices.begin(), path.edge_indices.end());
  return path;
}

bool is_r_connected(const TemporalGraph& g, Vertex r, PathMode mode) {
  check_vertex(g, r, "root");
  return ReachabilitySweeper(g).reaches_all(r, mode);
}

bool is_connected(const TemporalGraph& g, PathMode mode) {
  return ReachabilitySweeper(g).all_pairs(mode);
}

bool feasible(const TemporalGraph& g, const Solution& sol, PathMode mode, std::optional<Vertex> root) {
  std::vector<bool> enabled(static_cast<std::size_t>(g.num_edges()), false);
  for (EdgeIndex e : sol.edge_indices) {
    if (e < 0 || e >= g.num_edges()) {
      throw InputError("solution references edge " + std::to_string(e) + " outside the graph");
    }
    enabled[static_cast<std::size_t>(e)] = true;
  }
  ReachabilitySweeper sweeper(g);
  if (root) {
    check_vertex(g, *root, "root");
    return sweeper.reaches_all(*root, mode, &enabled);
  }
  return sweeper.all_pairs(mode, &enabled);
}

Solution prune_to_tree(const TemporalGraph& g, const Solution& sol, Vertex r, PathMode mode) {
  check_vertex(g, r, "root");
  std::vector<bool> enabled(static_cast<std::size_t>(g.num_edges()), false);
  for (EdgeIndex e : sol.edge_indices) enabled.at(static_cast<std::size_t>(e)) = true;
  const auto arrival = ReachabilitySweeper(g).foremost(r, TimeLabel{0}, mode, &enabled).arrival;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  for (const auto& a : arrival) {
    if (!a) throw PreconditionError("prune_to_tree: solution is not feasible for the root");
  }

  constexpr Weight kInf = INT64_MAX;
  std::vector<Weight> cost(n, kInf);
  std::vector<EdgeIndex> parent(n, -1);
  cost[static_cast<std::size_t>(r)] = 0;

  std::map<TimeLabel, std::vector<Vertex>> by_time;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v != r) by_time[*arrival[static_cast<std::size_t>(v)]].push_back(v);
  }

  // Vertices first reached at time t get their parent edge at label t, either
  // from a vertex settled earlier or (non-strict only) from one in the same
  // group, via Dijkstra on path cost.
  for (const auto& [t, group] : by_time) {
    auto in_group = [&](Vertex x) { return x != r && *arrival[static_cast<std::size_t>(x)] == t; };
    auto settled_source = [&](Vertex x) {
      if (x == r) return true;
      return *arrival[static_cast<std::size_t>(x)] < t;
    };
    using Item = std::tuple<Weight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Vertex v : group) {
      for (EdgeIndex e : g.incident(v)) {
        if (!enabled[static_cast<std::size_t>(e)] || g.edge(e).label != t) continue;
        Vertex x = g.edge(e).other(v);
        if (!settled_source(x)) continue;
        Weight c = cost[static_cast<std::size_t>(x)] + g.edge(e).weight;
        auto& cv = cost[static_cast<std::size_t>(v)];
        auto& pv = parent[static_cast<std::size_t>(v)];
        if (c < cv || (c == cv && e < pv)) {
          cv = c;
          pv = e;
        }
      }
      if (cost[static_cast<std::size_t>(v)] != kInf) pq.emplace(cost[static_cast<std::size_t>(v)], v);
    }
    std::vector<bool> done(n, false);
    while (!pq.empty()) {
      auto [c, x] = pq.top();
      pq.pop();
      if (done[static_cast<std::size_t>(x)] || c != cost[static_cast<std::size_t>(x)]) continue;
      done[static_cast<std::size_t>(x)] = true;
      if (mode == PathMode::Strict) continue;
      for (EdgeIndex e : g.incident(x)) {
        if (!enabled[static_cast<std::size_t>(e)] || g.edge(e).label != t) continue;
        Vertex y = g.edge(e).other(x);
        if (!in_group(y) || done[static_cast<std::size_t>(y)]) continue;
        Weight cy = c + g.edge(e).weight;
        auto& cur = cost[static_cast<std::size_t>(y)];
        auto& py = parent[static_cast<std::size_t>(y)];
        if (cy < cur || (cy == cur && e < py)) {
          cur = cy;
          py = e;
          pq.emplace(cy, y);
        }
      }
    }
    for (Vertex v : group) {
      if (parent[static_cast<std::size_t>(v)] < 0) {
        throw InternalError("prune_to_tree: no parent edge for vertex " + std::to_string(v));
      }
    }
  }

  std::vector<EdgeIndex> kept;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (v != r) kept.push_back(parent[static_cast<std::size_t>(v)]);
  }
  return Solution::from_indices(g, std::move(kept));
}

}  // namespace tempconn
