#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace tempconn {

using Vertex = int;
using EdgeIndex = int;
using Weight = std::int64_t;

// A time label stored as an integer multiple of 1/scale, where scale is a
// per-graph denominator. Only ordering and equality are ever used.
struct TimeLabel {
  std::int64_t value = 0;

  friend constexpr auto operator<=>(TimeLabel, TimeLabel) = default;
};

enum class PathMode { NonStrict, Strict };

const char* to_string(PathMode mode);
PathMode parse_path_mode(const std::string& text);

// True when a path that arrived at `arrival` may continue over an edge
// carrying `label`.
constexpr bool can_follow(TimeLabel arrival, TimeLabel label, PathMode mode) {
  return mode == PathMode::Strict ? arrival < label : arrival <= label;
}

struct TemporalEdge {
  Vertex u = 0;  // u < v after normalization
  Vertex v = 0;
  TimeLabel label;
  Weight weight = 0;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
};

// Vertex count plus a list of temporal edges (e, t) with weights. An
// underlying edge may carry several labels, but each (u, v, label) triple
// appears at most once.
class TemporalGraph {
 public:
  explicit TemporalGraph(int num_vertices = 0, std::int64_t scale = 1);

  // Normalizes the endpoint order. Throws InputError on self-loops,
  // out-of-range endpoints, negative labels/weights and duplicate triples.
  EdgeIndex add_edge(Vertex u, Vertex v, TimeLabel label, Weight weight);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::int64_t scale() const { return scale_; }
  const std::vector<TemporalEdge>& edges() const { return edges_; }
  const TemporalEdge& edge(EdgeIndex e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<EdgeIndex>& incident(Vertex x) const { return incident_.at(static_cast<std::size_t>(x)); }

  // Largest label, or 0 for an edgeless graph.
  TimeLabel lifetime() const;

  std::optional<EdgeIndex> find_edge(Vertex u, Vertex v, TimeLabel label) const;

  // Labels of the underlying edge {u, v}, ascending.
  std::vector<TimeLabel> labels_of(Vertex u, Vertex v) const;

  // Distinct underlying edges as (min, max) pairs, ascending.
  std::vector<std::pair<Vertex, Vertex>> underlying_edges() const;

  // |L_e| == 1 for every underlying edge.
  bool is_simple() const;

  // Copy that keeps only the listed edges. Edge indices are renumbered in
  // ascending order of the originals.
  TemporalGraph restricted_to(std::span<const EdgeIndex> keep) const;

  void set_label(EdgeIndex e, TimeLabel label);

  bool valid_vertex(Vertex x) const { return x >= 0 && x < num_vertices_; }

  friend bool operator==(const TemporalGraph& a, const TemporalGraph& b);

 private:
  int num_vertices_;
  std::int64_t scale_;
  std::vector<TemporalEdge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
  std::map<std::tuple<Vertex, Vertex, std::int64_t>, EdgeIndex> index_;
};

struct TemporalPath {
  std::vector<Vertex> vertices;
  std::vector<EdgeIndex> edge_indices;
};

// Checks adjacency of consecutive vertices and the label order for `mode`.
bool is_valid_path(const TemporalGraph& g, const TemporalPath& path, PathMode mode);

// A subset of temporal-edge indices with its total weight.
struct Solution {
  std::vector<EdgeIndex> edge_indices;  // sorted, unique
  Weight cost = 0;

  // Sorts, deduplicates and recomputes the cost. Throws InputError on an
  // index outside the graph.
  static Solution from_indices(const TemporalGraph& g, std::vector<EdgeIndex> indices);

  bool contains(EdgeIndex e) const;
};

// Union of two solutions on the same graph.
Solution merge(const TemporalGraph& g, const Solution& a, const Solution& b);

struct GraphStats {
  int num_vertices = 0;
  int num_edges = 0;  // M, temporal edges
  int distinct_label_count = 0;
  int max_degree = 0;  // of the underlying graph
  Weight total_weight = 0;
};

GraphStats stats(const TemporalGraph& g);

}  // namespace tempconn
