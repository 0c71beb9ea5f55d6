#include "tempconn/temporal_graph.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tempconn/error.hpp"

namespace tempconn {

const char* to_string(PathMode mode) {
  return mode == PathMode::Strict ? "strict" : "nonstrict";
}

PathMode parse_path_mode(const std::string& text) {
  if (text == "strict") return PathMode::Strict;
  if (text == "nonstrict" || text == "non-strict") return PathMode::NonStrict;
  throw InputError("unknown path mode '" + text + "' (expected strict|nonstrict)");
}

TemporalGraph::TemporalGraph(int num_vertices, std::int64_t scale)
    : num_vertices_(num_vertices), scale_(scale) {
  if (num_vertices < 0) throw InputError("negative vertex count");
  if (scale <= 0) throw InputError("label scale must be positive");
  incident_.resize(static_cast<std::size_t>(num_vertices));
}

EdgeIndex TemporalGraph::add_edge(Vertex u, Vertex v, TimeLabel label, Weight weight) {
  if (!valid_vertex(u) || !valid_vertex(v)) {
    throw InputError("edge endpoint out of range: (" + std::to_string(u) + ", " +
                     std::to_string(v) + ") with n = " + std::to_string(num_vertices_));
  }
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  if (label.value < 0) throw InputError("negative time label");
  if (weight < 0) throw InputError("negative edge weight");
  if (u > v) std::swap(u, v);
  auto key = std::make_tuple(u, v, label.value);
  if (index_.contains(key)) {
    throw InputError("duplicate temporal edge (" + std::to_string(u) + ", " + std::to_string(v) +
                     ", " + std::to_string(label.value) + ")");
  }
  const auto e = static_cast<EdgeIndex>(edges_.size());
  edges_.push_back({u, v, label, weight});
  index_.emplace(key, e);
  incident_[static_cast<std::size_t>(u)].push_back(e);
  incident_[static_cast<std::size_t>(v)].push_back(e);
  return e;
}

TimeLabel TemporalGraph::lifetime() const {
  TimeLabel best{0};
  for (const auto& e : edges_) best = std::max(best, e.label);
  return best;
}

std::optional<EdgeIndex> TemporalGraph::find_edge(Vertex u, Vertex v, TimeLabel label) const {
  if (u > v) std::swap(u, v);
  auto it = index_.find(std::make_tuple(u, v, label.value));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TimeLabel> TemporalGraph::labels_of(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  std::vector<TimeLabel> out;
  for (auto it = index_.lower_bound(std::make_tuple(u, v, INT64_MIN));
       it != index_.end() && std::get<0>(it->first) == u && std::get<1>(it->first) == v; ++it) {
    out.push_back(TimeLabel{std::get<2>(it->first)});
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> TemporalGraph::underlying_edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const auto& [key, e] : index_) {
    std::pair<Vertex, Vertex> p{std::get<0>(key), std::get<1>(key)};
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  return out;
}

bool TemporalGraph::is_simple() const {
  return underlying_edges().size() == edges_.size();
}

TemporalGraph TemporalGraph::restricted_to(std::span<const EdgeIndex> keep) const {
  std::vector<EdgeIndex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  TemporalGraph out(num_vertices_, scale_);
  for (EdgeIndex e : sorted) {
    const auto& te = edge(e);
    out.add_edge(te.u, te.v, te.label, te.weight);
  }
  return out;
}

void TemporalGraph::set_label(EdgeIndex e, TimeLabel label) {
  auto& te = edges_.at(static_cast<std::size_t>(e));
  if (label == te.label) return;
  if (label.value < 0) throw InputError("negative time label");
  auto new_key = std::make_tuple(te.u, te.v, label.value);
  if (index_.contains(new_key)) throw InputError("relabel would duplicate a temporal edge");
  index_.erase(std::make_tuple(te.u, te.v, te.label.value));
  index_.emplace(new_key, e);
  te.label = label;
}

bool operator==(const TemporalGraph& a, const TemporalGraph& b) {
  if (a.num_vertices_ != b.num_vertices_ || a.scale_ != b.scale_ ||
      a.edges_.size() != b.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.label != y.label || x.weight != y.weight) return false;
  }
  return true;
}

bool is_valid_path(const TemporalGraph& g, const TemporalPath& path, PathMode mode) {
  if (path.vertices.empty()) return false;
  if (path.vertices.size() != path.edge_indices.size() + 1) return false;
  std::set<Vertex> seen;
  for (Vertex x : path.vertices) {
    if (!g.valid_vertex(x) || !seen.insert(x).second) return false;
  }
  std::optional<TimeLabel> last;
  for (std::size_t i = 0; i < path.edge_indices.size(); ++i) {
    EdgeIndex e = path.edge_indices[i];
    if (e < 0 || e >= g.num_edges()) return false;
    const auto& te = g.edge(e);
    if (!te.touches(path.vertices[i]) || te.other(path.vertices[i]) != path.vertices[i + 1]) {
      return false;
    }
    if (last && !can_follow(*last, te.label, mode)) return false;
    last = te.label;
  }
  return true;
}

Solution Solution::from_indices(const TemporalGraph& g, std::vector<EdgeIndex> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  Solution s;
  for (EdgeIndex e : indices) {
    if (e < 0 || e >= g.num_edges()) {
      throw InputError("solution references edge " + std::to_string(e) + " but graph has " +
                       std::to_string(g.num_edges()) + " edges");
    }
    s.cost += g.edge(e).weight;
  }
  s.edge_indices = std::move(indices);
  return s;
}

bool Solution::contains(EdgeIndex e) const {
  return std::binary_search(edge_indices.begin(), edge_indices.end(), e);
}

Solution merge(const TemporalGraph& g, const Solution& a, const Solution& b) {
  std::vector<EdgeIndex> all = a.edge_indices;
  all.insert(all.end(), b.edge_indices.begin(), b.edge_indices.end());
  return Solution::from_indices(g, std::move(all));
}

GraphStats stats(const TemporalGraph& g) {
  GraphStats s;
  s.num_vertices = g.num_vertices();
  s.num_edges = g.num_edges();
  std::set<std::int64_t> labels;
  for (const auto& e : g.edges()) {
    labels.insert(e.label.value);
    s.total_weight += e.weight;
  }
  s.distinct_label_count = static_cast<int>(labels.size());
  std::vector<int> degree(static_cast<std::size_t>(g.num_vertices()), 0);
  for (auto [u, v] : g.underlying_edges()) {
    ++degree[static_cast<std::size_t>(u)];
    ++degree[static_cast<std::size_t>(v)];
  }
  for (int d : degree) s.max_degree = std::max(s.max_degree, d);
  return s;
}

}  // namespace tempconn
