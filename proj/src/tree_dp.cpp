#include "tempconn/tree_dp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "tempconn/error.hpp"

namespace tempconn {

namespace {

constexpr std::int64_t kMinusInf = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kPlusInf = std::numeric_limits<std::int64_t>::max();
constexpr Weight kNoCost = std::numeric_limits<Weight>::max();

// g(u, j, t_in, t_out): cheapest way to serve the first j children of u so
// that u reaches every vertex below them using labels after t_in, and every
// such vertex reaches u using labels before t_out ("after"/"before" being
// >=/<= or >/< by mode).
class TreeDp {
 public:
  TreeDp(const TemporalGraph& g, PathMode mode) : g_(g), mode_(mode) {
    const int n = g.num_vertices();
    children_.resize(static_cast<std::size_t>(n));
    child_edges_.resize(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n), -2);
    std::vector<Vertex> stack{0};
    parent[0] = -1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      std::vector<Vertex> kids;
      for (EdgeIndex e : g.incident(u)) {
        Vertex v = g.edge(e).other(u);
        if (parent[static_cast<std::size_t>(v)] != -2) continue;
        parent[static_cast<std::size_t>(v)] = u;
        kids.push_back(v);
      }
      std::sort(kids.begin(), kids.end());
      for (Vertex v : kids) {
        children_[static_cast<std::size_t>(u)].push_back(v);
        std::vector<EdgeIndex> labels;
        for (TimeLabel t : g.labels_of(u, v)) labels.push_back(*g.find_edge(u, v, t));
        child_edges_[static_cast<std::size_t>(u)].push_back(std::move(labels));
        stack.push_back(v);
      }
    }
  }

  Weight value(Vertex u, int j, std::int64_t t_in, std::int64_t t_out) {
    if (j == 0) return 0;
    auto key = std::make_tuple(u, j, t_in, t_out);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.cost;
    Entry best;
    const Vertex c = children_[static_cast<std::size_t>(u)][static_cast<std::size_t>(j - 1)];
    const auto& edges = child_edges_[static_cast<std::size_t>(u)][static_cast<std::size_t>(j - 1)];
    // Labels are ascending, so the first optimum found is the
    // lexicographically smallest (t'_in, t'_out).
    for (EdgeIndex down : edges) {
      const std::int64_t ti = g_.edge(down).label.value;
      if (!after(t_in, ti)) continue;
      for (EdgeIndex up : edges) {
        const std::int64_t to = g_.edge(up).label.value;
        if (!after(to, t_out)) continue;
        Weight rest = value(u, j - 1, std::max(t_in, to), std::min(t_out, ti));
        if (rest == kNoCost) continue;
        Weight below = value(c, static_cast<int>(children_[static_cast<std::size_t>(c)].size()), ti, to);
        if (below == kNoCost) continue;
        Weight q = g_.edge(down).weight + (down == up ? 0 : g_.edge(up).weight);
        Weight total = rest + below + q;
        if (total < best.cost) best = Entry{total, down, up};
      }
    }
    memo_.emplace(key, best);
    return best.cost;
  }

  void collect(Vertex u, int j, std::int64_t t_in, std::int64_t t_out, std::vector<EdgeIndex>& out) {
    if (j == 0) return;
    value(u, j, t_in, t_out);
    const Entry& e = memo_.at(std::make_tuple(u, j, t_in, t_out));
    const std::int64_t ti = g_.edge(e.down).label.value;
    const std::int64_t to = g_.edge(e.up).label.value;
    out.push_back(e.down);
    out.push_back(e.up);
    const Vertex c = children_[static_cast<std::size_t>(u)][static_cast<std::size_t>(j - 1)];
    collect(u, j - 1, std::max(t_in, to), std::min(t_out, ti), out);
    collect(c, static_cast<int>(children_[static_cast<std::size_t>(c)].size()), ti, to, out);
  }

  int child_count(Vertex u) const { return static_cast<int>(children_[static_cast<std::size_t>(u)].size()); }

 private:
  struct Entry {
    Weight cost = kNoCost;
    EdgeIndex down = -1;
    EdgeIndex up = -1;
  };

  // Whether label b may follow label a.
  bool after(std::int64_t a, std::int64_t b) const {
    return mode_ == PathMode::Strict ? a < b : a <= b;
  }

  const TemporalGraph& g_;
  PathMode mode_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<std::vector<std::vector<EdgeIndex>>> child_edges_;
  std::map<std::tuple<Vertex, int, std::int64_t, std::int64_t>, Entry> memo_;
};

}  // namespace

bool underlying_is_tree(const TemporalGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) return false;
  auto edges = g.underlying_edges();
  if (static_cast<int>(edges.size()) != n - 1) return false;
  std::vector<int> comp(static_cast<std::size_t>(n));
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [u, v] : edges) {
    int a = find(u), b = find(v);
    if (a == b) return false;
    comp[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

Solution solve_tree_tc(const TemporalGraph& g, PathMode mode) {
  if (!underlying_is_tree(g)) throw InputError("tree DP needs an underlying tree");
  TreeDp dp(g, mode);
  if (dp.value(0, dp.child_count(0), kMinusInf, kPlusInf) == kNoCost) {
    throw InfeasibleError("temporal tree is not temporally connected");
  }
  std::vector<EdgeIndex> edges;
  dp.collect(0, dp.child_count(0), kMinusInf, kPlusInf, edges);
  return Solution::from_indices(g, std::move(edges));
}

}  // namespace tempconn
