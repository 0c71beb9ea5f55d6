#include "tempconn/treewidth_dp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

namespace tempconn {

namespace {

constexpr Weight kNoCost = std::numeric_limits<Weight>::max();

// Per bag position: whether the vertex's parent edge is owed by this
// subtree, its time index (0 is reserved for the root), and its rank among
// bag vertices with the same time.
struct Slot {
  int owed = 0;
  int time = 0;
  int rank = 0;
};

using State = std::vector<Slot>;

class TreewidthDp {
 public:
  TreewidthDp(const TemporalGraph& g, Vertex r, const TreeDecomposition& td, PathMode mode)
      : g_(g), r_(r), td_(td), mode_(mode), nodes_(classify_nice(td)), kids_(td.children()) {
    std::set<std::int64_t> all;
    for (const auto& e : g.edges()) all.insert(e.label.value);
    labels_.push_back(std::numeric_limits<std::int64_t>::min());
    labels_.insert(labels_.end(), all.begin(), all.end());
    times_of_.resize(static_cast<std::size_t>(g.num_vertices()));
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      std::set<int> ts;
      for (EdgeIndex e : g.incident(v)) ts.insert(time_index(g.edge(e).label.value));
      times_of_[static_cast<std::size_t>(v)].assign(ts.begin(), ts.end());
    }
    memo_.resize(td.bags.size());
  }

  Weight solve() { return value(td_.root_bag, State{Slot{0, 0, 0}}); }

  void collect(int node, const State& s, std::vector<EdgeIndex>& out) {
    value(node, s);
    const Entry& entry = memo_[static_cast<std::size_t>(node)].at(encode(s));
    const auto& bag = td_.bags[static_cast<std::size_t>(node)];
    const NiceNode nn = nodes_[static_cast<std::size_t>(node)];
    const auto& ch = kids_[static_cast<std::size_t>(node)];
    switch (nn.kind) {
      case BagKind::Leaf:
        return;
      case BagKind::Introduce:
        collect(ch[0], drop(s, position(bag, nn.vertex)), out);
        return;
      case BagKind::Join: {
        auto [left, right] = split(s, entry.mask);
        collect(ch[0], left, out);
        collect(ch[1], right, out);
        return;
      }
      case BagKind::Forget: {
        const auto& child_bag = td_.bags[static_cast<std::size_t>(ch[0])];
        const int pv = position(child_bag, nn.vertex);
        State c = insert(s, pv, entry.time, entry.rank);
        apply_forget_choice(c, pv, entry, child_bag, &out);
        collect(ch[0], c, out);
        return;
      }
    }
  }

 private:
  struct Entry {
    Weight cost = kNoCost;
    int time = 0;
    int rank = 0;
    int parent_pos = -1;  // bag position of v's parent, -1 when owed below
    std::uint32_t mask = 0;  // forget: owed slots served by v; join: slots sent left
  };

  int time_index(std::int64_t label) const {
    return static_cast<int>(std::lower_bound(labels_.begin(), labels_.end(), label) - labels_.begin());
  }

  static int position(const std::vector<Vertex>& bag, Vertex v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
  }

  static std::vector<int> encode(const State& s) {
    std::vector<int> key;
    key.reserve(s.size() * 3);
    for (const auto& x : s) {
      key.push_back(x.owed);
      key.push_back(x.time);
      key.push_back(x.rank);
    }
    return key;
  }

  bool precedes(const Slot& a, const Slot& b) const {
    if (a.time != b.time) return a.time < b.time;
    return mode_ == PathMode::NonStrict && a.rank < b.rank;
  }

  // Removes position p and closes the rank gap it leaves.
  static State drop(const State& s, int p) {
    State out;
    const Slot gone = s[static_cast<std::size_t>(p)];
    for (int i = 0; i < static_cast<int>(s.size()); ++i) {
      if (i == p) continue;
      Slot x = s[static_cast<std::size_t>(i)];
      if (x.time == gone.time && x.rank > gone.rank) --x.rank;
      out.push_back(x);
    }
    return out;
  }

  // Inserts a fresh slot at position p with the given time and rank, making
  // room in the rank order.
  static State insert(const State& s, int p, int time, int rank) {
    State out;
    for (int i = 0; i <= static_cast<int>(s.size()); ++i) {
      if (i == p) out.push_back(Slot{0, time, rank});
      if (i == static_cast<int>(s.size())) break;
      Slot x = s[static_cast<std::size_t>(i)];
      if (x.time == time && x.rank >= rank) ++x.rank;
      out.push_back(x);
    }
    return out;
  }

  static std::pair<State, State> split(const State& s, std::uint32_t left_mask) {
    State left = s, right = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].owed) continue;
      if (left_mask >> i & 1u) {
        right[i].owed = 0;
      } else {
        left[i].owed = 0;
      }
    }
    return {left, right};
  }

  std::optional<EdgeIndex> parent_edge(Vertex parent, Vertex child, int time) const {
    if (time == 0) return std::nullopt;
    return g_.find_edge(parent, child, TimeLabel{labels_[static_cast<std::size_t>(time)]});
  }

  // Applies a forget choice to the child state `c` (v at position pv):
  // marks which owed parents remain owed below and returns the edge cost
  // paid at this node. Edges are appended to `out` when given.
  Weight apply_forget_choice(State& c, int pv, const Entry& choice, const std::vector<Vertex>& child_bag,
                             std::vector<EdgeIndex>* out) const {
    Weight cost = 0;
    const Vertex v = child_bag[static_cast<std::size_t>(pv)];
    auto& sv = c[static_cast<std::size_t>(pv)];
    if (choice.parent_pos < 0) {
      sv.owed = 1;
    } else {
      Vertex u = child_bag[static_cast<std::size_t>(choice.parent_pos)];
      EdgeIndex e = *parent_edge(u, v, sv.time);
      cost += g_.edge(e).weight;
      if (out) out->push_back(e);
    }
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
      if (i == pv || !(choice.mask >> i & 1u)) continue;
      auto& su = c[static_cast<std::size_t>(i)];
      EdgeIndex e = *parent_edge(v, child_bag[static_cast<std::size_t>(i)], su.time);
      cost += g_.edge(e).weight;
      su.owed = 0;
      if (out) out->push_back(e);
    }
    return cost;
  }

  Weight value(int node, const State& s) {
    auto& table = memo_[static_cast<std::size_t>(node)];
    auto key = encode(s);
    if (auto it = table.find(key); it != table.end()) return it->second.cost;
    Entry best;
    const auto& bag = td_.bags[static_cast<std::size_t>(node)];
    const NiceNode nn = nodes_[static_cast<std::size_t>(node)];
    const auto& ch = kids_[static_cast<std::size_t>(node)];
    switch (nn.kind) {
      case BagKind::Leaf:
        best.cost = 0;
        break;
      case BagKind::Introduce: {
        const int p = position(bag, nn.vertex);
        if (!s[static_cast<std::size_t>(p)].owed) best.cost = value(ch[0], drop(s, p));
        break;
      }
      case BagKind::Join: {
        std::vector<int> owed;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i].owed) owed.push_back(static_cast<int>(i));
        }
        for (std::uint32_t sub = 0; sub < (1u << owed.size()); ++sub) {
          std::uint32_t mask = 0;
          for (std::size_t b = 0; b < owed.size(); ++b) {
            if (sub >> b & 1u) mask |= 1u << owed[b];
          }
          auto [left, right] = split(s, mask);
          Weight a = value(ch[0], left);
          if (a == kNoCost) continue;
          Weight b = value(ch[1], right);
          if (b == kNoCost) continue;
          if (a + b < best.cost) {
            best.cost = a + b;
            best.mask = mask;
          }
        }
        break;
      }
      case BagKind::Forget:
        best = forget(node, s, nn.vertex, ch[0]);
        break;
    }
    table.emplace(std::move(key), best);
    return best.cost;
  }

  Entry forget(int, const State& s, Vertex v, int child) {
    Entry best;
    const auto& child_bag = td_.bags[static_cast<std::size_t>(child)];
    const int pv = position(child_bag, v);
    for (int time : times_of_[static_cast<std::size_t>(v)]) {
      int group = 0;
      for (const auto& x : s) group += x.time == time ? 1 : 0;
      const int ranks = mode_ == PathMode::NonStrict ? group + 1 : 1;
      for (int rank = 0; rank < ranks; ++rank) {
        State base = insert(s, pv, time, rank);
        const Slot& sv = base[static_cast<std::size_t>(pv)];
        // Parent options for v: owed below, or a bag vertex earlier in order.
        std::vector<int> parents{-1};
        for (int i = 0; i < static_cast<int>(base.size()); ++i) {
          if (i == pv) continue;
          if (precedes(base[static_cast<std::size_t>(i)], sv) &&
              parent_edge(child_bag[static_cast<std::size_t>(i)], v, time)) {
            parents.push_back(i);
          }
        }
        // Owed bag vertices that v could serve as parent.
        std::vector<int> servable;
        for (int i = 0; i < static_cast<int>(base.size()); ++i) {
          if (i == pv || !base[static_cast<std::size_t>(i)].owed) continue;
          const Slot& su = base[static_cast<std::size_t>(i)];
          if (precedes(sv, su) && parent_edge(v, child_bag[static_cast<std::size_t>(i)], su.time)) {
            servable.push_back(i);
          }
        }
        for (int parent : parents) {
          for (std::uint32_t sub = 0; sub < (1u << servable.size()); ++sub) {
            Entry choice{0, time, rank, parent, 0};
            for (std::size_t b = 0; b < servable.size(); ++b) {
              if (sub >> b & 1u) choice.mask |= 1u << servable[b];
            }
            State c = base;
            Weight here = apply_forget_choice(c, pv, choice, child_bag, nullptr);
            Weight below = value(child, c);
            if (below == kNoCost) continue;
            if (here + below < best.cost) {
              best = choice;
              best.cost = here + below;
            }
          }
        }
      }
    }
    return best;
  }

  const TemporalGraph& g_;
  Vertex r_;
  const TreeDecomposition& td_;
  PathMode mode_;
  std::vector<NiceNode> nodes_;
  std::vector<std::vector<int>> kids_;
  std::vector<std::int64_t> labels_;
  std::vector<std::vector<int>> times_of_;
  std::vector<std::map<std::vector<int>, Entry>> memo_;
};

}  // namespace

Solution solve_rtc_treewidth(const TemporalGraph& g, Vertex r, const TreeDecomposition& td, PathMode mode,
                             int width_cap) {
  if (!g.valid_vertex(r)) throw InputError("root out of range");
  validate_decomposition(g, td);
  if (td.width() > width_cap) {
    throw RefusalError("tree decomposition width " + std::to_string(td.width()) + " exceeds cap " +
                       std::to_string(width_cap));
  }
  const bool rooted = td.bags[static_cast<std::size_t>(td.root_bag)] == std::vector<Vertex>{r};
  TreeDecomposition nice = td.nice && rooted ? td : to_nice(td, r);
  if (g.num_vertices() == 1) return Solution{};
  TreewidthDp dp(g, r, nice, mode);
  if (dp.solve() == kNoCost) throw InfeasibleError("root cannot reach every vertex");
  std::vector<EdgeIndex> edges;
  dp.collect(nice.root_bag, State{Slot{0, 0, 0}}, edges);
  Solution sol = Solution::from_indices(g, std::move(edges));
  if (!feasible(g, sol, mode, r)) throw InternalError("treewidth DP produced an infeasible solution");
  return sol;
}

Solution solve_rtc_treewidth(const TemporalGraph& g, Vertex r, PathMode mode, int width_cap) {
  return solve_rtc_treewidth(g, r, make_nice_decomposition(g, r, width_cap), mode, width_cap);
}

Solution tc_via_rooted_union(const TemporalGraph& g, PathMode mode, const RootedSolver& rooted) {
  std::vector<EdgeIndex> all;
  for (Vertex r = 0; r < g.num_vertices(); ++r) {
    Solution s = rooted(g, r, mode);
    all.insert(all.end(), s.edge_indices.begin(), s.edge_indices.end());
  }
  return Solution::from_indices(g, std::move(all));
}

}  // namespace tempconn
