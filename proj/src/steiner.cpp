#include "tempconn/steiner.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include "tempconn/error.hpp"

namespace tempconn {

namespace {

constexpr Weight kNoCost = std::numeric_limits<Weight>::max();

std::vector<bool> reach_over(const Digraph& g, const std::vector<bool>& enabled, Node source) {
  std::vector<bool> seen(static_cast<std::size_t>(g.num_nodes()), false);
  std::vector<Node> stack{source};
  seen[static_cast<std::size_t>(source)] = true;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    for (ArcIndex a : g.out_arcs(x)) {
      if (!enabled[static_cast<std::size_t>(a)]) continue;
      Node y = g.arc(a).to;
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

std::vector<bool> mask_of(const Digraph& g, const SteinerSolution& sol) {
  std::vector<bool> enabled(static_cast<std::size_t>(g.num_arcs()), false);
  for (ArcIndex a : sol.arc_indices) enabled.at(static_cast<std::size_t>(a)) = true;
  return enabled;
}

bool demands_met(const DsfInstance& inst, const std::vector<bool>& enabled) {
  std::map<Node, std::vector<bool>> cache;
  for (auto [s, t] : inst.demands) {
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, reach_over(inst.graph, enabled, s)).first;
    if (!it->second[static_cast<std::size_t>(t)]) return false;
  }
  return true;
}

// Single-source shortest paths with the arc used to enter each node.
struct ShortestPaths {
  std::vector<Weight> dist;
  std::vector<ArcIndex> via;
};

ShortestPaths dijkstra(const Digraph& g, Node source) {
  ShortestPaths sp;
  sp.dist.assign(static_cast<std::size_t>(g.num_nodes()), kNoCost);
  sp.via.assign(static_cast<std::size_t>(g.num_nodes()), -1);
  using Item = std::pair<Weight, Node>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  sp.dist[static_cast<std::size_t>(source)] = 0;
  pq.emplace(0, source);
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d != sp.dist[static_cast<std::size_t>(x)]) continue;
    for (ArcIndex a : g.out_arcs(x)) {
      const auto& arc = g.arc(a);
      Weight nd = d + arc.weight;
      auto& cur = sp.dist[static_cast<std::size_t>(arc.to)];
      if (nd < cur) {
        cur = nd;
        sp.via[static_cast<std::size_t>(arc.to)] = a;
        pq.emplace(nd, arc.to);
      }
    }
  }
  return sp;
}

}  // namespace

Digraph::Digraph(int num_nodes) : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw InputError("negative node count");
  out_.resize(static_cast<std::size_t>(num_nodes));
}

ArcIndex Digraph::add_arc(Node from, Node to, Weight weight) {
  if (!valid_node(from) || !valid_node(to)) {
    throw InputError("arc endpoint out of range: (" + std::to_string(from) + ", " + std::to_string(to) + ")");
  }
  if (from == to) throw InputError("self-loop arc at node " + std::to_string(from));
  if (weight < 0) throw InputError("negative arc weight");
  if (index_.contains({from, to})) {
    throw InputError("duplicate arc (" + std::to_string(from) + ", " + std::to_string(to) + ")");
  }
  const auto a = static_cast<ArcIndex>(arcs_.size());
  arcs_.push_back({from, to, weight});
  out_[static_cast<std::size_t>(from)].push_back(a);
  index_.emplace(std::make_pair(from, to), a);
  return a;
}

std::optional<ArcIndex> Digraph::find_arc(Node from, Node to) const {
  auto it = index_.find({from, to});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SteinerSolution SteinerSolution::from_indices(const Digraph& g, std::vector<ArcIndex> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  SteinerSolution s;
  for (ArcIndex a : indices) {
    if (a < 0 || a >= g.num_arcs()) throw InputError("solution references arc " + std::to_string(a) + " outside the graph");
    s.cost += g.arc(a).weight;
  }
  s.arc_indices = std::move(indices);
  return s;
}

void validate(const DstInstance& inst) {
  if (!inst.graph.valid_node(inst.root)) throw InputError("DST root out of range");
  std::set<Node> seen;
  for (Node t : inst.terminals) {
    if (!inst.graph.valid_node(t)) throw InputError("DST terminal out of range");
    if (!seen.insert(t).second) throw InputError("duplicate DST terminal " + std::to_string(t));
  }
}

void validate(const DsfInstance& inst) {
  std::set<std::pair<Node, Node>> seen;
  for (auto d : inst.demands) {
    if (!inst.graph.valid_node(d.first) || !inst.graph.valid_node(d.second)) {
      throw InputError("DSF demand endpoint out of range");
    }
    if (!seen.insert(d).second) {
      throw InputError("duplicate DSF demand (" + std::to_string(d.first) + ", " + std::to_string(d.second) + ")");
    }
  }
}

std::vector<bool> reachable(const Digraph& g, const SteinerSolution& sol, Node source) {
  return reach_over(g, mask_of(g, sol), source);
}

bool dst_feasible(const DstInstance& inst, const SteinerSolution& sol) {
  auto seen = reachable(inst.graph, sol, inst.root);
  return std::all_of(inst.terminals.begin(), inst.terminals.end(),
                     [&](Node t) { return seen[static_cast<std::size_t>(t)]; });
}

bool dsf_feasible(const DsfInstance& inst, const SteinerSolution& sol) {
  return demands_met(inst, mask_of(inst.graph, sol));
}

SteinerSolution dst_exact(const DstInstance& inst, int terminal_cap) {
  validate(inst);
  const Digraph& g = inst.graph;
  std::vector<Node> terms;
  for (Node t : inst.terminals) {
    if (t != inst.root) terms.push_back(t);
  }
  const int k = static_cast<int>(terms.size());
  if (k > terminal_cap) {
    throw RefusalError("exact DST refuses " + std::to_string(k) + " terminals (cap " + std::to_string(terminal_cap) + ")");
  }
  if (k == 0) return SteinerSolution{};
  {
    auto from_root = dijkstra(g, inst.root);
    for (Node t : terms) {
      if (from_root.dist[static_cast<std::size_t>(t)] == kNoCost) {
        throw InfeasibleError("terminal " + std::to_string(t) + " is unreachable from the root");
      }
    }
  }
  const int n = g.num_nodes();
  const std::uint32_t full = (1u << k) - 1;
  // best[mask][v]: cheapest subgraph in which v reaches every terminal in mask.
  struct Cell {
    Weight cost = kNoCost;
    std::uint32_t split = 0;  // merge: one side of the split
    ArcIndex arc = -1;        // relaxation: first arc out of v
  };
  std::vector<std::vector<Cell>> best(static_cast<std::size_t>(full) + 1, std::vector<Cell>(static_cast<std::size_t>(n)));
  std::vector<std::vector<ArcIndex>> in_arcs(static_cast<std::size_t>(n));
  for (ArcIndex a = 0; a < g.num_arcs(); ++a) in_arcs[static_cast<std::size_t>(g.arc(a).to)].push_back(a);

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    auto& row = best[mask];
    if ((mask & (mask - 1)) == 0) {
      row[static_cast<std::size_t>(terms[static_cast<std::size_t>(__builtin_ctz(mask))])].cost = 0;
    } else {
      const std::uint32_t low = mask & (~mask + 1);
      for (Node v = 0; v < n; ++v) {
        for (std::uint32_t sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) {
          if (!(sub & low)) continue;
          Weight a = best[sub][static_cast<std::size_t>(v)].cost;
          Weight b = best[mask ^ sub][static_cast<std::size_t>(v)].cost;
          if (a == kNoCost || b == kNoCost) continue;
          if (a + b < row[static_cast<std::size_t>(v)].cost) row[static_cast<std::size_t>(v)] = Cell{a + b, sub, -1};
        }
      }
    }
    using Item = std::pair<Weight, Node>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Node v = 0; v < n; ++v) {
      if (row[static_cast<std::size_t>(v)].cost != kNoCost) pq.emplace(row[static_cast<std::size_t>(v)].cost, v);
    }
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d != row[static_cast<std::size_t>(u)].cost) continue;
      for (ArcIndex a : in_arcs[static_cast<std::size_t>(u)]) {
        Node v = g.arc(a).from;
        Weight nd = d + g.arc(a).weight;
        if (nd < row[static_cast<std::size_t>(v)].cost) {
          row[static_cast<std::size_t>(v)] = Cell{nd, 0, a};
          pq.emplace(nd, v);
        }
      }
    }
  }

  std::vector<ArcIndex> arcs;
  std::function<void(std::uint32_t, Node)> collect = [&](std::uint32_t mask, Node v) {
    const Cell& c = best[mask][static_cast<std::size_t>(v)];
    if (c.arc >= 0) {
      arcs.push_back(c.arc);
      collect(mask, g.arc(c.arc).to);
    } else if (c.split != 0) {
      collect(c.split, v);
      collect(mask ^ c.split, v);
    }
  };
  if (best[full][static_cast<std::size_t>(inst.root)].cost == kNoCost) {
    throw InternalError("exact DST found no tree although all terminals are reachable");
  }
  collect(full, inst.root);
  return SteinerSolution::from_indices(g, std::move(arcs));
}

namespace {

class RecursiveGreedy {
 public:
  explicit RecursiveGreedy(const Digraph& g) : g_(g) {
    for (Node v = 0; v < g.num_nodes(); ++v) paths_.push_back(dijkstra(g, v));
  }

  struct Tree {
    Weight cost = 0;
    std::vector<std::pair<Node, Node>> closure_arcs;
    std::vector<Node> covered;
  };

  Weight dist(Node a, Node b) const { return paths_[static_cast<std::size_t>(a)].dist[static_cast<std::size_t>(b)]; }

  Tree build(int level, int k, Node r, std::vector<Node> pool) const {
    Tree out;
    if (level <= 1) {
      std::vector<Node> order;
      for (Node x : pool) {
        if (dist(r, x) != kNoCost) order.push_back(x);
      }
      std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return dist(r, a) < dist(r, b); });
      for (int i = 0; i < k && i < static_cast<int>(order.size()); ++i) {
        Node x = order[static_cast<std::size_t>(i)];
        out.cost += dist(r, x);
        if (x != r) out.closure_arcs.emplace_back(r, x);
        out.covered.push_back(x);
      }
      return out;
    }
    int need = k;
    while (need > 0 && !pool.empty()) {
      std::optional<Tree> pick;
      for (Node v = 0; v < g_.num_nodes(); ++v) {
        const Weight head = dist(r, v);
        if (head == kNoCost) continue;
        for (int kk = 1; kk <= need; ++kk) {
          Tree sub = build(level - 1, kk, v, pool);
          if (sub.covered.empty()) continue;
          sub.cost += head;
          if (v != r) sub.closure_arcs.emplace_back(r, v);
          // Lower cost per covered terminal wins; ties keep the earlier candidate.
          if (!pick || sub.cost * static_cast<Weight>(pick->covered.size()) <
                           pick->cost * static_cast<Weight>(sub.covered.size())) {
            pick = std::move(sub);
          }
        }
      }
      if (!pick) break;
      out.cost += pick->cost;
      out.closure_arcs.insert(out.closure_arcs.end(), pick->closure_arcs.begin(), pick->closure_arcs.end());
      for (Node x : pick->covered) {
        out.covered.push_back(x);
        pool.erase(std::find(pool.begin(), pool.end(), x));
      }
      need -= static_cast<int>(pick->covered.size());
    }
    return out;
  }

  std::vector<ArcIndex> expand(const std::vector<std::pair<Node, Node>>& closure_arcs) const {
    std::vector<ArcIndex> out;
    for (auto [a, b] : closure_arcs) {
      const auto& sp = paths_[static_cast<std::size_t>(a)];
      for (Node x = b; x != a;) {
        ArcIndex arc = sp.via[static_cast<std::size_t>(x)];
        out.push_back(arc);
        x = g_.arc(arc).from;
      }
    }
    return out;
  }

 private:
  const Digraph& g_;
  std::vector<ShortestPaths> paths_;
};

}  // namespace

SteinerSolution dst_greedy(const DstInstance& inst, int depth) {
  validate(inst);
  if (depth < 1) throw InputError("greedy depth must be at least 1");
  std::vector<Node> terms;
  for (Node t : inst.terminals) {
    if (t != inst.root) terms.push_back(t);
  }
  if (terms.empty()) return SteinerSolution{};
  RecursiveGreedy greedy(inst.graph);
  for (Node t : terms) {
    if (greedy.dist(inst.root, t) == kNoCost) {
      throw InfeasibleError("terminal " + std::to_string(t) + " is unreachable from the root");
    }
  }
  auto tree = greedy.build(depth, static_cast<int>(terms.size()), inst.root, terms);
  auto sol = SteinerSolution::from_indices(inst.graph, greedy.expand(tree.closure_arcs));
  if (!dst_feasible(inst, sol)) throw InternalError("greedy DST output misses a terminal");
  return sol;
}

namespace {

class ForestSearch {
 public:
  explicit ForestSearch(const DsfInstance& inst) : inst_(inst) {}

  SteinerSolution run() {
    const Digraph& g = inst_.graph;
    const auto m = static_cast<std::size_t>(g.num_arcs());
    chosen_.assign(m, false);
    for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
      if (g.arc(a).weight == 0) {
        chosen_[static_cast<std::size_t>(a)] = true;
      } else {
        branch_.push_back(a);
      }
    }
    std::stable_sort(branch_.begin(), branch_.end(),
                     [&](ArcIndex a, ArcIndex b) { return g.arc(a).weight > g.arc(b).weight; });
    std::vector<bool> all(m, true);
    if (!demands_met(inst_, all)) throw InfeasibleError("some DSF demand cannot be met");
    best_ = all;
    best_cost_ = 0;
    for (const auto& a : g.arcs()) best_cost_ += a.weight;
    optimistic_ = all;
    search(0, 0);
    for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
      auto idx = static_cast<std::size_t>(a);
      if (g.arc(a).weight != 0 || !best_[idx]) continue;
      best_[idx] = false;
      if (!demands_met(inst_, best_)) best_[idx] = true;
    }
    std::vector<ArcIndex> out;
    for (ArcIndex a = 0; a < g.num_arcs(); ++a) {
      if (best_[static_cast<std::size_t>(a)]) out.push_back(a);
    }
    return SteinerSolution::from_indices(g, std::move(out));
  }

 private:
  void search(std::size_t depth, Weight cost) {
    if (cost >= best_cost_) return;
    if (demands_met(inst_, chosen_)) {
      best_cost_ = cost;
      best_ = chosen_;
      return;
    }
    if (depth == branch_.size()) return;
    const auto a = static_cast<std::size_t>(branch_[depth]);
    optimistic_[a] = false;
    if (demands_met(inst_, optimistic_)) search(depth + 1, cost);
    optimistic_[a] = true;
    chosen_[a] = true;
    search(depth + 1, cost + inst_.graph.arc(branch_[depth]).weight);
    chosen_[a] = false;
  }

  const DsfInstance& inst_;
  std::vector<ArcIndex> branch_;
  std::vector<bool> chosen_, optimistic_, best_;
  Weight best_cost_ = 0;
};

}  // namespace

SteinerSolution dsf_brute(const DsfInstance& inst, int arc_cap) {
  validate(inst);
  int positive = 0;
  for (const auto& a : inst.graph.arcs()) positive += a.weight > 0 ? 1 : 0;
  if (positive > arc_cap) {
    throw RefusalError("DSF brute force refuses " + std::to_string(positive) + " positive-weight arcs (cap " +
                       std::to_string(arc_cap) + ")");
  }
  return ForestSearch(inst).run();
}

}  // namespace tempconn
