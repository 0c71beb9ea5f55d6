#include "tempconn/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

namespace tempconn {

namespace {

TimeLabel label(std::int64_t v) { return TimeLabel{v}; }

std::vector<bool> edge_mask(const TemporalGraph& g, const Solution& sol) {
  std::vector<bool> mask(static_cast<std::size_t>(g.num_edges()), false);
  for (EdgeIndex e : sol.edge_indices) {
    if (e < 0 || e >= g.num_edges()) throw InputError("solution references edge " + std::to_string(e) + " outside the graph");
    mask[static_cast<std::size_t>(e)] = true;
  }
  return mask;
}

std::vector<bool> arc_mask(const Digraph& g, const SteinerSolution& sol) {
  std::vector<bool> mask(static_cast<std::size_t>(g.num_arcs()), false);
  for (ArcIndex a : sol.arc_indices) {
    if (a < 0 || a >= g.num_arcs()) throw InputError("solution references arc " + std::to_string(a) + " outside the graph");
    mask[static_cast<std::size_t>(a)] = true;
  }
  return mask;
}

bool same_underlying(const TemporalEdge& a, const TemporalEdge& b) { return a.u == b.u && a.v == b.v; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

// rTC -> DST

Node RtcToDst::terminal_node(Vertex u) const {
  if (u == root || !source.valid_vertex(u)) throw InputError("no terminal node for vertex " + std::to_string(u));
  return 1 + source.num_edges() + (u < root ? u : u - 1);
}

RtcToDst rtc_to_dst(const TemporalGraph& g, Vertex r, PathMode mode) {
  if (!g.valid_vertex(r)) throw InputError("root out of range");
  RtcToDst red{g, r, mode, DstInstance{Digraph(1 + g.num_edges() + g.num_vertices() - 1), 0, {}}};
  Digraph& h = red.target.graph;
  for (EdgeIndex e1 = 0; e1 < g.num_edges(); ++e1) {
    const auto& a = g.edge(e1);
    for (Vertex x : {a.u, a.v}) {
      for (EdgeIndex e2 : g.incident(x)) {
        const auto& b = g.edge(e2);
        if (same_underlying(a, b) || !can_follow(a.label, b.label, mode)) continue;
        h.add_arc(red.edge_node(e1), red.edge_node(e2), b.weight);
      }
    }
  }
  for (EdgeIndex e : g.incident(r)) h.add_arc(red.root_node(), red.edge_node(e), g.edge(e).weight);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
      if (x != r) h.add_arc(red.edge_node(e), red.terminal_node(x), 0);
    }
  }
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (u != r) red.target.terminals.push_back(red.terminal_node(u));
  }
  return red;
}

SteinerSolution RtcToDst::forward(const Solution& sol) const {
  const Solution tree = prune_to_tree(source, sol, root, mode);
  const auto mask = edge_mask(source, tree);
  const auto ft = ReachabilitySweeper(source).foremost(root, TimeLabel{0}, mode, &mask);
  const Digraph& h = target.graph;
  std::vector<ArcIndex> arcs;
  auto need = [&](Node from, Node to) {
    auto a = h.find_arc(from, to);
    if (!a) throw InternalError("forward map needs a missing DST arc");
    arcs.push_back(*a);
  };
  for (Vertex v = 0; v < source.num_vertices(); ++v) {
    if (v == root) continue;
    const EdgeIndex pe = ft.parent_edge[static_cast<std::size_t>(v)];
    const Vertex u = source.edge(pe).other(v);
    if (u == root) {
      need(root_node(), edge_node(pe));
    } else {
      need(edge_node(ft.parent_edge[static_cast<std::size_t>(u)]), edge_node(pe));
    }
    need(edge_node(pe), terminal_node(v));
  }
  return SteinerSolution::from_indices(h, std::move(arcs));
}

Solution RtcToDst::backward(const SteinerSolution& sol) const {
  const auto seen = reachable(target.graph, sol, root_node());
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < source.num_edges(); ++e) {
    if (seen[static_cast<std::size_t>(edge_node(e))]) keep.push_back(e);
  }
  return Solution::from_indices(source, std::move(keep));
}

// TC -> DSF

TcToDsf tc_to_dsf(const TemporalGraph& g, PathMode mode) {
  const int m = g.num_edges();
  TcToDsf red{g, mode, DsfInstance{Digraph(2 * m + 2 * g.num_vertices()), {}}, {}};
  Digraph& h = red.target.graph;

  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeIndex>> by_edge;  // ascending label
  for (EdgeIndex e = 0; e < m; ++e) by_edge[{g.edge(e).u, g.edge(e).v}].push_back(e);
  for (auto& [key, list] : by_edge) {
    std::sort(list.begin(), list.end(), [&](EdgeIndex a, EdgeIndex b) { return g.edge(a).label < g.edge(b).label; });
    for (std::size_t i = 0; i + 1 < list.size(); ++i) h.add_arc(red.h1(list[i]), red.h1(list[i + 1]), 0);
  }
  for (EdgeIndex e = 0; e < m; ++e) red.use_arc.push_back(h.add_arc(red.h1(e), red.h2(e), g.edge(e).weight));

  for (EdgeIndex e1 = 0; e1 < m; ++e1) {
    const auto& a = g.edge(e1);
    std::set<std::pair<Vertex, Vertex>> done;
    for (Vertex x : {a.u, a.v}) {
      for (EdgeIndex e2 : g.incident(x)) {
        const auto& b = g.edge(e2);
        if (same_underlying(a, b) || !done.insert({b.u, b.v}).second) continue;
        // Hand off to the first label of e2 usable after e1.
        for (EdgeIndex cand : by_edge.at({b.u, b.v})) {
          if (can_follow(a.label, g.edge(cand).label, mode)) {
            h.add_arc(red.h2(e1), red.h1(cand), 0);
            break;
          }
        }
      }
    }
  }
  for (EdgeIndex e = 0; e < m; ++e) {
    for (Vertex x : {g.edge(e).u, g.edge(e).v}) {
      h.add_arc(red.s(x), red.h1(e), 0);
      h.add_arc(red.h2(e), red.t(x), 0);
    }
  }
  for (Vertex i = 0; i < g.num_vertices(); ++i) {
    for (Vertex j = 0; j < g.num_vertices(); ++j) {
      if (i != j) red.target.demands.emplace_back(red.s(i), red.t(j));
    }
  }
  return red;
}

SteinerSolution TcToDsf::forward(const Solution& sol) const {
  const auto mask = edge_mask(source, sol);
  std::vector<bool> is_use(static_cast<std::size_t>(target.graph.num_arcs()), false);
  for (ArcIndex a : use_arc) is_use[static_cast<std::size_t>(a)] = true;
  std::vector<ArcIndex> arcs;
  for (ArcIndex a = 0; a < target.graph.num_arcs(); ++a) {
    if (!is_use[static_cast<std::size_t>(a)]) arcs.push_back(a);
  }
  for (EdgeIndex e = 0; e < source.num_edges(); ++e) {
    if (mask[static_cast<std::size_t>(e)]) arcs.push_back(use_arc[static_cast<std::size_t>(e)]);
  }
  return SteinerSolution::from_indices(target.graph, std::move(arcs));
}

Solution TcToDsf::backward(const SteinerSolution& sol) const {
  const auto mask = arc_mask(target.graph, sol);
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < source.num_edges(); ++e) {
    if (mask[static_cast<std::size_t>(use_arc[static_cast<std::size_t>(e)])]) keep.push_back(e);
  }
  return Solution::from_indices(source, std::move(keep));
}

// DST -> rTC

Vertex DstToRtc::aux(Node u, int i) const {
  const int nn = n();
  if (!source.graph.valid_node(u) || i < 1 || i > nn - 1) throw InputError("auxiliary index out of range");
  return nn + u * (nn - 1) + i - 1;
}

EdgeIndex DstToRtc::entry_edge(Node u, int i) const {
  return entry_edges.at(static_cast<std::size_t>(u)).at(static_cast<std::size_t>(i - 1));
}

EdgeIndex DstToRtc::exit_edge(ArcIndex a, int i) const {
  return exit_edges.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(i - 1));
}

DstToRtc dst_to_rtc(const DstInstance& inst) {
  validate(inst);
  const int n = inst.graph.num_nodes();
  DstToRtc red{inst, TemporalGraph(n + n * (n - 1)), inst.root, {}, {}};
  TemporalGraph& g = red.target;
  red.entry_edges.resize(static_cast<std::size_t>(n));
  for (Node u = 0; u < n; ++u) {
    for (int i = 1; i <= n - 1; ++i) red.entry_edges[static_cast<std::size_t>(u)].push_back(g.add_edge(u, red.aux(u, i), label(i), 0));
  }
  for (ArcIndex a = 0; a < inst.graph.num_arcs(); ++a) {
    const auto& arc = inst.graph.arc(a);
    red.exit_edges.emplace_back();
    for (int i = 1; i <= n - 1; ++i) {
      red.exit_edges.back().push_back(g.add_edge(red.aux(arc.from, i), arc.to, label(i + 1), arc.weight));
    }
  }
  std::set<Node> terminals(inst.terminals.begin(), inst.terminals.end());
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (x == inst.root || (x < n && terminals.contains(x))) continue;
    g.add_edge(inst.root, x, label(n + 1), 0);
  }
  return red;
}

Solution DstToRtc::forward(const SteinerSolution& sol) const {
  const Digraph& h = source.graph;
  const int nn = n();
  const auto mask = arc_mask(h, sol);
  std::vector<int> depth(static_cast<std::size_t>(nn), -1);
  std::queue<Node> bfs;
  depth[static_cast<std::size_t>(root)] = 0;
  bfs.push(root);
  while (!bfs.empty()) {
    Node x = bfs.front();
    bfs.pop();
    for (ArcIndex a : h.out_arcs(x)) {
      Node y = h.arc(a).to;
      if (mask[static_cast<std::size_t>(a)] && depth[static_cast<std::size_t>(y)] < 0) {
        depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
        bfs.push(y);
      }
    }
  }
  std::vector<EdgeIndex> keep;
  for (ArcIndex a : sol.arc_indices) {
    const int d = depth[static_cast<std::size_t>(h.arc(a).from)];
    if (d < 0 || d + 1 > nn - 1) continue;
    keep.push_back(entry_edge(h.arc(a).from, d + 1));
    keep.push_back(exit_edge(a, d + 1));
  }
  for (EdgeIndex e : target.incident(root)) {
    if (target.edge(e).label == label(nn + 1)) keep.push_back(e);
  }
  return Solution::from_indices(target, std::move(keep));
}

SteinerSolution DstToRtc::backward(const Solution& sol) const {
  const auto mask = edge_mask(target, sol);
  std::vector<ArcIndex> keep;
  for (ArcIndex a = 0; a < source.graph.num_arcs(); ++a) {
    for (int i = 1; i <= n() - 1; ++i) {
      if (mask[static_cast<std::size_t>(entry_edge(source.graph.arc(a).from, i))] &&
          mask[static_cast<std::size_t>(exit_edge(a, i))]) {
        keep.push_back(a);
        break;
      }
    }
  }
  return SteinerSolution::from_indices(source.graph, std::move(keep));
}

// SLC -> TC

int SlcAssignment::cost() const {
  int total = 0;
  for (const auto& s : u_colors) total += static_cast<int>(s.size());
  for (const auto& s : w_colors) total += static_cast<int>(s.size());
  return total;
}

void validate(const SlcInstance& inst) {
  if (inst.k < 1 || inst.c < 1) throw InputError("label cover needs k >= 1 and c >= 1");
  for (const auto& [key, rel] : inst.relations) {
    if (key.first < 0 || key.first >= inst.k || key.second < 0 || key.second >= inst.k) {
      throw InputError("relation for an out-of-range vertex pair");
    }
    for (auto [a, b] : rel) {
      if (a < 0 || a >= inst.c || b < 0 || b >= inst.c) throw InputError("relation uses an out-of-range color");
    }
  }
  for (int u = 0; u < inst.k; ++u) {
    for (int w = 0; w < inst.k; ++w) {
      auto it = inst.relations.find({u, w});
      if (it == inst.relations.end() || it->second.empty()) {
        throw InputError("empty relation for pair (" + std::to_string(u) + ", " + std::to_string(w) +
                         "); the label cover instance is infeasible");
      }
    }
  }
}

bool slc_feasible(const SlcInstance& inst, const SlcAssignment& sigma) {
  if (static_cast<int>(sigma.u_colors.size()) != inst.k || static_cast<int>(sigma.w_colors.size()) != inst.k) return false;
  for (const auto& [key, rel] : inst.relations) {
    const auto& su = sigma.u_colors[static_cast<std::size_t>(key.first)];
    const auto& sw = sigma.w_colors[static_cast<std::size_t>(key.second)];
    bool ok = std::any_of(rel.begin(), rel.end(), [&](auto ab) { return su.contains(ab.first) && sw.contains(ab.second); });
    if (!ok) return false;
  }
  return true;
}

SlcToTc slc_to_tc(const SlcInstance& inst) {
  validate(inst);
  SlcToTc red;
  red.source = inst;
  for (const auto& [key, rel] : inst.relations) {
    for (auto [a, b] : rel) red.x_tuples.emplace_back(key.first, key.second, a, b);
  }
  const int k = inst.k, c = inst.c;
  const int base = 2 * k + 2 * k * c + static_cast<int>(red.x_tuples.size());
  red.p = base;
  red.q = base + 1;
  red.target = TemporalGraph(base + 2);
  TemporalGraph& g = red.target;

  red.u_color_edge.assign(static_cast<std::size_t>(k), {});
  red.w_color_edge.assign(static_cast<std::size_t>(k), {});
  for (int u = 0; u < k; ++u) {
    for (int a = 0; a < c; ++a) red.u_color_edge[static_cast<std::size_t>(u)].push_back(g.add_edge(red.u_vertex(u), red.u_color(u, a), label(1), 1));
  }
  for (int w = 0; w < k; ++w) {
    for (int b = 0; b < c; ++b) red.w_color_edge[static_cast<std::size_t>(w)].push_back(g.add_edge(red.w_vertex(w), red.w_color(w, b), label(4), 1));
  }
  for (std::size_t i = 0; i < red.x_tuples.size(); ++i) {
    auto [u, w, a, b] = red.x_tuples[i];
    g.add_edge(red.u_color(u, a), red.x_vertex(i), label(2), 0);
    g.add_edge(red.x_vertex(i), red.w_color(w, b), label(3), 0);
  }
  std::vector<Vertex> colors_and_x;
  for (int u = 0; u < k; ++u) {
    for (int a = 0; a < c; ++a) colors_and_x.push_back(red.u_color(u, a));
  }
  for (int w = 0; w < k; ++w) {
    for (int b = 0; b < c; ++b) colors_and_x.push_back(red.w_color(w, b));
  }
  for (std::size_t i = 0; i < red.x_tuples.size(); ++i) colors_and_x.push_back(red.x_vertex(i));

  for (int u = 0; u < k; ++u) g.add_edge(red.p, red.u_vertex(u), label(5), 0);
  for (Vertex v : colors_and_x) g.add_edge(red.p, v, label(5), 0);
  for (int u = 0; u < k; ++u) g.add_edge(red.q, red.u_vertex(u), label(5), 0);
  for (int w = 0; w < k; ++w) g.add_edge(red.p, red.w_vertex(w), label(0), 0);
  for (int w = 0; w < k; ++w) g.add_edge(red.q, red.w_vertex(w), label(0), 0);
  for (Vertex v : colors_and_x) g.add_edge(red.q, v, label(0), 0);
  return red;
}

Solution SlcToTc::forward(const SlcAssignment& sigma) const {
  if (static_cast<int>(sigma.u_colors.size()) != source.k || static_cast<int>(sigma.w_colors.size()) != source.k) {
    throw InputError("assignment size does not match the instance");
  }
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < target.num_edges(); ++e) {
    if (target.edge(e).weight == 0) keep.push_back(e);
  }
  for (int u = 0; u < source.k; ++u) {
    for (int a : sigma.u_colors[static_cast<std::size_t>(u)]) {
      keep.push_back(u_color_edge[static_cast<std::size_t>(u)].at(static_cast<std::size_t>(a)));
    }
  }
  for (int w = 0; w < source.k; ++w) {
    for (int b : sigma.w_colors[static_cast<std::size_t>(w)]) {
      keep.push_back(w_color_edge[static_cast<std::size_t>(w)].at(static_cast<std::size_t>(b)));
    }
  }
  return Solution::from_indices(target, std::move(keep));
}

SlcAssignment SlcToTc::backward(const Solution& sol) const {
  const auto mask = edge_mask(target, sol);
  SlcAssignment sigma;
  sigma.u_colors.resize(static_cast<std::size_t>(source.k));
  sigma.w_colors.resize(static_cast<std::size_t>(source.k));
  for (int u = 0; u < source.k; ++u) {
    for (int a = 0; a < source.c; ++a) {
      if (mask[static_cast<std::size_t>(u_color_edge[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)])]) {
        sigma.u_colors[static_cast<std::size_t>(u)].insert(a);
      }
    }
  }
  for (int w = 0; w < source.k; ++w) {
    for (int b = 0; b < source.c; ++b) {
      if (mask[static_cast<std::size_t>(w_color_edge[static_cast<std::size_t>(w)][static_cast<std::size_t>(b)])]) {
        sigma.w_colors[static_cast<std::size_t>(w)].insert(b);
      }
    }
  }
  return sigma;
}

// ST(1,2) -> unweighted TC

void validate(const SteinerInstance12& inst) {
  if (inst.num_vertices < 1) throw InputError("Steiner instance needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  UnionFind uf(inst.num_vertices);
  for (auto [u, v, w] : inst.edges) {
    if (u < 0 || v < 0 || u >= inst.num_vertices || v >= inst.num_vertices || u == v) {
      throw InputError("Steiner edge endpoint out of range or self-loop");
    }
    if (w != 1 && w != 2) throw InputError("Steiner edge weights must be 1 or 2");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw InputError("duplicate Steiner edge");
    uf.unite(u, v);
  }
  for (int v = 1; v < inst.num_vertices; ++v) {
    if (uf.find(v) != uf.find(0)) throw InputError("Steiner instance graph is not connected");
  }
  std::set<int> terms;
  for (int t : inst.terminals) {
    if (t < 0 || t >= inst.num_vertices) throw InputError("Steiner terminal out of range");
    if (!terms.insert(t).second) throw InputError("duplicate Steiner terminal");
  }
}

Weight steiner_cost(const SteinerInstance12& inst, const std::vector<int>& edge_ids) {
  std::set<int> ids(edge_ids.begin(), edge_ids.end());
  Weight total = 0;
  for (int id : ids) total += std::get<2>(inst.edges.at(static_cast<std::size_t>(id)));
  return total;
}

bool steiner_feasible(const SteinerInstance12& inst, const std::vector<int>& edge_ids) {
  if (inst.terminals.empty()) return true;
  UnionFind uf(inst.num_vertices);
  for (int id : edge_ids) {
    auto [u, v, w] = inst.edges.at(static_cast<std::size_t>(id));
    uf.unite(u, v);
  }
  const int root = uf.find(inst.terminals.front());
  return std::all_of(inst.terminals.begin(), inst.terminals.end(), [&](int t) { return uf.find(t) == root; });
}

int St12ToTc::gadget_edge_count() const { return static_cast<int>(std::count(gadget_edge.begin(), gadget_edge.end(), true)); }

St12ToTc st12_to_tc(const SteinerInstance12& inst) {
  validate(inst);
  St12ToTc red;
  red.source = inst;
  const int n = inst.num_vertices;
  int heavy = 0;
  for (const auto& e : inst.edges) heavy += std::get<2>(e) == 2 ? 1 : 0;
  const int m = static_cast<int>(inst.terminals.size());
  red.p = n + heavy;
  red.q = red.p + 1;
  red.x = red.p + 2;
  for (int i = 0; i < m; ++i) red.a.push_back(red.p + 3 + i);
  for (int i = 0; i < m; ++i) red.b.push_back(red.p + 3 + m + i);
  red.target = TemporalGraph(red.p + 3 + 2 * m);
  TemporalGraph& g = red.target;

  std::vector<Vertex> non_terminals;
  std::set<int> terms(inst.terminals.begin(), inst.terminals.end());
  for (int v = 0; v < n; ++v) {
    if (!terms.contains(v)) non_terminals.push_back(v);
  }
  int next_sub = n;
  for (auto [u, v, w] : inst.edges) {
    red.parts.emplace_back();
    if (w == 1) {
      red.parts.back().push_back(g.add_edge(u, v, label(3), 1));
    } else {
      const Vertex s = next_sub++;
      non_terminals.push_back(s);
      red.parts.back().push_back(g.add_edge(u, s, label(3), 1));
      red.parts.back().push_back(g.add_edge(s, v, label(3), 1));
    }
  }
  const int steiner_pieces = g.num_edges();
  for (Vertex t : non_terminals) {
    g.add_edge(red.p, t, label(4), 1);
    g.add_edge(red.q, t, label(2), 1);
  }
  for (int i = 0; i < m; ++i) {
    const Vertex u = inst.terminals[static_cast<std::size_t>(i)];
    g.add_edge(red.p, red.a[static_cast<std::size_t>(i)], label(1), 1);
    g.add_edge(red.a[static_cast<std::size_t>(i)], u, label(5), 1);
    g.add_edge(u, red.b[static_cast<std::size_t>(i)], label(1), 1);
    g.add_edge(red.b[static_cast<std::size_t>(i)], red.q, label(5), 1);
  }
  g.add_edge(red.p, red.x, label(1), 1);
  g.add_edge(red.x, red.q, label(5), 1);
  red.gadget_edge.assign(static_cast<std::size_t>(g.num_edges()), true);
  std::fill(red.gadget_edge.begin(), red.gadget_edge.begin() + steiner_pieces, false);
  return red;
}

Solution St12ToTc::forward(const std::vector<int>& edge_ids) const {
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < target.num_edges(); ++e) {
    if (gadget_edge[static_cast<std::size_t>(e)]) keep.push_back(e);
  }
  for (int id : edge_ids) {
    for (EdgeIndex e : parts.at(static_cast<std::size_t>(id))) keep.push_back(e);
  }
  return Solution::from_indices(target, std::move(keep));
}

std::vector<int> St12ToTc::backward(const Solution& sol) const {
  const auto mask = edge_mask(target, sol);
  std::vector<int> out;
  for (std::size_t id = 0; id < parts.size(); ++id) {
    if (std::all_of(parts[id].begin(), parts[id].end(), [&](EdgeIndex e) { return mask[static_cast<std::size_t>(e)]; })) {
      out.push_back(static_cast<int>(id));
    }
  }
  return out;
}

}  // namespace tempconn
