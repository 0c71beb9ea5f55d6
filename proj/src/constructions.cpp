#include "tempconn/constructions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

namespace tempconn {

HamiltonianPartition hamiltonian_partition(int n) {
  if (n < 2 || n % 2 != 0) throw InputError("hamiltonian_partition needs an even n >= 2");
  HamiltonianPartition out;
  out.n = n;
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  for (int i = 0; i < n / 2; ++i) {
    std::vector<Vertex> path{i};
    for (int m = 1; m < n / 2; ++m) {
      path.push_back(mod(i - m));
      path.push_back(mod(i + m));
    }
    path.push_back(mod(i - n / 2));
    out.paths.push_back(std::move(path));
  }
  return out;
}

bool is_valid_partition(const HamiltonianPartition& p) {
  if (p.n < 2 || static_cast<int>(p.paths.size()) != p.n / 2) return false;
  std::set<std::pair<int, int>> used;
  for (const auto& path : p.paths) {
    if (static_cast<int>(path.size()) != p.n) return false;
    std::vector<Vertex> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j < p.n; ++j) {
      if (sorted[static_cast<std::size_t>(j)] != j) return false;
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      auto e = std::minmax(path[k], path[k + 1]);
      if (!used.insert(e).second) return false;
    }
  }
  return static_cast<int>(used.size()) == p.n * (p.n - 1) / 2;
}

LowerBoundGraph build_lower_bound(int n) {
  if (n < 6 || n % 2 != 0) throw InputError("lower-bound construction needs an even n >= 6");
  const std::int64_t scale = 8LL * n;
  LowerBoundGraph lb;
  lb.n = n;
  lb.graph = TemporalGraph(3 * n, scale);
  lb.epsilon_scaled = TimeLabel{1};
  for (int j = 0; j < n; ++j) {
    lb.a_vertices.push_back(j);
    lb.h_vertices.push_back(n + j);
    lb.m_vertices.push_back(2 * n + j);
  }
  auto whole = [scale](std::int64_t x) { return TimeLabel{x * scale}; };
  auto eps = [](std::int64_t k) { return TimeLabel{k}; };
  auto& g = lb.graph;

  const auto partition = hamiltonian_partition(n);
  for (int i = 1; i <= n / 2; ++i) {
    const auto& path = partition.paths[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      EdgeIndex e = g.add_edge(path[k], path[k + 1], whole(i), 1);
      lb.a_edge_path_index[e] = i;
    }
    g.add_edge(path.front(), lb.h(2 * i - 1), whole(i), 1);
    g.add_edge(path.back(), lb.h(2 * i), whole(i), 1);
  }
  for (int i = 1; i <= n / 2; ++i) {
    g.add_edge(lb.m(2 * i - 1), lb.h(2 * i - 1), whole(n / 2 + 2 * i - 1), 1);
    g.add_edge(lb.m(2 * i - 1), lb.h(2 * i), whole(n / 2 + 2 * i), 1);
    g.add_edge(lb.m(2 * i), lb.h(2 * i - 1), eps(n / 2 + 2 * i - 1), 1);
    g.add_edge(lb.m(2 * i), lb.h(2 * i), eps(n / 2 + 2 * i), 1);
  }
  std::vector<std::pair<int, int>> mm;
  for (int lo = 1; lo <= n - 3; lo += 2) mm.emplace_back(lo, n);
  for (int hi = n - 2; hi >= 4; hi -= 2) mm.emplace_back(hi - 3, hi);
  for (std::size_t k = 0; k < mm.size(); ++k) {
    g.add_edge(lb.m(mm[k].first), lb.m(mm[k].second),
               TimeLabel{scale - static_cast<std::int64_t>(k)}, 1);
  }
  for (int i = 1; i <= n / 2; ++i) {
    g.add_edge(lb.m(2 * i - 1), lb.a(2 * i - 1), eps(1), 1);
    g.add_edge(lb.m(2 * i), lb.a(2 * i), whole(n + 1), 1);
  }
  return lb;
}

LowerBoundReport verify_lower_bound(const LowerBoundGraph& lb, PathMode mode) {
  const auto& g = lb.graph;
  LowerBoundReport report;
  ReachabilitySweeper sweeper(g);
  report.connected = sweeper.all_pairs(mode);
  std::vector<bool> enabled(static_cast<std::size_t>(g.num_edges()), true);
  report.all_removals_disconnect = true;
  for (const auto& [e, i] : lb.a_edge_path_index) {
    enabled[static_cast<std::size_t>(e)] = false;
    auto tree = sweeper.foremost(lb.h(2 * i), TimeLabel{0}, mode, &enabled);
    EdgeRemovalCheck check{e, i, tree.arrival[static_cast<std::size_t>(lb.h(2 * i - 1))].has_value()};
    if (check.still_reachable) report.all_removals_disconnect = false;
    report.removals.push_back(check);
    enabled[static_cast<std::size_t>(e)] = true;
  }
  report.non_a_edges = g.num_edges() - static_cast<int>(lb.a_edge_path_index.size());
  report.bound = 5 * lb.n;
  report.pigeonhole_ok = report.non_a_edges < report.bound;
  return report;
}

TemporalGraph build_fragile_variant(const LowerBoundGraph& lb) {
  TemporalGraph g = lb.graph;
  auto e = g.find_edge(lb.a(1), lb.m(1), lb.epsilon_scaled);
  if (!e) throw InternalError("lower-bound graph lacks the edge {a_1, m_1} at epsilon");
  g.set_label(*e, TimeLabel{g.scale()});
  return g;
}

FragileReport verify_fragile(const TemporalGraph& g, const LowerBoundGraph& lb, PathMode mode) {
  std::vector<EdgeIndex> keep;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    auto it = lb.a_edge_path_index.find(e);
    if (it == lb.a_edge_path_index.end() || it->second <= 1) keep.push_back(e);
  }
  FragileReport report;
  report.remaining_edges = static_cast<int>(keep.size());
  report.expected_edges = 6 * lb.n - 4;
  report.connected = is_connected(g.restricted_to(keep), mode);
  return report;
}

std::string write_lower_bound_annotation(const LowerBoundGraph& lb) {
  std::ostringstream out;
  out << "lb " << lb.n << "\n";
  for (const auto& [e, i] : lb.a_edge_path_index) out << "aedge " << e << " " << i << "\n";
  return out.str();
}

LowerBoundGraph read_lower_bound_annotation(const TemporalGraph& g, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  std::map<EdgeIndex, int> aedges;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "lb") {
      if (!(fields >> n)) throw ParseError(line_no, "expected 'lb <n>'");
    } else if (tag == "aedge") {
      EdgeIndex e = -1;
      int i = 0;
      if (!(fields >> e >> i)) throw ParseError(line_no, "expected 'aedge <edge> <path>'");
      if (e < 0 || e >= g.num_edges()) throw ParseError(line_no, "aedge index out of range");
      aedges[e] = i;
    } else {
      throw ParseError(line_no, "unknown annotation record '" + tag + "'");
    }
  }
  if (n < 0) throw InputError("annotation lacks an 'lb <n>' header");
  if (g.num_vertices() != 3 * n) throw InputError("annotation n does not match the graph size");
  LowerBoundGraph lb = build_lower_bound(n);
  if (lb.a_edge_path_index != aedges) {
    throw InputError("annotation A-edge map does not match the construction for n = " +
                     std::to_string(n));
  }
  lb.graph = g;
  return lb;
}

}  // namespace tempconn
