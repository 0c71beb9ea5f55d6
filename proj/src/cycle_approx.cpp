#include "tempconn/cycle_approx.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

namespace tempconn {

namespace {

constexpr Weight kNoCost = std::numeric_limits<Weight>::max();

// One non-dominated way to reach a position: last label and total cost.
struct FrontEntry {
  std::int64_t label = 0;
  Weight cost = 0;
  EdgeIndex edge = -1;
  int prev = -1;  // index in the previous position's front
};

using Front = std::vector<FrontEntry>;

// Walks the cycle from `start` in direction `step` (+1 or -1) for n-1 edges,
// keeping a Pareto front of (last label, cost) at each position.
std::vector<Front> sweep(const TemporalGraph& g, int start, int step, PathMode mode) {
  const int n = g.num_vertices();
  std::vector<Front> fronts(static_cast<std::size_t>(n));
  fronts[0].push_back({std::numeric_limits<std::int64_t>::min(), 0, -1, -1});
  for (int d = 1; d < n; ++d) {
    const Vertex from = ((start + step * (d - 1)) % n + n) % n;
    const Vertex to = ((start + step * d) % n + n) % n;
    std::vector<FrontEntry> cand;
    for (TimeLabel t : g.labels_of(from, to)) {
      const EdgeIndex e = *g.find_edge(from, to, t);
      // Cheapest predecessor that may be followed by label t.
      int best = -1;
      const auto& prev = fronts[static_cast<std::size_t>(d - 1)];
      for (int p = 0; p < static_cast<int>(prev.size()); ++p) {
        const auto& pe = prev[static_cast<std::size_t>(p)];
        bool fits = d == 1 || can_follow(TimeLabel{pe.label}, t, mode);
        if (fits && (best < 0 || pe.cost < prev[static_cast<std::size_t>(best)].cost)) best = p;
      }
      if (best < 0) continue;
      cand.push_back({t.value, prev[static_cast<std::size_t>(best)].cost + g.edge(e).weight, e, best});
    }
    std::sort(cand.begin(), cand.end(), [](const FrontEntry& a, const FrontEntry& b) {
      return a.label != b.label ? a.label < b.label : a.cost < b.cost;
    });
    auto& front = fronts[static_cast<std::size_t>(d)];
    for (const auto& c : cand) {
      if (front.empty() || c.cost < front.back().cost) front.push_back(c);
    }
    if (front.empty()) break;
  }
  return fronts;
}

std::optional<Weight> best_cost(const Front& f) {
  if (f.empty()) return std::nullopt;
  Weight c = kNoCost;
  for (const auto& e : f) c = std::min(c, e.cost);
  return c;
}

std::vector<EdgeIndex> best_edges(const std::vector<Front>& fronts, int d) {
  std::vector<EdgeIndex> out;
  const auto& f = fronts[static_cast<std::size_t>(d)];
  int idx = 0;
  for (int p = 1; p < static_cast<int>(f.size()); ++p) {
    if (f[static_cast<std::size_t>(p)].cost < f[static_cast<std::size_t>(idx)].cost) idx = p;
  }
  for (int pos = d; pos > 0; --pos) {
    const auto& e = fronts[static_cast<std::size_t>(pos)][static_cast<std::size_t>(idx)];
    out.push_back(e.edge);
    idx = e.prev;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void require_cycle(const TemporalGraph& g) {
  if (!underlying_is_cycle(g)) {
    throw InputError("cycle solver needs an underlying cycle 0-1-...-(n-1)-0 with n >= 3");
  }
}

PathCostTable costs(const TemporalGraph& g, PathMode mode, int step) {
  require_cycle(g);
  const int n = g.num_vertices();
  PathCostTable table(static_cast<std::size_t>(n), std::vector<std::optional<Weight>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    auto fronts = sweep(g, i, step, mode);
    for (int d = 0; d < n; ++d) {
      const int k = ((i + step * d) % n + n) % n;
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = best_cost(fronts[static_cast<std::size_t>(d)]);
    }
  }
  return table;
}

}  // namespace

bool underlying_is_cycle(const TemporalGraph& g) {
  const int n = g.num_vertices();
  if (n < 3) return false;
  std::set<std::pair<Vertex, Vertex>> want;
  for (int i = 0; i < n; ++i) want.insert(std::minmax(i, (i + 1) % n));
  auto have = g.underlying_edges();
  return std::set<std::pair<Vertex, Vertex>>(have.begin(), have.end()) == want;
}

PathCostTable inc_path_costs(const TemporalGraph& g, PathMode mode) { return costs(g, mode, +1); }

PathCostTable dec_path_costs(const TemporalGraph& g, PathMode mode) { return costs(g, mode, -1); }

CycleResult solve_cycle_tc(const TemporalGraph& g, PathMode mode) {
  require_cycle(g);
  if (!is_connected(g, mode)) throw InfeasibleError("temporal cycle is not temporally connected");
  const int n = g.num_vertices();
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  std::vector<std::vector<Front>> inc(static_cast<std::size_t>(n)), dec(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    inc[static_cast<std::size_t>(i)] = sweep(g, i, +1, mode);
    dec[static_cast<std::size_t>(i)] = sweep(g, i, -1, mode);
  }
  auto inc_cost = [&](int i, int k) { return best_cost(inc[static_cast<std::size_t>(i)][static_cast<std::size_t>(mod(k - i))]); };
  auto dec_cost = [&](int j, int k) { return best_cost(dec[static_cast<std::size_t>(j)][static_cast<std::size_t>(mod(j - k))]); };

  // sector[i][j] = (cost, meet) for the sector i..j.
  std::vector<std::vector<std::pair<Weight, int>>> sector(
      static_cast<std::size_t>(n), std::vector<std::pair<Weight, int>>(static_cast<std::size_t>(n), {kNoCost, -1}));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int span = mod(j - i);  // k may not lie in i..j-1
      auto& cell = sector[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k) {
        if (i != j && mod(k - i) < span) continue;
        auto a = inc_cost(i, k);
        auto b = dec_cost(j, mod(k + 1));
        if (!a || !b) continue;
        if (*a + *b < cell.first) cell = {*a + *b, k};
      }
    }
  }

  CycleResult best;
  best.dp_value = kNoCost;
  std::vector<int> best_cuts;
  for (int s = 0; s < n; ++s) {
    // c[x]: cheapest partition of v_s..v_{s+x}; cut[x]: start offset of its last sector.
    std::vector<Weight> c(static_cast<std::size_t>(n), kNoCost);
    std::vector<int> cut(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
      Weight whole = sector[static_cast<std::size_t>(s)][static_cast<std::size_t>(mod(s + x))].first;
      if (whole != kNoCost) {
        c[static_cast<std::size_t>(x)] = whole;
        cut[static_cast<std::size_t>(x)] = 0;
      }
      for (int y = 0; y < x; ++y) {
        Weight head = c[static_cast<std::size_t>(y)];
        Weight tail = sector[static_cast<std::size_t>(mod(s + y + 1))][static_cast<std::size_t>(mod(s + x))].first;
        if (head == kNoCost || tail == kNoCost) continue;
        if (head + tail < c[static_cast<std::size_t>(x)]) {
          c[static_cast<std::size_t>(x)] = head + tail;
          cut[static_cast<std::size_t>(x)] = y + 1;
        }
      }
    }
    if (c[static_cast<std::size_t>(n - 1)] < best.dp_value) {
      best.dp_value = c[static_cast<std::size_t>(n - 1)];
      best.rotation = s;
      best_cuts = cut;
    }
  }
  if (best.dp_value == kNoCost) throw InternalError("connected cycle admits no sector partition");

  const int s = best.rotation;
  std::vector<EdgeIndex> edges;
  for (int x = n - 1; x >= 0;) {
    const int from = best_cuts[static_cast<std::size_t>(x)];
    Sector sec;
    sec.start = mod(s + from);
    sec.end = mod(s + x);
    sec.meet = sector[static_cast<std::size_t>(sec.start)][static_cast<std::size_t>(sec.end)].second;
    sec.inc_edges = best_edges(inc[static_cast<std::size_t>(sec.start)], mod(sec.meet - sec.start));
    sec.dec_edges = best_edges(dec[static_cast<std::size_t>(sec.end)], mod(sec.end - (sec.meet + 1)));
    edges.insert(edges.end(), sec.inc_edges.begin(), sec.inc_edges.end());
    edges.insert(edges.end(), sec.dec_edges.begin(), sec.dec_edges.end());
    best.sectors.push_back(std::move(sec));
    x = from - 1;
  }
  std::reverse(best.sectors.begin(), best.sectors.end());
  best.solution = Solution::from_indices(g, std::move(edges));
  if (!feasible(g, best.solution, mode)) throw InternalError("cycle solver produced an infeasible solution");
  if (best.solution.cost > best.dp_value) throw InternalError("cycle solution costs more than its sectors");
  return best;
}

}  // namespace tempconn
