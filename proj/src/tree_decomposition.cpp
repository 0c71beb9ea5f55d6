#include "tempconn/tree_decomposition.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>

#include "tempconn/error.hpp"

namespace tempconn {

namespace {

using Adjacency = std::vector<std::set<Vertex>>;

Adjacency adjacency(const TemporalGraph& g) {
  Adjacency adj(static_cast<std::size_t>(g.num_vertices()));
  for (auto [u, v] : g.underlying_edges()) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  return adj;
}

// Vertices outside S and v reachable from v through S.
std::uint32_t boundary(const std::vector<std::uint32_t>& nbr, std::uint32_t s, int v) {
  std::uint32_t seen = 1u << v;
  std::uint32_t frontier = 1u << v;
  std::uint32_t out = 0;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
      int x = __builtin_ctz(f);
      std::uint32_t around = nbr[static_cast<std::size_t>(x)] & ~seen;
      out |= around & ~s;
      next |= around & s;
      seen |= around;
    }
    frontier = next;
  }
  return out & ~(1u << v);
}

std::vector<Vertex> exact_order(const TemporalGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : g.underlying_edges()) {
    nbr[static_cast<std::size_t>(u)] |= 1u << v;
    nbr[static_cast<std::size_t>(v)] |= 1u << u;
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> tw(static_cast<std::size_t>(full) + 1, 0);
  std::vector<signed char> last(static_cast<std::size_t>(full) + 1, -1);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n + 1;
    for (std::uint32_t f = s; f != 0; f &= f - 1) {
      int v = __builtin_ctz(f);
      std::uint32_t rest = s & ~(1u << v);
      int q = __builtin_popcount(boundary(nbr, rest, v));
      int cand = std::max(tw[rest], q);
      if (cand < best) {
        best = cand;
        last[s] = static_cast<signed char>(v);
      }
    }
    tw[s] = best;
  }
  std::vector<Vertex> order;
  for (std::uint32_t s = full; s != 0; s &= ~(1u << last[s])) order.push_back(last[s]);
  std::reverse(order.begin(), order.end());
  return order;
}

std::vector<Vertex> min_fill_order(const TemporalGraph& g) {
  Adjacency adj = adjacency(g);
  const int n = g.num_vertices();
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  std::vector<Vertex> order;
  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    long best_fill = -1;
    std::size_t best_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[static_cast<std::size_t>(v)]) continue;
      const auto& nb = adj[static_cast<std::size_t>(v)];
      long fill = 0;
      for (auto a = nb.begin(); a != nb.end(); ++a) {
        for (auto b = std::next(a); b != nb.end(); ++b) {
          if (!adj[static_cast<std::size_t>(*a)].contains(*b)) ++fill;
        }
      }
      if (pick < 0 || fill < best_fill || (fill == best_fill && nb.size() < best_deg)) {
        pick = v;
        best_fill = fill;
        best_deg = nb.size();
      }
    }
    const auto nb = adj[static_cast<std::size_t>(pick)];
    for (Vertex a : nb) {
      adj[static_cast<std::size_t>(a)].erase(pick);
      for (Vertex b : nb) {
        if (a != b) adj[static_cast<std::size_t>(a)].insert(b);
      }
    }
    adj[static_cast<std::size_t>(pick)].clear();
    gone[static_cast<std::size_t>(pick)] = true;
    order.push_back(pick);
  }
  return order;
}

TreeDecomposition from_order(const TemporalGraph& g, const std::vector<Vertex>& order) {
  const int n = g.num_vertices();
  Adjacency adj = adjacency(g);
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  TreeDecomposition td;
  td.bags.resize(static_cast<std::size_t>(n));
  td.parent.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    std::vector<Vertex> higher;
    for (Vertex u : adj[static_cast<std::size_t>(v)]) {
      if (position[static_cast<std::size_t>(u)] > i) higher.push_back(u);
    }
    for (Vertex a : higher) {
      for (Vertex b : higher) {
        if (a != b) adj[static_cast<std::size_t>(a)].insert(b);
      }
    }
    auto& bag = td.bags[static_cast<std::size_t>(i)];
    bag = higher;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    if (!higher.empty()) {
      Vertex next = *std::min_element(higher.begin(), higher.end(), [&](Vertex a, Vertex b) {
        return position[static_cast<std::size_t>(a)] < position[static_cast<std::size_t>(b)];
      });
      td.parent[static_cast<std::size_t>(i)] = position[static_cast<std::size_t>(next)];
    }
  }
  // Components become one tree by hanging each component root under the last bag.
  td.root_bag = n - 1;
  for (int i = 0; i < n - 1; ++i) {
    if (td.parent[static_cast<std::size_t>(i)] < 0) td.parent[static_cast<std::size_t>(i)] = n - 1;
  }
  return td;
}

}  // namespace

int TreeDecomposition::width() const {
  std::size_t best = 0;
  for (const auto& b : bags) best = std::max(best, b.size());
  return static_cast<int>(best) - 1;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
  std::vector<std::vector<int>> out(bags.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (parent[i] >= 0) out[static_cast<std::size_t>(parent[i])].push_back(static_cast<int>(i));
  }
  return out;
}

void validate_decomposition(const TemporalGraph& g, const TreeDecomposition& td) {
  const auto nb = td.bags.size();
  if (nb == 0 || td.parent.size() != nb) throw InputError("decomposition has no bags or bad parent list");
  if (td.root_bag < 0 || static_cast<std::size_t>(td.root_bag) >= nb ||
      td.parent[static_cast<std::size_t>(td.root_bag)] != -1) {
    throw InputError("decomposition root is not a parentless bag");
  }
  // Every bag must reach the root.
  for (std::size_t i = 0; i < nb; ++i) {
    std::size_t steps = 0;
    int x = static_cast<int>(i);
    while (x != td.root_bag) {
      if (x < 0 || static_cast<std::size_t>(x) >= nb || ++steps > nb) {
        throw InputError("decomposition parent links do not form a tree");
      }
      x = td.parent[static_cast<std::size_t>(x)];
    }
  }
  std::vector<std::set<Vertex>> sets(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (Vertex v : td.bags[i]) {
      if (!g.valid_vertex(v)) throw InputError("bag vertex out of range");
      sets[i].insert(v);
    }
  }
  for (auto [u, v] : g.underlying_edges()) {
    bool found = std::any_of(sets.begin(), sets.end(),
                             [&](const auto& s) { return s.contains(u) && s.contains(v); });
    if (!found) {
      throw InputError("edge {" + std::to_string(u) + ", " + std::to_string(v) + "} not covered by any bag");
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    // The bags holding v are connected iff exactly one of them has a parent
    // without v (or is the root).
    int tops = 0;
    for (std::size_t i = 0; i < nb; ++i) {
      if (!sets[i].contains(v)) continue;
      int p = td.parent[i];
      if (p < 0 || !sets[static_cast<std::size_t>(p)].contains(v)) ++tops;
    }
    if (tops != 1) {
      throw InputError("vertex " + std::to_string(v) + " has " + std::to_string(tops) +
                       " disconnected bag groups (expected 1)");
    }
  }
}

std::vector<NiceNode> classify_nice(const TreeDecomposition& td) {
  auto kids = td.children();
  std::vector<NiceNode> out(td.bags.size());
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    const auto& bag = td.bags[i];
    const auto& ch = kids[i];
    if (ch.empty()) {
      if (!bag.empty()) throw InputError("nice decomposition leaf bag must be empty");
      out[i] = {BagKind::Leaf, -1};
    } else if (ch.size() == 2) {
      if (td.bags[static_cast<std::size_t>(ch[0])] != bag || td.bags[static_cast<std::size_t>(ch[1])] != bag) {
        throw InputError("join bag differs from a child bag");
      }
      out[i] = {BagKind::Join, -1};
    } else if (ch.size() == 1) {
      const auto& c = td.bags[static_cast<std::size_t>(ch[0])];
      std::vector<Vertex> diff;
      if (bag.size() == c.size() + 1) {
        std::set_difference(bag.begin(), bag.end(), c.begin(), c.end(), std::back_inserter(diff));
        if (diff.size() != 1 || !std::includes(bag.begin(), bag.end(), c.begin(), c.end())) {
          throw InputError("introduce bag is not its child plus one vertex");
        }
        out[i] = {BagKind::Introduce, diff[0]};
      } else if (c.size() == bag.size() + 1) {
        std::set_difference(c.begin(), c.end(), bag.begin(), bag.end(), std::back_inserter(diff));
        if (diff.size() != 1 || !std::includes(c.begin(), c.end(), bag.begin(), bag.end())) {
          throw InputError("forget bag is not its child minus one vertex");
        }
        out[i] = {BagKind::Forget, diff[0]};
      } else {
        throw InputError("bag with one child is neither introduce nor forget");
      }
    } else {
      throw InputError("nice decomposition bag has more than two children");
    }
  }
  return out;
}

TreeDecomposition decompose(const TemporalGraph& g) {
  if (g.num_vertices() == 0) throw InputError("cannot decompose an empty graph");
  auto order = g.num_vertices() <= 16 ? exact_order(g) : min_fill_order(g);
  return from_order(g, order);
}

TreeDecomposition to_nice(const TreeDecomposition& td, Vertex r) {
  const auto nb = td.bags.size();
  std::vector<std::vector<int>> adj(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    if (td.parent[i] >= 0) {
      adj[i].push_back(td.parent[i]);
      adj[static_cast<std::size_t>(td.parent[i])].push_back(static_cast<int>(i));
    }
  }
  int start = -1;
  for (std::size_t i = 0; i < nb && start < 0; ++i) {
    if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), r)) start = static_cast<int>(i);
  }
  if (start < 0) throw InputError("root vertex appears in no bag");

  TreeDecomposition out;
  out.nice = true;
  auto add = [&](std::vector<Vertex> bag, std::vector<int> kids) {
    int id = static_cast<int>(out.bags.size());
    out.bags.push_back(std::move(bag));
    out.parent.push_back(-1);
    for (int k : kids) out.parent[static_cast<std::size_t>(k)] = id;
    return id;
  };
  // Walks from node `from` (holding `have`) to bag `want` by forgetting then
  // introducing one vertex at a time; returns the top node.
  auto morph = [&](int from, std::vector<Vertex> have, const std::vector<Vertex>& want) {
    for (Vertex v : std::vector<Vertex>(have)) {
      if (!std::binary_search(want.begin(), want.end(), v)) {
        have.erase(std::find(have.begin(), have.end(), v));
        from = add(have, {from});
      }
    }
    for (Vertex v : want) {
      if (!std::binary_search(have.begin(), have.end(), v)) {
        have.insert(std::upper_bound(have.begin(), have.end(), v), v);
        from = add(have, {from});
      }
    }
    return from;
  };
  std::function<int(int, int)> build = [&](int node, int from) {
    const auto& bag = td.bags[static_cast<std::size_t>(node)];
    std::vector<int> tops;
    for (int k : adj[static_cast<std::size_t>(node)]) {
      if (k == from) continue;
      int sub = build(k, node);
      tops.push_back(morph(sub, td.bags[static_cast<std::size_t>(k)], bag));
    }
    if (tops.empty()) return morph(add({}, {}), {}, bag);
    int acc = tops[0];
    for (std::size_t i = 1; i < tops.size(); ++i) acc = add(bag, {acc, tops[i]});
    return acc;
  };
  int top = build(start, -1);
  out.root_bag = morph(top, td.bags[static_cast<std::size_t>(start)], {r});
  return out;
}

TreeDecomposition make_nice_decomposition(const TemporalGraph& g, Vertex r, int width_cap) {
  if (!g.valid_vertex(r)) throw InputError("root out of range");
  auto td = decompose(g);
  if (td.width() > width_cap) {
    throw RefusalError("tree decomposition width " + std::to_string(td.width()) + " exceeds cap " +
                       std::to_string(width_cap));
  }
  return to_nice(td, r);
}

}  // namespace tempconn
