#include "tempconn/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

namespace tempconn {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("Rng::below needs a positive bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("Rng::between with an empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

GraphKind parse_graph_kind(const std::string& text) {
  if (text == "tree") return GraphKind::Tree;
  if (text == "cycle") return GraphKind::Cycle;
  if (text == "general") return GraphKind::General;
  throw InputError("unknown graph kind '" + text + "'");
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Tree: return "tree";
    case GraphKind::Cycle: return "cycle";
    case GraphKind::General: return "general";
  }
  return "?";
}

namespace {

void add_labelled(TemporalGraph& g, Rng& rng, const RandomGraphSpec& spec, int label_range, Vertex u, Vertex v) {
  const int count = static_cast<int>(rng.between(1, std::min(spec.labels_per_edge, label_range)));
  std::set<std::int64_t> labels;
  while (static_cast<int>(labels.size()) < count) labels.insert(rng.between(1, label_range));
  for (auto t : labels) g.add_edge(u, v, TimeLabel{t}, rng.between(spec.weight_min, spec.weight_max));
}

TemporalGraph gen_shape(const RandomGraphSpec& spec, std::uint64_t seed);

}  // namespace

TemporalGraph gen_random(const RandomGraphSpec& spec, std::uint64_t seed) {
  if (!spec.require_connected) return gen_shape(spec, seed);
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    auto g = gen_shape(spec, attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (is_connected(g, spec.connect_mode)) return g;
  }
  throw InfeasibleError("no temporally connected graph after " + std::to_string(spec.max_attempts) + " draws");
}

namespace {

TemporalGraph gen_shape(const RandomGraphSpec& spec, std::uint64_t seed) {
  if (spec.n < 1) throw InputError("random graph needs n >= 1");
  if (spec.labels_per_edge < 1) throw InputError("labels per edge must be at least 1");
  if (spec.weight_min < 0 || spec.weight_max < spec.weight_min) throw InputError("bad weight range");
  if (spec.kind == GraphKind::Cycle && spec.n < 3) throw InputError("a cycle needs n >= 3");
  const int label_range = spec.label_range > 0 ? spec.label_range : 2 * spec.n;
  Rng rng(seed);
  TemporalGraph g(spec.n);

  std::vector<Vertex> perm(static_cast<std::size_t>(spec.n));
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

  std::set<std::pair<Vertex, Vertex>> used;
  auto link = [&](Vertex a, Vertex b) {
    used.insert({std::min(a, b), std::max(a, b)});
    add_labelled(g, rng, spec, label_range, a, b);
  };
  if (spec.kind == GraphKind::Cycle) {
    for (Vertex i = 0; i < spec.n; ++i) link(i, (i + 1) % spec.n);
    return g;
  }
  for (int i = 1; i < spec.n; ++i) {
    link(perm[rng.below(static_cast<std::uint64_t>(i))], perm[static_cast<std::size_t>(i)]);
  }
  if (spec.kind == GraphKind::General) {
    const int extra = spec.extra_edges >= 0 ? spec.extra_edges : spec.n / 2;
    const std::int64_t possible = static_cast<std::int64_t>(spec.n) * (spec.n - 1) / 2 - (spec.n - 1);
    for (int added = 0; added < std::min<std::int64_t>(extra, possible);) {
      auto a = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(spec.n)));
      auto b = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(spec.n)));
      if (a == b || used.contains({std::min(a, b), std::max(a, b)})) continue;
      link(a, b);
      ++added;
    }
  }
  return g;
}

}  // namespace

DstInstance gen_random_dst(const RandomDstSpec& spec, std::uint64_t seed) {
  if (spec.n < 2) throw InputError("random DST needs n >= 2");
  Rng rng(seed);
  DstInstance inst{Digraph(spec.n), 0, {}};
  const int max_arcs = spec.n * (spec.n - 1);
  while (inst.graph.num_arcs() < std::min(spec.arcs, max_arcs)) {
    auto u = static_cast<Node>(rng.below(static_cast<std::uint64_t>(spec.n)));
    auto v = static_cast<Node>(rng.below(static_cast<std::uint64_t>(spec.n)));
    if (u == v || inst.graph.find_arc(u, v)) continue;
    inst.graph.add_arc(u, v, rng.between(0, spec.weight_max));
  }
  for (Node v = 1; v < spec.n; ++v) {
    if (rng.coin()) inst.terminals.push_back(v);
  }
  if (inst.terminals.empty()) inst.terminals.push_back(static_cast<Node>(rng.between(1, spec.n - 1)));
  return inst;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace tempconn
