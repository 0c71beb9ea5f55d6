#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "tempconn/steiner.hpp"
#include "tempconn/temporal_graph.hpp"

namespace tempconn {

// std::mt19937_64 has a fully specified output sequence; bounded integers
// are drawn by rejection so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

enum class GraphKind { Tree, Cycle, General };

GraphKind parse_graph_kind(const std::string& text);
const char* to_string(GraphKind kind);

struct RandomGraphSpec {
  GraphKind kind = GraphKind::General;
  int n = 5;
  int labels_per_edge = 2;     // each edge gets 1..labels_per_edge distinct labels
  Weight weight_min = 1;
  Weight weight_max = 5;
  int label_range = 0;         // labels drawn from 1..label_range; 0 means 2n
  int extra_edges = -1;        // General only; -1 means n / 2
  // Redraw from derived seeds until the graph is temporally connected in
  // connect_mode. Gives up with InfeasibleError after max_attempts.
  bool require_connected = false;
  PathMode connect_mode = PathMode::NonStrict;
  int max_attempts = 100000;
};

TemporalGraph gen_random(const RandomGraphSpec& spec, std::uint64_t seed);

struct RandomDstSpec {
  int n = 5;
  int arcs = 8;
  Weight weight_max = 5;  // weights drawn from 0..weight_max
};

// Root 0 and a nonempty random terminal subset of the other nodes.
DstInstance gen_random_dst(const RandomDstSpec& spec, std::uint64_t seed);

// Seeds for independent sub-streams derived from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace tempconn
