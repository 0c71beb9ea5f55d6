#pragma once

#include <vector>

#include "tempconn/temporal_graph.hpp"

namespace tempconn {

enum class BagKind { Leaf, Introduce, Forget, Join };

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each sorted ascending
  std::vector<int> parent;                // -1 at the root
  int root_bag = 0;
  bool nice = false;

  int width() const;
  std::vector<std::vector<int>> children() const;
};

// Bag node classification for a nice decomposition, with the vertex that is
// introduced or forgotten (-1 otherwise).
struct NiceNode {
  BagKind kind = BagKind::Leaf;
  Vertex vertex = -1;
};

// Checks edge coverage, vertex coverage and the running-intersection
// property on the underlying graph. Throws InputError describing the first
// violation.
void validate_decomposition(const TemporalGraph& g, const TreeDecomposition& td);

// Classifies every bag of a nice decomposition (empty leaves, one-vertex
// introduce/forget steps, joins of two identical bags). Throws InputError if
// the decomposition is not nice.
std::vector<NiceNode> classify_nice(const TreeDecomposition& td);

// Elimination-order decomposition: exact treewidth for n <= 16, greedy
// min-fill otherwise.
TreeDecomposition decompose(const TemporalGraph& g);

// Nice form whose root bag is {r}. Throws RefusalError if the width exceeds
// width_cap.
TreeDecomposition make_nice_decomposition(const TemporalGraph& g, Vertex r, int width_cap);

// Re-roots and converts an arbitrary valid decomposition to nice form with
// root bag {r}.
TreeDecomposition to_nice(const TreeDecomposition& td, Vertex r);

}  // namespace tempconn
