#include "tempconn/brute_force.hpp"

#include <algorithm>
#include <string>

#include "tempconn/error.hpp"
#include "tempconn/reachability.hpp"

namespace tempconn {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const TemporalGraph& g, PathMode mode, std::optional<Vertex> root)
      : g_(g), sweeper_(g), mode_(mode), root_(root) {}

  std::optional<Solution> run() {
    const auto m = static_cast<std::size_t>(g_.num_edges());
    chosen_.assign(m, false);
    for (EdgeIndex e = 0; e < g_.num_edges(); ++e) {
      if (g_.edge(e).weight == 0) {
        chosen_[static_cast<std::size_t>(e)] = true;
      } else {
        branch_.push_back(e);
      }
    }
    // Expensive edges first: excluding them early prunes the most cost.
    std::stable_sort(branch_.begin(), branch_.end(), [&](EdgeIndex a, EdgeIndex b) {
      return g_.edge(a).weight > g_.edge(b).weight;
    });
    std::vector<bool> all(m, true);
    if (!ok(all)) return std::nullopt;
    best_cost_ = 0;
    for (const auto& e : g_.edges()) best_cost_ += e.weight;
    best_ = all;
    optimistic_ = all;
    search(0, 0);

    // Drop zero-weight edges that are not needed, in index order.
    for (EdgeIndex e = 0; e < g_.num_edges(); ++e) {
      auto idx = static_cast<std::size_t>(e);
      if (g_.edge(e).weight != 0 || !best_[idx]) continue;
      best_[idx] = false;
      if (!ok(best_)) best_[idx] = true;
    }
    std::vector<EdgeIndex> out;
    for (EdgeIndex e = 0; e < g_.num_edges(); ++e) {
      if (best_[static_cast<std::size_t>(e)]) out.push_back(e);
    }
    return Solution::from_indices(g_, std::move(out));
  }

 private:
  bool ok(const std::vector<bool>& enabled) const {
    return root_ ? sweeper_.reaches_all(*root_, mode_, &enabled) : sweeper_.all_pairs(mode_, &enabled);
  }

  // chosen_ holds decided-in edges; optimistic_ additionally holds every
  // undecided edge.
  void search(std::size_t depth, Weight cost) {
    if (cost >= best_cost_) return;
    if (ok(chosen_)) {
      best_cost_ = cost;
      best_ = chosen_;
      return;
    }
    if (depth == branch_.size()) return;
    const auto e = static_cast<std::size_t>(branch_[depth]);
    optimistic_[e] = false;
    if (ok(optimistic_)) search(depth + 1, cost);
    optimistic_[e] = true;
    chosen_[e] = true;
    search(depth + 1, cost + g_.edge(branch_[depth]).weight);
    chosen_[e] = false;
  }

  const TemporalGraph& g_;
  ReachabilitySweeper sweeper_;
  PathMode mode_;
  std::optional<Vertex> root_;
  std::vector<EdgeIndex> branch_;
  std::vector<bool> chosen_, optimistic_, best_;
  Weight best_cost_ = 0;
};

}  // namespace

std::optional<Solution> brute_force(const TemporalGraph& g, PathMode mode, std::optional<Vertex> root,
                                    int edge_cap) {
  if (root && !g.valid_vertex(*root)) throw InputError("root out of range");
  int positive = 0;
  for (const auto& e : g.edges()) positive += e.weight > 0 ? 1 : 0;
  if (positive > edge_cap) {
    throw RefusalError("brute force refuses " + std::to_string(positive) +
                       " positive-weight edges (cap " + std::to_string(edge_cap) + ")");
  }
  return BranchAndBound(g, mode, root).run();
}

}  // namespace tempconn
