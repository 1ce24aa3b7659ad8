#include "treegh/gh.hpp"

#include <tuple>

#include "treegh/errors.hpp"
#include "treegh/merge_tree.hpp"

namespace treegh {

std::pair<Rational, Rational> gh_bounds_from_certified(const Rational& certified, const Rational& c_factor) {
  if (c_factor.sign() <= 0) throw ValidationError("approximation factor must be positive");
  return {certified / (Rational(14) * c_factor), Rational(2) * certified};
}

GhEstimate approx_gh(const MetricTree& t1, const MetricTree& t2, GhMode mode) {
  GhEstimate est;
  est.mode = mode;
  std::vector<int> sources;
  if (mode == GhMode::kDiameter) {
    sources.push_back(diameter_endpoint(t1));
  } else {
    for (int u = 0; u < t1.node_count(); ++u) sources.push_back(u);
  }
  std::vector<MergeTree> g_trees;
  for (int v = 0; v < t2.node_count(); ++v) g_trees.push_back(build_merge_tree(t2, v));

  Rational best_pivot;
  bool first = true;
  for (int u : sources) {
    const MergeTree f = build_merge_tree(t1, u);
    for (int v = 0; v < t2.node_count(); ++v) {
      const InterleaveResult r = interleaving_distance(f, g_trees[v]);
      ++est.pairs_evaluated;
      if (first || r.factor > est.c_factor) est.c_factor = r.factor;
      if (first || r.pivot < est.delta_hat) est.delta_hat = r.pivot;
      // Pairs arrive in (u, v) order, so a strict comparison keeps the first tie.
      if (first || std::tie(r.certified, r.pivot) < std::tie(est.certified, best_pivot)) {
        est.certified = r.certified;
        best_pivot = r.pivot;
        est.best_pair = {u, v};
      }
      first = false;
    }
  }
  std::tie(est.lower_bound, est.upper_bound) = gh_bounds_from_certified(est.certified, est.c_factor);
  return est;
}

}  // namespace treegh
