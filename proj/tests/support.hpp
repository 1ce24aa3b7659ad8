#pragma once

#include <random>
#include <vector>

#include "treegh/merge_tree.hpp"
#include "treegh/metric_tree.hpp"
#include "treegh/rational.hpp"

namespace treegh::testing {

inline Rational random_length(std::mt19937& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

/// Uniform random recursive tree: node i attaches to a random earlier node.
inline MetricTree random_metric_tree(std::mt19937& rng, int n, int max_num = 6, int max_den = 3) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.push_back({pick(rng), v, random_length(rng, max_num, max_den)});
  }
  return MetricTree(n, std::move(edges));
}

inline MetricTree random_unit_tree(std::mt19937& rng, int n) { return random_metric_tree(rng, n, 1, 1); }

/// Random merge tree with at most max_leaves leaves and max_nodes nodes. Small
/// integer-over-small-denominator heights make equal heights common.
inline MergeTree random_merge_tree(std::mt19937& rng, int max_leaves, int max_nodes, int max_num = 3, int max_den = 2) {
  std::uniform_int_distribution<int> size_pick(1, max_nodes);
  const int n = size_pick(rng);
  std::vector<int> parents{-1};
  std::vector<Rational> heights{Rational(std::uniform_int_distribution<int>(-2, 2)(rng))};
  std::vector<int> kids{0};
  int leaves = 1;
  while (static_cast<int>(parents.size()) < n) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(parents.size()) - 1);
    const int p = pick(rng);
    if (kids[p] > 0 && leaves == max_leaves) {
      // Only extend existing leaves once the leaf budget is used up.
      bool any_leaf = false;
      for (int v = 0; v < static_cast<int>(kids.size()); ++v) any_leaf = any_leaf || kids[v] == 0;
      if (!any_leaf) break;
      continue;
    }
    if (kids[p] > 0) ++leaves;
    ++kids[p];
    parents.push_back(p);
    heights.push_back(heights[p] - random_length(rng, max_num, max_den));
    kids.push_back(0);
  }
  return MergeTree(std::move(heights), std::move(parents));
}

inline int leaf_count(const MergeTree& m) {
  int n = 0;
  for (int v = 0; v < m.size(); ++v) n += m.is_leaf(v) ? 1 : 0;
  return n;
}

}  // namespace treegh::testing
