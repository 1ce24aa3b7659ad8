#pragma once

#include <utility>

#include "treegh/interleave.hpp"
#include "treegh/metric_tree.hpp"
#include "treegh/rational.hpp"

namespace treegh {

enum class GhMode {
  kAllPairs,  // root both trees at every vertex pair
  kDiameter,  // root T1 at a diameter endpoint, T2 at every vertex
};

struct GhEstimate {
  Rational delta_hat;    // smallest pivot seen over the evaluated root pairs
  Rational certified;    // certified value of the chosen pair
  Rational lower_bound;  // certified / (14 c)
  Rational upper_bound;  // 2 certified
  Rational c_factor;     // largest certified/pivot ratio over the evaluated pairs
  std::pair<int, int> best_pair{0, 0};
  GhMode mode = GhMode::kDiameter;
  int pairs_evaluated = 0;
};

/// The chosen pair minimizes (certified, pivot), ties broken by (u, v).
GhEstimate approx_gh(const MetricTree& t1, const MetricTree& t2, GhMode mode = GhMode::kDiameter);

/// (certified / (14 c), 2 certified).
std::pair<Rational, Rational> gh_bounds_from_certified(const Rational& certified, const Rational& c_factor);

}  // namespace treegh
