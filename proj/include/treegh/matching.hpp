#pragma once

#include <utility>
#include <vector>

namespace treegh {

/// Maximum-cardinality matching result. match_left[i] is the right vertex
/// matched to left vertex i, or -1; match_right is the inverse.
struct Matching {
  std::vector<int> match_left;
  std::vector<int> match_right;
  int size = 0;

  bool perfect() const {
    return static_cast<int>(match_left.size()) == size && static_cast<int>(match_right.size()) == size;
  }
};

/// Hopcroft-Karp, O(E sqrt(V)). Adjacency is scanned in sorted order so the
/// matching returned for a given edge list is deterministic.
Matching hopcroft_karp(int left_size, int right_size, const std::vector<std::pair<int, int>>& edges);

}  // namespace treegh
