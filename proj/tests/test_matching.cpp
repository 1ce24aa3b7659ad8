#include <doctest.h>

#include <random>
#include <set>

#include "treegh/errors.hpp"
#include "treegh/matching.hpp"

using namespace treegh;

namespace {

// Maximum matching size by DP over subsets of used right vertices.
int exhaustive_maximum(int left, int right, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(left);
  for (const auto& [u, v] : edges) adj[u].push_back(v);
  std::vector<int> best(1 << right, -1);
  best[0] = 0;
  int answer = 0;
  for (int u = 0; u < left; ++u) {
    std::vector<int> next = best;
    for (int mask = 0; mask < (1 << right); ++mask) {
      if (best[mask] < 0) continue;
      for (int v : adj[u]) {
        if (mask & (1 << v)) continue;
        next[mask | (1 << v)] = std::max(next[mask | (1 << v)], best[mask] + 1);
      }
    }
    best = std::move(next);
  }
  for (int b : best) answer = std::max(answer, b);
  return answer;
}

void check_valid(const Matching& m, int left, int right, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  int count = 0;
  for (int u = 0; u < left; ++u) {
    const int v = m.match_left[u];
    if (v == -1) continue;
    ++count;
    CHECK(edge_set.count({u, v}) == 1);
    CHECK(m.match_right[v] == u);
  }
  for (int v = 0; v < right; ++v) {
    if (m.match_right[v] != -1) CHECK(m.match_left[m.match_right[v]] == v);
  }
  CHECK(count == m.size);
}

}  // namespace

TEST_CASE("complete bipartite graph has a perfect matching") {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) edges.emplace_back(u, v);
  }
  const Matching m = hopcroft_karp(3, 3, edges);
  CHECK(m.size == 3);
  CHECK(m.perfect());
  check_valid(m, 3, 3, edges);
}

TEST_CASE("empty edge set gives an empty matching") {
  const Matching m = hopcroft_karp(2, 4, {});
  CHECK(m.size == 0);
  CHECK_FALSE(m.perfect());
  CHECK(hopcroft_karp(0, 0, {}).perfect());
}

TEST_CASE("perfect needs equal sides") {
  const Matching m = hopcroft_karp(2, 3, {{0, 0}, {1, 1}});
  CHECK(m.size == 2);
  CHECK_FALSE(m.perfect());
}

TEST_CASE("edges outside the sides are rejected") {
  CHECK_THROWS_AS(hopcroft_karp(2, 2, {{0, 2}}), ValidationError);
  CHECK_THROWS_AS(hopcroft_karp(2, 2, {{-1, 0}}), ValidationError);
}

TEST_CASE("augmenting paths are found") {
  // Greedy 0-0 blocks 1; the maximum rematches 0 to 1.
  const std::vector<std::pair<int, int>> edges{{0, 0}, {0, 1}, {1, 0}};
  const Matching m = hopcroft_karp(2, 2, edges);
  CHECK(m.size == 2);
  check_valid(m, 2, 2, edges);
}

TEST_CASE("maximum size agrees with exhaustive search") {
  std::mt19937 rng(23);
  for (int round = 0; round < 150; ++round) {
    const int left = std::uniform_int_distribution<int>(0, 10)(rng);
    const int right = std::uniform_int_distribution<int>(0, 10)(rng);
    const double density = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    std::bernoulli_distribution coin(density);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < left; ++u) {
      for (int v = 0; v < right; ++v) {
        if (coin(rng)) edges.emplace_back(u, v);
      }
    }
    const Matching m = hopcroft_karp(left, right, edges);
    CHECK(m.size == exhaustive_maximum(left, right, edges));
    check_valid(m, left, right, edges);
  }
}
