#include "treegh/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "treegh/errors.hpp"

namespace treegh {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(int left, int right, const std::vector<std::pair<int, int>>& edges)
      : adj_(left), dist_(left), next_(left), m_{std::vector<int>(left, -1), std::vector<int>(right, -1), 0} {
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= left || v < 0 || v >= right) throw ValidationError("bipartite edge out of range");
      adj_[u].push_back(v);
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }

  Matching run() {
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      for (int u = 0; u < static_cast<int>(adj_.size()); ++u) {
        if (m_.match_left[u] == -1 && dfs(u)) ++m_.size;
      }
    }
    return std::move(m_);
  }

 private:
  // Layers free left vertices at 0; true when some augmenting path exists.
  bool bfs() {
    std::queue<int> q;
    for (int u = 0; u < static_cast<int>(adj_.size()); ++u) {
      if (m_.match_left[u] == -1) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        const int w = m_.match_right[v];
        if (w == -1) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int& i = next_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      const int v = adj_[u][i];
      const int w = m_.match_right[v];
      if (w == -1 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        m_.match_left[u] = v;
        m_.match_right[v] = u;
        ++i;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;
  std::vector<int> next_;
  Matching m_;
};

}  // namespace

Matching hopcroft_karp(int left_size, int right_size, const std::vector<std::pair<int, int>>& edges) {
  if (left_size < 0 || right_size < 0) throw ValidationError("negative bipartite side size");
  return HopcroftKarp(left_size, right_size, edges).run();
}

}  // namespace treegh
