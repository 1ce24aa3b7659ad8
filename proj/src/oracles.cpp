// Exponential reference solvers used to cross-check the fast algorithms.

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "treegh/errors.hpp"
#include "treegh/interleave.hpp"
#include "treegh/metric_tree.hpp"

namespace treegh {

namespace {

using Table = std::vector<std::vector<Rational>>;

Table all_distances(const MetricTree& t) {
  Table d;
  for (int v = 0; v < t.node_count(); ++v) d.push_back(distances_from(t, v));
  return d;
}

// Is there a pair of maps A -> B, B -> A whose joint correspondence has
// distortion <= bound?
bool correspondence_within(const Table& d1, const Table& d2, const Rational& bound) {
  const int n1 = static_cast<int>(d1.size());
  const int n2 = static_cast<int>(d2.size());
  std::vector<std::pair<int, int>> pairs;
  std::function<bool(int)> extend = [&](int k) {
    if (k == n1 + n2) return true;
    const bool left = k < n1;
    const int count = left ? n2 : n1;
    for (int c = 0; c < count; ++c) {
      const int x = left ? k : c;
      const int y = left ? c : k - n1;
      bool ok = true;
      for (const auto& [px, py] : pairs) {
        if (abs(d1[x][px] - d2[y][py]) > bound) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      pairs.emplace_back(x, y);
      if (extend(k + 1)) return true;
      pairs.pop_back();
    }
    return false;
  };
  return extend(0);
}

// Consistent leaf-image assignments: every node maps to the shift of some
// leaf image below it, and all leaves below a node agree.
std::vector<std::vector<MergePoint>> exact_maps(const MergeTree& src, const MergeTree& dst, const Rational& eps) {
  std::vector<int> leaves;
  for (int v = 0; v < src.size(); ++v) {
    if (src.is_leaf(v)) leaves.push_back(v);
  }
  std::vector<std::vector<MergePoint>> options;
  for (int leaf : leaves) options.push_back(points_at_height(dst, src.height(leaf) + eps));

  std::vector<std::vector<MergePoint>> found;
  std::vector<MergePoint> image(src.size());
  std::vector<bool> set(src.size(), false);
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == leaves.size()) {
      found.push_back(image);
      return;
    }
    for (const auto& y : options[k]) {
      std::vector<int> touched;
      bool ok = true;
      for (int v = leaves[k]; v != -1; v = src.parent(v)) {
        const MergePoint p = dst.point_on_path(y.node, src.height(v) + eps);
        if (set[v]) {
          ok = image[v] == p;
          break;
        }
        image[v] = p;
        set[v] = true;
        touched.push_back(v);
      }
      if (ok) extend(k + 1);
      for (int v : touched) set[v] = false;
    }
  };
  extend(0);
  return found;
}

// beta(alpha(x)) == x shifted by 2 eps, tested at every breakpoint height of
// either map rather than only where the composite can change.
bool round_trip_everywhere(const MergeTree& src, const MergeTree& dst, const std::vector<MergePoint>& a,
                           const std::vector<MergePoint>& b, const Rational& eps) {
  std::vector<Rational> ts = src.heights();
  for (const auto& h : dst.heights()) ts.push_back(h - eps);
  for (int c = 0; c < src.size(); ++c) {
    const int p = src.parent(c);
    for (const auto& t : ts) {
      if (t < src.height(c) || (p != -1 && t >= src.height(p))) continue;
      const MergePoint y = dst.point_on_path(a[c].node, t + eps);
      const MergePoint z = src.point_on_path(b[y.node].node, t + eps + eps);
      if (!(z == src.point_on_path(c, t + eps + eps))) return false;
    }
  }
  return true;
}

int leaf_count(const MergeTree& m) {
  int n = 0;
  for (int v = 0; v < m.size(); ++v) n += m.is_leaf(v) ? 1 : 0;
  return n;
}

}  // namespace

Rational gh_bruteforce_vertices(const MetricTree& t1, const MetricTree& t2, int max_size) {
  if (t1.node_count() > max_size || t2.node_count() > max_size) {
    throw SizeLimitError("brute-force GH is limited to " + std::to_string(max_size) + " nodes per tree");
  }
  const Table d1 = all_distances(t1);
  const Table d2 = all_distances(t2);
  std::vector<Rational> cands;
  for (const auto& r1 : d1) {
    for (const auto& a : r1) {
      for (const auto& r2 : d2) {
        for (const auto& b : r2) cands.push_back(abs(a - b));
      }
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  // The distortion of the optimum is one of the candidates; the largest is always feasible.
  std::size_t lo = 0;
  std::size_t hi = cands.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (correspondence_within(d1, d2, cands[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return cands[hi] * Rational(1, 2);
}

Rational interleaving_bruteforce(const MergeTree& f, const MergeTree& g, int max_leaves) {
  if (leaf_count(f) > max_leaves || leaf_count(g) > max_leaves) {
    throw SizeLimitError("brute-force interleaving is limited to " + std::to_string(max_leaves) + " leaves per tree");
  }
  for (const auto& eps : candidate_values(f, g).values) {
    const auto alphas = exact_maps(f, g, eps);
    if (alphas.empty()) continue;
    const auto betas = exact_maps(g, f, eps);
    for (const auto& a : alphas) {
      for (const auto& b : betas) {
        if (round_trip_everywhere(f, g, a, b, eps) && round_trip_everywhere(g, f, b, a, eps)) return eps;
      }
    }
  }
  throw std::logic_error("no candidate value admits an interleaving");
}

}  // namespace treegh
