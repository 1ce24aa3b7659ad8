#include "treegh/merge_tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "text_lines.hpp"
#include "treegh/errors.hpp"

namespace treegh {

MergeTree::MergeTree(std::vector<Rational> heights, std::vector<int> parents)
    : heights_(std::move(heights)), parent_(std::move(parents)) {
  const int n = static_cast<int>(heights_.size());
  if (n == 0) throw ValidationError("a merge tree needs at least one node");
  if (static_cast<int>(parent_.size()) != n) throw ValidationError("heights and parents differ in length");
  children_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    const int p = parent_[v];
    if (p == -1) {
      if (root_ != -1) throw ValidationError("multiple roots: " + std::to_string(root_) + " and " + std::to_string(v));
      root_ = v;
      continue;
    }
    if (p < 0 || p >= n) throw ValidationError("node " + std::to_string(v) + " has unknown parent " + std::to_string(p));
    if (p == v) throw ValidationError("node " + std::to_string(v) + " is its own parent");
    if (!(heights_[v] < heights_[p])) {
      throw ValidationError("node " + std::to_string(v) + " is not strictly below its parent " + std::to_string(p));
    }
    children_[p].push_back(v);
  }
  if (root_ == -1) throw ValidationError("no root (every node has a parent)");

  // Iterative DFS for entry/exit times; nodes unreachable from the root lie on a cycle.
  tin_.assign(n, -1);
  tout_.assign(n, -1);
  bottom_up_.reserve(n);
  int timer = 0;
  std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
  tin_[root_] = timer++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children_[v].size()) {
      const int c = children_[v][next++];
      tin_[c] = timer++;
      stack.emplace_back(c, 0);
    } else {
      tout_[v] = timer++;
      bottom_up_.push_back(v);
      stack.pop_back();
    }
  }
  if (static_cast<int>(bottom_up_.size()) != n) throw ValidationError("parent structure contains a cycle");

  subtree_min_ = heights_;
  for (int v : bottom_up_) {
    if (parent_[v] != -1 && subtree_min_[v] < subtree_min_[parent_[v]]) subtree_min_[parent_[v]] = subtree_min_[v];
  }

  int levels = 1;
  while ((1 << levels) < n) ++levels;
  lift_.assign(levels, std::vector<int>(n, -1));
  lift_[0] = parent_;
  for (int k = 1; k < levels; ++k) {
    for (int v = 0; v < n; ++v) {
      const int mid = lift_[k - 1][v];
      lift_[k][v] = mid == -1 ? -1 : lift_[k - 1][mid];
    }
  }
}

MergePoint MergeTree::point_on_path(int v, const Rational& h) const {
  if (h < heights_[v]) throw ValidationError("requested a point below node " + std::to_string(v));
  for (int k = static_cast<int>(lift_.size()) - 1; k >= 0; --k) {
    const int a = lift_[k][v];
    if (a != -1 && heights_[a] <= h) v = a;
  }
  return {v, h};
}

MergePoint MergeTree::normalize(const MergePoint& p) const {
  if (!valid_node(p.node)) throw ValidationError("point references unknown node " + std::to_string(p.node));
  return point_on_path(p.node, p.height);
}

bool MergeTree::is_valid(const MergePoint& p) const {
  if (!valid_node(p.node) || p.height < heights_[p.node]) return false;
  const int up = parent_[p.node];
  return up == -1 || p.height < heights_[up];
}

MergeTree build_merge_tree(const MetricTree& t, int s) {
  if (!t.valid_node(s)) throw ValidationError("root choice " + std::to_string(s) + " is not a node of the tree");
  const int n = t.node_count();
  std::vector<Rational> dist(n);
  std::vector<int> parent(n, -2);
  parent[s] = -1;
  std::vector<int> stack{s};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& nb : t.neighbors(v)) {
      if (parent[nb.node] != -2) continue;
      parent[nb.node] = v;
      dist[nb.node] = dist[v] + t.edge(nb.edge).length;
      stack.push_back(nb.node);
    }
  }

  const bool absorb = n > 1 && t.is_leaf(s);
  std::vector<Rational> heights;
  std::vector<int> parents;
  heights.reserve(n);
  parents.reserve(n);
  for (int v = 0; v < n; ++v) {
    if (absorb && v == s) continue;
    heights.push_back(-dist[v]);
    int p = parent[v];
    if (absorb && p == s) p = -1;
    parents.push_back(p == -1 ? -1 : merge_node_of(t, s, p));
  }
  return MergeTree(std::move(heights), std::move(parents));
}

int merge_node_of(const MetricTree& t, int s, int v) {
  if (!t.valid_node(v)) throw ValidationError("invalid metric node " + std::to_string(v));
  if (t.node_count() > 1 && t.is_leaf(s)) {
    if (v == s) return -1;
    return v > s ? v - 1 : v;
  }
  return v;
}

SuppressResult suppress_degree_two_mapped(const MergeTree& m) {
  const int n = m.size();
  std::vector<bool> keep(n);
  for (int v = 0; v < n; ++v) keep[v] = m.children(v).size() != 1;

  std::vector<int> new_id(n, -1);
  std::vector<int> to_source;
  for (int v = 0; v < n; ++v) {
    if (keep[v]) {
      new_id[v] = static_cast<int>(to_source.size());
      to_source.push_back(v);
    }
  }

  // Lowest kept node at or below each node along single-child chains.
  std::vector<int> below(n, -1);
  for (int v : m.bottom_up()) below[v] = keep[v] ? v : below[m.children(v).front()];

  std::vector<Rational> heights;
  std::vector<int> parents;
  for (int v : to_source) {
    heights.push_back(m.height(v));
    int p = m.parent(v);
    while (p != -1 && !keep[p]) p = m.parent(p);
    parents.push_back(p == -1 ? -1 : new_id[p]);
  }

  std::vector<int> from_source(n);
  for (int v = 0; v < n; ++v) from_source[v] = new_id[below[v]];
  return {MergeTree(std::move(heights), std::move(parents)), std::move(to_source), std::move(from_source)};
}

MergeTree suppress_degree_two(const MergeTree& m) { return suppress_degree_two_mapped(m).tree; }

MergePoint shift(const MergeTree& m, const MergePoint& x, const Rational& eps) {
  if (eps.sign() < 0) throw ValidationError("shift amount must be non-negative");
  return m.point_on_path(x.node, x.height + eps);
}

Rational extent(const MergeTree& m, const MergePoint& x) { return x.height - m.subtree_min(x.node); }

TrimResult trim_mapped(const MergeTree& m, const Rational& tau) {
  if (tau.sign() < 0) throw ValidationError("trim threshold must be non-negative");
  const int n = m.size();
  const int root = m.root();
  if (m.height(root) - m.subtree_min(root) < tau) {
    const Rational h = m.subtree_min(root) + tau;
    TrimResult out{MergeTree({h}, {-1}), true, {m.point_on_path(root, h)}, {}};
    out.lowest.assign(n, MergePoint{0, h});
    return out;
  }

  std::vector<bool> survives(n);
  for (int v = 0; v < n; ++v) survives[v] = m.height(v) - m.subtree_min(v) >= tau;

  std::vector<int> new_id(n, -1);
  std::vector<Rational> heights;
  std::vector<int> parents;
  std::vector<MergePoint> origin;
  for (int v = 0; v < n; ++v) {
    if (!survives[v]) continue;
    new_id[v] = static_cast<int>(heights.size());
    heights.push_back(m.height(v));
    origin.push_back(m.node_point(v));
  }
  for (int v = 0; v < n; ++v) {
    if (survives[v]) parents.push_back(m.parent(v) == -1 ? -1 : new_id[m.parent(v)]);
  }

  // A removed node whose parent survives heads a removed subtree; give it a cut leaf
  // unless the cut lands exactly on the parent.
  std::vector<MergePoint> head_image(n);
  for (int v = 0; v < n; ++v) {
    if (survives[v]) continue;
    const int p = m.parent(v);
    if (!survives[p]) continue;
    const Rational cut = m.subtree_min(v) + tau;
    if (cut < m.height(p)) {
      const int id = static_cast<int>(heights.size());
      heights.push_back(cut);
      parents.push_back(new_id[p]);
      origin.push_back({v, cut});
      head_image[v] = {id, cut};
    } else {
      head_image[v] = {new_id[p], m.height(p)};
    }
  }

  std::vector<MergePoint> lowest(n);
  // Parents are visited before children in reverse bottom-up order.
  const auto& order = m.bottom_up();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (survives[v]) {
      lowest[v] = {new_id[v], m.height(v)};
    } else if (survives[m.parent(v)]) {
      lowest[v] = head_image[v];
    } else {
      lowest[v] = lowest[m.parent(v)];
    }
  }
  return {MergeTree(std::move(heights), std::move(parents)), false, std::move(origin), std::move(lowest)};
}

MergeTree trim(const MergeTree& m, const Rational& tau) { return trim_mapped(m, tau).tree; }

MergeTree subtree(const MergeTree& m, int u) {
  if (!m.valid_node(u)) throw ValidationError("invalid subtree root " + std::to_string(u));
  std::vector<int> new_id(m.size(), -1);
  std::vector<Rational> heights;
  std::vector<int> members;
  for (int v = 0; v < m.size(); ++v) {
    if (m.is_ancestor(u, v)) {
      new_id[v] = static_cast<int>(members.size());
      members.push_back(v);
      heights.push_back(m.height(v));
    }
  }
  std::vector<int> parents;
  for (int v : members) parents.push_back(v == u ? -1 : new_id[m.parent(v)]);
  return MergeTree(std::move(heights), std::move(parents));
}

std::vector<MergePoint> points_at_height(const MergeTree& m, const Rational& h) {
  std::vector<MergePoint> out;
  for (int v = 0; v < m.size(); ++v) {
    const Rational& hv = m.height(v);
    if (hv > h) continue;
    const int p = m.parent(v);
    if (hv == h || p == -1 || h < m.height(p)) out.push_back({v, h});
  }
  return out;
}

std::optional<EdgeLengthStats> edge_length_stats(const MergeTree& a) {
  std::optional<EdgeLengthStats> out;
  for (int v = 0; v < a.size(); ++v) {
    if (a.parent(v) == -1) continue;
    Rational len = a.height(a.parent(v)) - a.height(v);
    if (!out) {
      out = EdgeLengthStats{len, len};
    } else {
      if (len < out->min_length) out->min_length = len;
      if (len > out->max_length) out->max_length = len;
    }
  }
  return out;
}

std::optional<EdgeLengthStats> edge_length_stats(const MergeTree& a, const MergeTree& b) {
  auto sa = edge_length_stats(a);
  auto sb = edge_length_stats(b);
  if (!sa) return sb;
  if (!sb) return sa;
  return EdgeLengthStats{min(sa->min_length, sb->min_length), max(sa->max_length, sb->max_length)};
}

MergeTree shift_heights(const MergeTree& m, const Rational& c) {
  std::vector<Rational> heights = m.heights();
  for (auto& h : heights) h += c;
  return MergeTree(std::move(heights), m.parents());
}

MergeTree scale_heights(const MergeTree& m, const Rational& k) {
  if (k.sign() <= 0) throw ValidationError("scale factor must be positive");
  std::vector<Rational> heights = m.heights();
  for (auto& h : heights) h *= k;
  return MergeTree(std::move(heights), m.parents());
}

std::string canonical_form(const MergeTree& m) {
  std::vector<std::string> code(m.size());
  for (int v : m.bottom_up()) {
    std::vector<std::string> parts;
    for (int c : m.children(v)) parts.push_back(std::move(code[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(" + m.height(v).str();
    for (auto& p : parts) s += p;
    s += ")";
    code[v] = std::move(s);
  }
  return code[m.root()];
}

bool equivalent(const MergeTree& a, const MergeTree& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

MergeTree parse_merge_tree(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ValidationError("merge-tree file is empty");
  if (lines.front().fields.size() != 1) throw ValidationError("line " + std::to_string(lines.front().number) + ": expected the node count alone");
  const int n = detail::parse_int(lines.front().fields[0], lines.front().number);
  if (n < 1) throw ValidationError("node count must be positive");
  if (static_cast<int>(lines.size()) - 1 != n) {
    throw ValidationError("expected " + std::to_string(n) + " node lines, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Rational> heights(n);
  std::vector<int> parents(n);
  std::vector<bool> seen(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.fields.size() != 3) throw ValidationError("line " + std::to_string(line.number) + ": expected 'id height parent'");
    const int id = detail::parse_int(line.fields[0], line.number);
    if (id < 0 || id >= n) throw ValidationError("line " + std::to_string(line.number) + ": node id out of range");
    if (seen[id]) throw ValidationError("line " + std::to_string(line.number) + ": node " + std::to_string(id) + " listed twice");
    seen[id] = true;
    try {
      heights[id] = Rational::parse(line.fields[1]);
    } catch (const ValidationError& err) {
      throw ValidationError("line " + std::to_string(line.number) + ": " + err.what());
    }
    parents[id] = detail::parse_int(line.fields[2], line.number);
  }
  return MergeTree(std::move(heights), std::move(parents));
}

std::string write_merge_tree(const MergeTree& m) {
  std::ostringstream os;
  os << m.size() << '\n';
  for (int v = 0; v < m.size(); ++v) os << v << ' ' << m.height(v).str() << ' ' << m.parent(v) << '\n';
  return os.str();
}

}  // namespace treegh
