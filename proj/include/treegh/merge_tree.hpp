#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "treegh/metric_tree.hpp"
#include "treegh/rational.hpp"

namespace treegh {

/// A point of a merge tree, stored as the lowest node on its root path
/// together with its height. Three shapes share this representation:
///   - a node:               height == height(node)
///   - an edge interior:     height(node) < height < height(parent(node))
///   - the ray above root:   node == root, height > height(root)
/// Points are only produced in this normalized form by MergeTree, so two
/// points are the same point exactly when they compare equal.
struct MergePoint {
  int node = 0;
  Rational height;

  friend bool operator==(const MergePoint&, const MergePoint&) = default;
};

/// Rooted tree with strictly increasing heights toward the root and an
/// implicit edge from the root up to +infinity. Node ids are 0..size()-1.
class MergeTree {
 public:
  /// parents[v] == -1 marks the root. Throws ValidationError unless there is
  /// exactly one root, the parent structure is acyclic and every child lies
  /// strictly below its parent.
  MergeTree(std::vector<Rational> heights, std::vector<int> parents);

  int size() const { return static_cast<int>(heights_.size()); }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  std::span<const int> children(int v) const { return children_[v]; }
  const Rational& height(int v) const { return heights_[v]; }
  const std::vector<Rational>& heights() const { return heights_; }
  const std::vector<int>& parents() const { return parent_; }
  bool is_leaf(int v) const { return children_[v].empty(); }
  bool valid_node(int v) const { return v >= 0 && v < size(); }
  /// Minimum height over the subtree of v (v included).
  const Rational& subtree_min(int v) const { return subtree_min_[v]; }
  /// Nodes ordered so that every child precedes its parent.
  const std::vector<int>& bottom_up() const { return bottom_up_; }

  /// Node ancestry, reflexive.
  bool is_ancestor(int ancestor, int descendant) const {
    return tin_[ancestor] <= tin_[descendant] && tout_[descendant] <= tout_[ancestor];
  }
  /// Point ancestry, reflexive.
  bool is_ancestor(const MergePoint& a, const MergePoint& b) const {
    return a.height >= b.height && is_ancestor(a.node, b.node);
  }

  MergePoint node_point(int v) const { return {v, heights_[v]}; }
  /// The ancestor of node v at height h >= height(v).
  MergePoint point_on_path(int v, const Rational& h) const;
  /// Re-normalizes (node, height) pairs read from outside; throws
  /// ValidationError if the node is unknown or the height lies below it.
  MergePoint normalize(const MergePoint& p) const;
  bool is_valid(const MergePoint& p) const;

  bool is_node_point(const MergePoint& p) const { return p.height == heights_[p.node]; }
  bool is_above_root(const MergePoint& p) const { return p.node == root_ && p.height > heights_[root_]; }

 private:
  std::vector<Rational> heights_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  int root_ = -1;
  std::vector<int> tin_;
  std::vector<int> tout_;
  std::vector<Rational> subtree_min_;
  std::vector<int> bottom_up_;
  std::vector<std::vector<int>> lift_;  // lift_[k][v]: 2^k-th ancestor or -1
};

struct EdgeLengthStats {
  Rational min_length;
  Rational max_length;
};

/// Merge tree of f(x) = -d(s, x) over t. When s is a leaf of a tree with more
/// than one node, s is absorbed into the infinite edge and its neighbor
/// becomes the root; node ids above s then shift down by one (see
/// merge_node_of). Otherwise node ids coincide with the metric tree's.
MergeTree build_merge_tree(const MetricTree& t, int s);
/// Merge-tree id of metric node v in build_merge_tree(t, s); -1 for an absorbed s.
int merge_node_of(const MetricTree& t, int s, int v);

struct SuppressResult {
  MergeTree tree;
  std::vector<int> to_source;    // suppressed node -> source node
  std::vector<int> from_source;  // source node -> suppressed node whose edge or ray holds it
};

/// Splices out every node with exactly one child, including a one-child root:
/// the result is rooted at its highest branching node or at its only leaf.
SuppressResult suppress_degree_two_mapped(const MergeTree& m);
MergeTree suppress_degree_two(const MergeTree& m);

MergePoint shift(const MergeTree& m, const MergePoint& x, const Rational& eps);
Rational extent(const MergeTree& m, const MergePoint& x);

struct TrimResult {
  MergeTree tree;
  /// True when no point of the source tree had extent >= tau below the root;
  /// the result is then the single point of the infinite ray where extent reaches tau.
  bool degenerate = false;
  std::vector<MergePoint> origin;  // trimmed node -> the same point in the source tree
  std::vector<MergePoint> lowest;  // source node -> its lowest ancestor in the trimmed tree
};

/// Points with extent >= tau; each removed subtree is replaced by a new leaf at
/// the cut height. Surviving nodes keep their relative id order and come first.
TrimResult trim_mapped(const MergeTree& m, const Rational& tau);
MergeTree trim(const MergeTree& m, const Rational& tau);

/// Descendants of u, rooted at u (fresh infinite edge). Ids follow source order.
MergeTree subtree(const MergeTree& m, int u);

/// All points at height h ordered by node id.
std::vector<MergePoint> points_at_height(const MergeTree& m, const Rational& h);

std::optional<EdgeLengthStats> edge_length_stats(const MergeTree& a);
std::optional<EdgeLengthStats> edge_length_stats(const MergeTree& a, const MergeTree& b);

/// Heights replaced by h + c (a vertical shift of the underlying function).
MergeTree shift_heights(const MergeTree& m, const Rational& c);
/// Heights replaced by k * h for k > 0.
MergeTree scale_heights(const MergeTree& m, const Rational& k);

/// Order-independent structural identity: same shape with equal heights.
std::string canonical_form(const MergeTree& m);
bool equivalent(const MergeTree& a, const MergeTree& b);

/// Format: node count, then one "id height parent" line per node (parent -1 at the root).
MergeTree parse_merge_tree(std::string_view text);
std::string write_merge_tree(const MergeTree& m);

}  // namespace treegh
