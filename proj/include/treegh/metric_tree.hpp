#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treegh/rational.hpp"

namespace treegh {

struct Edge {
  int u = 0;
  int v = 0;
  Rational length;
};

/// Weighted unrooted tree on nodes 0..node_count-1 with positive exact edge
/// lengths. Immutable once constructed; the constructor validates the tree.
class MetricTree {
 public:
  struct Neighbor {
    int node;
    int edge;
  };

  /// Throws ValidationError on out-of-range ids, self loops, duplicate
  /// edges, non-positive lengths, cycles or disconnected input.
  MetricTree(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Neighbor> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
  bool is_leaf(int v) const { return degree(v) == 1; }
  bool valid_node(int v) const { return v >= 0 && v < node_count_; }

  /// Copy with every edge length multiplied by k > 0.
  MetricTree scaled(const Rational& k) const;

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// A point of the geometric realization: a node, or an interior point of an
/// edge at `offset` from the edge's `u` endpoint. Offsets 0 and length are
/// always stored in node form, so equal points compare equal.
class TreePoint {
 public:
  static TreePoint at_node(int node) { return TreePoint(node, -1, Rational(0)); }
  /// Normalizes offset 0 / length to the endpoint node. Throws ValidationError
  /// for a bad edge id or an offset outside [0, length].
  static TreePoint on_edge(const MetricTree& t, int edge, const Rational& offset);

  bool is_node() const { return node_ >= 0; }
  int node() const { return node_; }
  int edge() const { return edge_; }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const TreePoint&, const TreePoint&) = default;

 private:
  TreePoint(int node, int edge, Rational offset) : node_(node), edge_(edge), offset_(std::move(offset)) {}
  int node_;
  int edge_;
  Rational offset_;
};

struct Correspondence {
  std::vector<std::pair<TreePoint, TreePoint>> pairs;
};

MetricTree parse_tree(std::string_view text);
/// Edge-list format; edges written as "u v p/q" with u < v, sorted by (u, v).
std::string write_tree(const MetricTree& t);

/// Geodesic distances from `source` to every node.
std::vector<Rational> distances_from(const MetricTree& t, int source);

Rational path_distance(const MetricTree& t, const TreePoint& x, const TreePoint& y);

/// Endpoint of a diameter-realizing path, found by two farthest-node sweeps.
/// Among all nodes that end some diameter path, the smallest id is returned.
int diameter_endpoint(const MetricTree& t);

/// Length of a longest path in t.
Rational diameter(const MetricTree& t);

/// max over pairs (x,y), (x',y') in C of |d1(x,x') - d2(y,y')|.
Rational correspondence_distortion(const MetricTree& t1, const MetricTree& t2, const Correspondence& c);

/// True when every vertex of t1 and of t2 appears in some pair of c.
bool covers_vertices(const MetricTree& t1, const MetricTree& t2, const Correspondence& c);

/// Half the minimum distortion over all correspondences between the vertex
/// sets of t1 and t2. This is the GH distance of the finite vertex spaces; it
/// can differ from the distance of the full metric trees by up to the longest
/// edge. Throws SizeLimitError if either tree has more than max_size nodes.
Rational gh_bruteforce_vertices(const MetricTree& t1, const MetricTree& t2, int max_size = 6);

}  // namespace treegh
