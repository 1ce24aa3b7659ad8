#include "treegh/metric_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "text_lines.hpp"
#include "treegh/errors.hpp"

namespace treegh {

namespace {

int find_root(std::vector<int>& uf, int x) {
  while (uf[static_cast<std::size_t>(x)] != x) {
    uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    x = uf[static_cast<std::size_t>(x)];
  }
  return x;
}

// (node, distance from the point to that node) for the endpoints through which
// a path leaves the point.
std::vector<std::pair<int, Rational>> exits(const MetricTree& t, const TreePoint& p) {
  if (p.is_node()) return {{p.node(), Rational(0)}};
  const Edge& e = t.edge(p.edge());
  return {{e.u, p.offset()}, {e.v, e.length - p.offset()}};
}

void check_point(const MetricTree& t, const TreePoint& p) {
  if (p.is_node()) {
    if (!t.valid_node(p.node())) throw ValidationError("point references node " + std::to_string(p.node()) + " outside the tree");
  } else if (p.edge() < 0 || p.edge() >= static_cast<int>(t.edges().size()) || p.offset().sign() <= 0 ||
             p.offset() >= t.edge(p.edge()).length) {
    throw ValidationError("point references an invalid edge position");
  }
}

// Lazily computed single-source distance tables.
class DistanceCache {
 public:
  explicit DistanceCache(const MetricTree& t) : t_(t) {}
  const std::vector<Rational>& from(int v) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, distances_from(t_, v)).first;
    return it->second;
  }

  Rational distance(const TreePoint& x, const TreePoint& y) {
    if (!x.is_node() && !y.is_node() && x.edge() == y.edge()) return abs(x.offset() - y.offset());
    bool first = true;
    Rational best;
    for (const auto& [a, da] : exits(t_, x)) {
      const auto& dist = from(a);
      for (const auto& [b, db] : exits(t_, y)) {
        Rational d = da + dist[static_cast<std::size_t>(b)] + db;
        if (first || d < best) {
          best = std::move(d);
          first = false;
        }
      }
    }
    return best;
  }

 private:
  const MetricTree& t_;
  std::map<int, std::vector<Rational>> cache_;
};

}  // namespace

MetricTree::MetricTree(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1) throw ValidationError("a metric tree needs at least one node");
  adjacency_.assign(static_cast<std::size_t>(node_count_), {});
  std::vector<int> uf(static_cast<std::size_t>(node_count_));
  std::iota(uf.begin(), uf.end(), 0);
  std::map<std::pair<int, int>, int> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!valid_node(e.u) || !valid_node(e.v)) {
      throw ValidationError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " references a node outside 0.." +
                            std::to_string(node_count_ - 1));
    }
    if (e.u == e.v) throw ValidationError("self loop at node " + std::to_string(e.u));
    if (e.length.sign() <= 0) throw ValidationError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " has non-positive length");
    const auto key = std::minmax(e.u, e.v);
    if (!seen.emplace(key, static_cast<int>(i)).second) {
      throw ValidationError("duplicate edge " + std::to_string(key.first) + " " + std::to_string(key.second));
    }
    const int ru = find_root(uf, e.u);
    const int rv = find_root(uf, e.v);
    if (ru == rv) throw ValidationError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " closes a cycle");
    uf[static_cast<std::size_t>(ru)] = rv;
    adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, static_cast<int>(i)});
    adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, static_cast<int>(i)});
  }
  if (static_cast<int>(edges_.size()) != node_count_ - 1) throw ValidationError("edge set is disconnected");
}

MetricTree MetricTree::scaled(const Rational& k) const {
  if (k.sign() <= 0) throw ValidationError("scale factor must be positive");
  std::vector<Edge> out = edges_;
  for (auto& e : out) e.length *= k;
  return MetricTree(node_count_, std::move(out));
}

TreePoint TreePoint::on_edge(const MetricTree& t, int edge, const Rational& offset) {
  if (edge < 0 || edge >= static_cast<int>(t.edges().size())) throw ValidationError("edge id out of range");
  const Edge& e = t.edge(edge);
  if (offset.sign() < 0 || offset > e.length) throw ValidationError("edge offset outside [0, length]");
  if (offset.sign() == 0) return at_node(e.u);
  if (offset == e.length) return at_node(e.v);
  return TreePoint(-1, edge, offset);
}

MetricTree parse_tree(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ValidationError("tree file is empty");
  const int n = detail::parse_int(lines.front().fields.at(0), lines.front().number);
  if (lines.front().fields.size() != 1) throw ValidationError("line " + std::to_string(lines.front().number) + ": expected the node count alone");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.fields.size() != 3) throw ValidationError("line " + std::to_string(line.number) + ": expected 'u v length'");
    Edge e;
    e.u = detail::parse_int(line.fields[0], line.number);
    e.v = detail::parse_int(line.fields[1], line.number);
    try {
      e.length = Rational::parse(line.fields[2]);
    } catch (const ValidationError& err) {
      throw ValidationError("line " + std::to_string(line.number) + ": " + err.what());
    }
    edges.push_back(std::move(e));
  }
  return MetricTree(n, std::move(edges));
}

std::string write_tree(const MetricTree& t) {
  std::vector<Edge> sorted = t.edges();
  for (auto& e : sorted) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  std::ostringstream os;
  os << t.node_count() << '\n';
  for (const auto& e : sorted) os << e.u << ' ' << e.v << ' ' << e.length.str() << '\n';
  return os.str();
}

std::vector<Rational> distances_from(const MetricTree& t, int source) {
  if (!t.valid_node(source)) throw ValidationError("invalid source node " + std::to_string(source));
  std::vector<Rational> dist(static_cast<std::size_t>(t.node_count()));
  std::vector<int> parent(static_cast<std::size_t>(t.node_count()), -1);
  std::vector<int> stack{source};
  parent[static_cast<std::size_t>(source)] = source;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& nb : t.neighbors(v)) {
      if (parent[static_cast<std::size_t>(nb.node)] != -1) continue;
      parent[static_cast<std::size_t>(nb.node)] = v;
      dist[static_cast<std::size_t>(nb.node)] = dist[static_cast<std::size_t>(v)] + t.edge(nb.edge).length;
      stack.push_back(nb.node);
    }
  }
  return dist;
}

Rational path_distance(const MetricTree& t, const TreePoint& x, const TreePoint& y) {
  check_point(t, x);
  check_point(t, y);
  DistanceCache cache(t);
  return cache.distance(x, y);
}

namespace {

int farthest(const std::vector<Rational>& dist) {
  int best = 0;
  for (int v = 1; v < static_cast<int>(dist.size()); ++v) {
    if (dist[static_cast<std::size_t>(v)] > dist[static_cast<std::size_t>(best)]) best = v;
  }
  return best;
}

}  // namespace

int diameter_endpoint(const MetricTree& t) {
  if (t.node_count() == 1) return 0;
  const int a = farthest(distances_from(t, 0));
  const auto from_a = distances_from(t, a);
  const int b = farthest(from_a);
  const auto from_b = distances_from(t, b);
  const Rational& diam = from_a[static_cast<std::size_t>(b)];
  // In a tree the eccentricity of v is max(d(v,a), d(v,b)) for any diameter pair (a, b).
  for (int v = 0; v < t.node_count(); ++v) {
    if (max(from_a[static_cast<std::size_t>(v)], from_b[static_cast<std::size_t>(v)]) == diam) return v;
  }
  return a;
}

Rational diameter(const MetricTree& t) {
  const int a = farthest(distances_from(t, 0));
  const auto from_a = distances_from(t, a);
  return from_a[static_cast<std::size_t>(farthest(from_a))];
}

Rational correspondence_distortion(const MetricTree& t1, const MetricTree& t2, const Correspondence& c) {
  if (c.pairs.empty()) throw ValidationError("distortion of an empty correspondence");
  for (const auto& [x, y] : c.pairs) {
    check_point(t1, x);
    check_point(t2, y);
  }
  DistanceCache d1(t1);
  DistanceCache d2(t2);
  Rational worst(0);
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < c.pairs.size(); ++j) {
      Rational gap = abs(d1.distance(c.pairs[i].first, c.pairs[j].first) - d2.distance(c.pairs[i].second, c.pairs[j].second));
      if (gap > worst) worst = std::move(gap);
    }
  }
  return worst;
}

bool covers_vertices(const MetricTree& t1, const MetricTree& t2, const Correspondence& c) {
  std::vector<bool> left(static_cast<std::size_t>(t1.node_count()));
  std::vector<bool> right(static_cast<std::size_t>(t2.node_count()));
  for (const auto& [x, y] : c.pairs) {
    if (x.is_node() && t1.valid_node(x.node())) left[static_cast<std::size_t>(x.node())] = true;
    if (y.is_node() && t2.valid_node(y.node())) right[static_cast<std::size_t>(y.node())] = true;
  }
  return std::all_of(left.begin(), left.end(), [](bool b) { return b; }) &&
         std::all_of(right.begin(), right.end(), [](bool b) { return b; });
}

}  // namespace treegh
