#include <algorithm>
#include <map>
#include <stdexcept>

#include "treegh/errors.hpp"
#include "treegh/interleave.hpp"

namespace treegh {

namespace {

int index_of_node(const std::vector<MergePoint>& pts, int node) {
  auto it = std::lower_bound(pts.begin(), pts.end(), node, [](const MergePoint& p, int n) { return p.node < n; });
  if (it == pts.end() || it->node != node) throw std::logic_error("matching point missing from its level");
  return static_cast<int>(it - pts.begin());
}

// Builds alpha on trimmed trees from the isomorphism of induced trees.
class LevelMap {
 public:
  LevelMap(const MergeTree& src, const MergeTree& dst, const std::vector<Rational>& anchors, const MatchingLevels& levels,
           const InducedTree& src_tree, const InducedTree& dst_tree, const std::vector<int>& iso, Side src_side,
           const Rational& eps)
      : src_(src),
        dst_(dst),
        anchors_(anchors),
        levels_(levels),
        src_tree_(src_tree),
        dst_tree_(dst_tree),
        iso_(iso),
        src_points_(src_side == Side::kF ? levels.f_points : levels.g_points),
        eps_(eps) {}

  MergePoint image(const MergePoint& x) const {
    const auto& hs = levels_.heights;
    const auto lvl = std::lower_bound(hs.begin(), hs.end(), x.height);
    if (lvl != hs.end() && *lvl == x.height) return at_level(static_cast<int>(lvl - hs.begin()), x);

    const auto above = std::upper_bound(anchors_.begin(), anchors_.end(), x.height);
    const bool on_anchor = above != anchors_.begin() && *(above - 1) == x.height;
    if (!on_anchor && above != anchors_.begin()) {
      const Rational& below = *(above - 1);
      if (above == anchors_.end() || *above - below > eps_ + eps_) {
        // No node of either tree in (below, x]: follow the single descendant
        // chain down to the level at `below`, map it, then climb back up.
        int v = x.node;
        while (src_.height(v) > below) v = src_.children(v).front();
        const int level = static_cast<int>(std::lower_bound(hs.begin(), hs.end(), below) - hs.begin());
        const MergePoint y = at_level(level, src_.point_on_path(v, below));
        return dst_.point_on_path(y.node, x.height);
      }
    }
    // Otherwise use the next level up; such a level exists since the top anchor is one.
    const int level = static_cast<int>(lvl - hs.begin());
    return at_level(level, src_.point_on_path(x.node, hs[level]));
  }

 private:
  MergePoint at_level(int level, const MergePoint& p) const {
    const int id = src_tree_.level_offset[level] + index_of_node(src_points_[level], p.node);
    return dst_tree_.points[iso_[id]];
  }

  const MergeTree& src_;
  const MergeTree& dst_;
  const std::vector<Rational>& anchors_;
  const MatchingLevels& levels_;
  const InducedTree& src_tree_;
  const InducedTree& dst_tree_;
  const std::vector<int>& iso_;
  const std::vector<std::vector<MergePoint>>& src_points_;
  const Rational& eps_;
};

TreeMap build_map(const MergeTree& source, const TrimResult& src_trim, const MergeTree& target,
                  const TrimResult& dst_trim, const LevelMap& level_map) {
  TreeMap out;
  out.images.reserve(source.size());
  for (int v = 0; v < source.size(); ++v) {
    const MergePoint y = level_map.image(src_trim.lowest[v]);
    out.images.push_back(target.point_on_path(dst_trim.origin[y.node].node, y.height));
  }
  return out;
}

std::vector<int> invert(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

std::vector<Rational> anchor_heights(const MergeTree& f, const MergeTree& g) {
  std::vector<Rational> out;
  for (const MergeTree* m : {&f, &g}) {
    for (int v = 0; v < m->size(); ++v) {
      if (m->children(v).size() != 1 || v == m->root()) out.push_back(m->height(v));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MatchingLevels matching_levels(const MergeTree& f, const MergeTree& g, const Rational& eps) {
  if (eps.sign() < 0) throw ValidationError("eps must be non-negative");
  const auto anchors = anchor_heights(f, g);
  MatchingLevels out;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    if (i + 1 < anchors.size() && anchors[i + 1] <= anchors[i] + eps + eps) continue;
    out.heights.push_back(anchors[i]);
    out.f_points.push_back(points_at_height(f, anchors[i]));
    out.g_points.push_back(points_at_height(g, anchors[i]));
  }
  return out;
}

InducedTree induced_tree(const MergeTree& m, const MatchingLevels& levels, Side side) {
  const auto& pts = side == Side::kF ? levels.f_points : levels.g_points;
  InducedTree t;
  const int count = static_cast<int>(pts.size());
  for (int i = 0; i < count; ++i) {
    t.level_offset.push_back(static_cast<int>(t.points.size()));
    for (const auto& p : pts[i]) {
      t.points.push_back(p);
      t.level.push_back(i);
      if (i + 1 == count) {
        t.parent.push_back(-1);
      } else {
        const MergePoint up = m.point_on_path(p.node, levels.heights[i + 1]);
        t.parent.push_back(t.level_offset.back() + static_cast<int>(pts[i].size()) + index_of_node(pts[i + 1], up.node));
      }
    }
  }
  if (count == 0 || pts.back().size() != 1) throw std::logic_error("induced tree must have a single top point");
  t.root = static_cast<int>(t.points.size()) - 1;
  return t;
}

std::optional<std::vector<int>> level_isomorphism(const InducedTree& a, const InducedTree& b) {
  if (a.points.size() != b.points.size()) return std::nullopt;
  // Canonical ids shared between both trees: equal id means isomorphic subtrees.
  std::map<std::pair<int, std::vector<int>>, int> dictionary;
  auto encode = [&](const InducedTree& t) {
    const int n = static_cast<int>(t.parent.size());
    std::vector<std::vector<int>> kids(n);
    for (int v = 0; v < n; ++v) {
      if (t.parent[v] != -1) kids[t.parent[v]].push_back(v);
    }
    // Node ids grow with level, so children always precede parents.
    std::vector<int> code(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> key;
      for (int c : kids[v]) key.push_back(code[c]);
      std::sort(key.begin(), key.end());
      code[v] = dictionary.emplace(std::make_pair(t.level[v], std::move(key)), static_cast<int>(dictionary.size())).first->second;
    }
    return std::make_pair(std::move(kids), std::move(code));
  };
  auto [kids_a, code_a] = encode(a);
  auto [kids_b, code_b] = encode(b);
  if (code_a[a.root] != code_b[b.root]) return std::nullopt;

  std::vector<int> mapping(a.points.size(), -1);
  std::vector<std::pair<int, int>> stack{{a.root, b.root}};
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    mapping[u] = v;
    auto ka = kids_a[u];
    auto kb = kids_b[v];
    std::stable_sort(ka.begin(), ka.end(), [&](int x, int y) { return code_a[x] < code_a[y]; });
    std::stable_sort(kb.begin(), kb.end(), [&](int x, int y) { return code_b[x] < code_b[y]; });
    for (std::size_t i = 0; i < ka.size(); ++i) stack.emplace_back(ka[i], kb[i]);
  }
  return mapping;
}

ShortPlan short_plan(const MergeTree& f, const MergeTree& g, const Rational& eps) {
  if (eps.sign() <= 0) throw ValidationError("short-edge decider needs eps > 0");
  ShortPlan plan;
  plan.node_total = f.size() + g.size();
  const auto stats = edge_length_stats(f, g);
  plan.s = stats ? stats->max_length / eps : Rational(0);
  const Rational n(plan.node_total);
  plan.cutoff = Rational(mpq_class(ceil_sqrt(Rational(2) * n * plan.s))) + Rational(1);
  plan.trimmed = plan.cutoff < n;
  plan.tau = plan.trimmed ? Rational(2) * plan.cutoff * eps : Rational(0);
  plan.factor = plan.trimmed ? Rational(4) * plan.cutoff : Rational(4) * n;
  return plan;
}

DecisionOutcome decide_short(const MergeTree& f, const MergeTree& g, const Rational& eps) {
  const ShortPlan plan = short_plan(f, g, eps);
  DecisionOutcome out;
  out.eps = eps;
  out.branch = plan.trimmed ? DecisionBranch::kTrimmed : DecisionBranch::kSkipTrim;

  const TrimResult tf = trim_mapped(f, plan.tau);
  const TrimResult tg = trim_mapped(g, plan.tau);
  const auto anchors = anchor_heights(tf.tree, tg.tree);
  const MatchingLevels levels = matching_levels(tf.tree, tg.tree, eps);
  const InducedTree itf = induced_tree(tf.tree, levels, Side::kF);
  const InducedTree itg = induced_tree(tg.tree, levels, Side::kG);
  const auto iso = level_isomorphism(itf, itg);
  if (!iso) return out;
  const auto inverse = invert(*iso);

  const LevelMap forward(tf.tree, tg.tree, anchors, levels, itf, itg, *iso, Side::kF, eps);
  const LevelMap backward(tg.tree, tf.tree, anchors, levels, itg, itf, inverse, Side::kG, eps);
  out.verdict = Verdict::kYes;
  out.alpha = build_map(f, tf, g, tg, forward);
  out.beta = build_map(g, tg, f, tf, backward);
  out.factor = plan.factor;
  out.certified = plan.factor * eps;
  return out;
}

}  // namespace treegh
