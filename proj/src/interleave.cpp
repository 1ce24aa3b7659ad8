#include "treegh/interleave.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "treegh/errors.hpp"
#include "treegh/matching.hpp"

namespace treegh {

namespace {

std::vector<Rational> distinct_heights(const MergeTree& m) {
  std::vector<Rational> hs = m.heights();
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  return hs;
}

bool has_one_child_node(const MergeTree& m) {
  for (int v = 0; v < m.size(); ++v) {
    if (m.children(v).size() == 1) return true;
  }
  return false;
}

void check_eps(const Rational& eps) {
  if (eps.sign() < 0) throw ValidationError("eps must be non-negative");
}

// Pair recursion for the long-edge decider. phi(u, v) == 1 when the subtrees
// below u and v admit an eps-interleaving pinned at u and v.
class LongDecider {
 public:
  LongDecider(const MergeTree& f, const MergeTree& g, const Rational& eps)
      : f_(f), g_(g), eps_(eps), memo_(static_cast<std::size_t>(f.size()) * g.size(), -1) {}

  bool phi(int u, int v) {
    std::int8_t& slot = memo_[static_cast<std::size_t>(u) * g_.size() + v];
    if (slot != -1) return slot == 1;
    bool ok = abs(f_.height(u) - g_.height(v)) <= eps_ && f_.children(u).size() == g_.children(v).size();
    if (ok && !f_.is_leaf(u)) ok = children_matching(u, v).perfect();
    slot = ok ? 1 : 0;
    return ok;
  }

  void assign(int u, int v, TreeMap& alpha, TreeMap& beta) {
    alpha.images[u] = g_.point_on_path(v, f_.height(u) + eps_);
    beta.images[v] = f_.point_on_path(u, g_.height(v) + eps_);
    if (f_.is_leaf(u)) return;
    const Matching m = children_matching(u, v);
    const auto cu = f_.children(u);
    const auto cv = g_.children(v);
    for (std::size_t i = 0; i < cu.size(); ++i) assign(cu[i], cv[m.match_left[i]], alpha, beta);
  }

 private:
  Matching children_matching(int u, int v) {
    const auto cu = f_.children(u);
    const auto cv = g_.children(v);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < cu.size(); ++i) {
      for (std::size_t j = 0; j < cv.size(); ++j) {
        if (phi(cu[i], cv[j])) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
    return hopcroft_karp(static_cast<int>(cu.size()), static_cast<int>(cv.size()), edges);
  }

  const MergeTree& f_;
  const MergeTree& g_;
  const Rational& eps_;
  std::vector<std::int8_t> memo_;
};

// Image of a source-tree point under a map lifted from suppressed trees.
MergePoint lift_image(const MergeTree& target, const SuppressResult& target_s, const MergePoint& suppressed_image,
                      const Rational& height) {
  const MergePoint up = target_s.tree.point_on_path(suppressed_image.node, height);
  return target.point_on_path(target_s.to_source[up.node], height);
}

TreeMap lift_map(const MergeTree& source, const SuppressResult& source_s, const MergeTree& target,
                 const SuppressResult& target_s, const TreeMap& suppressed, const Rational& eps) {
  TreeMap out;
  out.images.reserve(source.size());
  for (int w = 0; w < source.size(); ++w) {
    const MergePoint& img = suppressed.images[source_s.from_source[w]];
    out.images.push_back(lift_image(target, target_s, img, source.height(w) + eps));
  }
  return out;
}

void normalize_map(const MergeTree& source, const MergeTree& target, const TreeMap& map, const char* name,
                   std::vector<MergePoint>& out) {
  if (static_cast<int>(map.images.size()) != source.size()) {
    throw ValidationError(std::string(name) + " lists " + std::to_string(map.images.size()) + " images for a tree with " +
                          std::to_string(source.size()) + " nodes");
  }
  out.clear();
  out.reserve(map.images.size());
  for (const auto& p : map.images) out.push_back(target.normalize(p));
}

// Round trip of the stretched maps a: src -> dst and b: dst -> src at every
// height where the composite can change.
bool round_trip_holds(const MergeTree& src, const MergeTree& dst, const std::vector<MergePoint>& a,
                      const std::vector<MergePoint>& b, const Rational& eps, const char* name, std::string& detail) {
  const Rational two_eps = eps + eps;
  for (int c = 0; c < src.size(); ++c) {
    const int base = a[c].node;
    auto check = [&](const Rational& t) {
      const MergePoint y = dst.point_on_path(base, t + eps);
      const MergePoint z = src.point_on_path(b[y.node].node, t + two_eps);
      if (z == src.point_on_path(c, t + two_eps)) return true;
      detail = std::string(name) + " round trip fails above node " + std::to_string(c) + " at height " + t.str();
      return false;
    };
    if (!check(src.height(c))) return false;
    const int p = src.parent(c);
    int w = dst.parent(dst.point_on_path(base, src.height(c) + eps).node);
    while (w != -1) {
      const Rational t = dst.height(w) - eps;
      if (p != -1 && t >= src.height(p)) break;
      if (!check(t)) return false;
      w = dst.parent(w);
    }
  }
  return true;
}

bool heights_hold(const MergeTree& src, const MergeTree& dst, const std::vector<MergePoint>& a, const Rational& eps,
                  const char* name, std::string& detail) {
  for (int v = 0; v < src.size(); ++v) {
    if (a[v].height < src.height(v) || a[v].height > src.height(v) + eps) {
      detail = std::string(name) + " moves node " + std::to_string(v) + " to height " + a[v].height.str() +
               ", outside [" + src.height(v).str() + ", " + (src.height(v) + eps).str() + "]";
      return false;
    }
  }
  (void)dst;
  return true;
}

bool ancestry_holds(const MergeTree& src, const MergeTree& dst, const std::vector<MergePoint>& a, const char* name,
                    std::string& detail) {
  for (int v = 0; v < src.size(); ++v) {
    const int p = src.parent(v);
    if (p != -1 && !dst.is_ancestor(a[p], a[v])) {
      detail = std::string(name) + " image of node " + std::to_string(p) + " is not above the image of its child " +
               std::to_string(v);
      return false;
    }
  }
  return true;
}

}  // namespace

CandidateSet candidate_values(const MergeTree& f, const MergeTree& g) {
  const auto hf = distinct_heights(f);
  const auto hg = distinct_heights(g);
  CandidateSet out;
  auto& vals = out.values;
  vals.reserve(hf.size() * (hf.size() + 1) / 2 + hg.size() * (hg.size() + 1) / 2 + hf.size() * hg.size());
  const Rational half(1, 2);
  for (const auto* hs : {&hf, &hg}) {
    for (std::size_t i = 0; i < hs->size(); ++i) {
      for (std::size_t j = i; j < hs->size(); ++j) vals.push_back(((*hs)[j] - (*hs)[i]) * half);
    }
  }
  for (const auto& a : hf) {
    for (const auto& b : hg) vals.push_back(abs(a - b));
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return out;
}

bool all_edges_long(const MergeTree& f, const MergeTree& g, const Rational& eps) {
  const auto stats = edge_length_stats(f, g);
  return !stats || stats->min_length > eps + eps;
}

DecisionOutcome decide_long(const MergeTree& f, const MergeTree& g, const Rational& eps) {
  check_eps(eps);
  if (has_one_child_node(f) || has_one_child_node(g)) {
    throw ValidationError("long-edge decider needs trees without one-child nodes");
  }
  if (!all_edges_long(f, g, eps)) throw ValidationError("long-edge decider needs every edge longer than 2 eps");

  DecisionOutcome out;
  out.branch = DecisionBranch::kLong;
  out.eps = eps;
  LongDecider decider(f, g, eps);
  if (!decider.phi(f.root(), g.root())) return out;
  out.verdict = Verdict::kYes;
  out.alpha.images.resize(f.size());
  out.beta.images.resize(g.size());
  decider.assign(f.root(), g.root(), out.alpha, out.beta);
  out.certified = eps;
  out.factor = Rational(1);
  return out;
}

DecisionOutcome decide(const MergeTree& f, const MergeTree& g, const Rational& eps) {
  check_eps(eps);
  const SuppressResult sf = suppress_degree_two_mapped(f);
  const SuppressResult sg = suppress_degree_two_mapped(g);
  DecisionOutcome out;
  if (eps.sign() == 0 || all_edges_long(sf.tree, sg.tree, eps)) {
    out = decide_long(sf.tree, sg.tree, eps);
    if (out.yes()) {
      out.alpha = lift_map(f, sf, g, sg, out.alpha, eps);
      out.beta = lift_map(g, sg, f, sf, out.beta, eps);
    }
  } else {
    out = decide_short(f, g, eps);
  }
  if (out.yes()) {
    const auto report = check_compatible(f, g, out.alpha, out.beta, out.certified);
    if (!report.ok()) throw std::logic_error("constructed maps failed verification: " + report.detail);
  }
  return out;
}

InterleaveResult interleaving_distance(const MergeTree& f, const MergeTree& g) {
  const auto lambda = candidate_values(f, g).values;
  InterleaveResult result;
  int hi = static_cast<int>(lambda.size()) - 1;
  DecisionOutcome best = decide(f, g, lambda[hi]);
  result.probes = 1;
  if (!best.yes()) throw std::logic_error("largest candidate value was rejected");
  // Invariant: lambda[lo] was rejected (or lo == -1) and lambda[hi] accepted.
  int lo = -1;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    DecisionOutcome o = decide(f, g, lambda[mid]);
    ++result.probes;
    if (o.yes()) {
      hi = mid;
      best = std::move(o);
    } else {
      lo = mid;
    }
  }
  result.pivot = lambda[hi];
  result.certified = best.certified;
  result.factor = best.factor;
  result.branch = best.branch;
  result.alpha = std::move(best.alpha);
  result.beta = std::move(best.beta);
  return result;
}

CompatibilityReport check_compatible(const MergeTree& f, const MergeTree& g, const TreeMap& alpha, const TreeMap& beta,
                                     const Rational& eps_prime) {
  check_eps(eps_prime);
  std::vector<MergePoint> a;
  std::vector<MergePoint> b;
  normalize_map(f, g, alpha, "alpha", a);
  normalize_map(g, f, beta, "beta", b);

  CompatibilityReport r;
  r.heights = heights_hold(f, g, a, eps_prime, "alpha", r.detail) && heights_hold(g, f, b, eps_prime, "beta", r.detail);
  r.ancestry = ancestry_holds(f, g, a, "alpha", r.detail) && ancestry_holds(g, f, b, "beta", r.detail);
  if (!r.heights) {
    // Stretching is undefined when an image sits above the allowed height.
    r.round_trip = false;
    return r;
  }
  r.round_trip = round_trip_holds(f, g, a, b, eps_prime, "alpha", r.detail) &&
                 round_trip_holds(g, f, b, a, eps_prime, "beta", r.detail);
  return r;
}

bool verify_compatible(const MergeTree& f, const MergeTree& g, const TreeMap& alpha, const TreeMap& beta,
                       const Rational& eps_prime) {
  return check_compatible(f, g, alpha, beta, eps_prime).ok();
}

}  // namespace treegh
