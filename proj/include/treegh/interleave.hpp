#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treegh/merge_tree.hpp"
#include "treegh/rational.hpp"

namespace treegh {

/// A continuous map between merge trees given by the image of every source
/// node. A point x on the edge above node c maps to the ancestor of
/// images[c] at height f(x) + eps', i.e. images are stretched up to the exact
/// height change when the map is evaluated away from nodes.
struct TreeMap {
  std::vector<MergePoint> images;
};

enum class Verdict { kNo, kYes };
enum class DecisionBranch { kLong, kTrimmed, kSkipTrim };

struct DecisionOutcome {
  Verdict verdict = Verdict::kNo;
  DecisionBranch branch = DecisionBranch::kLong;
  Rational eps;
  // Set on YES: alpha: Mf -> Mg and beta: Mg -> Mf are certified-compatible,
  // with certified == factor * eps.
  TreeMap alpha;
  TreeMap beta;
  Rational certified;
  Rational factor;

  bool yes() const { return verdict == Verdict::kYes; }
};

/// Sorted, duplicate-free union of {|f(u)-f(v)|/2}, {|g(u)-g(v)|/2} and {|f(u)-g(v)|}.
struct CandidateSet {
  std::vector<Rational> values;
};

CandidateSet candidate_values(const MergeTree& f, const MergeTree& g);

/// Every finite edge of both trees is strictly longer than 2 eps.
bool all_edges_long(const MergeTree& f, const MergeTree& g, const Rational& eps);

/// Exact test of d_I(f, g) <= eps by the bottom-up pair recursion with one
/// perfect-matching test per node pair. Requires both trees free of
/// one-child nodes and every finite edge eps-long; a violated precondition
/// throws ValidationError rather than answering NO.
DecisionOutcome decide_long(const MergeTree& f, const MergeTree& g, const Rational& eps);

struct MatchingLevels {
  std::vector<Rational> heights;                  // ascending
  std::vector<std::vector<MergePoint>> f_points;  // per level, ordered by node id
  std::vector<std::vector<MergePoint>> g_points;
};

/// Heights of all branching nodes, leaves and both roots, ascending.
std::vector<Rational> anchor_heights(const MergeTree& f, const MergeTree& g);

/// Levels are the anchor heights h with no anchor in (h, h + 2 eps].
MatchingLevels matching_levels(const MergeTree& f, const MergeTree& g, const Rational& eps);

enum class Side { kF, kG };

/// One node per matching point, listed level by level from the lowest level;
/// the parent of a node is the matching point directly above it on the next
/// level. level[i] is the label used by the isomorphism test.
struct InducedTree {
  std::vector<MergePoint> points;
  std::vector<int> level;
  std::vector<int> parent;
  std::vector<int> level_offset;  // first node id of each level
  int root = -1;
};

InducedTree induced_tree(const MergeTree& m, const MatchingLevels& levels, Side side);

/// Level-preserving rooted-tree isomorphism via canonical codes. Returns
/// mapping[a_node] = b_node, or nullopt when the labeled trees differ.
std::optional<std::vector<int>> level_isomorphism(const InducedTree& a, const InducedTree& b);

struct ShortPlan {
  int node_total = 0;     // n: nodes of both trees
  Rational s;             // longest finite edge / eps
  Rational cutoff;        // L = ceil(sqrt(2 n s)) + 1
  bool trimmed = false;   // L < n
  Rational tau;           // 2 L eps when trimmed, else 0
  Rational factor;        // 4 L when trimmed, else 4 n
};

ShortPlan short_plan(const MergeTree& f, const MergeTree& g, const Rational& eps);

/// Approximate decision for trees with short edges. NO is always correct; YES
/// carries maps that are (factor * eps)-compatible.
DecisionOutcome decide_short(const MergeTree& f, const MergeTree& g, const Rational& eps);

/// Exact long-edge decider when eps == 0 or every edge of the degree-two-free
/// trees is eps-long, otherwise decide_short. Maps on YES refer to the input
/// trees and are always re-verified.
DecisionOutcome decide(const MergeTree& f, const MergeTree& g, const Rational& eps);

struct InterleaveResult {
  Rational pivot;      // binary-search answer; pivot <= d_I <= certified
  Rational certified;  // maps below are certified-compatible
  Rational factor;     // certified == factor * pivot
  DecisionBranch branch = DecisionBranch::kLong;
  TreeMap alpha;
  TreeMap beta;
  int probes = 0;
};

InterleaveResult interleaving_distance(const MergeTree& f, const MergeTree& g);

struct CompatibilityReport {
  bool heights = true;     // f(v) <= g(alpha(v)) <= f(v) + eps' and symmetric
  bool ancestry = true;    // parent images are ancestors of child images
  bool round_trip = true;  // beta(alpha(x)) is the 2 eps' ancestor of x, and symmetric
  std::string detail;      // first violation found, if any

  bool ok() const { return heights && ancestry && round_trip; }
};

/// Checks the relaxed compatibility conditions. Round trips are checked on the
/// stretched maps at every height where the composite can change: source
/// nodes, and the points whose image passes a target node. Throws
/// ValidationError if a map has the wrong size or names unknown nodes.
CompatibilityReport check_compatible(const MergeTree& f, const MergeTree& g, const TreeMap& alpha, const TreeMap& beta,
                                     const Rational& eps_prime);
bool verify_compatible(const MergeTree& f, const MergeTree& g, const TreeMap& alpha, const TreeMap& beta,
                       const Rational& eps_prime);

/// Exact d_I by enumeration: for each candidate eps in ascending order, every
/// assignment of leaf images at height + eps on both sides is extended by
/// shifting and tested. Throws SizeLimitError when either tree has more than
/// max_leaves leaves.
Rational interleaving_bruteforce(const MergeTree& f, const MergeTree& g, int max_leaves = 5);

}  // namespace treegh
