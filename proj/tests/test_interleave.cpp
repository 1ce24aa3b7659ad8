#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "treegh/errors.hpp"
#include "treegh/interleave.hpp"

using namespace treegh;

namespace {

TreeMap identity_map(const MergeTree& m) {
  TreeMap out;
  for (int v = 0; v < m.size(); ++v) out.images.push_back(m.node_point(v));
  return out;
}

bool in_lambda(const MergeTree& f, const MergeTree& g, const Rational& x) {
  const auto vals = candidate_values(f, g).values;
  return std::binary_search(vals.begin(), vals.end(), x);
}

// Root at -3 with leaves at -4 and -5 - delta.
MergeTree two_leaf(const Rational& delta) { return MergeTree({Rational(-3), Rational(-4), Rational(-5) - delta}, {-1, 0, 0}); }

std::vector<std::pair<MergeTree, MergeTree>> random_pairs(unsigned seed, int count, int max_leaves = 4, int max_nodes = 7) {
  std::mt19937 rng(seed);
  std::vector<std::pair<MergeTree, MergeTree>> out;
  for (int i = 0; i < count; ++i) {
    MergeTree f = testing::random_merge_tree(rng, max_leaves, max_nodes);
    MergeTree g = testing::random_merge_tree(rng, max_leaves, max_nodes);
    out.emplace_back(std::move(f), std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("candidate_values examples") {
  const MergeTree point({0}, {-1});
  CHECK(candidate_values(point, point).values == std::vector<Rational>{0});

  const MergeTree f({-3, -4, -5}, {-1, 0, 0});
  const MergeTree chain({-3, -4, -5}, {-1, 0, 1});
  CHECK(candidate_values(f, chain).values == std::vector<Rational>{0, Rational(1, 2), 1, 2});

  const auto vals = candidate_values(f, f).values;
  CHECK(vals.front() == Rational(0));
  CHECK(std::is_sorted(vals.begin(), vals.end()));
  CHECK(std::adjacent_find(vals.begin(), vals.end()) == vals.end());
}

TEST_CASE("decide_long on identical trees at zero") {
  const MergeTree f = two_leaf(Rational(0));
  const DecisionOutcome o = decide_long(f, f, Rational(0));
  REQUIRE(o.yes());
  CHECK(o.certified == Rational(0));
  CHECK(o.alpha.images == identity_map(f).images);
  CHECK(o.beta.images == identity_map(f).images);
}

TEST_CASE("decide_long leaf perturbation") {
  const Rational delta(1, 4);
  const MergeTree f = two_leaf(Rational(0));
  const MergeTree g = two_leaf(delta);
  CHECK(interleaving_bruteforce(f, g) == delta);
  CHECK_FALSE(decide_long(f, g, delta / Rational(2)).yes());
  const DecisionOutcome o = decide_long(f, g, delta);
  REQUIRE(o.yes());
  CHECK(o.certified == delta);
  CHECK(o.factor == Rational(1));
  CHECK(verify_compatible(f, g, o.alpha, o.beta, delta));
}

TEST_CASE("decide_long rejects different child counts") {
  const MergeTree two({0, -10, -10}, {-1, 0, 0});
  const MergeTree three({0, -10, -10, -10}, {-1, 0, 0, 0});
  for (int e = 0; e <= 4; ++e) CHECK_FALSE(decide_long(two, three, Rational(e)).yes());
  CHECK(interleaving_bruteforce(two, three) == Rational(5));
}

TEST_CASE("decide_long checks its preconditions") {
  const MergeTree chain({0, -1, -3}, {-1, 0, 1});
  CHECK_THROWS_AS(decide_long(chain, chain, Rational(0)), ValidationError);
  const MergeTree f = two_leaf(Rational(0));
  CHECK_THROWS_AS(decide_long(f, f, Rational(1, 2)), ValidationError);
  CHECK_THROWS_AS(decide_long(f, f, Rational(-1)), ValidationError);
}

TEST_CASE("matching_levels examples") {
  const MergeTree a({-2}, {-1});
  const MatchingLevels one = matching_levels(a, a, Rational(1));
  REQUIRE(one.heights.size() == 1);
  CHECK(one.heights[0] == Rational(-2));
  CHECK(one.f_points[0].size() == 1);
  CHECK(one.g_points[0].size() == 1);

  const MatchingLevels close = matching_levels(MergeTree({0}, {-1}), MergeTree({-1}, {-1}), Rational(1));
  CHECK(close.heights == std::vector<Rational>{0});

  const MergeTree spread({0, -3, -6}, {-1, 0, 0});
  const MatchingLevels all = matching_levels(spread, spread, Rational(1));
  CHECK(all.heights == std::vector<Rational>{-6, -3, 0});
  CHECK(all.f_points[1].size() == 2);
}

TEST_CASE("anchors include roots with one child") {
  const MergeTree f({2, 0, -1, -1}, {-1, 0, 1, 1});
  CHECK(anchor_heights(f, f) == std::vector<Rational>{-1, 0, 2});
}

TEST_CASE("induced_tree on a two-level instance") {
  const MergeTree f({0, -3, -3}, {-1, 0, 0});
  const MatchingLevels levels = matching_levels(f, f, Rational(1));
  const InducedTree t = induced_tree(f, levels, Side::kF);
  REQUIRE(t.points.size() == 3);
  CHECK(t.level == std::vector<int>{0, 0, 1});
  CHECK(t.parent == std::vector<int>{2, 2, -1});
  CHECK(t.root == 2);
  CHECK(t.points[2] == f.node_point(0));
}

TEST_CASE("level_isomorphism examples") {
  const MergeTree f({0, -2, -3, -5, -6}, {-1, 0, 1, 1, 0});
  const MatchingLevels lf = matching_levels(f, f, Rational(1, 4));
  const InducedTree tf = induced_tree(f, lf, Side::kF);
  const auto same = level_isomorphism(tf, tf);
  REQUIRE(same);
  for (std::size_t i = 0; i < same->size(); ++i) CHECK((*same)[i] == static_cast<int>(i));

  // Same tree with children listed in the opposite order.
  const MergeTree mirrored({0, -6, -2, -5, -3}, {-1, 0, 0, 2, 2});
  const MatchingLevels lm = matching_levels(f, mirrored, Rational(1, 4));
  const InducedTree a = induced_tree(f, lm, Side::kF);
  const InducedTree b = induced_tree(mirrored, lm, Side::kG);
  const auto iso = level_isomorphism(a, b);
  REQUIRE(iso);
  for (std::size_t i = 0; i < iso->size(); ++i) CHECK(a.points[i].height == b.points[(*iso)[i]].height);

  InducedTree p;
  p.points.resize(3);
  p.level = {0, 0, 2};
  p.parent = {2, 2, -1};
  p.level_offset = {0, 2, 2};
  p.root = 2;
  InducedTree q = p;
  q.level = {0, 1, 2};
  CHECK_FALSE(level_isomorphism(p, q));

  const MergeTree two({0, -3, -3}, {-1, 0, 0});
  const MergeTree three({0, -3, -3, -3}, {-1, 0, 0, 0});
  const MatchingLevels l23 = matching_levels(two, three, Rational(1));
  CHECK_FALSE(level_isomorphism(induced_tree(two, l23, Side::kF), induced_tree(three, l23, Side::kG)));
}

TEST_CASE("short_plan arithmetic") {
  const MergeTree f({0, -3, -3}, {-1, 0, 0});
  const MergeTree g({0, -3}, {-1, 0});
  const ShortPlan p = short_plan(f, g, Rational(1, 2));
  CHECK(p.node_total == 5);
  CHECK(p.s == Rational(6));
  CHECK(p.cutoff == Rational(9));  // ceil(sqrt(60)) + 1
  CHECK_FALSE(p.trimmed);
  CHECK(p.factor == Rational(20));

  std::vector<Rational> hs{0};
  std::vector<int> ps{-1};
  for (int i = 1; i < 40; ++i) {
    hs.push_back(Rational(-i));
    ps.push_back(0);
  }
  const MergeTree wide(hs, ps);
  // n = 80, s = 39 / 13 = 3, L = ceil(sqrt(480)) + 1 = 23 < 80
  const ShortPlan q = short_plan(wide, wide, Rational(13));
  CHECK(q.cutoff == Rational(23));
  CHECK(q.trimmed);
  CHECK(q.tau == Rational(2 * 23 * 13));
  CHECK(q.factor == Rational(92));
  CHECK_THROWS_AS(short_plan(f, g, Rational(0)), ValidationError);
}

TEST_CASE("decide_short examples") {
  SUBCASE("identical trees") {
    const MergeTree f({0, -1, Rational(-3, 2), -2, Rational(-5, 2)}, {-1, 0, 1, 0, 3});
    const DecisionOutcome o = decide_short(f, f, Rational(1));
    REQUIRE(o.yes());
    CHECK(verify_compatible(f, f, o.alpha, o.beta, o.certified));
  }
  SUBCASE("different counts at a level") {
    const MergeTree f({0, -3, -3}, {-1, 0, 0});
    const MergeTree g({0, -3}, {-1, 0});
    CHECK_FALSE(decide_short(f, g, Rational(1, 2)).yes());
    CHECK(interleaving_bruteforce(f, g) == Rational(3, 2));
  }
  SUBCASE("vertical shift") {
    const MergeTree f({0, -1, -2, Rational(-5, 2)}, {-1, 0, 0, 1});
    const Rational c(1, 2);
    const MergeTree g = shift_heights(f, c);
    CHECK(interleaving_bruteforce(f, g) <= c);
    for (const Rational& eps : {c, Rational(1), Rational(2)}) {
      const ShortPlan plan = short_plan(f, g, eps);
      const DecisionOutcome o = decide_short(f, g, eps);
      REQUIRE(o.yes());
      CHECK(o.certified == plan.factor * eps);
      CHECK(o.certified <= Rational(4) * plan.cutoff * eps);
      CHECK(verify_compatible(f, g, o.alpha, o.beta, o.certified));
    }
  }
  CHECK_THROWS_AS(decide_short(MergeTree({0}, {-1}), MergeTree({0}, {-1}), Rational(0)), ValidationError);
}

TEST_CASE("decide_short exercises the trimmed branch") {
  // Many short spikes on a long spine: s is small relative to n.
  std::vector<Rational> hs{0};
  std::vector<int> ps{-1};
  for (int i = 1; i <= 30; ++i) {
    hs.push_back(Rational(-i));
    ps.push_back(i - 1);
    hs.push_back(Rational(-i) - Rational(1, 2));
    ps.push_back(static_cast<int>(hs.size()) - 2);
  }
  const MergeTree f(hs, ps);
  const MergeTree g = shift_heights(f, Rational(1, 3));
  const Rational eps(1, 2);
  const ShortPlan plan = short_plan(f, g, eps);
  REQUIRE(plan.trimmed);
  const DecisionOutcome o = decide_short(f, g, eps);
  REQUIRE(o.yes());
  CHECK(o.branch == DecisionBranch::kTrimmed);
  CHECK(o.certified == Rational(4) * plan.cutoff * eps);
  CHECK(verify_compatible(f, g, o.alpha, o.beta, o.certified));
}

TEST_CASE("decide dispatch") {
  const MergeTree five({0, -5, -5}, {-1, 0, 0});
  CHECK(decide(five, five, Rational(2)).branch == DecisionBranch::kLong);
  const MergeTree mixed({0, -5, -20}, {-1, 0, 0});
  CHECK(decide(mixed, mixed, Rational(3)).branch != DecisionBranch::kLong);
  CHECK(decide(mixed, mixed, Rational(0)).branch == DecisionBranch::kLong);
  CHECK_THROWS_AS(decide(five, five, Rational(-1)), ValidationError);
  // Suppression merges the two short edges of a chain into one long edge.
  const MergeTree chain({0, -3, -6, -30}, {-1, 0, 1, 0});
  CHECK(decide(chain, chain, Rational(2)).branch == DecisionBranch::kLong);
}

TEST_CASE("long-branch maps refer to the unsuppressed trees") {
  const MergeTree f({2, 0, -1, -3, -4}, {-1, 0, 1, 1, 0});
  const MergeTree g = shift_heights(f, Rational(1, 4));
  const DecisionOutcome o = decide(f, g, Rational(1, 4));
  REQUIRE(o.yes());
  CHECK(o.branch == DecisionBranch::kLong);
  CHECK(o.alpha.images.size() == 5);
  CHECK(verify_compatible(f, g, o.alpha, o.beta, Rational(1, 4)));
}

TEST_CASE("interleaving_distance examples") {
  const MergeTree f = two_leaf(Rational(0));
  const InterleaveResult same = interleaving_distance(f, f);
  CHECK(same.pivot == Rational(0));
  CHECK(same.certified == Rational(0));
  CHECK(same.alpha.images == identity_map(f).images);

  const Rational delta(1, 4);
  const InterleaveResult r = interleaving_distance(f, two_leaf(delta));
  CHECK(r.pivot == delta);
  CHECK(r.certified == delta);
  CHECK(r.branch == DecisionBranch::kLong);
}

TEST_CASE("interleaving_distance brackets the exact value on tiny pairs") {
  for (const auto& [f, g] : random_pairs(31, 40)) {
    const Rational exact = interleaving_bruteforce(f, g);
    const InterleaveResult r = interleaving_distance(f, g);
    CHECK(in_lambda(f, g, r.pivot));
    CHECK(r.pivot <= exact);
    CHECK(exact <= r.certified);
    CHECK(r.certified == r.factor * r.pivot);
    CHECK(verify_compatible(f, g, r.alpha, r.beta, r.certified));
    CHECK(interleaving_distance(g, f).pivot == r.pivot);
  }
}

TEST_CASE("verify_compatible examples") {
  const MergeTree f = two_leaf(Rational(0));
  CHECK(verify_compatible(f, f, identity_map(f), identity_map(f), Rational(0)));

  // Send leaf 1 into its sibling's branch.
  TreeMap bad = identity_map(f);
  bad.images[1] = MergePoint{2, Rational(-4)};
  const auto report = check_compatible(f, f, bad, identity_map(f), Rational(1, 4));
  CHECK_FALSE(report.ok());
  CHECK(report.heights);
  CHECK(report.ancestry);
  CHECK_FALSE(report.round_trip);
  CHECK_FALSE(report.detail.empty());

  TreeMap high = identity_map(f);
  high.images[1] = MergePoint{0, Rational(0)};
  CHECK_FALSE(check_compatible(f, f, high, identity_map(f), Rational(1)).heights);

  TreeMap wrong_size;
  CHECK_THROWS_AS(check_compatible(f, f, wrong_size, identity_map(f), Rational(0)), ValidationError);
  TreeMap unknown = identity_map(f);
  unknown.images[0].node = 9;
  CHECK_THROWS_AS(check_compatible(f, f, unknown, identity_map(f), Rational(0)), ValidationError);
}

TEST_CASE("verification catches a failure between nodes") {
  // f: root 0 with leaves at -4 and -4; g: root 0 with leaves at -4, -4 and a
  // third short leaf at -1/2. Mapping both f leaves into one g branch passes
  // node checks but beta cannot return the second f branch.
  const MergeTree f({0, -4, -4}, {-1, 0, 0});
  const MergeTree g({0, -4, -4}, {-1, 0, 0});
  TreeMap alpha{{f.node_point(0), MergePoint{1, Rational(-3)}, MergePoint{1, Rational(-3)}}};
  TreeMap beta{{f.node_point(0), MergePoint{1, Rational(-3)}, MergePoint{2, Rational(-3)}}};
  const auto report = check_compatible(f, g, alpha, beta, Rational(1));
  CHECK(report.heights);
  CHECK(report.ancestry);
  CHECK_FALSE(report.round_trip);
}

TEST_CASE("interleaving_bruteforce examples") {
  const MergeTree f = two_leaf(Rational(1, 3));
  CHECK(interleaving_bruteforce(f, f) == Rational(0));
  CHECK(interleaving_bruteforce(MergeTree({-2}, {-1}), MergeTree({Rational(-7, 2)}, {-1})) == Rational(3, 2));
  const MergeTree wide({0, -1, -1, -1, -1, -1, -1}, {-1, 0, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(interleaving_bruteforce(wide, f), SizeLimitError);
}

TEST_CASE("brute-force value lies in the candidate set") {
  for (const auto& [f, g] : random_pairs(41, 40, 5, 8)) CHECK(in_lambda(f, g, interleaving_bruteforce(f, g)));
}

TEST_CASE("long decider is exact where it applies") {
  int compared = 0;
  for (const auto& [f0, g0] : random_pairs(43, 40, 4, 8)) {
    const MergeTree f = suppress_degree_two(f0);
    const MergeTree g = suppress_degree_two(g0);
    const Rational exact = interleaving_bruteforce(f, g);
    for (const auto& eps : candidate_values(f, g).values) {
      if (!all_edges_long(f, g, eps)) continue;
      ++compared;
      CHECK(decide_long(f, g, eps).yes() == (exact <= eps));
    }
  }
  CHECK(compared > 40);
}

TEST_CASE("decide never rejects a feasible threshold") {
  for (const auto& [f, g] : random_pairs(47, 30, 4, 7)) {
    const Rational exact = interleaving_bruteforce(f, g);
    for (const auto& eps : candidate_values(f, g).values) {
      const DecisionOutcome o = decide(f, g, eps);
      if (exact <= eps) CHECK(o.yes());
      if (o.yes()) CHECK(verify_compatible(f, g, o.alpha, o.beta, o.certified));
    }
  }
}

TEST_CASE("trimming both trees does not increase the distance") {
  std::mt19937 rng(53);
  for (const auto& [f, g] : random_pairs(53, 25, 4, 7)) {
    const Rational exact = interleaving_bruteforce(f, g);
    const Rational tau(std::uniform_int_distribution<int>(0, 6)(rng), 2);
    CHECK(interleaving_bruteforce(trim(f, tau), trim(g, tau)) <= exact);
  }
}

TEST_CASE("level counts agree when trimmed trees are eps-interleaved") {
  std::mt19937 rng(59);
  int checked = 0;
  for (const auto& [f, g] : random_pairs(59, 40, 4, 7)) {
    const Rational tau(std::uniform_int_distribution<int>(0, 4)(rng), 2);
    const MergeTree tf = trim(f, tau);
    const MergeTree tg = trim(g, tau);
    const Rational exact = interleaving_bruteforce(tf, tg);
    for (const auto& eps : candidate_values(tf, tg).values) {
      if (eps.sign() == 0 || exact > eps) continue;
      const MatchingLevels levels = matching_levels(tf, tg, eps);
      for (std::size_t i = 0; i < levels.heights.size(); ++i) CHECK(levels.f_points[i].size() == levels.g_points[i].size());
      ++checked;
    }
  }
  CHECK(checked > 0);
}
