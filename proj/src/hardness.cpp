#include "treegh/hardness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "treegh/errors.hpp"

namespace treegh {

namespace {

std::int64_t total(const std::vector<std::int64_t>& xs) { return std::accumulate(xs.begin(), xs.end(), std::int64_t{0}); }

void check_instance(const BalPartInstance& inst) {
  if (inst.values.empty()) throw ValidationError("instance has no values");
  if (inst.parts < 1 || inst.parts > static_cast<int>(inst.values.size())) {
    throw ValidationError("part count must lie in 1..n");
  }
  for (auto a : inst.values) {
    if (a < 1) throw ValidationError("values must be positive integers");
  }
}

// Star centers followed by their leaves; returns the node id of each center.
std::vector<int> add_stars(std::vector<Edge>& edges, int& next, const std::vector<std::int64_t>& sizes,
                           const Rational& leg) {
  std::vector<int> centers;
  for (auto k : sizes) {
    const int c = next++;
    centers.push_back(c);
    edges.push_back({0, c, Rational(2)});
    for (std::int64_t i = 0; i < k; ++i) edges.push_back({c, next++, leg});
  }
  return centers;
}

}  // namespace

BalPartInstance balpart_from_3partition(const std::vector<std::int64_t>& y) {
  if (y.empty() || y.size() % 3 != 0) throw ValidationError("3-partition input size must be a positive multiple of 3");
  for (auto a : y) {
    if (a < 1) throw ValidationError("values must be positive integers");
  }
  const std::int64_t shift = total(y);
  BalPartInstance out;
  out.parts = static_cast<int>(y.size() / 3);
  for (auto a : y) out.values.push_back(a + shift);
  return out;
}

HardPair build_hard_pair(const BalPartInstance& inst, const Rational& lambda, const Rational& rho) {
  check_instance(inst);
  if (!(lambda > Rational(6))) throw ValidationError("lambda must exceed 6");
  if (rho.sign() <= 0 || !(rho < lambda - Rational(6))) throw ValidationError("rho must lie in (0, lambda - 6)");
  const std::int64_t sum = total(inst.values);
  if (sum % inst.parts != 0) throw ValidationError("value total is not divisible by the part count");
  const std::int64_t per_part = sum / inst.parts;

  std::vector<Edge> e1{{0, 1, rho}};
  int n1 = 2;
  add_stars(e1, n1, inst.values, lambda);

  std::vector<Edge> e2{{0, 1, rho}};
  int n2 = 2;
  add_stars(e2, n2, std::vector<std::int64_t>(inst.parts, per_part), lambda + Rational(1));

  return {MetricTree(n1, std::move(e1)), MetricTree(n2, std::move(e2)), lambda, rho, inst};
}

Correspondence yes_certificate(const HardPair& pair, const Partition& partition) {
  const auto& xs = pair.source.values;
  const int n = static_cast<int>(xs.size());
  const int m = pair.source.parts;
  if (static_cast<int>(partition.size()) != m) throw ValidationError("partition must have one set per part");
  const std::int64_t per_part = total(xs) / m;
  std::vector<int> part_of(n, -1);
  for (int j = 0; j < m; ++j) {
    std::int64_t s = 0;
    for (int i : partition[j]) {
      if (i < 0 || i >= n || part_of[i] != -1) throw ValidationError("partition must use every index exactly once");
      part_of[i] = j;
      s += xs[i];
    }
    if (s != per_part) throw ValidationError("partition set " + std::to_string(j) + " does not sum to " + std::to_string(per_part));
  }
  if (std::count(part_of.begin(), part_of.end(), -1) != 0) throw ValidationError("partition must use every index exactly once");

  // Center ids under the documented numbering.
  std::vector<int> p_center(n);
  for (int i = 0, id = 2; i < n; ++i) {
    p_center[i] = id;
    id += 1 + static_cast<int>(xs[i]);
  }
  std::vector<int> q_center(m);
  for (int j = 0; j < m; ++j) q_center[j] = 2 + j * (1 + static_cast<int>(per_part));

  Correspondence c;
  auto add = [&](int a, int b) { c.pairs.emplace_back(TreePoint::at_node(a), TreePoint::at_node(b)); };
  add(0, 0);
  add(1, 1);
  for (int j = 0; j < m; ++j) {
    int leaf = q_center[j] + 1;
    for (int i : partition[j]) {
      add(p_center[i], q_center[j]);
      for (int k = 1; k <= xs[i]; ++k) add(p_center[i] + k, leaf++);
    }
  }
  return c;
}

std::optional<Partition> balpart_bruteforce(const BalPartInstance& inst, int max_n) {
  check_instance(inst);
  const int n = static_cast<int>(inst.values.size());
  if (n > max_n) throw SizeLimitError("brute-force partition is limited to " + std::to_string(max_n) + " values");
  const std::int64_t sum = total(inst.values);
  if (sum % inst.parts != 0) return std::nullopt;
  const std::int64_t cap = sum / inst.parts;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.values[a] > inst.values[b]; });
  std::vector<std::int64_t> load(inst.parts, 0);
  Partition sets(inst.parts);
  std::function<bool(int)> place = [&](int k) {
    if (k == n) return true;
    const int i = order[k];
    for (int j = 0; j < inst.parts; ++j) {
      if (load[j] + inst.values[i] > cap) continue;
      load[j] += inst.values[i];
      sets[j].push_back(i);
      if (place(k + 1)) return true;
      sets[j].pop_back();
      load[j] -= inst.values[i];
      // Empty parts are interchangeable.
      if (load[j] == 0) break;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return sets;
}

MetricTree subdivide_to_unit(const MetricTree& t) {
  std::vector<Edge> out;
  int next = t.node_count();
  for (const auto& e : t.edges()) {
    if (!e.length.is_integer()) throw ValidationError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " has non-integer length");
    const long steps = e.length.numerator().get_si();
    int prev = e.u;
    for (long k = 1; k < steps; ++k) {
      out.push_back({prev, next, Rational(1)});
      prev = next++;
    }
    out.push_back({prev, e.v, Rational(1)});
  }
  return MetricTree(next, std::move(out));
}

}  // namespace treegh
