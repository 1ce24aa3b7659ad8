#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treegh/metric_tree.hpp"
#include "treegh/rational.hpp"

namespace treegh {

/// Split `values` into `parts` multisets of equal sum.
struct BalPartInstance {
  std::vector<std::int64_t> values;
  int parts = 1;
};

/// Index sets into BalPartInstance::values, one per part.
using Partition = std::vector<std::vector<int>>;

/// Adds the total of y to every element; |y| must be a multiple of 3 and the
/// part count is |y| / 3.
BalPartInstance balpart_from_3partition(const std::vector<std::int64_t>& y);

struct HardPair {
  MetricTree t1;
  MetricTree t2;
  Rational lambda;
  Rational rho;
  BalPartInstance source;
};

/// Node numbering, T1: r1 = 0, r1' = 1, then for each value i its center p_i
/// followed by the star's leaves. T2: r2 = 0, r2' = 1, then for each part j its
/// center q_j followed by sum/parts leaves. Requires lambda > 6,
/// 0 < rho < lambda - 6 and a total divisible by the part count.
HardPair build_hard_pair(const BalPartInstance& inst, const Rational& lambda = Rational(7),
                         const Rational& rho = Rational(1, 2));

/// Vertex correspondence induced by a balanced partition: roots and root
/// spurs paired, p_i with the center of its part, star leaves paired block by
/// block. Throws ValidationError unless `partition` is balanced.
Correspondence yes_certificate(const HardPair& pair, const Partition& partition);

/// Exhaustive search; nullopt for no-instances. Throws SizeLimitError above max_n values.
std::optional<Partition> balpart_bruteforce(const BalPartInstance& inst, int max_n = 12);

/// Replaces every edge of integer length l by a path of l unit edges. New
/// nodes are numbered after the original ones, edge by edge.
MetricTree subdivide_to_unit(const MetricTree& t);

}  // namespace treegh
