#pragma once

#include <vector>

#include "nblp/polytope.hpp"

namespace nblp {

/// Integer-capacity flow network with per-edge lower bounds, solved as a
/// circulation (every node must balance). Deterministic: augmenting paths
/// are found by breadth-first search in edge-insertion order, so identical
/// inputs always produce identical flows.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes);

  int add_node();
  int node_count() const { return nodes_; }

  /// Adds a directed edge carrying between `lower` and `cap` units.
  /// Returns the edge id used by flow().
  int add_edge(int from, int to, long lower, long cap);

  /// Finds a feasible circulation. Returns false when none exists.
  bool solve();

  /// Flow assigned to an edge by the last successful solve().
  long flow(int edge) const;

 private:
  struct Edge {
    int from, to;
    long lower, cap, flow;
  };
  int nodes_ = 0;
  std::vector<Edge> edges_;
};

/// One layer of a profile-constrained decomposition: a word c with exactly
/// k[a-1] positions carrying each nonzero symbol a, using only positions
/// with x[i][a-1] >= 1 and covering every critical position (one whose row
/// sum equals M). Such a layer exists whenever x satisfies the decompose()
/// preconditions; throws Error when the flow problem is infeasible.
Word extract_assignment(const Ring& ring, const Profile& k, long M,
                        const std::vector<std::vector<long>>& x);

/// Writes x as the indicator sum of exactly M words, each with symbol
/// profile k. Preconditions (validated, Error on violation):
///   - k has q-1 nonnegative entries whose ring-weighted sum
///     sum_a (a repeated k[a-1] times) is zero,
///   - x is N x (q-1) with nonnegative entries,
///   - column sums match: sum_i x[i][a-1] == k[a-1] * M for every a,
///   - row sums fit: sum_a x[i][a-1] <= M for every i,
///   - M >= 0, and M == 0 forces x == 0.
/// The returned words are in extraction order and deterministic.
std::vector<Word> decompose(const Ring& ring, const Profile& k, long M,
                            std::vector<std::vector<long>> x);

/// Maps a point of a weight-form (Q) build to the split form (U) built on
/// the same matrix: each local word's weight is credited to its product
/// profile's sigma and to the split variable of every nonzero symbol it
/// carries. Indicator coordinates are copied unchanged. The input must be
/// feasible for `weights`; the output is feasible for `splits` and exact.
std::vector<Rational> push_point(const PolytopeBuild& weights,
                                 const PolytopeBuild& splits,
                                 const std::vector<Rational>& x);

/// Maps a feasible point of a split-form build back to the weight form.
/// Per check row and profile with positive weight sigma, the split mass is
/// scaled by the least common multiple mu of the denominators of z/sigma,
/// decomposed into mu integral layers, and each layer is turned into a
/// local codeword by spending the per-symbol split budgets in ascending
/// symbol order; the resulting words carry weight sigma/mu. Indicator
/// coordinates are preserved exactly. Throws SizeError when mu would
/// exceed mu_cap, and Error when split mass sits on an annihilated symbol
/// (beta with beta*H == 0) or on a zero-weight profile - such points arise
/// only with zero-divisor coefficients, where the two forms differ.
std::vector<Rational> lift_point(const PolytopeBuild& splits,
                                 const PolytopeBuild& weights,
                                 const std::vector<Rational>& x,
                                 long mu_cap = 1000000);

}  // namespace nblp
