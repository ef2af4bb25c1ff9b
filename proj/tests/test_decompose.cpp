#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "nblp/decompose.hpp"
#include "nblp/rng.hpp"

using namespace nblp;

namespace {

// Indicator sum of a list of words, as the integer mass matrix decompose()
// consumes.
std::vector<std::vector<long>> mass_of(const std::vector<Word>& words, int n,
                                       int qm1) {
  std::vector<std::vector<long>> x(n, std::vector<long>(qm1, 0));
  for (const Word& w : words)
    for (int i = 0; i < n; ++i)
      if (w[i] != 0) ++x[i][w[i] - 1];
  return x;
}

void check_valid_decomposition(const Ring& ring, const Profile& k, long M,
                               const std::vector<std::vector<long>>& x,
                               const std::vector<Word>& layers) {
  REQUIRE(static_cast<long>(layers.size()) == M);
  for (const Word& layer : layers) CHECK(kappa_plain(ring, layer) == k);
  CHECK(mass_of(layers, static_cast<int>(x.size()),
                ring.cardinality() - 1) == x);
}

CostVector synthetic_costs(int n, int q, int salt) {
  CostVector cv;
  cv.q = q;
  cv.lambda.resize(n);
  for (int i = 0; i < n; ++i)
    for (int alpha = 1; alpha < q; ++alpha) {
      const int num = (i * 5 + alpha * 7 + salt * 3) % 13 - 6;
      const int den = 1 + (i + 2 * alpha + salt) % 4;
      cv.lambda[i].push_back(make_rational(num, den));
    }
  return cv;
}

}  // namespace

TEST_CASE("flow network: lower bounds route around cheaper paths") {
  // a -> b twice in parallel, one edge with a lower bound of 2; only the
  // bounded edge may carry flow, the free edge stays empty.
  FlowNetwork net(2);
  const int forced = net.add_edge(0, 1, 2, 3);
  const int free_edge = net.add_edge(0, 1, 0, 5);
  const int back = net.add_edge(1, 0, 2, 2);
  REQUIRE(net.solve());
  CHECK(net.flow(forced) == 2);
  CHECK(net.flow(free_edge) == 0);
  CHECK(net.flow(back) == 2);
}

TEST_CASE("flow network: infeasible lower bounds are reported") {
  FlowNetwork net(3);
  net.add_edge(0, 1, 2, 2);  // must ship 2 into node 1
  net.add_edge(1, 2, 0, 1);  // but only 1 can leave
  net.add_edge(2, 0, 0, 5);
  CHECK_FALSE(net.solve());
}

TEST_CASE("flow network rejects malformed edges") {
  FlowNetwork net(2);
  CHECK_THROWS_AS(net.add_edge(0, 5, 0, 1), Error);
  CHECK_THROWS_AS(net.add_edge(0, 1, 2, 1), Error);
  CHECK_THROWS_AS(net.add_edge(0, 1, -1, 1), Error);
  const int extra = net.add_node();
  CHECK(extra == 2);
  CHECK(net.node_count() == 3);
}

TEST_CASE("two balanced ternary layers split into the two swap words") {
  const Ring z3 = Ring::integers_mod(3);
  const Profile k = {1, 1};  // one symbol 1 and one symbol 2: 1+2=0 mod 3
  const std::vector<std::vector<long>> x = {{1, 1}, {1, 1}};
  const std::vector<Word> layers = decompose(z3, k, 2, x);
  check_valid_decomposition(z3, k, 2, x, layers);
  CHECK(layers[0] == Word{1, 2});
  CHECK(layers[1] == Word{2, 1});
}

TEST_CASE("critical positions are covered by every remaining layer") {
  const Ring z2 = Ring::integers_mod(2);
  const Profile k = {2};  // two ones per layer: 1+1=0 mod 2
  const std::vector<std::vector<long>> x = {{1}, {1}, {2}};
  const std::vector<Word> layers = decompose(z2, k, 2, x);
  check_valid_decomposition(z2, k, 2, x, layers);
  // Position 2 holds mass 2 with only 2 layers: both must use it.
  CHECK(layers[0][2] == 1);
  CHECK(layers[1][2] == 1);
}

TEST_CASE("single layer reproduces its own indicator mass") {
  const Ring gf4 = Ring::galois_field(2, 2);
  const Word w = {1, 2, 3, 0};  // 1+2+3 = 0 over GF(4)
  const Profile k = kappa_plain(gf4, w);
  const std::vector<std::vector<long>> x = mass_of({w}, 4, 3);
  const std::vector<Word> layers = decompose(gf4, k, 1, x);
  REQUIRE(layers.size() == 1);
  CHECK(layers[0] == w);
}

TEST_CASE("zero layers demand zero mass") {
  const Ring z3 = Ring::integers_mod(3);
  CHECK(decompose(z3, {0, 0}, 0, {{0, 0}, {0, 0}}).empty());
  CHECK_THROWS_AS(decompose(z3, {0, 0}, 0, {{1, 0}}), Error);
}

TEST_CASE("decompose validates its preconditions") {
  const Ring z3 = Ring::integers_mod(3);
  // Not zero-sum: a single 1 per layer sums to 1, not 0.
  CHECK_THROWS_AS(decompose(z3, {1, 0}, 1, {{1, 0}}), Error);
  // Column sum mismatch.
  CHECK_THROWS_AS(decompose(z3, {1, 1}, 2, {{1, 1}, {1, 0}}), Error);
  // Row exceeds the layer count.
  CHECK_THROWS_AS(decompose(z3, {1, 1}, 1, {{1, 1}, {1, 1}}), Error);
  // Negative mass.
  CHECK_THROWS_AS(decompose(z3, {1, 1}, 1, {{2, -1}, {0, 2}}), Error);
  // Wrong widths.
  CHECK_THROWS_AS(decompose(z3, {1, 1, 0}, 1, {{1, 1}}), Error);
  CHECK_THROWS_AS(decompose(z3, {1, 1}, 1, {{1, 1, 0}}), Error);
  CHECK_THROWS_AS(decompose(z3, {1, 1}, -1, {{1, 1}}), Error);
}

TEST_CASE("extract_assignment reports unservable profiles") {
  const Ring z3 = Ring::integers_mod(3);
  // Symbol 2 is demanded once but no position offers it.
  CHECK_THROWS_AS(extract_assignment(z3, {1, 1}, 1, {{1, 0}, {1, 0}}), Error);
}

TEST_CASE("constructed sums of profile-mates always decompose") {
  const std::vector<Ring> rings = {
      Ring::integers_mod(2), Ring::integers_mod(3), Ring::integers_mod(4),
      Ring::integers_mod(5), Ring::galois_field(2, 2)};
  Rng rng(20260819);
  int cases = 0;
  for (const Ring& ring : rings) {
    const int qm1 = ring.cardinality() - 1;
    for (int n = 3; n <= 5; ++n) {
      // Group the zero-sum words of length n by plain symbol profile.
      std::map<Profile, std::vector<Word>> groups;
      for (const Word& w : zero_sum_code(ring, n))
        groups[kappa_plain(ring, w)].push_back(w);
      // Pick a nontrivial group and sum random members.
      std::vector<const std::vector<Word>*> pool;
      std::vector<Profile> keys;
      for (const auto& [k, words] : groups)
        if (words.size() >= 2) {
          pool.push_back(&words);
          keys.push_back(k);
        }
      if (pool.empty()) continue;
      const size_t g = static_cast<size_t>(rng.below(pool.size()));
      const std::vector<Word>& words = *pool[g];
      const long M = 2 + static_cast<long>(rng.below(9));  // 2..10
      std::vector<Word> sample;
      for (long t = 0; t < M; ++t)
        sample.push_back(words[rng.below(words.size())]);
      const std::vector<std::vector<long>> x = mass_of(sample, n, qm1);
      CAPTURE(ring.spec_string());
      CAPTURE(n);
      const std::vector<Word> layers = decompose(ring, keys[g], M, x);
      check_valid_decomposition(ring, keys[g], M, x, layers);
      ++cases;
    }
  }
  CHECK(cases >= 12);
}

TEST_CASE("pushing an embedded codeword lands on its split embedding") {
  const Ring gf4 = Ring::galois_field(2, 2);
  const ParityCheckMatrix h(gf4, 2, 4, {1, 1, 1, 1, 0, 1, 2, 3});
  const PolytopeBuild q = build_polytope(h, PolytopeKind::Q);
  const PolytopeBuild u = build_polytope(h, PolytopeKind::U);
  for (const Word& w : enumerate_codebook(h, {})) {
    CAPTURE(format_word(w));
    CHECK(push_point(q, u, embed_codeword(q, w)) == embed_codeword(u, w));
    CHECK(lift_point(u, q, embed_codeword(u, w)) == embed_codeword(q, w));
  }
}

TEST_CASE("weight-form optima push to feasible split points, same value") {
  struct Instance {
    Ring ring;
    int rows, cols;
    std::vector<int> entries;
  };
  const std::vector<Instance> instances = {
      {Ring::galois_field(2, 2), 2, 4, {1, 1, 1, 1, 0, 1, 2, 3}},
      {Ring::integers_mod(3), 2, 4, {1, 2, 1, 0, 0, 1, 1, 2}},
      {Ring::integers_mod(4), 1, 4, {1, 3, 1, 1}},
  };
  for (const Instance& inst : instances) {
    const ParityCheckMatrix h(inst.ring, inst.rows, inst.cols, inst.entries);
    const PolytopeBuild q = build_polytope(h, PolytopeKind::Q);
    const PolytopeBuild u = build_polytope(h, PolytopeKind::U);
    SimplexSolver qsolver(q.lp);
    SimplexSolver usolver(u.lp);
    for (int salt = 0; salt < 3; ++salt) {
      CAPTURE(inst.ring.spec_string());
      CAPTURE(salt);
      const CostVector cv =
          synthetic_costs(inst.cols, inst.ring.cardinality(), salt);

      LPSolution qsol = qsolver.solve_with_cost(cost_row_for(q, cv));
      REQUIRE(qsol.status == SolveStatus::Optimal);
      const std::vector<Rational> pushed = push_point(q, u, qsol.values);
      Rational pushed_cost(0);
      const std::vector<Rational> ucost = cost_row_for(u, cv);
      for (size_t c = 0; c < pushed.size(); ++c)
        if (sgn(pushed[c]) != 0) pushed_cost += ucost[c] * pushed[c];
      CHECK(pushed_cost == qsol.objective);

      LPSolution usol = usolver.solve_with_cost(ucost);
      REQUIRE(usol.status == SolveStatus::Optimal);
      const std::vector<Rational> lifted = lift_point(u, q, usol.values);
      Rational lifted_cost(0);
      const std::vector<Rational> qcost = cost_row_for(q, cv);
      for (size_t c = 0; c < lifted.size(); ++c)
        if (sgn(lifted[c]) != 0) lifted_cost += qcost[c] * lifted[c];
      CHECK(lifted_cost == usol.objective);

      // Indicators are preserved coordinate by coordinate.
      for (int i = 0; i < inst.cols; ++i)
        for (int alpha = 1; alpha < inst.ring.cardinality(); ++alpha) {
          CHECK(pushed[u.f_col(i, alpha)] == qsol.values[q.f_col(i, alpha)]);
          CHECK(lifted[q.f_col(i, alpha)] == usol.values[u.f_col(i, alpha)]);
        }
    }
  }
}

TEST_CASE("lifting a midpoint of two codewords keeps its indicators") {
  const Ring z3 = Ring::integers_mod(3);
  const ParityCheckMatrix h(z3, 2, 4, {1, 2, 1, 0, 0, 1, 1, 2});
  const PolytopeBuild q = build_polytope(h, PolytopeKind::Q);
  const PolytopeBuild u = build_polytope(h, PolytopeKind::U);
  const std::vector<Word> codebook = enumerate_codebook(h, {});
  REQUIRE(codebook.size() >= 4);

  for (size_t a = 0; a < codebook.size(); ++a)
    for (size_t b = a + 1; b < codebook.size(); ++b) {
      const std::vector<Rational> xa = embed_codeword(u, codebook[a]);
      const std::vector<Rational> xb = embed_codeword(u, codebook[b]);
      std::vector<Rational> mid(xa.size());
      for (size_t c = 0; c < xa.size(); ++c)
        mid[c] = (xa[c] + xb[c]) / 2;
      REQUIRE(check_point(u.lp, mid).ok);
      const std::vector<Rational> lifted = lift_point(u, q, mid);
      for (int i = 0; i < 4; ++i)
        for (int alpha = 1; alpha <= 2; ++alpha)
          CHECK(lifted[q.f_col(i, alpha)] == mid[u.f_col(i, alpha)]);
    }
}

TEST_CASE("push and lift reject mismatched builds and infeasible points") {
  const Ring z3 = Ring::integers_mod(3);
  const ParityCheckMatrix h(z3, 1, 2, {1, 1});
  const ParityCheckMatrix h2(z3, 1, 2, {1, 2});
  const PolytopeBuild q = build_polytope(h, PolytopeKind::Q);
  const PolytopeBuild u = build_polytope(h, PolytopeKind::U);
  const PolytopeBuild u2 = build_polytope(h2, PolytopeKind::U);

  const std::vector<Rational> xq = embed_codeword(q, {1, 2});
  const std::vector<Rational> xu = embed_codeword(u, {1, 2});
  CHECK_THROWS_AS(push_point(u, q, xu), Error);
  CHECK_THROWS_AS(lift_point(q, u, xq), Error);
  CHECK_THROWS_AS(push_point(q, u2, xq), Error);

  std::vector<Rational> bad(q.lp.variable_count(), Rational(0));
  bad[q.f_col(0, 1)] = 1;  // indicators without any weight mass
  CHECK_THROWS_AS(push_point(q, u, bad), Error);
}

TEST_CASE("annihilated split mass is refused by the lift") {
  const Ring z4 = Ring::integers_mod(4);
  const ParityCheckMatrix h(z4, 1, 1, {2});
  const PolytopeBuild q = build_polytope(h, PolytopeKind::Q);
  const PolytopeBuild u = build_polytope(h, PolytopeKind::U);

  // Feasible split point with mass on beta=2 (2*2 = 0 over Z4): the
  // indicator f2 is fed entirely by annihilated mass.
  std::vector<Rational> x(u.lp.variable_count(), Rational(0));
  x[u.sigma_col(0, 0)] = 1;
  x[u.f_col(0, 2)] = 1;
  x[u.z_col(0, 0, 0, 2)] = 1;
  REQUIRE(check_point(u.lp, x).ok);
  CHECK_THROWS_AS(lift_point(u, q, x), Error);
}
