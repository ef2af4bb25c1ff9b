#include "nblp/decompose.hpp"

#include <algorithm>
#include <queue>

namespace nblp {

FlowNetwork::FlowNetwork(int nodes) : nodes_(nodes) {
  if (nodes < 0) throw Error("flow network needs a nonnegative node count");
}

int FlowNetwork::add_node() { return nodes_++; }

int FlowNetwork::add_edge(int from, int to, long lower, long cap) {
  if (from < 0 || from >= nodes_ || to < 0 || to >= nodes_)
    throw Error("flow edge endpoint out of range");
  if (lower < 0 || cap < lower)
    throw Error("flow edge bounds must satisfy 0 <= lower <= cap");
  edges_.push_back(Edge{from, to, lower, cap, 0});
  return static_cast<int>(edges_.size()) - 1;
}

bool FlowNetwork::solve() {
  // Standard excess reduction: ship every lower bound up front, then repair
  // node balances with a super source/sink pair on the residual capacities.
  const int ss = nodes_;
  const int tt = nodes_ + 1;
  const int total = nodes_ + 2;

  struct Arc {
    int to;
    long cap;
    int rev;  // index of the reverse arc in adj[to]
  };
  std::vector<std::vector<Arc>> adj(total);
  auto arc = [&adj](int u, int v, long cap) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1});
  };

  // Forward arcs in edge order keeps augmentation deterministic.
  std::vector<std::pair<int, int>> slot(edges_.size());  // (node, arc index)
  for (size_t e = 0; e < edges_.size(); ++e) {
    slot[e] = {edges_[e].from, static_cast<int>(adj[edges_[e].from].size())};
    arc(edges_[e].from, edges_[e].to, edges_[e].cap - edges_[e].lower);
  }
  std::vector<long> excess(total, 0);
  for (const Edge& e : edges_) {
    excess[e.to] += e.lower;
    excess[e.from] -= e.lower;
  }
  long need = 0;
  for (int v = 0; v < nodes_; ++v) {
    if (excess[v] > 0) {
      arc(ss, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      arc(v, tt, -excess[v]);
    }
  }

  long shipped = 0;
  for (;;) {
    // Shortest augmenting path by BFS, scanning arcs in insertion order.
    std::vector<std::pair<int, int>> parent(total, {-1, -1});
    std::queue<int> bfs;
    bfs.push(ss);
    parent[ss] = {ss, -1};
    while (!bfs.empty() && parent[tt].first < 0) {
      const int u = bfs.front();
      bfs.pop();
      for (size_t a = 0; a < adj[u].size(); ++a) {
        const Arc& ar = adj[u][a];
        if (ar.cap <= 0 || parent[ar.to].first >= 0) continue;
        parent[ar.to] = {u, static_cast<int>(a)};
        if (ar.to == tt) break;
        bfs.push(ar.to);
      }
    }
    if (parent[tt].first < 0) break;
    long bottleneck = -1;
    for (int v = tt; v != ss; v = parent[v].first) {
      const Arc& ar = adj[parent[v].first][parent[v].second];
      bottleneck = bottleneck < 0 ? ar.cap : std::min(bottleneck, ar.cap);
    }
    for (int v = tt; v != ss; v = parent[v].first) {
      Arc& ar = adj[parent[v].first][parent[v].second];
      ar.cap -= bottleneck;
      adj[ar.to][ar.rev].cap += bottleneck;
    }
    shipped += bottleneck;
  }
  if (shipped != need) return false;

  for (size_t e = 0; e < edges_.size(); ++e) {
    const Arc& fwd = adj[slot[e].first][slot[e].second];
    edges_[e].flow = edges_[e].lower + (edges_[e].cap - edges_[e].lower - fwd.cap);
  }
  return true;
}

long FlowNetwork::flow(int edge) const {
  return edges_.at(static_cast<size_t>(edge)).flow;
}

Word extract_assignment(const Ring& ring, const Profile& k, long M,
                        const std::vector<std::vector<long>>& x) {
  const int qm1 = ring.cardinality() - 1;
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(k.size()) != qm1)
    throw Error("profile length does not match the ring");

  // Nodes: 0 = source, 1 = sink, 2..q = symbol nodes, then positions.
  FlowNetwork net(2 + qm1 + n);
  const auto symbol_node = [](int alpha) { return 2 + alpha - 1; };
  const auto position_node = [qm1](int i) { return 2 + qm1 + i; };

  long total = 0;
  for (int alpha = 1; alpha <= qm1; ++alpha) {
    net.add_edge(0, symbol_node(alpha), k[alpha - 1], k[alpha - 1]);
    total += k[alpha - 1];
  }
  std::vector<std::vector<int>> pick(n, std::vector<int>(qm1, -1));
  for (int alpha = 1; alpha <= qm1; ++alpha)
    for (int i = 0; i < n; ++i)
      if (x[i][alpha - 1] >= 1)
        pick[i][alpha - 1] =
            net.add_edge(symbol_node(alpha), position_node(i), 0, 1);
  for (int i = 0; i < n; ++i) {
    long row = 0;
    for (int alpha = 1; alpha <= qm1; ++alpha) row += x[i][alpha - 1];
    net.add_edge(position_node(i), 1, row == M ? 1 : 0, 1);
  }
  net.add_edge(1, 0, total, total);

  if (!net.solve())
    throw Error("no layer with the requested profile exists for this mass");

  Word c(n, 0);
  for (int i = 0; i < n; ++i)
    for (int alpha = 1; alpha <= qm1; ++alpha)
      if (pick[i][alpha - 1] >= 0 && net.flow(pick[i][alpha - 1]) == 1)
        c[i] = alpha;
  return c;
}

std::vector<Word> decompose(const Ring& ring, const Profile& k, long M,
                            std::vector<std::vector<long>> x) {
  const int qm1 = ring.cardinality() - 1;
  if (static_cast<int>(k.size()) != qm1)
    throw Error("profile length does not match the ring");
  if (M < 0) throw Error("layer count must be nonnegative");

  int weighted_sum = 0;
  for (int alpha = 1; alpha <= qm1; ++alpha) {
    if (k[alpha - 1] < 0) throw Error("profile entries must be nonnegative");
    weighted_sum =
        ring.add(weighted_sum, ring.scalar_repeat(alpha, k[alpha - 1]));
  }
  if (weighted_sum != 0)
    throw Error("profile is not zero-sum over the ring");

  const int n = static_cast<int>(x.size());
  std::vector<long> colsum(qm1, 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(x[i].size()) != qm1)
      throw Error("mass row width does not match the ring");
    long row = 0;
    for (int a = 0; a < qm1; ++a) {
      if (x[i][a] < 0) throw Error("mass entries must be nonnegative");
      row += x[i][a];
      colsum[a] += x[i][a];
    }
    if (row > M)
      throw Error("position mass exceeds the layer count");
  }
  for (int a = 0; a < qm1; ++a)
    if (colsum[a] != k[a] * M)
      throw Error("symbol mass does not match profile times layer count");

  std::vector<Word> layers;
  layers.reserve(static_cast<size_t>(M));
  for (long t = 0; t < M; ++t) {
    Word c = extract_assignment(ring, k, M - t, x);
    for (int i = 0; i < n; ++i)
      if (c[i] != 0) {
        if (--x[i][c[i] - 1] < 0)
          throw Error("layer spent mass that was not there");
      }
    layers.push_back(std::move(c));
  }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < qm1; ++a)
      if (x[i][a] != 0) throw Error("mass left over after all layers");
  return layers;
}

namespace {

void require_same_source(const PolytopeBuild& a, const PolytopeBuild& b) {
  if (a.source.to_text() != b.source.to_text())
    throw Error("builds do not share a source matrix");
}

int profile_index(const PolytopeBuild& u, int j, const Profile& k) {
  const auto it = std::lower_bound(u.tsets[j].begin(), u.tsets[j].end(), k);
  if (it == u.tsets[j].end() || *it != k)
    throw Error("profile missing from the profile set");
  return static_cast<int>(it - u.tsets[j].begin());
}

}  // namespace

std::vector<Rational> push_point(const PolytopeBuild& weights,
                                 const PolytopeBuild& splits,
                                 const std::vector<Rational>& x) {
  if (weights.kind != PolytopeKind::Q || splits.kind != PolytopeKind::U)
    throw Error("push maps a Q build onto a U build");
  require_same_source(weights, splits);
  {
    const PointCheck pc = check_point(weights.lp, x);
    if (!pc.ok)
      throw Error("input point is not feasible: " + pc.violations.front());
  }

  const ParityCheckMatrix& mat = weights.built;
  std::vector<Rational> out(splits.lp.variable_count(), Rational(0));
  const int qm1 = weights.ring().cardinality() - 1;
  for (int i = 0; i < mat.cols(); ++i)
    for (int alpha = 1; alpha <= qm1; ++alpha)
      out[splits.f_col(i, alpha)] = x[weights.f_col(i, alpha)];

  for (int j = 0; j < mat.rows(); ++j) {
    const std::vector<Word>& words = weights.local_words[j];
    for (size_t t = 0; t < words.size(); ++t) {
      const Rational& w = x[weights.w_col(j, static_cast<int>(t))];
      if (sgn(w) == 0) continue;
      const int kidx = profile_index(splits, j, kappa_row(mat, j, words[t]));
      out[splits.sigma_col(j, kidx)] += w;
      for (size_t s = 0; s < words[t].size(); ++s)
        if (words[t][s] != 0)
          out[splits.z_col(j, static_cast<int>(s), kidx, words[t][s])] += w;
    }
  }

  const PointCheck pc = check_point(splits.lp, out);
  if (!pc.ok)
    throw Error("pushed point fails the split constraints: " +
                pc.violations.front());
  return out;
}

std::vector<Rational> lift_point(const PolytopeBuild& splits,
                                 const PolytopeBuild& weights,
                                 const std::vector<Rational>& x,
                                 long mu_cap) {
  if (splits.kind != PolytopeKind::U || weights.kind != PolytopeKind::Q)
    throw Error("lift maps a U build onto a Q build");
  require_same_source(splits, weights);
  {
    const PointCheck pc = check_point(splits.lp, x);
    if (!pc.ok)
      throw Error("input point is not feasible: " + pc.violations.front());
  }

  const ParityCheckMatrix& mat = splits.built;
  const Ring& ring = splits.ring();
  const int qm1 = ring.cardinality() - 1;
  std::vector<Rational> out(weights.lp.variable_count(), Rational(0));
  for (int i = 0; i < mat.cols(); ++i)
    for (int alpha = 1; alpha <= qm1; ++alpha)
      out[weights.f_col(i, alpha)] = x[splits.f_col(i, alpha)];

  for (int j = 0; j < mat.rows(); ++j) {
    const std::vector<int>& sup = mat.support(j);
    const int d = static_cast<int>(sup.size());
    for (int kidx = 0; kidx < static_cast<int>(splits.tsets[j].size());
         ++kidx) {
      const Rational& sigma = x[splits.sigma_col(j, kidx)];
      if (sgn(sigma) == 0) {
        // A zero-weight profile must carry no split mass; unit coefficients
        // guarantee that via the cap rows, zero divisors do not.
        for (int s = 0; s < d; ++s)
          for (int beta = 1; beta <= qm1; ++beta)
            if (sgn(x[splits.z_col(j, s, kidx, beta)]) != 0)
              throw Error("split mass on a zero-weight profile cannot be "
                          "lifted");
        continue;
      }

      // Annihilated split mass never reaches a product count, so no weight
      // assignment can reproduce it.
      for (int s = 0; s < d; ++s)
        for (int beta = 1; beta <= qm1; ++beta)
          if (ring.mul(beta, mat.entry(j, sup[s])) == 0 &&
              sgn(x[splits.z_col(j, s, kidx, beta)]) != 0)
            throw Error("split mass on an annihilated symbol cannot be "
                        "lifted");

      // mu = lcm of the denominators of z/sigma.
      mpz_class mu(1);
      for (int s = 0; s < d; ++s)
        for (int beta = 1; beta <= qm1; ++beta) {
          const Rational ratio =
              x[splits.z_col(j, s, kidx, beta)] / sigma;
          mpz_lcm(mu.get_mpz_t(), mu.get_mpz_t(),
                  ratio.get_den().get_mpz_t());
        }
      if (mu > mu_cap)
        throw SizeError("lift scale exceeds the cap for row " +
                        std::to_string(j));
      const long m_layers = mu.get_si();

      // Integral per-slot product masses X[s][alpha-1] = mu * tau / sigma.
      const std::vector<std::vector<Rational>> tau =
          tau_of(splits, x, j, kidx);
      std::vector<std::vector<long>> mass(d, std::vector<long>(qm1, 0));
      for (int s = 0; s < d; ++s)
        for (int a = 0; a < qm1; ++a) {
          const Rational scaled = Rational(mu) * tau[s][a] / sigma;
          if (scaled.get_den() != 1)
            throw Error("scaled product mass is not integral");
          mass[s][a] = scaled.get_num().get_si();
        }

      const std::vector<Word> layers =
          decompose(ring, splits.tsets[j][kidx], m_layers, mass);

      // Spend each slot's per-symbol split budget in ascending symbol
      // order across the layers, turning product words into local words.
      std::vector<std::vector<long>> budget(d, std::vector<long>(qm1, 0));
      for (int s = 0; s < d; ++s)
        for (int beta = 1; beta <= qm1; ++beta) {
          const Rational scaled =
              Rational(mu) * x[splits.z_col(j, s, kidx, beta)] / sigma;
          if (scaled.get_den() != 1)
            throw Error("scaled split mass is not integral");
          budget[s][beta - 1] = scaled.get_num().get_si();
        }
      const Rational weight_each = sigma / Rational(mu);
      for (const Word& layer : layers) {
        Word local(d, 0);
        for (int s = 0; s < d; ++s) {
          if (layer[s] == 0) continue;
          const int h = mat.entry(j, sup[s]);
          int chosen = 0;
          for (int beta = 1; beta <= qm1; ++beta)
            if (ring.mul(beta, h) == layer[s] && budget[s][beta - 1] > 0) {
              chosen = beta;
              break;
            }
          if (chosen == 0)
            throw Error("no split budget left for a layer symbol");
          --budget[s][chosen - 1];
          local[s] = chosen;
        }
        const auto it = std::lower_bound(weights.local_words[j].begin(),
                                         weights.local_words[j].end(), local);
        if (it == weights.local_words[j].end() || *it != local)
          throw Error("lifted layer is not a local codeword");
        out[weights.w_col(
            j, static_cast<int>(it - weights.local_words[j].begin()))] +=
            weight_each;
      }
      for (int s = 0; s < d; ++s)
        for (int a = 0; a < qm1; ++a)
          if (budget[s][a] != 0)
            throw Error("split budget left over after all layers");
    }
  }

  const PointCheck pc = check_point(weights.lp, out);
  if (!pc.ok)
    throw Error("lifted point fails the weight constraints: " +
                pc.violations.front());
  return out;
}

}  // namespace nblp
