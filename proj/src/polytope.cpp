#include "nblp/polytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace nblp {

std::string to_string(PolytopeKind kind) {
  switch (kind) {
    case PolytopeKind::Q: return "q";
    case PolytopeKind::U: return "u";
    case PolytopeKind::S: return "s";
  }
  throw Error("unknown polytope kind");
}

PolytopeKind parse_polytope_kind(const std::string& text) {
  if (text == "q" || text == "Q") return PolytopeKind::Q;
  if (text == "u" || text == "U") return PolytopeKind::U;
  if (text == "s" || text == "S") return PolytopeKind::S;
  throw ParseError("unknown polytope kind: '" + text + "' (expected q, u or s)");
}

CascadedCode cascade(const ParityCheckMatrix& mat) {
  const Ring& ring = mat.ring();
  const int n = mat.cols();
  const int one = ring.one().code();
  const int minus_one = ring.neg(one);

  int states = 0;
  for (int j = 0; j < mat.rows(); ++j)
    if (mat.row_degree(j) >= 4) states += mat.row_degree(j) - 3;
  const int total = n + states;

  std::vector<std::vector<int>> rows;
  std::vector<int> source_row;
  std::vector<int> state_source(states, -1);

  int next_state = 0;
  for (int j = 0; j < mat.rows(); ++j) {
    const std::vector<int>& sup = mat.support(j);
    const int d = static_cast<int>(sup.size());
    if (d <= 3) {
      std::vector<int> row(total, 0);
      for (int i : sup) row[i] = mat.entry(j, i);
      rows.push_back(std::move(row));
      source_row.push_back(j);
      continue;
    }
    const int s0 = n + next_state;
    for (int s = 0; s < d - 3; ++s) state_source[next_state + s] = j;
    next_state += d - 3;

    // Opening row: H_1 b_1 + H_2 b_2 + x_1 = 0.
    {
      std::vector<int> row(total, 0);
      row[sup[0]] = mat.entry(j, sup[0]);
      row[sup[1]] = mat.entry(j, sup[1]);
      row[s0] = one;
      rows.push_back(std::move(row));
      source_row.push_back(j);
    }
    // Middle rows: x_l - H_{l+2} b_{l+2} - x_{l+1} = 0.
    for (int l = 1; l <= d - 4; ++l) {
      std::vector<int> row(total, 0);
      row[s0 + l - 1] = one;
      row[sup[l + 1]] = ring.neg(mat.entry(j, sup[l + 1]));
      row[s0 + l] = minus_one;
      rows.push_back(std::move(row));
      source_row.push_back(j);
    }
    // Terminal row: -x_{d-3} + H_{d-1} b_{d-1} + H_d b_d = 0.
    {
      std::vector<int> row(total, 0);
      row[s0 + d - 4] = minus_one;
      row[sup[d - 2]] = mat.entry(j, sup[d - 2]);
      row[sup[d - 1]] = mat.entry(j, sup[d - 1]);
      rows.push_back(std::move(row));
      source_row.push_back(j);
    }
  }

  std::vector<int> entries;
  entries.reserve(rows.size() * total);
  for (const std::vector<int>& row : rows)
    entries.insert(entries.end(), row.begin(), row.end());
  ParityCheckMatrix f(ring, static_cast<int>(rows.size()), total,
                      std::move(entries));
  return CascadedCode{std::move(f), n, std::move(source_row),
                      std::move(state_source)};
}

namespace {

int ring_inverse(const Ring& ring, int a) {
  const int one = ring.one().code();
  for (int c = 0; c < ring.cardinality(); ++c)
    if (ring.mul(a, c) == one) return c;
  throw Error("element has no inverse");
}

}  // namespace

Word extend_word(const CascadedCode& cc, const Word& w) {
  const ParityCheckMatrix& f = cc.matrix;
  const Ring& ring = f.ring();
  const int n = cc.original_columns;
  if (static_cast<int>(w.size()) != n)
    throw Error("word length does not match the source matrix");

  Word full(f.cols(), 0);
  std::vector<bool> known(f.cols(), false);
  for (int i = 0; i < n; ++i) {
    full[i] = w[i];
    known[i] = true;
  }
  // Each row either determines one still-unknown state column or, once all
  // its support is known, must balance to zero. Terminal rows are exactly
  // the original parity checks, so a non-codeword fails there.
  for (int r = 0; r < f.rows(); ++r) {
    int unknown = -1;
    for (int i : f.support(r)) {
      if (known[i]) continue;
      if (unknown >= 0) throw Error("cascade rows out of order");
      unknown = i;
    }
    if (unknown < 0) {
      if (f.row_syndrome(r, full) != 0)
        throw Error("word does not satisfy every check");
      continue;
    }
    int rest = 0;
    for (int i : f.support(r))
      if (i != unknown) rest = ring.add(rest, ring.mul(f.entry(r, i), full[i]));
    const int coef = f.entry(r, unknown);
    full[unknown] = ring.mul(ring_inverse(ring, coef), ring.neg(rest));
    known[unknown] = true;
  }
  return full;
}

int PolytopeBuild::f_col(int i, int alpha) const {
  const int qm1 = ring().cardinality() - 1;
  if (i < 0 || i >= positions() || alpha < 1 || alpha > qm1)
    throw Error("indicator column out of range");
  return i * qm1 + (alpha - 1);
}

int PolytopeBuild::w_col(int j, int t) const {
  if (kind == PolytopeKind::U) throw Error("no weight columns in a U build");
  if (j < 0 || j >= static_cast<int>(local_words.size()) || t < 0 ||
      t >= static_cast<int>(local_words[j].size()))
    throw Error("weight column out of range");
  return w_offset_[j] + t;
}

int PolytopeBuild::sigma_col(int j, int k) const {
  if (kind != PolytopeKind::U) throw Error("profile columns exist only in U builds");
  if (j < 0 || j >= static_cast<int>(tsets.size()) || k < 0 ||
      k >= static_cast<int>(tsets[j].size()))
    throw Error("profile column out of range");
  return sigma_offset_[j] + k;
}

int PolytopeBuild::z_col(int j, int slot, int k, int beta) const {
  if (kind != PolytopeKind::U) throw Error("split columns exist only in U builds");
  const int qm1 = ring().cardinality() - 1;
  const int t = static_cast<int>(tsets.at(j).size());
  if (slot < 0 || slot >= built.row_degree(j) || k < 0 || k >= t || beta < 1 ||
      beta > qm1)
    throw Error("split column out of range");
  return z_offset_[j] + (slot * t + k) * qm1 + (beta - 1);
}

std::vector<int> PolytopeBuild::original_f_columns() const {
  const int qm1 = ring().cardinality() - 1;
  std::vector<int> cols;
  cols.reserve(static_cast<size_t>(original_positions()) * qm1);
  for (int i = 0; i < original_positions(); ++i)
    for (int alpha = 1; alpha <= qm1; ++alpha) cols.push_back(f_col(i, alpha));
  return cols;
}

namespace {

void add_indicator_columns(PolytopeBuild& b) {
  const int qm1 = b.ring().cardinality() - 1;
  for (int i = 0; i < b.positions(); ++i) {
    const bool original = i < b.original_positions();
    for (int alpha = 1; alpha <= qm1; ++alpha) {
      const std::string name = (original ? "f" : "h") + std::to_string(i) +
                               "_" + std::to_string(alpha);
      b.lp.add_variable(name, original ? VarRole::Indicator
                                       : VarRole::CascadeIndicator);
    }
  }
}

void build_weight_rows(PolytopeBuild& b, const EnumerationCaps& caps) {
  const ParityCheckMatrix& mat = b.built;
  const int qm1 = b.ring().cardinality() - 1;
  b.local_words.resize(mat.rows());
  b.w_offset_.assign(mat.rows(), -1);

  for (int j = 0; j < mat.rows(); ++j) {
    b.local_words[j] = enumerate_local_code(mat, j, caps);
    const std::vector<Word>& words = b.local_words[j];
    b.w_offset_[j] = b.lp.variable_count();
    for (size_t t = 0; t < words.size(); ++t)
      b.lp.add_variable("w" + std::to_string(j) + "_" + std::to_string(t),
                        VarRole::CodewordWeight);

    std::vector<LinearTerm> ones;
    for (size_t t = 0; t < words.size(); ++t)
      ones.push_back({b.w_col(j, static_cast<int>(t)), Rational(1)});
    b.lp.add_constraint("q_one_" + std::to_string(j), Relation::Eq, 1,
                        std::move(ones));

    const std::vector<int>& sup = mat.support(j);
    for (size_t s = 0; s < sup.size(); ++s) {
      const int i = sup[s];
      for (int alpha = 1; alpha <= qm1; ++alpha) {
        std::vector<LinearTerm> terms;
        terms.push_back({b.f_col(i, alpha), Rational(1)});
        for (size_t t = 0; t < words.size(); ++t)
          if (words[t][s] == alpha)
            terms.push_back({b.w_col(j, static_cast<int>(t)), Rational(-1)});
        b.lp.add_constraint("q_f_" + std::to_string(j) + "_" +
                                std::to_string(i) + "_" + std::to_string(alpha),
                            Relation::Eq, 0, std::move(terms));
      }
    }
  }
}

void build_profile_rows(PolytopeBuild& b, const EnumerationCaps& caps) {
  const ParityCheckMatrix& mat = b.built;
  const Ring& ring = b.ring();
  const int qm1 = ring.cardinality() - 1;
  b.tsets.resize(mat.rows());
  b.sigma_offset_.assign(mat.rows(), -1);
  b.z_offset_.assign(mat.rows(), -1);

  for (int j = 0; j < mat.rows(); ++j) {
    b.tsets[j] = tj_image(mat, j, caps);
    const std::vector<Profile>& tset = b.tsets[j];
    const int tcount = static_cast<int>(tset.size());
    const std::vector<int>& sup = mat.support(j);
    const int d = static_cast<int>(sup.size());

    b.sigma_offset_[j] = b.lp.variable_count();
    for (int k = 0; k < tcount; ++k)
      b.lp.add_variable("sig" + std::to_string(j) + "_" + std::to_string(k),
                        VarRole::ProfileWeight);
    b.z_offset_[j] = b.lp.variable_count();
    for (int s = 0; s < d; ++s)
      for (int k = 0; k < tcount; ++k)
        for (int beta = 1; beta <= qm1; ++beta)
          b.lp.add_variable("z" + std::to_string(j) + "_" + std::to_string(s) +
                                "_" + std::to_string(k) + "_" +
                                std::to_string(beta),
                            VarRole::Split);

    // Indicators split across profiles.
    for (int s = 0; s < d; ++s) {
      const int i = sup[s];
      for (int alpha = 1; alpha <= qm1; ++alpha) {
        std::vector<LinearTerm> terms;
        terms.push_back({b.f_col(i, alpha), Rational(1)});
        for (int k = 0; k < tcount; ++k)
          terms.push_back({b.z_col(j, s, k, alpha), Rational(-1)});
        b.lp.add_constraint("u_f_" + std::to_string(j) + "_" +
                                std::to_string(i) + "_" + std::to_string(alpha),
                            Relation::Eq, 0, std::move(terms));
      }
    }

    // Profile weights are a distribution.
    {
      std::vector<LinearTerm> ones;
      for (int k = 0; k < tcount; ++k)
        ones.push_back({b.sigma_col(j, k), Rational(1)});
      b.lp.add_constraint("u_one_" + std::to_string(j), Relation::Eq, 1,
                          std::move(ones));
    }

    // Split mass matches each profile's promised product counts.
    for (int k = 0; k < tcount; ++k) {
      for (int alpha = 1; alpha <= qm1; ++alpha) {
        std::vector<LinearTerm> terms;
        for (int s = 0; s < d; ++s) {
          const int h = mat.entry(j, sup[s]);
          for (int beta = 1; beta <= qm1; ++beta)
            if (ring.mul(beta, h) == alpha)
              terms.push_back({b.z_col(j, s, k, beta), Rational(1)});
        }
        terms.push_back({b.sigma_col(j, k), Rational(-tset[k][alpha - 1])});
        b.lp.add_constraint("u_k_" + std::to_string(j) + "_" +
                                std::to_string(k) + "_" + std::to_string(alpha),
                            Relation::Eq, 0, std::move(terms));
      }
    }

    // Per position, splits with a nonzero product share at most the
    // profile's weight.
    for (int k = 0; k < tcount; ++k) {
      for (int s = 0; s < d; ++s) {
        const int i = sup[s];
        const int h = mat.entry(j, sup[s]);
        std::vector<LinearTerm> terms;
        for (int beta = 1; beta <= qm1; ++beta)
          if (ring.mul(beta, h) != 0)
            terms.push_back({b.z_col(j, s, k, beta), Rational(1)});
        terms.push_back({b.sigma_col(j, k), Rational(-1)});
        b.lp.add_constraint("u_cap_" + std::to_string(j) + "_" +
                                std::to_string(k) + "_" + std::to_string(i),
                            Relation::Le, 0, std::move(terms));
      }
    }
  }
}

}  // namespace

PolytopeBuild build_polytope(const ParityCheckMatrix& mat, PolytopeKind kind,
                             const EnumerationCaps& caps) {
  std::vector<bool> covered(mat.cols(), false);
  for (int j = 0; j < mat.rows(); ++j)
    for (int i : mat.support(j)) covered[i] = true;
  for (int i = 0; i < mat.cols(); ++i)
    if (!covered[i])
      throw Error("column " + std::to_string(i) +
                  " appears in no check row; the relaxation would be "
                  "unbounded there");

  if (kind == PolytopeKind::S) {
    CascadedCode cc = cascade(mat);
    PolytopeBuild b(kind, mat, cc.matrix);
    b.cascaded = std::move(cc);
    add_indicator_columns(b);
    build_weight_rows(b, caps);
    return b;
  }
  PolytopeBuild b(kind, mat, mat);
  add_indicator_columns(b);
  if (kind == PolytopeKind::Q)
    build_weight_rows(b, caps);
  else
    build_profile_rows(b, caps);
  return b;
}

std::vector<Rational> cost_row_for(const PolytopeBuild& build,
                                   const CostVector& costs) {
  if (costs.length() != build.original_positions())
    throw Error("cost vector length does not match the code length");
  if (costs.q != build.ring().cardinality())
    throw Error("cost vector alphabet does not match the ring");
  std::vector<Rational> cost(build.lp.variable_count(), Rational(0));
  const int qm1 = costs.q - 1;
  for (int i = 0; i < costs.length(); ++i)
    for (int alpha = 1; alpha <= qm1; ++alpha)
      cost[build.f_col(i, alpha)] = costs.at(i, alpha);
  return cost;
}

std::vector<Rational> embed_codeword(const PolytopeBuild& build,
                                     const Word& w) {
  if (static_cast<int>(w.size()) != build.original_positions())
    throw Error("word length does not match the code length");
  for (int c : w)
    if (c < 0 || c >= build.ring().cardinality())
      throw Error("word symbol out of range");
  if (!build.source.accepts(w)) throw Error("word does not satisfy every check");

  const Word full =
      build.kind == PolytopeKind::S ? extend_word(*build.cascaded, w) : w;
  std::vector<Rational> x(build.lp.variable_count(), Rational(0));
  for (int i = 0; i < build.positions(); ++i)
    if (full[i] != 0) x[build.f_col(i, full[i])] = 1;

  const ParityCheckMatrix& mat = build.built;
  if (build.kind == PolytopeKind::U) {
    for (int j = 0; j < mat.rows(); ++j) {
      const std::vector<int>& sup = mat.support(j);
      Word local(sup.size());
      for (size_t s = 0; s < sup.size(); ++s) local[s] = full[sup[s]];
      const Profile k = kappa_row(mat, j, local);
      const auto it =
          std::lower_bound(build.tsets[j].begin(), build.tsets[j].end(), k);
      if (it == build.tsets[j].end() || *it != k)
        throw Error("codeword profile missing from the profile set");
      const int kidx = static_cast<int>(it - build.tsets[j].begin());
      x[build.sigma_col(j, kidx)] = 1;
      for (size_t s = 0; s < sup.size(); ++s)
        if (local[s] != 0)
          x[build.z_col(j, static_cast<int>(s), kidx, local[s])] = 1;
    }
    return x;
  }

  for (int j = 0; j < mat.rows(); ++j) {
    const std::vector<int>& sup = mat.support(j);
    Word local(sup.size());
    for (size_t s = 0; s < sup.size(); ++s) local[s] = full[sup[s]];
    const auto it = std::lower_bound(build.local_words[j].begin(),
                                     build.local_words[j].end(), local);
    if (it == build.local_words[j].end() || *it != local)
      throw Error("local word missing from the enumerated local code");
    x[build.w_col(j, static_cast<int>(it - build.local_words[j].begin()))] = 1;
  }
  return x;
}

std::vector<Rational> f_values_at(const PolytopeBuild& build,
                                  const std::vector<Rational>& x, int i) {
  const int qm1 = build.ring().cardinality() - 1;
  std::vector<Rational> out;
  out.reserve(qm1);
  for (int alpha = 1; alpha <= qm1; ++alpha)
    out.push_back(x.at(build.f_col(i, alpha)));
  return out;
}

std::vector<std::vector<Rational>> tau_of(const PolytopeBuild& build,
                                          const std::vector<Rational>& x,
                                          int j, int k) {
  if (build.kind != PolytopeKind::U)
    throw Error("aggregated split mass is defined for U builds");
  const Ring& ring = build.ring();
  const int qm1 = ring.cardinality() - 1;
  const std::vector<int>& sup = build.built.support(j);
  std::vector<std::vector<Rational>> tau(
      sup.size(), std::vector<Rational>(qm1, Rational(0)));
  for (size_t s = 0; s < sup.size(); ++s) {
    const int h = build.built.entry(j, sup[s]);
    for (int beta = 1; beta <= qm1; ++beta) {
      const int alpha = ring.mul(beta, h);
      if (alpha != 0)
        tau[s][alpha - 1] += x.at(build.z_col(j, static_cast<int>(s), k, beta));
    }
  }
  return tau;
}

PointCheck derived_constraints_hold(const PolytopeBuild& build,
                                    const std::vector<Rational>& x) {
  PointCheck out;
  if (build.kind != PolytopeKind::U)
    throw Error("derived-constraint check applies to U builds");
  auto flag = [&out](const std::string& what) {
    out.ok = false;
    out.violations.push_back(what);
  };
  const int qm1 = build.ring().cardinality() - 1;
  for (int i = 0; i < build.positions(); ++i)
    for (int alpha = 1; alpha <= qm1; ++alpha) {
      const Rational& v = x.at(build.f_col(i, alpha));
      if (v < 0 || v > 1)
        flag(build.lp.variable(build.f_col(i, alpha)).name + " outside [0,1]");
    }
  for (int j = 0; j < build.built.rows(); ++j) {
    const int tcount = static_cast<int>(build.tsets[j].size());
    const int d = build.built.row_degree(j);
    for (int k = 0; k < tcount; ++k) {
      const Rational& sig = x.at(build.sigma_col(j, k));
      if (sig < 0 || sig > 1)
        flag(build.lp.variable(build.sigma_col(j, k)).name + " outside [0,1]");
      for (int s = 0; s < d; ++s)
        for (int beta = 1; beta <= qm1; ++beta) {
          const int col = build.z_col(j, s, k, beta);
          if (x.at(col) > sig)
            flag(build.lp.variable(col).name + " exceeds its profile weight");
        }
    }
  }
  return out;
}

CountReport count_report(const PolytopeBuild& build) {
  const ParityCheckMatrix& src = build.source;
  const long n = src.cols();
  const long m = src.rows();
  const long q = src.ring().cardinality();
  const long d = src.max_row_degree();

  CountReport rep;
  rep.kind = build.kind;
  rep.variables = build.lp.variable_count();
  rep.constraints = build.lp.constraint_count();

  switch (build.kind) {
    case PolytopeKind::Q: {
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(q),
                    static_cast<unsigned long>(d - 1));
      rep.variable_bound = n * (q - 1) + m * pw;
      rep.constraint_bound = m * (pw + d * (q - 1) + 1);
      break;
    }
    case PolytopeKind::U: {
      mpz_class tmax = 0;
      for (const std::vector<Profile>& tset : build.tsets)
        tmax = std::max(tmax, mpz_class(static_cast<long>(tset.size())));
      rep.t_max = tmax;
      mpz_bin_uiui(rep.t_bound.get_mpz_t(),
                   static_cast<unsigned long>(d + q - 1),
                   static_cast<unsigned long>(d));
      rep.t_within = rep.t_max <= rep.t_bound;
      rep.variable_bound = n * (q - 1) + m * (d * (q - 1) + 1) * tmax;
      rep.constraint_bound =
          m * (d * (q - 1) + 1) + m * ((d + 1) * (q - 1) + d) * tmax;
      break;
    }
    case PolytopeKind::S: {
      rep.applicable = d >= 4;
      if (rep.applicable) {
        rep.variable_bound =
            (n + m * (d - 3)) * (q - 1) + m * (d - 2) * q * q;
        rep.constraint_bound = m * (d - 2) * (q * q + 3 * q - 2);
      }
      break;
    }
  }
  rep.variables_within = rep.applicable && rep.variables <= rep.variable_bound;
  rep.constraints_within =
      rep.applicable && rep.constraints <= rep.constraint_bound;
  return rep;
}

}  // namespace nblp
