#include "nblp/lp.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace nblp {

namespace {

const char* role_token(VarRole role) {
  switch (role) {
    case VarRole::Indicator: return "f";
    case VarRole::CodewordWeight: return "w";
    case VarRole::ProfileWeight: return "sigma";
    case VarRole::Split: return "z";
    case VarRole::CascadeIndicator: return "h";
    case VarRole::Generic: return "x";
  }
  throw Error("unknown variable role");
}

VarRole parse_role(const std::string& tok) {
  if (tok == "f") return VarRole::Indicator;
  if (tok == "w") return VarRole::CodewordWeight;
  if (tok == "sigma") return VarRole::ProfileWeight;
  if (tok == "z") return VarRole::Split;
  if (tok == "h") return VarRole::CascadeIndicator;
  if (tok == "x") return VarRole::Generic;
  throw ParseError("unknown variable role token: '" + tok + "'");
}

const char* relation_token(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Le: return "<=";
    case Relation::Ge: return ">=";
  }
  throw Error("unknown relation");
}

Relation parse_relation(const std::string& tok) {
  if (tok == "=") return Relation::Eq;
  if (tok == "<=") return Relation::Le;
  if (tok == ">=") return Relation::Ge;
  throw ParseError("unknown relation token: '" + tok + "'");
}

void require_token_name(const std::string& name, const char* what) {
  if (name.empty()) throw Error(std::string(what) + " name must not be empty");
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw Error(std::string(what) + " name must not contain whitespace: '" +
                  name + "'");
}

}  // namespace

int LinearProgram::add_variable(std::string name, VarRole role,
                                std::optional<Rational> upper) {
  require_token_name(name, "variable");
  vars_.push_back(Variable{std::move(name), role, std::move(upper)});
  cost_.emplace_back(0);
  return variable_count() - 1;
}

void LinearProgram::set_cost(int var, Rational value) {
  cost_.at(var) = std::move(value);
}

int LinearProgram::add_constraint(std::string name, Relation rel, Rational rhs,
                                  std::vector<LinearTerm> terms) {
  require_token_name(name, "constraint");
  std::sort(terms.begin(), terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  std::vector<LinearTerm> merged;
  for (LinearTerm& t : terms) {
    if (t.var < 0 || t.var >= variable_count())
      throw Error("constraint term references unknown variable");
    if (!merged.empty() && merged.back().var == t.var)
      merged.back().coef += t.coef;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const LinearTerm& t) { return t.coef == 0; });
  cons_.push_back(Constraint{std::move(name), rel, std::move(rhs), std::move(merged)});
  return constraint_count() - 1;
}

std::string LPSolution::basis_identifier() const {
  std::string out;
  for (size_t t = 0; t < basis_names.size(); ++t) {
    if (t) out += ",";
    out += basis_names[t];
  }
  return out;
}

StandardForm standardize(const LinearProgram& lp) {
  const int V = lp.variable_count();

  // Row specs: declared constraints first, then upper-bound rows.
  struct RowSpec {
    int con = -1;
    int upper_var = -1;
    Relation rel = Relation::Eq;
  };
  std::vector<RowSpec> specs;
  for (int c = 0; c < lp.constraint_count(); ++c)
    specs.push_back({c, -1, lp.constraint(c).rel});
  for (int v = 0; v < V; ++v)
    if (lp.variable(v).upper) specs.push_back({-1, v, Relation::Le});

  StandardForm sf;
  sf.original_count = V;
  for (int v = 0; v < V; ++v) sf.col_names.push_back(lp.variable(v).name);
  int slack_count = 0;
  for (const RowSpec& s : specs)
    if (s.rel != Relation::Eq) ++slack_count;
  const int total = V + slack_count;

  sf.cost.assign(total, Rational(0));
  for (int v = 0; v < V; ++v) sf.cost[v] = lp.cost()[v];

  int next_slack = V;
  for (size_t r = 0; r < specs.size(); ++r) {
    const RowSpec& s = specs[r];
    std::vector<Rational> row(total, Rational(0));
    Rational rhs;
    if (s.con >= 0) {
      const Constraint& con = lp.constraint(s.con);
      for (const LinearTerm& t : con.terms) row[t.var] = t.coef;
      rhs = con.rhs;
    } else {
      row[s.upper_var] = 1;
      rhs = *lp.variable(s.upper_var).upper;
    }
    if (s.rel != Relation::Eq) {
      row[next_slack] = (s.rel == Relation::Le) ? Rational(1) : Rational(-1);
      sf.col_names.push_back("~s" + std::to_string(r));
      ++next_slack;
    }
    if (rhs < 0) {
      for (Rational& v : row) v = -v;
      rhs = -rhs;
    }
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(std::move(rhs));
  }
  return sf;
}

namespace {

/// In-place Bland pivot at (row, col): normalizes the pivot row and
/// eliminates the column everywhere else, including the reduced-cost row.
void apply_pivot(std::vector<std::vector<Rational>>& T,
                 std::vector<Rational>& rhs, std::vector<int>& basis,
                 const std::vector<bool>& dropped, std::vector<Rational>& zrow,
                 int r, int e) {
  std::vector<Rational>& prow = T[r];
  const int cols = static_cast<int>(prow.size());
  if (prow[e] != 1) {
    const Rational piv = prow[e];
    for (int j = 0; j < cols; ++j)
      if (sgn(prow[j]) != 0) prow[j] /= piv;
    rhs[r] /= piv;
  }
  std::vector<int> nz;
  nz.reserve(64);
  for (int j = 0; j < cols; ++j)
    if (sgn(prow[j]) != 0) nz.push_back(j);

  // One scratch rational reused across the whole elimination: the inner
  // update runs R*|nz| times, and a fresh mpq temporary per entry would
  // spend most of the pivot inside the allocator.
  Rational tmp;
  const int R = static_cast<int>(T.size());
  for (int i = 0; i < R; ++i) {
    if (i == r || dropped[i]) continue;
    if (sgn(T[i][e]) == 0) continue;
    const Rational f = T[i][e];
    std::vector<Rational>& row = T[i];
    for (int j : nz) {
      tmp = f * prow[j];
      row[j] -= tmp;
    }
    tmp = f * rhs[r];
    rhs[i] -= tmp;
  }
  if (sgn(zrow[e]) != 0) {
    const Rational f = zrow[e];
    for (int j : nz) {
      tmp = f * prow[j];
      zrow[j] -= tmp;
    }
  }
  basis[r] = e;
}

struct PivotOutcome {
  bool bounded = true;
  long pivots = 0;
};

/// Runs Bland's rule to optimality of the given reduced-cost row. Only
/// columns below enter_limit may enter the basis.
PivotOutcome pivot_to_optimum(std::vector<std::vector<Rational>>& T,
                              std::vector<Rational>& rhs,
                              std::vector<int>& basis,
                              const std::vector<bool>& dropped,
                              std::vector<Rational>& zrow, int enter_limit) {
  const int R = static_cast<int>(T.size());
  PivotOutcome out;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < enter_limit; ++j)
      if (sgn(zrow[j]) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) return out;

    int leave = -1;
    Rational best;
    for (int r = 0; r < R; ++r) {
      if (dropped[r] || sgn(T[r][enter]) <= 0) continue;
      Rational ratio = rhs[r] / T[r][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = std::move(ratio);
      }
    }
    if (leave < 0) {
      out.bounded = false;
      return out;
    }
    apply_pivot(T, rhs, basis, dropped, zrow, leave, enter);
    ++out.pivots;
  }
}

}  // namespace

SimplexSolver::SimplexSolver(const LinearProgram& lp)
    : lp_(lp), sf_(standardize(lp)) {
  run_phase1();
}

void SimplexSolver::run_phase1() {
  const int R = sf_.row_count();
  const int C = sf_.col_count();
  artificial_base_ = C;

  tab_ = sf_.rows;
  rhs_ = sf_.rhs;
  basis_.assign(R, -1);
  dropped_.assign(R, false);

  // A row whose slack survived sign normalization with +1 starts basic on
  // the slack; everything else gets an artificial unit column.
  std::vector<int> slack_of_row(R, -1);
  {
    int next_slack = sf_.original_count;
    for (int r = 0; r < R; ++r) {
      // Slack columns were appended in row order; recover the assignment
      // by scanning: column j belongs to row r when it is nonzero there.
      // (Each slack column has exactly one nonzero entry.)
      if (next_slack < C && sgn(tab_[r][next_slack]) != 0)
        slack_of_row[r] = next_slack++;
    }
  }

  std::vector<int> artificial_rows;
  for (int r = 0; r < R; ++r) {
    if (slack_of_row[r] >= 0 && tab_[r][slack_of_row[r]] == 1)
      basis_[r] = slack_of_row[r];
    else
      artificial_rows.push_back(r);
  }
  total_cols_ = C + static_cast<int>(artificial_rows.size());
  for (int r = 0; r < R; ++r) tab_[r].resize(total_cols_, Rational(0));
  for (size_t t = 0; t < artificial_rows.size(); ++t) {
    const int r = artificial_rows[t];
    basis_[r] = C + static_cast<int>(t);
    tab_[r][basis_[r]] = 1;
  }

  // Reduced costs for min(sum of artificials).
  std::vector<Rational> zrow(total_cols_, Rational(0));
  for (int j = 0; j < total_cols_; ++j) {
    Rational s(j >= artificial_base_ ? 1 : 0);
    for (int r : artificial_rows) s -= tab_[r][j];
    zrow[j] = std::move(s);
  }

  PivotOutcome out =
      pivot_to_optimum(tab_, rhs_, basis_, dropped_, zrow, total_cols_);
  if (!out.bounded) throw Error("phase 1 cannot be unbounded");
  phase1_pivots_ = out.pivots;

  Rational infeasibility(0);
  for (int r = 0; r < R; ++r)
    if (basis_[r] >= artificial_base_) infeasibility += rhs_[r];
  feasible_ = (infeasibility == 0);
  if (!feasible_) return;

  // Drive surviving artificials out of the basis; rows that cannot pivot
  // onto a structural column are redundant and are dropped.
  for (int r = 0; r < R; ++r) {
    if (basis_[r] < artificial_base_) continue;
    int enter = -1;
    for (int j = 0; j < artificial_base_; ++j)
      if (sgn(tab_[r][j]) != 0) {
        enter = j;
        break;
      }
    if (enter >= 0) {
      apply_pivot(tab_, rhs_, basis_, dropped_, zrow, r, enter);
    } else {
      if (rhs_[r] != 0)
        throw Error("redundant row with nonzero residual after phase 1");
      dropped_[r] = true;
    }
  }
}

LPSolution SimplexSolver::run_phase2(const std::vector<Rational>& cost) const {
  const int V = lp_.variable_count();
  LPSolution sol;
  sol.stats.phase1_pivots = phase1_pivots_;
  if (!feasible_) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }

  auto tab = tab_;
  auto rhs = rhs_;
  auto basis = basis_;
  const auto& dropped = dropped_;
  const int R = static_cast<int>(tab.size());

  std::vector<Rational> full_cost(total_cols_, Rational(0));
  for (int v = 0; v < V; ++v) full_cost[v] = cost[v];

  std::vector<Rational> zrow(total_cols_, Rational(0));
  for (int j = 0; j < total_cols_; ++j) {
    Rational s = full_cost[j];
    for (int r = 0; r < R; ++r) {
      if (dropped[r] || sgn(full_cost[basis[r]]) == 0) continue;
      if (sgn(tab[r][j]) != 0) s -= full_cost[basis[r]] * tab[r][j];
    }
    zrow[j] = std::move(s);
  }

  // Artificial columns may never re-enter.
  PivotOutcome out =
      pivot_to_optimum(tab, rhs, basis, dropped, zrow, artificial_base_);
  sol.stats.phase2_pivots = out.pivots;
  if (!out.bounded) {
    sol.status = SolveStatus::Unbounded;
    return sol;
  }

  sol.status = SolveStatus::Optimal;
  sol.values.assign(V, Rational(0));
  for (int r = 0; r < R; ++r) {
    if (dropped[r]) continue;
    if (basis[r] < V) sol.values[basis[r]] = rhs[r];
  }
  sol.objective = 0;
  for (int v = 0; v < V; ++v)
    if (sgn(cost[v]) != 0) sol.objective += cost[v] * sol.values[v];
  for (int r = 0; r < R; ++r) {
    if (dropped[r]) continue;
    if (basis[r] >= artificial_base_)
      throw Error("artificial column basic in a feasible terminal basis");
    sol.basis.push_back(basis[r]);
    sol.basis_names.push_back(sf_.col_names[basis[r]]);
  }
  return sol;
}

LPSolution SimplexSolver::solve() { return run_phase2(lp_.cost()); }

LPSolution SimplexSolver::solve_with_cost(const std::vector<Rational>& cost) {
  if (static_cast<int>(cost.size()) != lp_.variable_count())
    throw Error("cost vector length does not match variable count");
  return run_phase2(cost);
}

LPSolution solve(const LinearProgram& lp) {
  SimplexSolver solver(lp);
  return solver.solve();
}

PointCheck check_point(const LinearProgram& lp,
                       const std::vector<Rational>& x) {
  PointCheck out;
  if (static_cast<int>(x.size()) != lp.variable_count()) {
    out.ok = false;
    out.violations.push_back("point length does not match variable count");
    return out;
  }
  for (int v = 0; v < lp.variable_count(); ++v) {
    if (x[v] < 0) {
      out.ok = false;
      out.violations.push_back(lp.variable(v).name + " < 0");
    }
    if (lp.variable(v).upper && x[v] > *lp.variable(v).upper) {
      out.ok = false;
      out.violations.push_back(lp.variable(v).name + " above upper bound");
    }
  }
  for (int c = 0; c < lp.constraint_count(); ++c) {
    const Constraint& con = lp.constraint(c);
    Rational lhs(0);
    for (const LinearTerm& t : con.terms) lhs += t.coef * x[t.var];
    const bool sat = (con.rel == Relation::Eq)   ? lhs == con.rhs
                     : (con.rel == Relation::Le) ? lhs <= con.rhs
                                                 : lhs >= con.rhs;
    if (!sat) {
      out.ok = false;
      out.violations.push_back(con.name + ": " + format_rational(lhs) + " " +
                               relation_token(con.rel) + " " +
                               format_rational(con.rhs) + " violated");
    }
  }
  return out;
}

bool verify_optimal(const LinearProgram& lp, const LPSolution& sol,
                    const std::vector<Rational>& cost) {
  if (static_cast<int>(cost.size()) != lp.variable_count())
    throw Error("cost vector length does not match variable count");
  if (sol.status != SolveStatus::Optimal) return false;
  if (!check_point(lp, sol.values).ok) return false;

  Rational obj(0);
  for (int v = 0; v < lp.variable_count(); ++v)
    obj += cost[v] * sol.values[v];
  if (obj != sol.objective) return false;

  StandardForm sf = standardize(lp);
  for (int v = 0; v < lp.variable_count(); ++v) sf.cost[v] = cost[v];
  const int R = sf.row_count();
  const int k = static_cast<int>(sol.basis.size());

  // Solve B^T y = c_B by Gaussian elimination; free unknowns default to 0.
  // Any solution yields the same reduced costs because every column of the
  // standardized system lies in the space spanned by the basis columns.
  std::vector<std::vector<Rational>> m(
      k, std::vector<Rational>(R + 1, Rational(0)));
  for (int t = 0; t < k; ++t) {
    const int col = sol.basis[t];
    if (col < 0 || col >= sf.col_count()) return false;
    for (int r = 0; r < R; ++r) m[t][r] = sf.rows[r][col];
    m[t][R] = sf.cost[col];
  }
  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < R && row < k; ++col) {
    int pick = -1;
    for (int t = row; t < k; ++t)
      if (sgn(m[t][col]) != 0) {
        pick = t;
        break;
      }
    if (pick < 0) continue;
    std::swap(m[row], m[pick]);
    const Rational piv = m[row][col];
    for (int j = col; j <= R; ++j) m[row][j] /= piv;
    for (int t = 0; t < k; ++t) {
      if (t == row || sgn(m[t][col]) == 0) continue;
      const Rational f = m[t][col];
      for (int j = col; j <= R; ++j) m[t][j] -= f * m[row][j];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (int t = row; t < k; ++t)
    if (m[t][R] != 0) return false;  // inconsistent: not a valid basis

  std::vector<Rational> y(R, Rational(0));
  for (int t = 0; t < row; ++t) y[pivot_col_of_row[t]] = m[t][R];

  // All reduced costs nonnegative.
  for (int j = 0; j < sf.col_count(); ++j) {
    Rational cbar = sf.cost[j];
    for (int r = 0; r < R; ++r)
      if (sgn(y[r]) != 0 && sgn(sf.rows[r][j]) != 0)
        cbar -= y[r] * sf.rows[r][j];
    if (cbar < 0) return false;
  }

  // Strong duality.
  Rational ydotb(0);
  for (int r = 0; r < R; ++r) ydotb += y[r] * sf.rhs[r];
  return ydotb == sol.objective;
}

bool verify_optimal(const LinearProgram& lp, const LPSolution& sol) {
  return verify_optimal(lp, sol, lp.cost());
}

bool is_integral01(const LPSolution& sol, const std::vector<int>& vars) {
  for (int v : vars) {
    const Rational& val = sol.values.at(v);
    if (val != 0 && val != 1) return false;
  }
  return true;
}

std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream out;
  out << "lp " << lp.variable_count() << " " << lp.constraint_count() << "\n";
  for (int v = 0; v < lp.variable_count(); ++v) {
    const Variable& var = lp.variable(v);
    out << "var " << var.name << " " << role_token(var.role) << " "
        << (var.upper ? format_rational(*var.upper) : "-") << "\n";
  }
  out << "cost";
  for (int v = 0; v < lp.variable_count(); ++v)
    out << " " << format_rational(lp.cost()[v]);
  out << "\n";
  for (int c = 0; c < lp.constraint_count(); ++c) {
    const Constraint& con = lp.constraint(c);
    out << "con " << con.name << " " << relation_token(con.rel) << " "
        << format_rational(con.rhs) << " " << con.terms.size();
    for (const LinearTerm& t : con.terms)
      out << " " << t.var << ":" << format_rational(t.coef);
    out << "\n";
  }
  return out.str();
}

LinearProgram load_lp(std::istream& in) {
  std::string head;
  int v_count = 0, c_count = 0;
  if (!(in >> head >> v_count >> c_count) || head != "lp")
    throw ParseError("LP dump must start with 'lp <vars> <cons>'");
  LinearProgram lp;
  for (int v = 0; v < v_count; ++v) {
    std::string tag, name, role, upper;
    if (!(in >> tag >> name >> role >> upper) || tag != "var")
      throw ParseError("bad LP var line");
    lp.add_variable(name, parse_role(role),
                    upper == "-" ? std::nullopt
                                 : std::optional<Rational>(parse_rational(upper)));
  }
  std::string tag;
  if (!(in >> tag) || tag != "cost") throw ParseError("missing LP cost line");
  for (int v = 0; v < v_count; ++v) {
    std::string tok;
    if (!(in >> tok)) throw ParseError("short LP cost line");
    lp.set_cost(v, parse_rational(tok));
  }
  for (int c = 0; c < c_count; ++c) {
    std::string name, rel, rhs;
    int nnz = 0;
    if (!(in >> tag >> name >> rel >> rhs >> nnz) || tag != "con")
      throw ParseError("bad LP con line");
    std::vector<LinearTerm> terms;
    for (int t = 0; t < nnz; ++t) {
      std::string pair;
      if (!(in >> pair)) throw ParseError("short LP con line");
      const size_t colon = pair.find(':');
      if (colon == std::string::npos)
        throw ParseError("bad LP term: '" + pair + "'");
      terms.push_back(LinearTerm{std::stoi(pair.substr(0, colon)),
                                 parse_rational(pair.substr(colon + 1))});
    }
    lp.add_constraint(name, parse_relation(rel), parse_rational(rhs),
                      std::move(terms));
  }
  return lp;
}

std::string dump_point(const LinearProgram& lp,
                       const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != lp.variable_count())
    throw Error("point length does not match variable count");
  int nnz = 0;
  for (const Rational& v : x)
    if (sgn(v) != 0) ++nnz;
  std::ostringstream out;
  out << "point " << nnz << "\n";
  for (int v = 0; v < lp.variable_count(); ++v)
    if (sgn(x[v]) != 0)
      out << lp.variable(v).name << " " << format_rational(x[v]) << "\n";
  return out.str();
}

std::vector<Rational> load_point(std::istream& in, const LinearProgram& lp) {
  std::map<std::string, int> index;
  for (int v = 0; v < lp.variable_count(); ++v) {
    if (!index.emplace(lp.variable(v).name, v).second)
      throw ParseError("LP has duplicate variable names; cannot load points");
  }
  std::string head;
  int count = 0;
  if (!(in >> head >> count) || head != "point")
    throw ParseError("point dump must start with 'point <count>'");
  std::vector<Rational> x(lp.variable_count(), Rational(0));
  std::vector<bool> seen(lp.variable_count(), false);
  for (int t = 0; t < count; ++t) {
    std::string name, value;
    if (!(in >> name >> value)) throw ParseError("short point dump");
    auto it = index.find(name);
    if (it == index.end())
      throw ParseError("point names unknown variable: '" + name + "'");
    if (seen[it->second])
      throw ParseError("point lists variable twice: '" + name + "'");
    seen[it->second] = true;
    x[it->second] = parse_rational(value);
  }
  return x;
}

}  // namespace nblp
