#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nblp/rational.hpp"

namespace nblp {

enum class Relation { Eq, Le, Ge };

/// What an LP column stands for in the decoding builds. Generic covers
/// hand-built LPs and slack columns.
enum class VarRole {
  Indicator,         // f: position/symbol indicator
  CodewordWeight,    // w: weight of one local codeword
  ProfileWeight,     // sigma: weight of one check-product profile
  Split,             // z: indicator mass split by profile
  CascadeIndicator,  // h: state-symbol indicator of the cascaded build
  Generic,
};

struct Variable {
  std::string name;
  VarRole role = VarRole::Generic;
  std::optional<Rational> upper;  // every variable has lower bound 0
};

struct LinearTerm {
  int var = 0;
  Rational coef;
};

struct Constraint {
  std::string name;
  Relation rel = Relation::Eq;
  Rational rhs;
  std::vector<LinearTerm> terms;  // ascending var index, nonzero coefs
};

/// A linear program: min cost . x subject to the constraints and x >= 0
/// (plus optional per-variable upper bounds). Column and row order is
/// exactly insertion order; everything downstream (solver pivoting, dumps,
/// basis identifiers) is deterministic in it.
class LinearProgram {
 public:
  int add_variable(std::string name, VarRole role = VarRole::Generic,
                   std::optional<Rational> upper = std::nullopt);
  void set_cost(int var, Rational value);

  /// Terms are sorted, merged, and zero coefficients dropped.
  int add_constraint(std::string name, Relation rel, Rational rhs,
                     std::vector<LinearTerm> terms);

  int variable_count() const { return static_cast<int>(vars_.size()); }
  int constraint_count() const { return static_cast<int>(cons_.size()); }
  const Variable& variable(int v) const { return vars_.at(v); }
  const Constraint& constraint(int c) const { return cons_.at(c); }
  const std::vector<Rational>& cost() const { return cost_; }

 private:
  std::vector<Variable> vars_;
  std::vector<Rational> cost_;
  std::vector<Constraint> cons_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SolveStats {
  long phase1_pivots = 0;
  long phase2_pivots = 0;
};

struct LPSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Rational> values;  // per LP variable; empty unless Optimal
  Rational objective;            // cost . values
  /// Basic columns of the standardized form, one per independent row in row
  /// order; entries name structural columns only (redundant rows are
  /// dropped during phase 1 and never listed).
  std::vector<int> basis;
  std::vector<std::string> basis_names;
  SolveStats stats;

  /// Stable text identifier of the optimal basis, e.g. "f[0][1],~s2".
  std::string basis_identifier() const;
};

/// Equality standard form min c.x, A x = b, x >= 0: upper bounds become
/// explicit rows, inequality rows gain one slack/surplus column each, rows
/// are sign-normalized to b >= 0. Deterministic in the LP's own order.
struct StandardForm {
  std::vector<std::vector<Rational>> rows;  // dense coefficient rows
  std::vector<Rational> rhs;
  std::vector<Rational> cost;               // zero beyond the original vars
  std::vector<std::string> col_names;
  int original_count = 0;  // leading columns that are LP variables

  int row_count() const { return static_cast<int>(rows.size()); }
  int col_count() const { return static_cast<int>(col_names.size()); }
};

StandardForm standardize(const LinearProgram& lp);

/// Two-phase primal simplex over exact rationals with Bland's pivoting
/// rule (smallest eligible column index enters; ratio ties leave by the
/// smallest basic column index), which makes every run deterministic and
/// cycle-free. Phase 1 is cost-independent, so one solver instance can
/// optimize many cost rows over the same feasible region.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp);

  /// Optimizes the LP's own cost row.
  LPSolution solve();

  /// Optimizes an alternative cost over the LP's variables.
  LPSolution solve_with_cost(const std::vector<Rational>& cost);

 private:
  struct Tableau;
  void run_phase1();
  LPSolution run_phase2(const std::vector<Rational>& cost) const;

  const LinearProgram& lp_;
  StandardForm sf_;
  // Phase-1 terminal state, copied for each phase-2 run.
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<bool> dropped_;
  int artificial_base_ = 0;  // first artificial column id
  int total_cols_ = 0;
  bool feasible_ = false;
  long phase1_pivots_ = 0;
};

/// One-shot convenience wrapper.
LPSolution solve(const LinearProgram& lp);

struct PointCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Exact feasibility check of an arbitrary point against bounds and all
/// constraints. Reports every violated row by name.
PointCheck check_point(const LinearProgram& lp,
                       const std::vector<Rational>& x);

/// Independent optimality certificate: primal feasibility by substitution,
/// objective consistency, and a dual vector recovered from the reported
/// basis by Gaussian elimination with all reduced costs >= 0 and
/// y . b == objective. Does not look at solver internals. The three-argument
/// form verifies against the given cost row (one entry per variable), for
/// solutions produced by SimplexSolver::solve_with_cost; the two-argument
/// form uses the LP's stored costs.
bool verify_optimal(const LinearProgram& lp, const LPSolution& sol,
                    const std::vector<Rational>& cost);
bool verify_optimal(const LinearProgram& lp, const LPSolution& sol);

/// True when every listed variable's value is exactly 0 or 1.
bool is_integral01(const LPSolution& sol, const std::vector<int>& vars);

/// Line-oriented exact text formats (round-trip safe).
std::string dump_lp(const LinearProgram& lp);
LinearProgram load_lp(std::istream& in);

/// Points print nonzero variables only, in column order.
std::string dump_point(const LinearProgram& lp,
                       const std::vector<Rational>& x);
std::vector<Rational> load_point(std::istream& in, const LinearProgram& lp);

}  // namespace nblp
