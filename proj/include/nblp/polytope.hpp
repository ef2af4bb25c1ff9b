#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nblp/code.hpp"
#include "nblp/lp.hpp"
#include "nblp/channel.hpp"

namespace nblp {

/// Three relaxations of the same decoding problem. All describe identical
/// sets of symbol-indicator vectors when every check row has at least one
/// unit coefficient per support position:
///   Q - one weight variable per local codeword of each check row,
///   U - profile weights plus per-position split variables,
///   S - Q applied to a cascaded matrix whose rows all have degree <= 3.
enum class PolytopeKind { Q, U, S };

std::string to_string(PolytopeKind kind);
PolytopeKind parse_polytope_kind(const std::string& text);

/// Rewrite of a parity-check matrix in which every row has degree <= 3.
/// Rows of degree <= 3 are copied verbatim. A row of degree d >= 4 with
/// support coefficients H_1..H_d becomes d-2 rows chained through d-3 fresh
/// state columns x_1..x_{d-3}:
///   H_1 b_1 + H_2 b_2 + x_1 = 0
///   x_l - H_{l+2} b_{l+2} - x_{l+1} = 0        (l = 1..d-4)
///   -x_{d-3} + H_{d-1} b_{d-1} + H_d b_d = 0
/// so x_l always carries -(H_1 b_1 + ... + H_{l+1} b_{l+1}) and the original
/// row constraint is exactly the terminal row. Projecting the code of the
/// rewritten matrix onto the original columns gives the original code, one
/// state completion per codeword.
struct CascadedCode {
  ParityCheckMatrix matrix;        // the rewritten matrix F
  int original_columns = 0;        // columns of the source matrix
  std::vector<int> source_row;     // per F-row: originating source row
  std::vector<int> state_source;   // per state column (F col - n): source row
};

CascadedCode cascade(const ParityCheckMatrix& mat);

/// Completes a codeword of the source matrix with its state-column values.
Word extend_word(const CascadedCode& cc, const Word& w);

/// A decoding LP plus the index maps needed to read it back.
///
/// Column layout. Indicator columns come first: for every position i of the
/// built matrix and every nonzero element code a, column f_col(i, a) carries
/// the indicator named "f<i>_<a>" (original positions) or "h<i>_<a>" (state
/// positions of an S build). Per-row columns follow in row order:
///   Q/S: w_col(j, t) = weight of local_words[j][t]  ("w<j>_<t>")
///   U:   sigma_col(j, k) = weight of profile tsets[j][k]  ("sig<j>_<k>"),
///        then z_col(j, slot, k, b) for support slot, profile index, nonzero
///        element b  ("z<j>_<slot>_<k>_<b>").
/// Costs default to zero; pair with SimplexSolver::solve_with_cost and
/// cost_row_for.
struct PolytopeBuild {
  PolytopeBuild(PolytopeKind k, ParityCheckMatrix src, ParityCheckMatrix blt)
      : kind(k), source(std::move(src)), built(std::move(blt)) {}

  PolytopeKind kind;
  ParityCheckMatrix source;            // the matrix handed to build_polytope
  ParityCheckMatrix built;             // == source, or cascade(source) for S
  std::optional<CascadedCode> cascaded;  // present for S builds
  LinearProgram lp;

  std::vector<std::vector<Word>> local_words;  // Q/S: per built row
  std::vector<std::vector<Profile>> tsets;     // U: per row

  int f_col(int i, int alpha) const;
  int w_col(int j, int t) const;
  int sigma_col(int j, int k) const;
  int z_col(int j, int slot, int k, int beta) const;

  int positions() const { return built.cols(); }
  int original_positions() const { return source.cols(); }
  const Ring& ring() const { return source.ring(); }

  /// Indicator columns of the original (non-state) positions, in order.
  std::vector<int> original_f_columns() const;

  // Column-layout internals, filled by build_polytope.
  std::vector<int> w_offset_;      // per built row (Q/S)
  std::vector<int> sigma_offset_;  // per row (U)
  std::vector<int> z_offset_;      // per row (U)
};

PolytopeBuild build_polytope(const ParityCheckMatrix& mat, PolytopeKind kind,
                             const EnumerationCaps& caps = {});

/// Full LP cost row for received-word costs: lambda on the indicator columns
/// of original positions, zero on everything else (state indicators, w,
/// sigma, z).
std::vector<Rational> cost_row_for(const PolytopeBuild& build,
                                   const CostVector& costs);

/// The integral point of the polytope representing codeword w (length =
/// original positions; must satisfy every check). For S builds the word is
/// first extended with its state values.
std::vector<Rational> embed_codeword(const PolytopeBuild& build, const Word& w);

/// Reads the indicator values of original position i from an LP point.
std::vector<Rational> f_values_at(const PolytopeBuild& build,
                                  const std::vector<Rational>& x, int i);

/// Per-slot aggregated split mass of a U build: for support slot s of row j
/// with profile index k, tau[s][a-1] = sum of z over the nonzero b with
/// b * H[j, I_j[s]] == a.
std::vector<std::vector<Rational>> tau_of(const PolytopeBuild& build,
                                          const std::vector<Rational>& x,
                                          int j, int k);

/// Consequences of the U constraint system that hold at every vertex when
/// check coefficients are units: indicators and profile weights lie in
/// [0,1], and each split variable is at most its profile weight. Violations
/// are reported by name.
PointCheck derived_constraints_hold(const PolytopeBuild& build,
                                    const std::vector<Rational>& x);

/// Size of a build against closed-form bounds in n, m, q and the maximum
/// row degree d of the source matrix. Variable bounds for Q/S count the
/// enumerated weight columns, so they assume every row has at least one
/// unit coefficient (which pins the local-code size); constraint bounds
/// cover the explicitly built rows (the closed forms also include sign
/// constraints, which the LP keeps implicit). The S bound is stated for
/// d >= 4 only; `applicable` is false otherwise. For U, `t_max` is the
/// largest realizable-profile set and `t_bound` the multiset count
/// C(d+q-1, d); the variable/constraint bounds are evaluated at t_max.
struct CountReport {
  PolytopeKind kind = PolytopeKind::Q;
  long variables = 0;
  long constraints = 0;
  mpz_class variable_bound;
  mpz_class constraint_bound;
  bool applicable = true;
  bool variables_within = false;
  bool constraints_within = false;
  mpz_class t_max;
  mpz_class t_bound;
  bool t_within = true;

  bool all_within() const {
    return !applicable || (variables_within && constraints_within && t_within);
  }
};

CountReport count_report(const PolytopeBuild& build);

}  // namespace nblp
