#include "nblp/decode.hpp"

namespace nblp {

std::string to_string(DecodeOutcome outcome) {
  switch (outcome) {
    case DecodeOutcome::MLCertified: return "ml-certified";
    case DecodeOutcome::Fractional: return "fractional";
    case DecodeOutcome::DeclaredError: return "declared-error";
  }
  throw Error("unknown decode outcome");
}

Decoder::Decoder(ParityCheckMatrix mat, PolytopeKind kind,
                 const EnumerationCaps& caps)
    : build_(build_polytope(mat, kind, caps)), solver_(build_.lp) {}

DecodeResult Decoder::decode(const CostVector& costs) {
  DecodeResult out;
  const std::vector<Rational> cost_row = cost_row_for(build_, costs);
  LPSolution sol = solver_.solve_with_cost(cost_row);
  out.stats = sol.stats;

  if (sol.status == SolveStatus::Unbounded) {
    out.outcome = DecodeOutcome::DeclaredError;
    out.diagnostic =
        "relaxation is unbounded below for this cost row (possible with "
        "zero-divisor check coefficients); no decision";
    return out;
  }
  if (sol.status != SolveStatus::Optimal)
    throw Error("decoding LP reported infeasible, but the zero word is "
                "always feasible");

  out.objective = sol.objective;
  out.raw = sol.values;
  const int n = build_.original_positions();
  const int qm1 = build_.ring().cardinality() - 1;
  out.f.reserve(n);
  for (int i = 0; i < n; ++i) out.f.push_back(f_values_at(build_, sol.values, i));

  // Integral indicators that spell a codeword of matching cost certify a
  // maximum-likelihood decision: the LP value lower-bounds every codeword's
  // cost, and this word attains it.
  Word word(n, 0);
  bool integral = true;
  std::string complaint;
  for (int i = 0; i < n && integral; ++i) {
    for (int alpha = 1; alpha <= qm1; ++alpha) {
      const Rational& v = out.f[i][alpha - 1];
      if (v == 0) continue;
      if (v != 1 || word[i] != 0) {
        integral = false;
        complaint = "fractional indicator " +
                    build_.lp.variable(build_.f_col(i, alpha)).name + " = " +
                    format_rational(v);
        break;
      }
      word[i] = alpha;
    }
  }
  if (integral && !build_.source.accepts(word)) {
    integral = false;
    complaint = "integral indicators do not satisfy every check";
  }
  if (integral && word_cost(costs, word) != sol.objective) {
    integral = false;
    complaint = "integral word cost differs from the relaxation value";
  }
  if (!integral) {
    out.outcome = DecodeOutcome::Fractional;
    out.diagnostic = complaint + "; the optimum is a pseudocodeword and " +
                     format_rational(sol.objective) +
                     " is an exact lower bound on every codeword cost";
    return out;
  }
  out.outcome = DecodeOutcome::MLCertified;
  out.word = std::move(word);
  out.certificate_checked = verify_optimal(build_.lp, sol, cost_row);
  out.diagnostic = out.certificate_checked
                       ? "optimal basis re-verified by an independent dual "
                         "certificate"
                       : "warning: dual certificate re-verification failed";
  return out;
}

DecodeResult lp_decode(const ParityCheckMatrix& mat, const CostVector& costs,
                       PolytopeKind kind, const EnumerationCaps& caps) {
  Decoder decoder(mat, kind, caps);
  return decoder.decode(costs);
}

MLResult ml_brute_force(const ParityCheckMatrix& mat, const CostVector& costs,
                        const EnumerationCaps& caps) {
  if (costs.length() != mat.cols())
    throw Error("cost vector length does not match the code length");
  MLResult best;
  bool first = true;
  for (const Word& w : enumerate_codebook(mat, caps)) {
    const Rational c = word_cost(costs, w);
    if (first || c < best.cost) {
      best.word = w;
      best.cost = c;
      first = false;
    }
  }
  if (first) throw Error("codebook enumeration produced no words");
  return best;
}

}  // namespace nblp
