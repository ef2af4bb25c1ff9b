#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "nblp/lp.hpp"

using namespace nblp;

namespace {

// min x1 + x2  s.t.  x1 + x2 = 1,  x >= 0.
LinearProgram simplex_on_a_segment() {
  LinearProgram lp;
  const int x1 = lp.add_variable("x1");
  const int x2 = lp.add_variable("x2");
  lp.set_cost(x1, 1);
  lp.set_cost(x2, 1);
  lp.add_constraint("sum", Relation::Eq, 1, {{x1, 1}, {x2, 1}});
  return lp;
}

}  // namespace

TEST_CASE("segment LP: objective 1 at a deterministic vertex") {
  LinearProgram lp = simplex_on_a_segment();
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == 1);
  // Bland's rule enters the lowest-index improving column first.
  CHECK(sol.values[0] == 1);
  CHECK(sol.values[1] == 0);
  CHECK(sol.basis_identifier() == "x1");
  CHECK(sol.stats.phase1_pivots == 1);
  CHECK(sol.stats.phase2_pivots == 0);
}

TEST_CASE("conflicting equalities under unit upper bounds are infeasible") {
  LinearProgram lp;
  const int x1 = lp.add_variable("x1", VarRole::Generic, Rational(1));
  const int x2 = lp.add_variable("x2", VarRole::Generic, Rational(1));
  lp.set_cost(x1, 1);
  lp.add_constraint("sum", Relation::Eq, 1, {{x1, 1}, {x2, 1}});
  lp.add_constraint("diff", Relation::Eq, 3, {{x1, 1}, {x2, -1}});
  LPSolution sol = solve(lp);
  CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded ray is reported") {
  LinearProgram lp;
  const int x1 = lp.add_variable("x1");
  const int x2 = lp.add_variable("x2");
  lp.set_cost(x1, -1);
  lp.add_constraint("tie", Relation::Eq, 0, {{x1, 1}, {x2, -1}});
  LPSolution sol = solve(lp);
  CHECK(sol.status == SolveStatus::Unbounded);
}

TEST_CASE("no constraints: origin is optimal, no cost means objective 0") {
  LinearProgram lp;
  lp.add_variable("x");
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.values[0] == 0);
  CHECK(sol.objective == 0);

  lp.set_cost(0, -1);
  LPSolution ray = solve(lp);
  CHECK(ray.status == SolveStatus::Unbounded);
}

TEST_CASE("inequalities and upper bounds: min 2a+3b, a+b>=10, a<=4") {
  LinearProgram lp;
  const int a = lp.add_variable("a", VarRole::Generic, Rational(4));
  const int b = lp.add_variable("b");
  lp.set_cost(a, 2);
  lp.set_cost(b, 3);
  lp.add_constraint("cover", Relation::Ge, 10, {{a, 1}, {b, 1}});
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.values[a] == 4);
  CHECK(sol.values[b] == 6);
  CHECK(sol.objective == 26);
  CHECK(verify_optimal(lp, sol));

  // Basic solution: at most one nonzero per standardized row.
  int nonzeros = 0;
  for (const Rational& v : sol.values)
    if (v != 0) ++nonzeros;
  CHECK(nonzeros <= 2);  // one declared constraint + one upper-bound row
}

TEST_CASE("negative right-hand sides are normalized, not mis-solved") {
  // -x <= -2 is x >= 2.
  LinearProgram lp;
  const int x = lp.add_variable("x");
  lp.set_cost(x, 1);
  lp.add_constraint("low", Relation::Le, -2, {{x, -1}});
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.values[x] == 2);
  CHECK(sol.objective == 2);
  CHECK(verify_optimal(lp, sol));
}

TEST_CASE("redundant equality rows are dropped from the basis") {
  LinearProgram lp;
  const int x1 = lp.add_variable("x1");
  const int x2 = lp.add_variable("x2");
  lp.set_cost(x1, 1);
  lp.add_constraint("sum", Relation::Eq, 1, {{x1, 1}, {x2, 1}});
  lp.add_constraint("twice", Relation::Eq, 2, {{x1, 2}, {x2, 2}});
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == 0);
  CHECK(sol.values[x1] == 0);
  CHECK(sol.values[x2] == 1);
  CHECK(sol.basis.size() == 1);  // the duplicate row carries no basic column
  CHECK(verify_optimal(lp, sol));
}

TEST_CASE("constraints with cancelled terms; 0=0 kept, 0=1 infeasible") {
  LinearProgram lp;
  const int x = lp.add_variable("x");
  lp.set_cost(x, 1);
  lp.add_constraint("void", Relation::Eq, 0, {{x, 1}, {x, -1}});
  CHECK(lp.constraint(0).terms.empty());
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == 0);

  lp.add_constraint("broken", Relation::Eq, 1, {{x, 2}, {x, -2}});
  CHECK(solve(lp).status == SolveStatus::Infeasible);
}

TEST_CASE("exact fractional arithmetic survives awkward denominators") {
  LinearProgram lp;
  const int x = lp.add_variable("x");
  const int y = lp.add_variable("y");
  lp.set_cost(x, make_rational(1, 3));
  lp.set_cost(y, make_rational(1, 7));
  lp.add_constraint("mix", Relation::Eq, make_rational(22, 21),
                    {{x, make_rational(2, 3)}, {y, make_rational(5, 7)}});
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  // Cost per unit of constraint: x gives (1/3)/(2/3)=1/2, y gives (1/7)/(5/7)=1/5.
  CHECK(sol.values[x] == 0);
  CHECK(sol.values[y] == make_rational(22, 21) / make_rational(5, 7));
  CHECK(sol.objective == make_rational(1, 7) * sol.values[y]);
  CHECK(verify_optimal(lp, sol));
}

TEST_CASE("resolving the same program is bit-for-bit deterministic") {
  auto run = [] {
    LinearProgram lp;
    const int a = lp.add_variable("a", VarRole::Generic, Rational(2));
    const int b = lp.add_variable("b", VarRole::Generic, Rational(2));
    const int c = lp.add_variable("c");
    lp.set_cost(a, make_rational(-3, 2));
    lp.set_cost(b, 1);
    lp.set_cost(c, make_rational(1, 4));
    lp.add_constraint("r0", Relation::Eq, 2, {{a, 1}, {b, 1}, {c, 1}});
    lp.add_constraint("r1", Relation::Ge, 1, {{b, 1}, {c, 2}});
    return solve(lp);
  };
  LPSolution s1 = run();
  LPSolution s2 = run();
  REQUIRE(s1.status == SolveStatus::Optimal);
  CHECK(s1.values == s2.values);
  CHECK(s1.objective == s2.objective);
  CHECK(s1.basis_identifier() == s2.basis_identifier());
  CHECK(s1.stats.phase1_pivots == s2.stats.phase1_pivots);
  CHECK(s1.stats.phase2_pivots == s2.stats.phase2_pivots);
}

TEST_CASE("one feasibility phase serves many cost rows") {
  LinearProgram lp;
  const int a = lp.add_variable("a", VarRole::Generic, Rational(1));
  const int b = lp.add_variable("b", VarRole::Generic, Rational(1));
  const int c = lp.add_variable("c", VarRole::Generic, Rational(1));
  lp.add_constraint("r0", Relation::Eq, make_rational(3, 2),
                    {{a, 1}, {b, 1}, {c, 1}});
  lp.add_constraint("r1", Relation::Le, 1, {{a, 1}, {c, 1}});

  SimplexSolver shared(lp);
  std::vector<std::vector<Rational>> costs = {
      {Rational(1), Rational(2), Rational(3)},
      {Rational(-1), Rational(0), make_rational(1, 2)},
      {Rational(0), Rational(0), Rational(0)},
      {make_rational(5, 3), Rational(-2), Rational(7)},
  };
  for (const auto& cost : costs) {
    LPSolution via_shared = shared.solve_with_cost(cost);

    LinearProgram fresh = lp;
    for (int v = 0; v < fresh.variable_count(); ++v) fresh.set_cost(v, cost[v]);
    LPSolution via_fresh = solve(fresh);

    REQUIRE(via_shared.status == via_fresh.status);
    REQUIRE(via_shared.status == SolveStatus::Optimal);
    CHECK(via_shared.values == via_fresh.values);
    CHECK(via_shared.objective == via_fresh.objective);
    CHECK(via_shared.basis_identifier() == via_fresh.basis_identifier());
    CHECK(verify_optimal(fresh, via_shared));

    // The explicit-cost form certifies against the LP whose stored costs
    // stayed at zero; the two-argument form agrees only when this cost row
    // also happens to value the optimum at zero.
    CHECK(verify_optimal(lp, via_shared, cost));
    CHECK(verify_optimal(lp, via_shared) == (via_shared.objective == 0));
  }
  CHECK_THROWS_AS(
      verify_optimal(lp, shared.solve_with_cost(costs[0]), {Rational(1)}),
      Error);

  // Re-asking an earlier cost gives the identical answer: no hidden state.
  LPSolution again = shared.solve_with_cost(costs[0]);
  LPSolution first = shared.solve_with_cost(costs[0]);
  CHECK(again.values == first.values);
  CHECK(again.basis_identifier() == first.basis_identifier());
  CHECK(again.stats.phase2_pivots == first.stats.phase2_pivots);

  CHECK_THROWS_AS(shared.solve_with_cost({Rational(1)}), Error);
}

TEST_CASE("verify_optimal certifies true optima and rejects frauds") {
  LinearProgram lp = simplex_on_a_segment();
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(verify_optimal(lp, sol));

  // The other optimal vertex passes too: the certificate checks optimality
  // of the point, not which vertex the solver happened to report.
  LPSolution other = sol;
  other.values = {Rational(0), Rational(1)};
  CHECK(verify_optimal(lp, other));

  LPSolution wrong_obj = sol;
  wrong_obj.objective += 1;
  CHECK_FALSE(verify_optimal(lp, wrong_obj));

  LPSolution infeas = sol;
  infeas.values = {Rational(2), Rational(-1)};
  infeas.objective = 1;
  CHECK_FALSE(verify_optimal(lp, infeas));

  // A feasible but suboptimal point cannot be certified.
  LinearProgram skew = simplex_on_a_segment();
  skew.set_cost(0, 1);
  skew.set_cost(1, 0);  // optimum is (0,1) with objective 0
  LPSolution bogus;
  bogus.status = SolveStatus::Optimal;
  bogus.values = {Rational(1), Rational(0)};
  bogus.objective = 1;
  bogus.basis = {0};
  bogus.basis_names = {"x1"};
  CHECK_FALSE(verify_optimal(skew, bogus));

  LPSolution not_opt = sol;
  not_opt.status = SolveStatus::Infeasible;
  CHECK_FALSE(verify_optimal(lp, not_opt));
}

TEST_CASE("check_point names each violated condition") {
  LinearProgram lp;
  const int x = lp.add_variable("x", VarRole::Generic, Rational(1));
  const int y = lp.add_variable("y");
  lp.add_constraint("cap", Relation::Le, 2, {{x, 1}, {y, 1}});

  CHECK(check_point(lp, {Rational(1), Rational(1)}).ok);
  CHECK(check_point(lp, {Rational(0), Rational(2)}).ok);

  PointCheck bad = check_point(lp, {Rational(2), Rational(-1)});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violations.size() == 2);
  CHECK(bad.violations[0].find("x") != std::string::npos);
  CHECK(bad.violations[1].find("y") != std::string::npos);

  PointCheck over = check_point(lp, {Rational(1), Rational(3)});
  CHECK_FALSE(over.ok);
  REQUIRE(over.violations.size() == 1);
  CHECK(over.violations[0].find("cap") != std::string::npos);

  CHECK_FALSE(check_point(lp, {Rational(1)}).ok);
}

TEST_CASE("is_integral01 looks only at the requested variables") {
  LPSolution sol;
  sol.values = {Rational(1), make_rational(1, 2), Rational(0)};
  CHECK(is_integral01(sol, {0, 2}));
  CHECK_FALSE(is_integral01(sol, {0, 1}));
  CHECK(is_integral01(sol, {}));
}

TEST_CASE("LP text dump is frozen and round-trips") {
  LinearProgram lp;
  const int x = lp.add_variable("x");
  const int y = lp.add_variable("y", VarRole::Indicator, make_rational(3, 2));
  lp.set_cost(x, 1);
  lp.set_cost(y, make_rational(-2, 5));
  lp.add_constraint("c0", Relation::Eq, 1, {{x, 1}});
  lp.add_constraint("c1", Relation::Ge, make_rational(1, 2),
                    {{y, make_rational(7, 3)}, {x, -1}});

  const std::string text = dump_lp(lp);
  CHECK(text ==
        "lp 2 2\n"
        "var x x -\n"
        "var y f 3/2\n"
        "cost 1 -2/5\n"
        "con c0 = 1 1 0:1\n"
        "con c1 >= 1/2 2 0:-1 1:7/3\n");

  std::istringstream in(text);
  LinearProgram back = load_lp(in);
  CHECK(dump_lp(back) == text);

  LPSolution a = solve(lp);
  LPSolution b = solve(back);
  REQUIRE(a.status == SolveStatus::Optimal);
  REQUIRE(b.status == SolveStatus::Optimal);
  CHECK(a.values == b.values);
  CHECK(a.objective == b.objective);
  CHECK(a.basis_identifier() == b.basis_identifier());
}

TEST_CASE("malformed LP dumps are rejected") {
  auto load_text = [](const std::string& text) {
    std::istringstream in(text);
    return load_lp(in);
  };
  CHECK_THROWS_AS(load_text("xp 1 0\nvar a x -\ncost 0\n"), ParseError);
  CHECK_THROWS_AS(load_text("lp 1 0\nvar a bogus -\ncost 0\n"), ParseError);
  CHECK_THROWS_AS(load_text("lp 1 0\nvar a x -\ncost\n"), ParseError);
  CHECK_THROWS_AS(load_text("lp 1 1\nvar a x -\ncost 0\ncon c = 1 1 0-1\n"),
                  ParseError);
  CHECK_THROWS_AS(load_text("lp 1 1\nvar a x -\ncost 0\ncon c ~ 1 0\n"),
                  ParseError);
  CHECK_THROWS_AS(load_text("lp 1 1\nvar a x -\ncost 0\n"), ParseError);
}

TEST_CASE("point dumps are sparse, frozen, and round-trip") {
  LinearProgram lp;
  lp.add_variable("a");
  lp.add_variable("b");
  lp.add_variable("c");
  const std::vector<Rational> x = {Rational(0), make_rational(2, 3),
                                   Rational(1)};
  const std::string text = dump_point(lp, x);
  CHECK(text == "point 2\nb 2/3\nc 1\n");

  std::istringstream in(text);
  CHECK(load_point(in, lp) == x);

  std::istringstream unknown("point 1\nq 1\n");
  CHECK_THROWS_AS(load_point(unknown, lp), ParseError);
  std::istringstream twice("point 2\nb 1\nb 1\n");
  CHECK_THROWS_AS(load_point(twice, lp), ParseError);
  std::istringstream shorttext("point 2\nb 1\n");
  CHECK_THROWS_AS(load_point(shorttext, lp), ParseError);
  CHECK_THROWS_AS(dump_point(lp, {Rational(1)}), Error);
}

TEST_CASE("variable and constraint names must be clean tokens") {
  LinearProgram lp;
  CHECK_THROWS_AS(lp.add_variable("has space"), Error);
  CHECK_THROWS_AS(lp.add_variable(""), Error);
  lp.add_variable("ok");
  CHECK_THROWS_AS(lp.add_constraint("bad name", Relation::Eq, 0, {}), Error);
}

TEST_CASE("degenerate ties do not cycle under Bland's rule") {
  // Klee-Minty style ties: several rows hit zero ratio simultaneously.
  LinearProgram lp;
  const int x = lp.add_variable("x");
  const int y = lp.add_variable("y");
  const int z = lp.add_variable("z");
  lp.set_cost(x, -1);
  lp.set_cost(y, -1);
  lp.set_cost(z, 2);
  lp.add_constraint("r0", Relation::Le, 0, {{x, 1}, {y, -1}});
  lp.add_constraint("r1", Relation::Le, 0, {{x, -1}, {y, 1}});
  lp.add_constraint("r2", Relation::Le, 1, {{x, 1}, {y, 1}, {z, 1}});
  LPSolution sol = solve(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.values[x] == make_rational(1, 2));
  CHECK(sol.values[y] == make_rational(1, 2));
  CHECK(sol.values[z] == 0);
  CHECK(sol.objective == -1);
  CHECK(verify_optimal(lp, sol));
}
