// The resolution engine, bounded least models, and formula evaluation,
// exercised through the bundled example programs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nomlog/logic.hpp"
#include "nomlog/parse.hpp"
#include "nomlog/print.hpp"

using namespace nomlog;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(NOMLOG_PROGRAMS_DIR) + "/" + rel);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Workspace load(const std::string& rel) {
  Workspace ws;
  ws.load_program(slurp(rel));
  return ws;
}

SolveOutcome run(Workspace& ws, const std::string& goal,
                 bool equivariant = false, std::size_t depth = 50) {
  Goal g = ws.parse_goal(goal);
  SolveOpts opts;
  opts.depth_limit = depth;
  opts.equivariant = equivariant;
  return solve(ws.program(), g, opts);
}

}  // namespace

TEST_CASE("freshen_clause renames clause names and variables apart") {
  Workspace ws = load("subst.nl");
  const Program& p = ws.program();
  REQUIRE(p.clauses.size() == 4);
  const HornClause& lam_clause = p.clauses[3];
  REQUIRE(lam_clause.new_names.size() == 1);

  NameGen gen(p.max_parsed_id + 1);
  std::uint64_t vc = 0;
  Term avoid = Term::name(lam_clause.new_names[0]);
  HornClause f = freshen_clause(lam_clause, gen, vc, {avoid});
  CHECK(f.new_names[0] != lam_clause.new_names[0]);
  CHECK(f.vars.size() == lam_clause.vars.size());
  for (const auto& [x, s] : f.vars) CHECK(x.rfind("_V", 0) == 0);
  // head structure preserved
  CHECK(f.head_pred == "subst");
  CHECK(f.head_args.size() == 4);
}

TEST_CASE("subst: substitution for the substituted variable") {
  Workspace ws = load("subst.nl");
  auto out = run(ws, "subst(var(a), var(c), a, X)");
  REQUIRE(out.answers.size() >= 1);
  Term x = out.answers[0].subst.get("X");
  CHECK(print_term(x) == "var(c)");
}

TEST_CASE("subst: a different variable is untouched") {
  Workspace ws = load("subst.nl");
  auto out = run(ws, "subst(var(b), var(c), a, X)");
  REQUIRE(out.answers.size() >= 1);
  CHECK(print_term(out.answers[0].subst.get("X")) == "var(b)");
}

TEST_CASE("subst: under a binder without capture") {
  Workspace ws = load("subst.nl");
  // (\b. a){a := var(b)} must produce a lam whose binder is not b
  auto out = run(ws, "subst(lam(<b> var(a)), var(b), a, X)");
  REQUIRE(out.answers.size() >= 1);
  Term x = out.answers[0].subst.get("X");
  REQUIRE(x.is_ground());
  // result is lam(<fresh> var(b)) for a fresh binder
  Workspace probe = load("subst.nl");
  Term bad = probe.parse_term("lam(<b> var(b))");
  Term good = probe.parse_term("lam(<c> var(b))");
  CHECK_FALSE(alpha_eq_ground(x, bad));
  CHECK(alpha_eq_ground(x, good));
}

TEST_CASE("subst: identity substitution leaves the term alpha-equal") {
  Workspace ws = load("subst.nl");
  auto out = run(ws, "subst(lam(<b> app(var(b), var(a))), var(a), a, X)");
  REQUIRE(out.answers.size() >= 1);
  Term x = out.answers[0].subst.get("X");
  Workspace probe = load("subst.nl");
  CHECK(alpha_eq_ground(x, probe.parse_term("lam(<b> app(var(b), var(a)))")));
}

TEST_CASE("subst answers are unique per ground input") {
  Workspace ws = load("subst.nl");
  auto out = run(ws, "subst(app(var(a), lam(<b> var(a))), var(c), a, X)");
  CHECK(out.answers.size() == 1);
}

TEST_CASE("typ: principal type of the identity-application term") {
  Workspace ws = load("typ.nl");
  auto out = run(ws, "typ([], lam(<x> lam(<y> app(var(x), var(y)))), T)");
  REQUIRE(out.answers.size() == 1);
  Term t = out.answers[0].subst.get("T");
  // T = arr(arr(T1, T2), arr(T1, T2)) up to renaming of T1, T2
  REQUIRE(t.kind() == Term::Kind::App);
  REQUIRE(t.symbol() == "arr");
  CHECK(print_term(t.args()[0]) == print_term(t.args()[1]));
  CHECK(t.args()[0].kind() == Term::Kind::App);
}

TEST_CASE("typ: shadowed bindings cannot be looked up") {
  Workspace ws = load("typ.nl");
  // with x:o in the context, \x. x must still get an arrow type whose
  // argument and result agree; the capture-style reading arr(arr(o,o), o)
  // must fail
  auto bad = run(ws, "typ([(x, o)], lam(<x> var(x)), arr(arr(o, o), o))");
  CHECK(bad.answers.empty());
  auto good =
      run(ws, "typ([(x, o)], lam(<x> var(x)), arr(arr(o, o), arr(o, o)))");
  CHECK(good.answers.size() == 1);
}

TEST_CASE("typ: an open term fails to type in the empty context") {
  Workspace ws = load("typ.nl");
  auto out = run(ws, "typ([], var(x), T)");
  CHECK(out.answers.empty());
  CHECK_FALSE(out.depth_exhausted);
}

TEST_CASE("depth exhaustion is reported distinctly from failure") {
  Workspace ws = load("typ.nl");
  auto out = run(ws, "typ([], lam(<x> lam(<y> app(var(x), var(y)))), T)",
                 false, 3);
  CHECK(out.answers.empty());
  CHECK(out.depth_exhausted);
}

TEST_CASE("clause-local names are not provable as global names") {
  Workspace ws = load("pab.nl");
  CHECK(run(ws, "p(a)").answers.empty());
  CHECK(run(ws, "p(b)").answers.empty());
}

TEST_CASE("equivariant search proves the renamed instances") {
  Workspace ws = load("pab.nl");
  CHECK(run(ws, "p(a)", true).answers.size() == 1);
  CHECK(run(ws, "p(b)", true).answers.size() == 1);
}

TEST_CASE("closure conversion needs equivariant search") {
  Workspace ws = load("cconv.nl");
  std::string goal = "cconv([], lam(<u> lam(<v> app(var(u), var(v)))), unit, E)";
  CHECK(run(ws, goal, false, 40).answers.empty());

  auto out = run(ws, goal, true, 40);
  REQUIRE(out.answers.size() >= 1);
  Term e = out.answers[0].subst.get("E");
  REQUIRE(e.is_ground());
  // the closure must not mention any free source variable
  CHECK(support(e).empty());
}

TEST_CASE("bounded least model of subst is permutation-closed") {
  Workspace ws = load("subst.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{2, 2});
  CHECK(m.atoms().size() > 0);
  CHECK(m.closed_under_permutations());
}

TEST_CASE("bounded least model of typ contains the identity typing") {
  Workspace ws = load("typ.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{2, 2});
  CHECK(m.closed_under_permutations());
  Term atom_term = ws.parse_term("lam(<x> var(x))");
  Term nil = ws.parse_term("[]");
  Term arr_oo = ws.parse_term("arr(o, o)");
  GroundAtom ga{"typ", {nil, atom_term, arr_oo}};
  CHECK(m.contains(ga));
}

TEST_CASE("equivariant model lookup relocates outside names") {
  Workspace ws = load("subst.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{1, 3});
  // an atom over a name the universe has never seen
  NameGen gen(ws.program().max_parsed_id + 500);
  Name d = gen.fresh(NameType{"var"});
  Term vd = Term::app(ws.program().sig, "var", {Term::name(d)});
  auto r = model_contains_equivariant(m, GroundAtom{"subst", {vd, vd, Term::name(d), vd}});
  REQUIRE(r);
  CHECK(*r);
}

TEST_CASE("formula evaluation: freshness under the new-quantifier") {
  Workspace ws = load("subst.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{1, 3});
  CHECK(eval_formula(ws.program(), m, ws.parse_formula("new n:var. n # var(b)"))
            .is_true());
  CHECK(eval_formula(ws.program(), m,
                     ws.parse_formula("new n:var. ~(n # var(b))"))
            .is_false());
}

TEST_CASE("formula evaluation: quantifiers over names are decided exactly") {
  Workspace ws = load("subst.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{1, 3});
  CHECK(eval_formula(ws.program(), m,
                     ws.parse_formula("exists N:var. N # var(b)"))
            .is_true());
  CHECK(eval_formula(ws.program(), m,
                     ws.parse_formula("forall N:var. N # var(b)"))
            .is_false());
  CHECK(eval_formula(ws.program(), m,
                     ws.parse_formula("forall N:var. subst(var(b), var(b), N, var(b))"))
            .is_true());
}

TEST_CASE("formula evaluation: data-sort universals report their bound") {
  Workspace ws = load("subst.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{1, 2});
  Verdict v = eval_formula(ws.program(), m,
                           ws.parse_formula("forall M:exp. M = M"));
  // no counterexample exists, but exp cannot be exhausted within a bound
  CHECK(v.is_unknown());
  CHECK(v.bound_reason.find("bound") != std::string::npos);
}

TEST_CASE("formula evaluation: implication and equality") {
  Workspace ws = load("subst.nl");
  LeastModel m = least_model_enum(ws.program(), ModelBound{1, 3});
  CHECK(eval_formula(
            ws.program(), m,
            ws.parse_formula("var(a) = var(a) & lam(<a> var(a)) = lam(<b> var(b))"))
            .is_true());
  CHECK(eval_formula(ws.program(), m,
                     ws.parse_formula("var(a) = var(b) -> false"))
            .is_true());
}
