// The surface syntax: terms, goals, program files, and formulas, including
// sort inference and the clause-local reading of lowercase names.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nomlog/parse.hpp"
#include "nomlog/print.hpp"

using namespace nomlog;

TEST_CASE("ad-hoc terms round-trip through the raw printer") {
  Workspace ws = Workspace::adhoc();
  std::vector<std::string> sources = {
      "lam(<a> var(a))",
      "lam(<a> app(var(a), var(b)))",
      "app(app(var(a), var(b)), lam(<c> var(c)))",
      "<a> var(a)",
  };
  for (const auto& src : sources) {
    Term t = ws.parse_term(src);
    CHECK(print_term(t) == src);
    Term again = ws.parse_term(print_term(t));
    CHECK(alpha_eq_ground(again, t));
  }
}

TEST_CASE("lambda sugar parses to the constructor encoding") {
  Workspace ws = Workspace::adhoc();
  Term t = ws.parse_term("\\x. x y");
  CHECK(print_term(t) == "lam(<x> app(var(x), var(y)))");
  CHECK(print_term_sugar(t) == "\\x. x y");
}

TEST_CASE("swap prefixes and variables parse as suspensions") {
  Workspace ws = Workspace::adhoc();
  Term t = ws.parse_term("(a b).X");
  REQUIRE(t.kind() == Term::Kind::Susp);
  CHECK(t.var_ident() == "X");
  CHECK(print_term(t) == "(a b).X");
}

TEST_CASE("list and pair sugar") {
  Workspace ws = Workspace::adhoc();
  CHECK(print_term(ws.parse_term("[]")) == "nil");
  Term t = ws.parse_term("[(a, o) | G]");
  CHECK(t.kind() == Term::Kind::App);
  CHECK(t.symbol() == "cons");
}

TEST_CASE("paired terms share sort inference") {
  Workspace ws = Workspace::adhoc();
  // X alone would default to a data sort; against <b> b it must be a name
  auto [t, u] = ws.parse_term_pair("<a> X", "<b> b");
  CHECK(t.body().sort() == Sort::name_sort("var"));
  CHECK(u.body().sort() == Sort::name_sort("var"));
}

TEST_CASE("program files declare sorts and reject violations") {
  Workspace ws;
  ws.load_program(
      "name a, b : var.\n"
      "type exp.\n"
      "func var(var) -> exp.\n"
      "func app(exp, exp) -> exp.\n"
      "pred p(exp).\n"
      "p(var(a)).\n");
  CHECK(ws.program().clauses.size() == 1);
  CHECK(ws.program().sig.has_data_type("exp"));
  // a bare name in an exp position is coerced through var
  Goal g = ws.parse_goal("p(app(a, var(b)))");
  CHECK(print_term(g.goals[0].terms[0]) == "app(var(a), var(b))");
  // arity violations are errors
  CHECK_THROWS_AS((void)ws.parse_goal("p(var(a), var(b))"), ParseError);
}

TEST_CASE("names in clauses are clause-local") {
  Workspace ws;
  ws.load_program(
      "name a : var.\n"
      "pred q(var).\n"
      "q(a).\n");
  const HornClause& c = ws.program().clauses[0];
  REQUIRE(c.new_names.size() == 1);
  // the clause name is a fresh name, not the declared global
  CHECK(c.new_names[0] != ws.program().global_names.at("a"));
}

TEST_CASE("goal variables are collected with their sorts") {
  Workspace ws;
  ws.load_program(
      "name a : var.\n"
      "type exp.\n"
      "func var(var) -> exp.\n"
      "pred p(exp, var).\n");
  Goal g = ws.parse_goal("p(X, N), N # X");
  CHECK(g.goals.size() == 2);
  REQUIRE(g.vars.count("X"));
  REQUIRE(g.vars.count("N"));
  CHECK(g.vars.at("X") == Sort::data_sort("exp"));
  CHECK(g.vars.at("N") == Sort::name_sort("var"));
}

TEST_CASE("formula connective precedence and quantifier scope") {
  Workspace ws = Workspace::adhoc();
  // quantifier bodies extend to the right as far as possible
  FormulaPtr f = ws.parse_formula("exists N:var. N # var(a) & ~false");
  REQUIRE(f->kind == Formula::Kind::Exists);
  CHECK(f->subs[0]->kind == Formula::Kind::And);

  FormulaPtr g = ws.parse_formula("false | ~false -> false");
  // -> binds loosest: (false | ~false) -> false
  REQUIRE(g->kind == Formula::Kind::Impl);
  CHECK(g->subs[0]->kind == Formula::Kind::Or);

  FormulaPtr h = ws.parse_formula("new n:var. n # var(a)");
  REQUIRE(h->kind == Formula::Kind::New);
  CHECK(h->qname.type.ident == "var");
}

TEST_CASE("iff is weakest and associates sensibly") {
  Workspace ws = Workspace::adhoc();
  FormulaPtr f = ws.parse_formula("false -> false <-> ~false");
  REQUIRE(f->kind == Formula::Kind::Iff);
  CHECK(f->subs[0]->kind == Formula::Kind::Impl);
  CHECK(f->subs[1]->kind == Formula::Kind::Not);
}

TEST_CASE("parse errors carry positions") {
  Workspace ws = Workspace::adhoc();
  try {
    (void)ws.parse_term("lam(<a> var(a)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
  CHECK_THROWS_AS((void)ws.parse_term("lam(<a>"), ParseError);
  CHECK_THROWS_AS((void)ws.parse_term(""), ParseError);
  Workspace ws2;
  CHECK_THROWS_AS(ws2.load_program("pred p(unknown_sort).\n"), ParseError);
}

TEST_CASE("undeclared predicates in goals are rejected") {
  Workspace ws;
  ws.load_program("name a : var.\npred p(var).\n");
  CHECK_THROWS_AS((void)ws.parse_goal("q(a)"), ParseError);
}

TEST_CASE("comments and whitespace are skipped") {
  Workspace ws;
  ws.load_program(
      "% a comment line\n"
      "name a : var.  % trailing comment\n"
      "\n"
      "pred p(var).\n"
      "p(a).\n");
  CHECK(ws.program().clauses.size() == 1);
}
