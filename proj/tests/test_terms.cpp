// Ground judgments on nominal terms: swapping, freshness, alpha-equality,
// support, sorting, and canonical keys.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nomlog/lambda.hpp"
#include "nomlog/print.hpp"
#include "nomlog/term.hpp"

using namespace nomlog;

namespace {

const NameType kVar{"var"};
const Name a{kVar, 1, "a"};
const Name b{kVar, 2, "b"};
const Name c{kVar, 3, "c"};

}  // namespace

TEST_CASE("swapping a name reference") {
  CHECK(swap_term({a, b}, Term::name(a)) == Term::name(b));
  CHECK(swap_term({a, b}, Term::name(b)) == Term::name(a));
  CHECK(swap_term({a, b}, Term::name(c)) == Term::name(c));
}

TEST_CASE("swapping acts on binders, never renames first") {
  // (a b) . <a>b = <b>a — binder and body both swapped
  Term t = Term::abs(a, Term::name(b));
  Term s = swap_term({a, b}, t);
  CHECK(s.binder() == b);
  CHECK(s.body() == Term::name(a));
}

TEST_CASE("swapping is an involution on sample terms") {
  std::vector<Term> samples = {
      lvar(a),
      llam(a, lvar(b)),
      lapp(llam(a, lvar(a)), lvar(c)),
      llam(a, llam(b, lapp(lvar(a), lvar(b)))),
  };
  for (const auto& t : samples)
    CHECK(swap_term({a, b}, swap_term({a, b}, t)) == t);
}

TEST_CASE("swapping distributes over term structure") {
  Term t = lapp(lvar(a), llam(b, lvar(a)));
  Term s = swap_term({a, c}, t);
  CHECK(s == lapp(lvar(c), llam(b, lvar(c))));
}

TEST_CASE("swapping a suspension delays the swap on the permutation") {
  Term x = Term::var("X", Sort::data_sort("exp"));
  Term s = swap_term({a, b}, x);
  REQUIRE(s.kind() == Term::Kind::Susp);
  CHECK(s.susp_perm().apply(a) == b);
  CHECK(s.var_ident() == "X");
}

TEST_CASE("perm_term folds transpositions rightmost-first") {
  Perm p({{a, c}, {a, b}});  // applies (a b) then (a c)
  CHECK(perm_term(p, Term::name(a)) == Term::name(b));
  CHECK(perm_term(p, Term::name(b)) == Term::name(c));
  CHECK(perm_term(p, Term::name(c)) == Term::name(a));
}

TEST_CASE("freshness for names, applications, constants") {
  CHECK(fresh_ground(a, Term::name(b)));
  CHECK_FALSE(fresh_ground(a, Term::name(a)));
  CHECK(fresh_ground(a, lapp(lvar(b), lvar(c))));
  CHECK_FALSE(fresh_ground(a, lapp(lvar(b), lvar(a))));
}

TEST_CASE("freshness under abstraction: binder occurrences do not count") {
  CHECK(fresh_ground(a, llam(a, lvar(a))));
  CHECK_FALSE(fresh_ground(a, llam(b, lvar(a))));
  CHECK(fresh_ground(a, llam(b, lvar(b))));
  // a # <a>t always, even when t mentions a under another binder
  CHECK(fresh_ground(a, Term::abs(a, lapp(lvar(a), lvar(b)))));
}

TEST_CASE("freshness on open terms is rejected") {
  Term x = Term::var("X", Sort::data_sort("exp"));
  CHECK_THROWS_AS((void)fresh_ground(a, lapp(lvar(b), x)), OpenTermError);
}

TEST_CASE("alpha-equality identifies abstractions up to renaming") {
  CHECK(alpha_eq_ground(llam(a, lvar(a)), llam(b, lvar(b))));
  CHECK(alpha_eq_ground(Term::abs(a, Term::name(a)),
                        Term::abs(b, Term::name(b))));
  // <a>b vs <b>a: requires a # a, which fails
  CHECK_FALSE(alpha_eq_ground(Term::abs(a, Term::name(b)),
                              Term::abs(b, Term::name(a))));
  // <a>c ~ <b>c: both abstract a name absent from the body
  CHECK(alpha_eq_ground(Term::abs(a, Term::name(c)),
                        Term::abs(b, Term::name(c))));
}

TEST_CASE("alpha-equality respects capture") {
  // \a.\b. a b vs \b.\a. b a are alpha-equal
  CHECK(alpha_eq_ground(llam(a, llam(b, lapp(lvar(a), lvar(b)))),
                        llam(b, llam(a, lapp(lvar(b), lvar(a))))));
  // \a.\b. a b vs \a.\b. b a are not
  CHECK_FALSE(alpha_eq_ground(llam(a, llam(b, lapp(lvar(a), lvar(b)))),
                              llam(a, llam(b, lapp(lvar(b), lvar(a))))));
  // free names must match exactly
  CHECK_FALSE(alpha_eq_ground(llam(a, lvar(c)), llam(a, lvar(b))));
}

TEST_CASE("alpha-equality is equivariant on samples") {
  std::vector<std::pair<Term, Term>> pairs = {
      {llam(a, lvar(a)), llam(b, lvar(b))},
      {llam(a, lvar(b)), llam(c, lvar(b))},
      {lapp(lvar(a), lvar(b)), lapp(lvar(a), lvar(b))},
      {llam(a, lvar(b)), llam(a, lvar(c))},
  };
  for (const auto& [t, u] : pairs) {
    bool before = alpha_eq_ground(t, u);
    CHECK(before == alpha_eq_ground(swap_term({a, b}, t), swap_term({a, b}, u)));
    CHECK(before == alpha_eq_ground(swap_term({b, c}, t), swap_term({b, c}, u)));
  }
}

TEST_CASE("support drops the abstracted name") {
  CHECK(support(llam(a, lvar(a))).empty());
  CHECK(support(llam(a, lapp(lvar(a), lvar(b)))) == std::set<Name>{b});
  CHECK(support(lapp(lvar(a), lvar(b))) == std::set<Name>{a, b});
  CHECK(support(Term::constant(lambda_signature(), "o")).empty());
}

TEST_CASE("if a and b are both fresh for t then (a b).t ~ t") {
  std::vector<Term> samples = {
      llam(a, lvar(a)),
      llam(b, lvar(b)),
      llam(c, lapp(lvar(c), lvar(c))),
      lvar(c),
  };
  for (const auto& t : samples) {
    REQUIRE(fresh_ground(a, t));
    REQUIRE(fresh_ground(b, t));
    CHECK(alpha_eq_ground(swap_term({a, b}, t), t));
  }
}

TEST_CASE("well_sorted re-derives sorts and rejects ill-formed applications") {
  const Signature& sig = lambda_signature();
  SortContext ctx;
  CHECK(well_sorted(ctx, sig, llam(a, lvar(a))) == Sort::data_sort("exp"));
  CHECK(well_sorted(ctx, sig, Term::name(a)) == Sort::name_sort("var"));
  CHECK(well_sorted(ctx, sig, Term::abs(a, lvar(b))) ==
        Sort::abstraction("var", Sort::data_sort("exp")));
  // app of exp to a bare name is ill-sorted at construction time
  CHECK_THROWS_AS(
      (void)Term::app(sig, "app", {lvar(a), Term::name(b)}), SortError);
}

TEST_CASE("canonical keys coincide exactly on alpha-equal terms") {
  CHECK(canonical_key(llam(a, lvar(a))) == canonical_key(llam(b, lvar(b))));
  CHECK(canonical_key(llam(a, lvar(b))) != canonical_key(llam(b, lvar(a))));
  auto names = std::vector<Name>{a, b};
  auto terms = enumerate_exp_by_nodes(names, 4);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i; j < terms.size(); ++j)
      CHECK(alpha_eq_ground(terms[i], terms[j]) ==
            (canonical_key(terms[i]) == canonical_key(terms[j])));
}

TEST_CASE("fresh_name avoids every name occurring in the avoid list") {
  NameGen gen(1);
  Term t = llam(a, lapp(lvar(b), lvar(c)));
  Name n = fresh_name(gen, kVar, {t});
  CHECK(fresh_ground(n, t));
  CHECK(n != a);
  CHECK(n != b);
  CHECK(n != c);
}

TEST_CASE("raw printing round-trips structure") {
  Term t = llam(a, lapp(lvar(a), lvar(b)));
  CHECK(print_term(t) == "lam(<a> app(var(a), var(b)))");
  Term x = Term::susp(Perm::single(a, b), "X", Sort::data_sort("exp"));
  CHECK(print_term(x) == "(a b).X");
  CHECK(print_term_sugar(t) == "\\a. a b");
}
