// The lambda-calculus theory: capture-avoiding substitution, beta/eta
// reduction, normalization by evaluation, and the de Bruijn oracle.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nomlog/lambda.hpp"
#include "nomlog/print.hpp"

using namespace nomlog;

namespace {

const NameType kVar{"var"};
const Name a{kVar, 1, "a"};
const Name b{kVar, 2, "b"};
const Name c{kVar, 3, "c"};

}  // namespace

TEST_CASE("substitution on variables") {
  NameGen gen(100);
  Term n = lvar(c);
  CHECK(alpha_eq_ground(subst_fun(gen, lvar(a), a, n), n));
  CHECK(alpha_eq_ground(subst_fun(gen, lvar(b), a, n), lvar(b)));
}

TEST_CASE("substitution distributes over application") {
  NameGen gen(100);
  Term m = lapp(lvar(a), lvar(b));
  Term r = subst_fun(gen, m, a, lvar(c));
  CHECK(alpha_eq_ground(r, lapp(lvar(c), lvar(b))));
}

TEST_CASE("substitution under a binder with a safe side condition") {
  NameGen gen(100);
  // (\b. a b){a := c} = \b. c b
  Term m = llam(b, lapp(lvar(a), lvar(b)));
  CHECK(alpha_eq_ground(subst_fun(gen, m, a, lvar(c)),
                        llam(b, lapp(lvar(c), lvar(b)))));
}

TEST_CASE("substitution renames the binder to avoid capture") {
  NameGen gen(100);
  // (\b. a){a := b} must NOT become \b. b
  Term m = llam(b, lvar(a));
  Term r = subst_fun(gen, m, a, lvar(b));
  CHECK_FALSE(alpha_eq_ground(r, llam(b, lvar(b))));
  // the result binds a fresh name and has body b
  REQUIRE(lam_detail::is_lam(r));
  const Term& abs = r.args()[0];
  CHECK(alpha_eq_ground(abs.body(), lvar(b)));
  CHECK(abs.binder() != b);
  CHECK(abs.binder() != a);
}

TEST_CASE("substituting the bound name itself is a no-op") {
  NameGen gen(100);
  Term m = llam(a, lvar(a));
  CHECK(alpha_eq_ground(subst_fun(gen, m, a, lvar(c)), m));
}

TEST_CASE("substitution is equivariant") {
  NameGen gen(100);
  std::vector<std::tuple<Term, Name, Term>> cases = {
      {llam(b, lvar(a)), a, lvar(b)},
      {lapp(lvar(a), llam(a, lvar(a))), a, lapp(lvar(b), lvar(c))},
      {llam(a, lapp(lvar(a), lvar(b))), b, lvar(a)},
  };
  for (const auto& [m, x, n] : cases) {
    Swap sw{a, c};
    Term lhs = swap_term(sw, subst_fun(gen, m, x, n));
    Name sx = x == a ? c : (x == c ? a : x);
    Term rhs = subst_fun(gen, swap_term(sw, m), sx, swap_term(sw, n));
    CHECK(alpha_eq_ground(lhs, rhs));
  }
}

TEST_CASE("beta_step reduces the leftmost-outermost redex") {
  NameGen gen(100);
  Term redex = lapp(llam(a, lvar(a)), lvar(b));
  auto r = beta_step(gen, redex);
  REQUIRE(r);
  CHECK(alpha_eq_ground(*r, lvar(b)));
  CHECK_FALSE(beta_step(gen, lvar(a)));
  CHECK_FALSE(beta_step(gen, llam(a, lapp(lvar(a), lvar(b)))));
}

TEST_CASE("eta_step only fires when the bound name is fresh for the head") {
  NameGen gen(100);
  // \a. M a -> M when a # M
  Term good = llam(a, lapp(lvar(b), lvar(a)));
  auto r = eta_step(gen, good);
  REQUIRE(r);
  CHECK(alpha_eq_ground(*r, lvar(b)));
  // \a. a a is not an eta-redex
  CHECK_FALSE(eta_step(gen, llam(a, lapp(lvar(a), lvar(a)))));
}

TEST_CASE("normalize computes beta-eta normal forms with fuel") {
  NameGen gen(100);
  // (\a.\b. a b) (\c. c)  ->*  \c. c  (after eta)
  Term t = lapp(llam(a, llam(b, lapp(lvar(a), lvar(b)))), llam(c, lvar(c)));
  auto nf = normalize(gen, t, 100);
  REQUIRE(nf);
  CHECK(alpha_eq_ground(*nf, llam(c, lvar(c))));

  // beta alone also reaches \b. b, reducing under the binder
  auto beta_only = normalize(gen, t, 100, /*with_eta=*/false);
  REQUIRE(beta_only);
  CHECK(alpha_eq_ground(*beta_only, llam(b, lvar(b))));
}

TEST_CASE("normalize reports divergence as nullopt") {
  NameGen gen(100);
  Term omega = lapp(llam(a, lapp(lvar(a), lvar(a))),
                    llam(a, lapp(lvar(a), lvar(a))));
  CHECK_FALSE(normalize(gen, omega, 500));
}

TEST_CASE("nbe normalizes under binders and handles neutral heads") {
  NameGen gen(100);
  // c ((\a. a) b) has a neutral head; the argument still reduces
  Term t = lapp(lvar(c), lapp(llam(a, lvar(a)), lvar(b)));
  auto nf = nbe_normalize(gen, t);
  REQUIRE(nf);
  CHECK(alpha_eq_ground(*nf, lapp(lvar(c), lvar(b))));

  // app(c, \a.a) is already normal
  Term neutral = lapp(lvar(c), llam(a, lvar(a)));
  auto nf2 = nbe_normalize(gen, neutral);
  REQUIRE(nf2);
  CHECK(alpha_eq_ground(*nf2, neutral));
}

TEST_CASE("nbe runs out of fuel on divergent terms instead of hanging") {
  NameGen gen(100);
  Term omega = lapp(llam(a, lapp(lvar(a), lvar(a))),
                    llam(a, lapp(lvar(a), lvar(a))));
  CHECK_FALSE(nbe_normalize(gen, omega, 10000));
}

TEST_CASE("nbe agrees with fueled beta-normalization on samples") {
  NameGen gen(100);
  std::vector<Term> samples = {
      lapp(llam(a, llam(b, lapp(lvar(a), lvar(b)))), llam(c, lvar(c))),
      llam(a, lapp(llam(b, lvar(b)), lvar(a))),
      lapp(lapp(llam(a, llam(b, lvar(a))), lvar(b)), lvar(c)),
      llam(a, llam(b, lapp(lvar(b), lapp(llam(c, lvar(c)), lvar(a))))),
  };
  for (const auto& t : samples) {
    auto nf = normalize(gen, t, 1000, /*with_eta=*/false);
    auto nbe = nbe_normalize(gen, t);
    REQUIRE(nf);
    REQUIRE(nbe);
    CHECK(alpha_eq_ground(*nf, *nbe));
  }
}

TEST_CASE("\\x.\\y. x y and \\z.\\w. z w both read back as \\\\(2 1)") {
  Term t1 = llam(a, llam(b, lapp(lvar(a), lvar(b))));
  Term t2 = llam(c, llam(a, lapp(lvar(c), lvar(a))));
  DeBruijnTerm expect = DeBruijnTerm::lambda(DeBruijnTerm::lambda(
      DeBruijnTerm::apply(DeBruijnTerm::idx(2), DeBruijnTerm::idx(1))));
  CHECK(to_debruijn(t1) == expect);
  CHECK(to_debruijn(t2) == expect);
  CHECK(to_debruijn(t1).to_string() == "\\\\(2 1)");
}

TEST_CASE("de Bruijn images distinguish free names and track shadowing") {
  // \a.\a. a: the inner binder shadows, index 1
  Term shadow = llam(a, llam(a, lvar(a)));
  DeBruijnTerm expect =
      DeBruijnTerm::lambda(DeBruijnTerm::lambda(DeBruijnTerm::idx(1)));
  CHECK(to_debruijn(shadow) == expect);
  // free names survive as themselves
  CHECK(to_debruijn(llam(a, lvar(b))) ==
        DeBruijnTerm::lambda(DeBruijnTerm::freename(b)));
  CHECK(to_debruijn(llam(a, lvar(b))) != to_debruijn(llam(a, lvar(c))));
}

TEST_CASE("enumerators produce distinct well-formed terms in both metrics") {
  std::vector<Name> two{a, b};
  auto by_nodes = enumerate_exp_by_nodes(two, 4);
  CHECK(by_nodes.size() == 58);
  std::set<std::string> keys;
  for (const auto& t : by_nodes) {
    CHECK(t.is_ground());
    keys.insert(print_term(t));
  }
  CHECK(keys.size() == by_nodes.size());

  std::size_t streamed = 0;
  enumerate_exp_by_shape(two, 3, [&](const Term& t) {
    ++streamed;
    CHECK(t.sort() == Sort::data_sort("exp"));
  });
  CHECK(streamed == 410);
}
