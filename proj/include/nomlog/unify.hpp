#pragma once

// Nominal unification: solves multisets of equations t =? u and freshness
// goals a #? t, producing a substitution plus a freshness context.
// Equations are solved rigid-rigid before flex-rigid before flex-flex;
// residual freshness goals are discharged last.

#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nomlog/print.hpp"
#include "nomlog/subst.hpp"

namespace nomlog {

struct UnifyFailure {
  enum class Kind { SymbolClash, NameClash, OccursCheck, FreshnessRefuted, SortMismatch };
  Kind kind;
  std::string detail;  // offending sub-equation or constraint
};

struct Solution {
  Substitution subst;
  FreshnessContext ctx;
};

using UnifyResult = std::variant<Solution, UnifyFailure>;

inline bool unify_ok(const UnifyResult& r) {
  return std::holds_alternative<Solution>(r);
}

struct UnifProblem {
  std::vector<std::pair<Term, Term>> equations;
  std::vector<FreshnessConstraint> freshness;
};

namespace detail {

inline bool is_flex(const Term& t) { return t.kind() == Term::Kind::Susp; }

inline UnifyFailure clash(UnifyFailure::Kind k, const Term& t, const Term& u) {
  return UnifyFailure{k, print_term(t) + " =? " + print_term(u)};
}

}  // namespace detail

inline UnifyResult unify_problem(UnifProblem problem) {
  using K = Term::Kind;
  std::deque<std::pair<Term, Term>> eqs(problem.equations.begin(),
                                        problem.equations.end());
  std::vector<FreshnessConstraint> goals = problem.freshness;
  Substitution theta;

  auto pick = [&eqs]() {
    // rigid-rigid first, then flex-rigid, then flex-flex
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        bool ff = detail::is_flex(eqs[i].first) && detail::is_flex(eqs[i].second);
        bool rr = !detail::is_flex(eqs[i].first) && !detail::is_flex(eqs[i].second);
        if ((pass == 0 && rr) || (pass == 1 && !ff)) {
          auto e = eqs[i];
          eqs.erase(eqs.begin() + static_cast<long>(i));
          return e;
        }
      }
    }
    auto e = eqs.front();
    eqs.pop_front();
    return e;
  };

  while (!eqs.empty()) {
    auto [t, u] = pick();
    if (t.sort() != u.sort())
      return detail::clash(UnifyFailure::Kind::SortMismatch, t, u);

    if (detail::is_flex(t) && detail::is_flex(u) &&
        t.var_ident() == u.var_ident()) {
      // pi.x =? pi'.x  reduces to  ds(pi, pi') # x
      std::vector<Name> dom = t.susp_perm().domain();
      for (const auto& n : u.susp_perm().domain()) {
        bool seen = false;
        for (const auto& m : dom) seen = seen || m == n;
        if (!seen) dom.push_back(n);
      }
      for (const auto& a :
           perm_disagreement(t.susp_perm(), u.susp_perm(), dom))
        goals.push_back({a, Term::var(t.var_ident(), t.sort())});
      continue;
    }

    if (detail::is_flex(t) || detail::is_flex(u)) {
      const Term& flex = detail::is_flex(t) ? t : u;
      const Term& other = detail::is_flex(t) ? u : t;
      const std::string& x = flex.var_ident();
      if (free_vars(other).count(x))
        return detail::clash(UnifyFailure::Kind::OccursCheck, flex, other);
      Term image = perm_term(flex.susp_perm().inverse(), other);
      theta.bind(x, theta.apply(image));
      Substitution one;
      one.bind(x, theta.get(x));
      for (auto& [l, r] : eqs) {
        l = one.apply(l);
        r = one.apply(r);
      }
      continue;
    }

    if (t.kind() != u.kind())
      return detail::clash(UnifyFailure::Kind::SymbolClash, t, u);
    switch (t.kind()) {
      case K::NameRef:
        if (!(t.name_value() == u.name_value()))
          return detail::clash(UnifyFailure::Kind::NameClash, t, u);
        break;
      case K::Const:
        if (t.symbol() != u.symbol())
          return detail::clash(UnifyFailure::Kind::SymbolClash, t, u);
        break;
      case K::App: {
        if (t.symbol() != u.symbol())
          return detail::clash(UnifyFailure::Kind::SymbolClash, t, u);
        for (std::size_t i = 0; i < t.args().size(); ++i)
          eqs.push_back({t.args()[i], u.args()[i]});
        break;
      }
      case K::Abs: {
        const Name& a = t.binder();
        const Name& b = u.binder();
        if (a == b) {
          eqs.push_back({t.body(), u.body()});
        } else {
          eqs.push_back({t.body(), swap_term({a, b}, u.body())});
          goals.push_back({a, u.body()});
        }
        break;
      }
      case K::Susp:
        break;  // unreachable
    }
  }

  auto ctx = solve_freshness(goals, theta);
  if (!ctx) {
    std::string detail;
    for (const auto& g : goals) {
      if (!detail.empty()) detail += ", ";
      detail += g.name.label() + " #? " + print_term(theta.apply(g.target));
    }
    return UnifyFailure{UnifyFailure::Kind::FreshnessRefuted, detail};
  }
  return Solution{std::move(theta), std::move(*ctx)};
}

inline UnifyResult unify(const Term& t, const Term& u) {
  return unify_problem(UnifProblem{{{t, u}}, {}});
}

// Does `ctx` entail t ~ u for every respecting ground instance?  Decision via
// unification restricted to no-substitution solutions.
inline bool alpha_eq_open(const FreshnessContext& ctx, const Term& t,
                          const Term& u) {
  UnifyResult r = unify(t, u);
  if (!unify_ok(r)) return false;
  const Solution& sol = std::get<Solution>(r);
  if (!sol.subst.empty()) return false;
  for (const auto& [a, x] : sol.ctx.items())
    if (!ctx.contains(a, x)) return false;
  return true;
}

}  // namespace nomlog
