#pragma once

// The lambda-calculus theory over nominal terms: the fixed signature,
// capture-avoiding substitution as a function, beta/eta reduction with fuel,
// normalization by evaluation, the de Bruijn oracle, and term enumerators for
// exhaustive property tests.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nomlog/term.hpp"

namespace nomlog {

// var : var -> exp, lam : <var>exp -> exp, app : exp * exp -> exp, plus the
// ty/arr and list/pair symbols used by the typechecking program.
inline const Signature& lambda_signature() {
  static const Signature sig = [] {
    Signature s;
    s.declare_name_type("var");
    s.declare_data_type("exp");
    s.declare_data_type("ty");
    s.declare_data_type("pair");
    s.declare_data_type("list");
    Sort v = Sort::name_sort("var");
    Sort e = Sort::data_sort("exp");
    Sort ty = Sort::data_sort("ty");
    Sort pr = Sort::data_sort("pair");
    Sort li = Sort::data_sort("list");
    s.declare_func("var", {v}, e);
    s.declare_func("lam", {Sort::abstraction("var", e)}, e);
    s.declare_func("app", {e, e}, e);
    s.declare_const("o", ty);
    s.declare_func("arr", {ty, ty}, ty);
    s.declare_func("pr", {v, ty}, pr);
    s.declare_const("nil", li);
    s.declare_func("cons", {pr, li}, li);
    return s;
  }();
  return sig;
}

inline NameType lambda_var_type() { return NameType{"var"}; }

inline Term lvar(const Name& a) {
  return Term::app(lambda_signature(), "var", {Term::name(a)});
}
inline Term llam(const Name& a, const Term& body) {
  return Term::app(lambda_signature(), "lam", {Term::abs(a, body)});
}
inline Term lapp(const Term& f, const Term& x) {
  return Term::app(lambda_signature(), "app", {f, x});
}

namespace lam_detail {
inline bool is_var(const Term& t) {
  return t.kind() == Term::Kind::App && t.symbol() == "var";
}
inline bool is_lam(const Term& t) {
  return t.kind() == Term::Kind::App && t.symbol() == "lam";
}
inline bool is_app(const Term& t) {
  return t.kind() == Term::Kind::App && t.symbol() == "app";
}
}  // namespace lam_detail

// M{a := N}, total on ground exp terms.  The binder is renamed first exactly
// when the side condition (b # N and b != a) fails.
inline Term subst_fun(NameGen& gen, const Term& M, const Name& a,
                      const Term& N) {
  using namespace lam_detail;
  if (is_var(M)) {
    const Name& b = M.args()[0].name_value();
    return b == a ? N : M;
  }
  if (is_app(M))
    return lapp(subst_fun(gen, M.args()[0], a, N),
                subst_fun(gen, M.args()[1], a, N));
  if (is_lam(M)) {
    const Term& abs = M.args()[0];
    Name b = abs.binder();
    Term body = abs.body();
    if (b == a || !fresh_ground(b, N)) {
      Name b2 = fresh_name(gen, b.type, {N, body, Term::name(a)});
      body = swap_term({b, b2}, body);
      b = b2;
    }
    return llam(b, subst_fun(gen, body, a, N));
  }
  throw SortError("subst_fun expects a lambda-signature exp term");
}

// Leftmost-outermost beta step; nullopt if beta-normal.
inline std::optional<Term> beta_step(NameGen& gen, const Term& t) {
  using namespace lam_detail;
  if (is_app(t)) {
    const Term& f = t.args()[0];
    const Term& x = t.args()[1];
    if (is_lam(f)) {
      const Term& abs = f.args()[0];
      return subst_fun(gen, abs.body(), abs.binder(), x);
    }
    if (auto r = beta_step(gen, f)) return lapp(*r, x);
    if (auto r = beta_step(gen, x)) return lapp(f, *r);
    return std::nullopt;
  }
  if (is_lam(t)) {
    const Term& abs = t.args()[0];
    if (auto r = beta_step(gen, abs.body()))
      return llam(abs.binder(), *r);
    return std::nullopt;
  }
  return std::nullopt;
}

// lam(<a> app(M, var a)) -> M, only when a # M.
inline std::optional<Term> eta_step(NameGen& gen, const Term& t) {
  using namespace lam_detail;
  if (is_lam(t)) {
    const Term& abs = t.args()[0];
    const Name& a = abs.binder();
    const Term& body = abs.body();
    if (is_app(body) && is_var(body.args()[1]) &&
        body.args()[1].args()[0].name_value() == a &&
        fresh_ground(a, body.args()[0]))
      return body.args()[0];
    if (auto r = eta_step(gen, body)) return llam(a, *r);
    return std::nullopt;
  }
  if (is_app(t)) {
    if (auto r = eta_step(gen, t.args()[0])) return lapp(*r, t.args()[1]);
    if (auto r = eta_step(gen, t.args()[1])) return lapp(t.args()[0], *r);
    return std::nullopt;
  }
  return std::nullopt;
}

// Beta-normalize (then eta-normalize, unless disabled) with explicit fuel.
// Divergence shows up as nullopt.
inline std::optional<Term> normalize(NameGen& gen, Term t, std::size_t fuel,
                                     bool with_eta = true) {
  while (fuel > 0) {
    auto r = beta_step(gen, t);
    if (!r) break;
    t = *r;
    --fuel;
  }
  if (beta_step(gen, t)) return std::nullopt;  // fuel ran out mid-reduction
  if (with_eta) {
    while (auto r = eta_step(gen, t)) t = *r;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Normalization by evaluation.  Semantic values are functions over thunks or
// neutral terms; reify invents one fresh name per function value.

struct NbeOutOfFuel {};

namespace nbe_detail {

struct Sem;
struct Neu;
using SemPtr = std::shared_ptr<Sem>;
using NeuPtr = std::shared_ptr<Neu>;
using Thunk = std::function<SemPtr()>;

struct Sem {
  std::function<SemPtr(Thunk)> fun;  // L case
  NeuPtr neu;                        // N case
  bool is_fun = false;
};

struct Neu {
  bool is_var = false;
  Name v;
  NeuPtr head;  // A case
  SemPtr arg;
};

struct Budget {
  std::size_t left;
  void tick() {
    if (left == 0) throw NbeOutOfFuel{};
    --left;
  }
};

inline SemPtr mk_fun(std::function<SemPtr(Thunk)> f) {
  auto s = std::make_shared<Sem>();
  s->is_fun = true;
  s->fun = std::move(f);
  return s;
}
inline SemPtr mk_neu(NeuPtr n) {
  auto s = std::make_shared<Sem>();
  s->neu = std::move(n);
  return s;
}
inline NeuPtr neu_var(Name a) {
  auto n = std::make_shared<Neu>();
  n->is_var = true;
  n->v = std::move(a);
  return n;
}
inline NeuPtr neu_app(NeuPtr h, SemPtr d) {
  auto n = std::make_shared<Neu>();
  n->head = std::move(h);
  n->arg = std::move(d);
  return n;
}

inline SemPtr evals(const std::shared_ptr<Budget>& budget,
                    std::vector<std::pair<Name, Thunk>> env, const Term& t) {
  budget->tick();
  using namespace lam_detail;
  if (is_var(t)) {
    const Name& y = t.args()[0].name_value();
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == y) return it->second();
    return mk_neu(neu_var(y));
  }
  if (is_lam(t)) {
    const Term& abs = t.args()[0];
    Name x = abs.binder();
    Term body = abs.body();
    return mk_fun([budget, env, x, body](Thunk v) {
      auto env2 = env;
      env2.push_back({x, std::move(v)});
      return evals(budget, std::move(env2), body);
    });
  }
  if (is_app(t)) {
    Term t1 = t.args()[0];
    Term t2 = t.args()[1];
    SemPtr f = evals(budget, env, t1);
    if (f->is_fun)
      return f->fun([budget, env, t2]() { return evals(budget, env, t2); });
    return mk_neu(neu_app(f->neu, evals(budget, env, t2)));
  }
  throw SortError("nbe expects a lambda-signature exp term");
}

inline Term reify(const std::shared_ptr<Budget>& budget, NameGen& gen,
                  const SemPtr& s);

inline Term reifyn(const std::shared_ptr<Budget>& budget, NameGen& gen,
                   const NeuPtr& n) {
  if (n->is_var) return lvar(n->v);
  return lapp(reifyn(budget, gen, n->head), reify(budget, gen, n->arg));
}

inline Term reify(const std::shared_ptr<Budget>& budget, NameGen& gen,
                  const SemPtr& s) {
  budget->tick();
  if (s->is_fun) {
    Name x = gen.fresh(lambda_var_type());
    SemPtr r = s->fun([x]() { return mk_neu(neu_var(x)); });
    return llam(x, reify(budget, gen, r));
  }
  return reifyn(budget, gen, s->neu);
}

}  // namespace nbe_detail

inline std::optional<Term> nbe_normalize(NameGen& gen, const Term& t,
                                         std::size_t fuel = 100000) {
  auto budget = std::make_shared<nbe_detail::Budget>();
  budget->left = fuel;
  try {
    auto sem = nbe_detail::evals(budget, {}, t);
    return nbe_detail::reify(budget, gen, sem);
  } catch (const NbeOutOfFuel&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// de Bruijn oracle

struct DeBruijnTerm {
  enum class Kind { Index, Lambda, Apply, Free };
  Kind kind;
  std::size_t index = 0;  // 1-based, Index only
  Name free;              // Free only
  std::vector<DeBruijnTerm> subs;

  static DeBruijnTerm idx(std::size_t i) { return {Kind::Index, i, Name{}, {}}; }
  static DeBruijnTerm lambda(DeBruijnTerm b) {
    return {Kind::Lambda, 0, Name{}, {std::move(b)}};
  }
  static DeBruijnTerm apply(DeBruijnTerm f, DeBruijnTerm x) {
    return {Kind::Apply, 0, Name{}, {std::move(f), std::move(x)}};
  }
  static DeBruijnTerm freename(Name n) {
    return {Kind::Free, 0, std::move(n), {}};
  }

  friend bool operator==(const DeBruijnTerm& a, const DeBruijnTerm& b) {
    if (a.kind != b.kind || a.index != b.index || !(a.free == b.free))
      return false;
    if (a.subs.size() != b.subs.size()) return false;
    for (std::size_t i = 0; i < a.subs.size(); ++i)
      if (!(a.subs[i] == b.subs[i])) return false;
    return true;
  }
  friend bool operator!=(const DeBruijnTerm& a, const DeBruijnTerm& b) {
    return !(a == b);
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Index:
        return std::to_string(index);
      case Kind::Free:
        return free.label();
      case Kind::Lambda:
        return "\\" + subs[0].to_string();
      case Kind::Apply:
        return "(" + subs[0].to_string() + " " + subs[1].to_string() + ")";
    }
    return "?";
  }
};

namespace lam_detail {
inline DeBruijnTerm to_db(const Term& t, std::vector<Name>& binders) {
  if (is_var(t)) {
    const Name& a = t.args()[0].name_value();
    for (std::size_t i = binders.size(); i-- > 0;)
      if (binders[i] == a) return DeBruijnTerm::idx(binders.size() - i);
    return DeBruijnTerm::freename(a);
  }
  if (is_lam(t)) {
    const Term& abs = t.args()[0];
    binders.push_back(abs.binder());
    DeBruijnTerm b = to_db(abs.body(), binders);
    binders.pop_back();
    return DeBruijnTerm::lambda(std::move(b));
  }
  if (is_app(t))
    return DeBruijnTerm::apply(to_db(t.args()[0], binders),
                               to_db(t.args()[1], binders));
  throw SortError("to_debruijn expects a lambda-signature exp term");
}
}  // namespace lam_detail

inline DeBruijnTerm to_debruijn(const Term& t) {
  std::vector<Name> binders;
  return lam_detail::to_db(t, binders);
}

// ---------------------------------------------------------------------------
// Enumerators for exhaustive desk-scale checks.  Deterministic order.

// All exp terms with at most `max_nodes` constructors (var, lam, app each
// count one) over the given name alphabet; binders draw from the same
// alphabet.
inline std::vector<Term> enumerate_exp_by_nodes(const std::vector<Name>& names,
                                                std::size_t max_nodes) {
  std::vector<std::vector<Term>> tiers(max_nodes + 1);
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    auto& tier = tiers[n];
    if (n == 1)
      for (const auto& a : names) tier.push_back(lvar(a));
    if (n >= 2)
      for (const auto& a : names)
        for (const auto& body : tiers[n - 1]) tier.push_back(llam(a, body));
    if (n >= 3)
      for (std::size_t i = 1; i + 1 < n; ++i)
        for (const auto& f : tiers[i])
          for (const auto& x : tiers[n - 1 - i]) tier.push_back(lapp(f, x));
  }
  std::vector<Term> all;
  for (const auto& tier : tiers) all.insert(all.end(), tier.begin(), tier.end());
  return all;
}

// All exp terms with at most `max_internal` lam/app constructors (variable
// leaves are free) over the alphabet, streamed to a callback.  The final tier
// is not materialized, so large bounds stay cheap on memory.
inline void enumerate_exp_by_shape(const std::vector<Name>& names,
                                   std::size_t max_internal,
                                   const std::function<void(const Term&)>& cb) {
  std::vector<std::vector<Term>> tiers(max_internal + 1);
  for (const auto& a : names) tiers[0].push_back(lvar(a));
  for (const auto& t : tiers[0]) cb(t);
  for (std::size_t n = 1; n <= max_internal; ++n) {
    bool last = n == max_internal;
    auto emit = [&](const Term& t) {
      if (!last) tiers[n].push_back(t);
      cb(t);
    };
    for (const auto& a : names)
      for (const auto& body : tiers[n - 1]) emit(llam(a, body));
    for (std::size_t i = 0; i <= n - 1; ++i) {
      std::size_t j = n - 1 - i;
      for (const auto& f : tiers[i])
        for (const auto& x : tiers[j]) emit(lapp(f, x));
    }
  }
}

}  // namespace nomlog
