#pragma once

// Nominal Horn clause programs: SLD resolution over nominal unification (with
// an opt-in bounded equivariant mode), forward-chaining least-model
// enumeration, and a bounded three-valued evaluator for closed formulas over
// term models.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nomlog/unify.hpp"

namespace nomlog {

// ---------------------------------------------------------------------------
// Clauses and programs

struct ClauseGoal {
  enum class Kind { Atom, Eq, Fresh };
  Kind kind;
  std::string pred;         // Atom
  std::vector<Term> terms;  // Atom args; Eq: {t, u}; Fresh: {name-term, t}
};

struct HornClause {
  std::vector<Name> new_names;        // И-quantified, clause-local
  std::map<std::string, Sort> vars;   // ∀-quantified
  std::string head_pred;
  std::vector<Term> head_args;
  std::vector<ClauseGoal> body;
};

struct Program {
  Signature sig;
  std::vector<HornClause> clauses;
  std::map<std::string, Name> global_names;  // label -> name, from declarations
  std::uint64_t max_parsed_id = 0;
};

struct Goal {
  std::vector<ClauseGoal> goals;
  std::map<std::string, Sort> vars;
};

struct Answer {
  Substitution subst;
  FreshnessContext ctx;
};

// ---------------------------------------------------------------------------
// Renaming helpers

// Permutation sending from[i] to to[i] (all distinct, same types), routed
// through throwaway names so that overlapping from/to sets cannot interfere.
inline Perm renaming_perm(NameGen& gen, const std::vector<Name>& from,
                          const std::vector<Name>& to) {
  std::vector<Swap> stage1, stage2;
  std::vector<Name> temps;
  for (const auto& n : from) temps.push_back(gen.fresh(n.type));
  for (std::size_t i = 0; i < from.size(); ++i) {
    stage1.push_back({from[i], temps[i]});
    stage2.push_back({temps[i], to[i]});
  }
  // stage1 acts first (rightmost swaps apply first)
  std::vector<Swap> all = stage2;
  all.insert(all.end(), stage1.begin(), stage1.end());
  return Perm(std::move(all));
}

// Rename all И-names to fresh names avoiding `avoid`, and all variables to
// fresh variable idents.
inline HornClause freshen_clause(const HornClause& c, NameGen& gen,
                                 std::uint64_t& var_counter,
                                 const std::vector<Term>& avoid) {
  std::vector<Name> fresh_names;
  for (const auto& n : c.new_names)
    fresh_names.push_back(fresh_name(gen, n.type, avoid));
  Perm rho = renaming_perm(gen, c.new_names, fresh_names);

  std::map<std::string, std::string> var_map;
  std::map<std::string, Sort> fresh_vars;
  for (const auto& [x, s] : c.vars) {
    std::string nx = "_V" + std::to_string(var_counter++);
    var_map.insert({x, nx});
    fresh_vars.insert({nx, s});
  }

  std::function<Term(const Term&)> rename = [&](const Term& t) -> Term {
    switch (t.kind()) {
      case Term::Kind::Susp: {
        auto it = var_map.find(t.var_ident());
        const std::string& v = it == var_map.end() ? t.var_ident() : it->second;
        Perm p;
        for (const auto& [a, b] : t.susp_perm().swaps())
          p = Perm::compose(p, Perm::single(rho.apply(a), rho.apply(b)));
        return Term::susp(p, v, t.sort());
      }
      case Term::Kind::NameRef:
        return Term::name(rho.apply(t.name_value()));
      case Term::Kind::Const:
        return t;
      case Term::Kind::App: {
        std::vector<Term> args;
        for (const auto& a : t.args()) args.push_back(rename(a));
        return rebuild_app(t, std::move(args));
      }
      case Term::Kind::Abs:
        return rebuild_abs(t, rho.apply(t.binder()), rename(t.body()));
    }
    throw std::logic_error("freshen: bad kind");
  };

  HornClause out;
  out.new_names = fresh_names;
  out.vars = fresh_vars;
  out.head_pred = c.head_pred;
  for (const auto& t : c.head_args) out.head_args.push_back(rename(t));
  for (const auto& g : c.body) {
    ClauseGoal ng{g.kind, g.pred, {}};
    for (const auto& t : g.terms) ng.terms.push_back(rename(t));
    out.body.push_back(std::move(ng));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SLD resolution

struct SolveOpts {
  std::size_t depth_limit = 50;
  bool equivariant = false;
  std::size_t max_answers = static_cast<std::size_t>(-1);
};

struct SolveOutcome {
  std::vector<Answer> answers;
  bool depth_exhausted = false;  // some branch was cut by the depth limit
};

class Solver {
 public:
  explicit Solver(const Program& p) : prog_(p), gen_(p.max_parsed_id + 1) {}

  SolveOutcome solve(const Goal& goal, const SolveOpts& opts) {
    opts_ = opts;
    outcome_ = SolveOutcome{};
    goal_vars_.clear();
    for (const auto& [x, s] : goal.vars) goal_vars_.insert(x);
    Substitution theta;
    FreshnessContext ctx;
    std::vector<ClauseGoal> goals = goal.goals;
    search(goals, theta, ctx, 0);
    return outcome_;
  }

  NameGen& gen() { return gen_; }

 private:
  // Combine current state with new equations/freshness goals; nullopt on
  // unification failure.
  std::optional<std::pair<Substitution, FreshnessContext>> advance(
      const Substitution& theta, const FreshnessContext& ctx,
      const std::vector<std::pair<Term, Term>>& eqs,
      const std::vector<FreshnessConstraint>& fresh) {
    UnifProblem p;
    for (const auto& [t, u] : eqs)
      p.equations.push_back({theta.apply(t), theta.apply(u)});
    for (const auto& [a, x] : ctx.items()) {
      Term xt = theta.has(x) ? theta.get(x)
                             : Term::var(x, Sort::data_sort("_"));
      p.freshness.push_back({a, std::move(xt)});
    }
    for (const auto& f : fresh)
      p.freshness.push_back({f.name, theta.apply(f.target)});
    UnifyResult r = unify_problem(std::move(p));
    if (!unify_ok(r)) return std::nullopt;
    Solution& sol = std::get<Solution>(r);
    Substitution total = compose(sol.subst, theta);
    return std::make_pair(std::move(total), std::move(sol.ctx));
  }

  static Substitution compose(const Substitution& outer,
                              const Substitution& inner) {
    Substitution total;
    for (const auto& [x, img] : inner.entries())
      total.bind(x, outer.apply(img));
    for (const auto& [x, img] : outer.entries())
      if (!total.has(x)) total.bind(x, img);
    return total;
  }

  // returns false to stop the whole search (answer quota reached)
  bool search(std::vector<ClauseGoal>& goals, const Substitution& theta,
              const FreshnessContext& ctx, std::size_t depth) {
    if (goals.empty()) return emit(theta, ctx);
    ClauseGoal g = goals.front();
    std::vector<ClauseGoal> rest(goals.begin() + 1, goals.end());

    switch (g.kind) {
      case ClauseGoal::Kind::Eq: {
        auto next = advance(theta, ctx, {{g.terms[0], g.terms[1]}}, {});
        if (!next) return true;
        return search(rest, next->first, next->second, depth);
      }
      case ClauseGoal::Kind::Fresh: {
        Term lhs = theta.apply(g.terms[0]);
        if (lhs.kind() != Term::Kind::NameRef)
          throw OpenTermError(
              "freshness goal with unresolved name position: " +
              print_term(lhs));
        auto next = advance(theta, ctx, {},
                            {{lhs.name_value(), g.terms[1]}});
        if (!next) return true;
        return search(rest, next->first, next->second, depth);
      }
      case ClauseGoal::Kind::Atom:
        return solve_atom(g, rest, theta, ctx, depth);
    }
    return true;
  }

  bool solve_atom(const ClauseGoal& g, const std::vector<ClauseGoal>& rest,
                  const Substitution& theta, const FreshnessContext& ctx,
                  std::size_t depth) {
    if (depth >= opts_.depth_limit) {
      outcome_.depth_exhausted = true;
      return true;
    }
    std::vector<Term> goal_terms;
    for (const auto& t : g.terms) goal_terms.push_back(theta.apply(t));

    for (const auto& clause : prog_.clauses) {
      if (clause.head_pred != g.pred) continue;
      HornClause fc = freshen_clause(clause, gen_, var_counter_, goal_terms);

      std::vector<Perm> variants = clause_variants(fc, goal_terms);
      for (const auto& rho : variants) {
        std::vector<std::pair<Term, Term>> eqs;
        for (std::size_t i = 0; i < fc.head_args.size(); ++i)
          eqs.push_back({perm_term(rho, fc.head_args[i]), goal_terms[i]});
        auto next = advance(theta, ctx, eqs, {});
        if (!next) continue;
        std::vector<ClauseGoal> goals;
        for (const auto& bg : fc.body) {
          ClauseGoal ng{bg.kind, bg.pred, {}};
          for (const auto& t : bg.terms)
            ng.terms.push_back(perm_term(rho, t));
          goals.push_back(std::move(ng));
        }
        goals.insert(goals.end(), rest.begin(), rest.end());
        if (!search(goals, next->first, next->second, depth + 1)) return false;
      }
    }
    return true;
  }

  // Permutations of the freshened clause's И-names to try.  Nominal mode:
  // identity only.  Equivariant mode: all injective maps of the И-names into
  // the goal's support (type-matched) plus their own fresh identities.
  std::vector<Perm> clause_variants(const HornClause& fc,
                                    const std::vector<Term>& goal_terms) {
    std::vector<Perm> out{Perm{}};
    if (!opts_.equivariant || fc.new_names.empty()) return out;

    std::set<Name> goal_support;
    for (const auto& t : goal_terms) {
      try {
        support_into(t, goal_support);
      } catch (const OpenTermError&) {
        names_occurring_into(t, goal_support);
      }
    }
    // candidate lists per И-name
    std::vector<std::vector<Name>> cands;
    for (const auto& n : fc.new_names) {
      std::vector<Name> c{n};  // identity choice
      for (const auto& s : goal_support)
        if (s.type == n.type) c.push_back(s);
      cands.push_back(std::move(c));
    }
    std::vector<Name> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == fc.new_names.size()) {
        bool identity = true;
        for (std::size_t k = 0; k < chosen.size(); ++k)
          identity = identity && chosen[k] == fc.new_names[k];
        if (!identity)
          out.push_back(renaming_perm(gen_, fc.new_names, chosen));
        return;
      }
      for (const auto& c : cands[i]) {
        bool dup = false;
        for (const auto& prev : chosen) dup = dup || prev == c;
        if (dup) continue;
        chosen.push_back(c);
        rec(i + 1);
        chosen.pop_back();
      }
    };
    rec(0);
    return out;
  }

  bool emit(const Substitution& theta, const FreshnessContext& ctx) {
    Substitution restricted = theta.restricted_to(goal_vars_);
    std::set<std::string> visible = goal_vars_;
    for (const auto& [x, img] : restricted.entries())
      for (const auto& v : free_vars(img)) visible.insert(v);
    Answer a{restricted, ctx.restricted_to(visible)};
    outcome_.answers.push_back(std::move(a));
    return outcome_.answers.size() < opts_.max_answers;
  }

  const Program& prog_;
  NameGen gen_;
  std::uint64_t var_counter_ = 0;
  SolveOpts opts_;
  SolveOutcome outcome_;
  std::set<std::string> goal_vars_;
};

inline SolveOutcome solve(const Program& p, const Goal& g,
                          const SolveOpts& opts = {}) {
  Solver s(p);
  return s.solve(g, opts);
}

// ---------------------------------------------------------------------------
// Bounded least-model enumeration (forward chaining)

struct ModelBound {
  std::size_t max_term_depth = 2;
  std::size_t name_universe_size = 2;
};

// Nesting depth of function applications; names and constants are depth 0,
// abstraction adds nothing.
inline std::size_t term_depth(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::NameRef:
    case Term::Kind::Const:
      return 0;
    case Term::Kind::Abs:
      return term_depth(t.body());
    case Term::Kind::App: {
      std::size_t m = 0;
      for (const auto& a : t.args()) m = std::max(m, term_depth(a));
      return 1 + m;
    }
    case Term::Kind::Susp:
      throw OpenTermError("depth of open term");
  }
  return 0;
}

struct GroundAtom {
  std::string pred;
  std::vector<Term> args;
};

inline std::string atom_key(const GroundAtom& a) {
  std::string k = a.pred;
  for (const auto& t : a.args) k += "|" + canonical_key(t);
  return k;
}

class LeastModel {
 public:
  LeastModel(ModelBound bound, std::map<std::string, std::vector<Name>> universe)
      : bound_(bound), universe_(std::move(universe)) {}

  bool contains(const GroundAtom& a) const { return keys_.count(atom_key(a)) > 0; }
  bool add(GroundAtom a) {
    std::string k = atom_key(a);
    if (keys_.count(k)) return false;
    keys_.insert(std::move(k));
    atoms_.push_back(std::move(a));
    return true;
  }
  const std::vector<GroundAtom>& atoms() const { return atoms_; }
  const ModelBound& bound() const { return bound_; }
  const std::map<std::string, std::vector<Name>>& universe() const {
    return universe_;
  }

  // Every transposition of two universe names of one type maps the atom set
  // onto itself.
  bool closed_under_permutations() const {
    for (const auto& [nu, names] : universe_) {
      for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
          for (const auto& a : atoms_) {
            GroundAtom swapped{a.pred, {}};
            for (const auto& t : a.args)
              swapped.args.push_back(swap_term({names[i], names[j]}, t));
            if (!contains(swapped)) return false;
          }
    }
    return true;
  }

 private:
  ModelBound bound_;
  std::map<std::string, std::vector<Name>> universe_;
  std::set<std::string> keys_;
  std::vector<GroundAtom> atoms_;
};

// Membership up to a permutation relocating names outside the model's
// universe onto unused universe names of the same type.  Exact for
// permutation-closed models; nullopt when the universe has too few spare
// names to relocate all outsiders.
inline std::optional<bool> model_contains_equivariant(const LeastModel& m,
                                                      const GroundAtom& a) {
  std::set<Name> supp;
  for (const auto& t : a.args) support_into(t, supp);
  std::vector<Swap> swaps;
  for (const auto& [nu, names] : m.universe()) {
    std::set<Name> in_universe(names.begin(), names.end());
    std::vector<Name> outside, spare;
    for (const auto& n : supp)
      if (n.type.ident == nu && !in_universe.count(n)) outside.push_back(n);
    for (const auto& n : names)
      if (!supp.count(n)) spare.push_back(n);
    if (outside.size() > spare.size()) return std::nullopt;
    for (std::size_t i = 0; i < outside.size(); ++i)
      swaps.push_back({outside[i], spare[i]});
  }
  GroundAtom moved{a.pred, a.args};
  Perm rho(std::move(swaps));
  for (auto& t : moved.args) t = perm_term(rho, t);
  return m.contains(moved);
}

// Ground terms of a sort, by application depth, over a fixed name universe.
class TermUniverse {
 public:
  TermUniverse(const Signature& sig,
               std::map<std::string, std::vector<Name>> names,
               std::size_t max_depth)
      : sig_(sig), names_(std::move(names)), max_depth_(max_depth) {}

  const std::vector<Term>& terms(const Sort& s, std::size_t depth) {
    std::string key = s.to_string() + "@" + std::to_string(depth);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Term> out = build(s, depth);
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  const std::vector<Term>& terms(const Sort& s) { return terms(s, max_depth_); }

  const std::vector<Name>& names(const std::string& nu) const {
    static const std::vector<Name> empty;
    auto it = names_.find(nu);
    return it == names_.end() ? empty : it->second;
  }

  std::size_t max_depth() const { return max_depth_; }

 private:
  std::vector<Term> build(const Sort& s, std::size_t depth) {
    std::vector<Term> out;
    switch (s.kind()) {
      case Sort::Kind::NameSort:
        for (const auto& n : names(s.ident())) out.push_back(Term::name(n));
        break;
      case Sort::Kind::Abstraction: {
        Sort body = s.body();
        for (const auto& n : names(s.ident()))
          for (const auto& t : terms(body, depth))
            out.push_back(Term::abs(n, t));
        break;
      }
      case Sort::Kind::DataSort: {
        for (const auto& [c, cs] : sig_.consts())
          if (cs == s) out.push_back(Term::constant(sig_, c));
        if (depth == 0) break;
        for (const auto& [f, d] : sig_.funcs()) {
          if (!(d.result == s)) continue;
          std::vector<Term> partial;
          build_apps(f, d, 0, partial, depth, out);
        }
        break;
      }
    }
    return out;
  }

  void build_apps(const std::string& f, const FuncDecl& d, std::size_t i,
                  std::vector<Term>& partial, std::size_t depth,
                  std::vector<Term>& out) {
    if (i == d.args.size()) {
      out.push_back(Term::app(sig_, f, partial));
      return;
    }
    for (const auto& t : terms(d.args[i], depth - 1)) {
      partial.push_back(t);
      build_apps(f, d, i + 1, partial, depth, out);
      partial.pop_back();
    }
  }

  const Signature& sig_;
  std::map<std::string, std::vector<Name>> names_;
  std::size_t max_depth_;
  std::map<std::string, std::vector<Term>> cache_;
};

// Name universe for a program: declared names first, padded with generated
// ones up to the requested size, per name type.
inline std::map<std::string, std::vector<Name>> make_name_universe(
    const Program& p, std::size_t size, NameGen& gen) {
  std::map<std::string, std::vector<Name>> u;
  for (const auto& [nu, nt] : p.sig.name_types()) u[nu] = {};
  for (const auto& [label, n] : p.global_names) {
    auto& v = u[n.type.ident];
    if (v.size() < size) v.push_back(n);
  }
  for (auto& [nu, v] : u)
    while (v.size() < size) v.push_back(gen.fresh(NameType{nu}));
  return u;
}

inline LeastModel least_model_enum(const Program& p, const ModelBound& bound) {
  NameGen gen(p.max_parsed_id + 1);
  auto universe_names = make_name_universe(p, bound.name_universe_size, gen);
  LeastModel model(bound, universe_names);
  TermUniverse universe(p.sig, universe_names, bound.max_term_depth);

  // Instantiate a clause's И-names with an injective tuple of universe names.
  auto instantiate = [&gen](const HornClause& c,
                            const std::vector<Name>& to) -> HornClause {
    HornClause fc = c;
    if (c.new_names.empty()) return fc;
    Perm rho = renaming_perm(gen, c.new_names, to);
    fc.new_names = to;
    fc.head_args.clear();
    for (const auto& t : c.head_args) fc.head_args.push_back(perm_term(rho, t));
    fc.body.clear();
    for (const auto& g : c.body) {
      ClauseGoal ng{g.kind, g.pred, {}};
      for (const auto& t : g.terms) ng.terms.push_back(perm_term(rho, t));
      fc.body.push_back(std::move(ng));
    }
    return fc;
  };

  auto within_bound = [&](const GroundAtom& a) {
    for (const auto& t : a.args)
      if (term_depth(t) > bound.max_term_depth) return false;
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : p.clauses) {
      // enumerate injective И-name instantiations
      std::vector<std::vector<Name>> tuples{{}};
      for (const auto& n : clause.new_names) {
        std::vector<std::vector<Name>> next;
        for (const auto& partial : tuples)
          for (const auto& cand : universe_names[n.type.ident]) {
            bool dup = false;
            for (const auto& prev : partial) dup = dup || prev == cand;
            if (!dup) {
              auto np = partial;
              np.push_back(cand);
              next.push_back(std::move(np));
            }
          }
        tuples = std::move(next);
      }
      for (const auto& tuple : tuples) {
        HornClause inst = instantiate(clause, tuple);
        // match body goals left to right against the model; freshness goals
        // whose sides are not yet ground are deferred to the grounding stage
        using PendingFresh = std::vector<std::pair<Term, Term>>;
        std::function<void(std::size_t, const Substitution&,
                           const PendingFresh&)>
            match = [&](std::size_t gi, const Substitution& theta,
                        const PendingFresh& pending) {
              if (gi == inst.body.size()) {
                // enumerate any still-free clause variables over the universe
                std::set<std::string> frees;
                for (const auto& t : inst.head_args)
                  for (const auto& v : free_vars(theta.apply(t)))
                    frees.insert(v);
                for (const auto& [l, r] : pending) {
                  for (const auto& v : free_vars(theta.apply(l)))
                    frees.insert(v);
                  for (const auto& v : free_vars(theta.apply(r)))
                    frees.insert(v);
                }
                std::vector<std::string> fl(frees.begin(), frees.end());
                std::function<void(std::size_t, const Substitution&)> ground =
                    [&](std::size_t vi, const Substitution& th) {
                      if (vi == fl.size()) {
                        for (const auto& [l, r] : pending) {
                          Term lg = th.apply(l);
                          if (lg.kind() != Term::Kind::NameRef) return;
                          if (!fresh_ground(lg.name_value(), th.apply(r)))
                            return;
                        }
                        GroundAtom head{inst.head_pred, {}};
                        for (const auto& t : inst.head_args)
                          head.args.push_back(th.apply(t));
                        if (within_bound(head) && model.add(head))
                          changed = true;
                        return;
                      }
                      auto it = inst.vars.find(fl[vi]);
                      if (it == inst.vars.end()) return;
                      for (const auto& cand : universe.terms(it->second)) {
                        Substitution th2 = th;
                        th2.bind(fl[vi], cand);
                        ground(vi + 1, th2);
                      }
                    };
                ground(0, theta);
                return;
              }
              const ClauseGoal& g = inst.body[gi];
              switch (g.kind) {
                case ClauseGoal::Kind::Fresh: {
                  Term lhs = theta.apply(g.terms[0]);
                  Term rhs = theta.apply(g.terms[1]);
                  auto pend = pending;
                  if (lhs.kind() == Term::Kind::NameRef && rhs.is_ground()) {
                    if (!fresh_ground(lhs.name_value(), rhs)) return;
                  } else {
                    pend.push_back({lhs, rhs});
                  }
                  match(gi + 1, theta, pend);
                  return;
                }
                case ClauseGoal::Kind::Eq: {
                  UnifProblem up;
                  up.equations.push_back(
                      {theta.apply(g.terms[0]), theta.apply(g.terms[1])});
                  UnifyResult r = unify_problem(std::move(up));
                  if (!unify_ok(r)) return;
                  Solution& sol = std::get<Solution>(r);
                  if (!sol.ctx.empty()) return;  // conservatively skip
                  Substitution th2 = theta;
                  for (const auto& [x, img] : sol.subst.entries())
                    th2.bind(x, img);
                  match(gi + 1, th2, pending);
                  return;
                }
                case ClauseGoal::Kind::Atom: {
                  // deeper matches may add atoms, growing the vector; work
                  // over a snapshot of the current prefix by value
                  std::size_t natoms = model.atoms().size();
                  for (std::size_t ai = 0; ai < natoms; ++ai) {
                    GroundAtom atom = model.atoms()[ai];
                    if (atom.pred != g.pred) continue;
                    UnifProblem up;
                    for (std::size_t i = 0; i < g.terms.size(); ++i)
                      up.equations.push_back(
                          {theta.apply(g.terms[i]), atom.args[i]});
                    UnifyResult r = unify_problem(std::move(up));
                    if (!unify_ok(r)) continue;
                    Solution& sol = std::get<Solution>(r);
                    if (!sol.ctx.empty()) continue;
                    Substitution th2 = theta;
                    for (const auto& [x, img] : sol.subst.entries())
                      th2.bind(x, img);
                    match(gi + 1, th2, pending);
                  }
                  return;
                }
              }
            };
        match(0, Substitution{}, {});
      }
    }
  }
  return model;
}

// ---------------------------------------------------------------------------
// Formulas and bounded evaluation

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind {
    Atom, Eq, Fresh, False, Impl, And, Or, Not, Iff, Forall, Exists, New
  };

  Kind kind;
  std::string pred;         // Atom
  std::vector<Term> terms;  // Atom args; Eq {t,u}; Fresh {name-term, t}
  std::vector<FormulaPtr> subs;
  std::string qvar;  // Forall/Exists
  Sort qsort = Sort::data_sort("_");
  Name qname;  // New

  static FormulaPtr atom(std::string p, std::vector<Term> ts) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Atom;
    f->pred = std::move(p);
    f->terms = std::move(ts);
    return f;
  }
  static FormulaPtr eq(Term t, Term u) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Eq;
    f->terms = {std::move(t), std::move(u)};
    return f;
  }
  static FormulaPtr fresh(Term a, Term t) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Fresh;
    f->terms = {std::move(a), std::move(t)};
    return f;
  }
  static FormulaPtr falsum() {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::False;
    return f;
  }
  static FormulaPtr connective(Kind k, FormulaPtr a, FormulaPtr b = nullptr) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->subs.push_back(std::move(a));
    if (b) f->subs.push_back(std::move(b));
    return f;
  }
  static FormulaPtr forall(std::string x, Sort s, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Forall;
    f->qvar = std::move(x);
    f->qsort = std::move(s);
    f->subs.push_back(std::move(body));
    return f;
  }
  static FormulaPtr exists(std::string x, Sort s, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Exists;
    f->qvar = std::move(x);
    f->qsort = std::move(s);
    f->subs.push_back(std::move(body));
    return f;
  }
  static FormulaPtr nu(Name a, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::New;
    f->qname = std::move(a);
    f->subs.push_back(std::move(body));
    return f;
  }
};

inline FormulaPtr formula_map_terms(const FormulaPtr& f,
                                    const std::function<Term(const Term&)>& tf,
                                    const std::function<Name(const Name&)>& nf) {
  auto g = std::make_shared<Formula>(*f);
  for (auto& t : g->terms) t = tf(t);
  g->qname = nf(g->qname);
  for (auto& s : g->subs) s = formula_map_terms(s, tf, nf);
  return g;
}

inline FormulaPtr formula_swap(const Swap& sw, const FormulaPtr& f) {
  return formula_map_terms(
      f, [&sw](const Term& t) { return swap_term(sw, t); },
      [&sw](const Name& n) {
        if (n == sw.first) return sw.second;
        if (n == sw.second) return sw.first;
        return n;
      });
}

inline FormulaPtr formula_subst_var(const std::string& x, const Term& v,
                                    const FormulaPtr& f) {
  Substitution s;
  s.bind(x, v);
  // shadowing: an inner quantifier over the same ident blocks the substitution
  if ((f->kind == Formula::Kind::Forall || f->kind == Formula::Kind::Exists) &&
      f->qvar == x)
    return f;
  auto g = std::make_shared<Formula>(*f);
  for (auto& t : g->terms) t = s.apply(t);
  for (auto& sub : g->subs) sub = formula_subst_var(x, v, sub);
  return g;
}

inline void formula_free_names(const FormulaPtr& f, std::set<Name>& out) {
  for (const auto& t : f->terms) {
    try {
      support_into(t, out);
    } catch (const OpenTermError&) {
      names_occurring_into(t, out);
    }
  }
  if (f->kind == Formula::Kind::New) {
    std::set<Name> inner;
    for (const auto& s : f->subs) formula_free_names(s, inner);
    inner.erase(f->qname);
    out.insert(inner.begin(), inner.end());
  } else {
    for (const auto& s : f->subs) formula_free_names(s, out);
  }
}

struct Verdict {
  enum Value { False = 0, True = 1, Unknown = 2 };
  Value v;
  std::string bound_reason;  // which bound caused an unknown

  static Verdict yes() { return {True, ""}; }
  static Verdict no() { return {False, ""}; }
  static Verdict unknown(std::string why) { return {Unknown, std::move(why)}; }
  bool is_true() const { return v == True; }
  bool is_false() const { return v == False; }
  bool is_unknown() const { return v == Unknown; }

  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.v == b.v;
  }
};

inline Verdict verdict_not(const Verdict& a) {
  if (a.is_unknown()) return a;
  return a.is_true() ? Verdict::no() : Verdict::yes();
}
inline Verdict verdict_and(const Verdict& a, const Verdict& b) {
  if (a.is_false() || b.is_false()) return Verdict::no();
  if (a.is_true() && b.is_true()) return Verdict::yes();
  return Verdict::unknown(a.is_unknown() ? a.bound_reason : b.bound_reason);
}
inline Verdict verdict_or(const Verdict& a, const Verdict& b) {
  if (a.is_true() || b.is_true()) return Verdict::yes();
  if (a.is_false() && b.is_false()) return Verdict::no();
  return Verdict::unknown(a.is_unknown() ? a.bound_reason : b.bound_reason);
}
inline Verdict verdict_impl(const Verdict& a, const Verdict& b) {
  return verdict_or(verdict_not(a), b);
}
inline Verdict verdict_iff(const Verdict& a, const Verdict& b) {
  return verdict_and(verdict_impl(a, b), verdict_impl(b, a));
}

// Three-valued evaluation of a closed formula over a bounded term model.
// Quantifiers over name sorts are decided exactly (the model is finitely
// supported, so names outside the test set behave alike); quantifiers over
// data sorts are bounded by the model's term depth and answer unknown when
// no counterexample/witness appears within the bound.
class FormulaEvaluator {
 public:
  FormulaEvaluator(const Program& prog, const LeastModel& model)
      : prog_(prog),
        model_(model),
        universe_(prog.sig, model.universe(), model.bound().max_term_depth),
        gen_(p_start_id(prog, model)) {}

  Verdict eval(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::False:
        return Verdict::no();
      case Formula::Kind::Atom: {
        GroundAtom a{f->pred, f->terms};
        for (const auto& t : a.args)
          if (!t.is_ground()) throw OpenTermError("open formula");
        auto r = model_contains_equivariant(model_, a);
        if (!r)
          return Verdict::unknown("name-universe bound " +
                                  std::to_string(model_.bound().name_universe_size));
        return *r ? Verdict::yes() : Verdict::no();
      }
      case Formula::Kind::Eq:
        return alpha_eq_ground(f->terms[0], f->terms[1]) ? Verdict::yes()
                                                         : Verdict::no();
      case Formula::Kind::Fresh: {
        if (f->terms[0].kind() != Term::Kind::NameRef)
          throw OpenTermError("open formula");
        return fresh_ground(f->terms[0].name_value(), f->terms[1])
                   ? Verdict::yes()
                   : Verdict::no();
      }
      case Formula::Kind::Not:
        return verdict_not(eval(f->subs[0]));
      case Formula::Kind::And:
        return verdict_and(eval(f->subs[0]), eval(f->subs[1]));
      case Formula::Kind::Or:
        return verdict_or(eval(f->subs[0]), eval(f->subs[1]));
      case Formula::Kind::Impl:
        return verdict_impl(eval(f->subs[0]), eval(f->subs[1]));
      case Formula::Kind::Iff:
        return verdict_iff(eval(f->subs[0]), eval(f->subs[1]));
      case Formula::Kind::Forall:
        return eval_quant(f, /*universal=*/true);
      case Formula::Kind::Exists:
        return eval_quant(f, /*universal=*/false);
      case Formula::Kind::New: {
        std::set<Name> fn;
        formula_free_names(f, fn);
        Name a = gen_.fresh(f->qname.type);
        while (fn.count(a)) a = gen_.fresh(f->qname.type);
        FormulaPtr inst = formula_swap({f->qname, a}, f->subs[0]);
        return eval(inst);
      }
    }
    return Verdict::unknown("internal");
  }

 private:
  static std::uint64_t p_start_id(const Program& prog, const LeastModel& m) {
    std::uint64_t top = prog.max_parsed_id;
    for (const auto& [nu, names] : m.universe())
      for (const auto& n : names) top = std::max(top, n.id);
    return top + 1;
  }

  Verdict eval_quant(const FormulaPtr& f, bool universal) {
    const Sort& s = f->qsort;
    std::vector<Term> domain;
    bool exact = false;
    if (s.is_name_sort()) {
      // free names of the body, the universe names, and one extra fresh name
      std::set<Name> test;
      formula_free_names(f, test);
      std::set<Name> filtered;
      for (const auto& n : test)
        if (n.type.ident == s.ident()) filtered.insert(n);
      for (const auto& n : universe_.names(s.ident())) filtered.insert(n);
      Name extra = gen_.fresh(NameType{s.ident()});
      filtered.insert(extra);
      for (const auto& n : filtered) domain.push_back(Term::name(n));
      exact = true;
    } else {
      domain = universe_.terms(s);
    }
    for (const auto& t : domain) {
      Verdict v = eval(formula_subst_var(f->qvar, t, f->subs[0]));
      if (universal && v.is_false()) return Verdict::no();
      if (!universal && v.is_true()) return Verdict::yes();
      if (v.is_unknown())
        return Verdict::unknown(v.bound_reason.empty() ? "term-depth bound"
                                                       : v.bound_reason);
    }
    if (exact) return universal ? Verdict::yes() : Verdict::no();
    return Verdict::unknown("term-depth bound " +
                            std::to_string(model_.bound().max_term_depth) +
                            " on sort " + s.to_string());
  }

  const Program& prog_;
  const LeastModel& model_;
  TermUniverse universe_;
  NameGen gen_;
};

inline Verdict eval_formula(const Program& prog, const LeastModel& m,
                            const FormulaPtr& f) {
  FormulaEvaluator ev(prog, m);
  return ev.eval(f);
}

}  // namespace nomlog
