#pragma once

// Nominal terms and the ground judgments: swapping, freshness, alpha-equality,
// support.  Terms are immutable shared trees; sort checking happens at
// construction, so every Term is well-sorted by construction.
//
// Explicit swap nodes from the surface syntax never appear here: swaps are
// pushed through constructors and suspended on variables, so ground terms are
// always swap-free.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nomlog/names.hpp"
#include "nomlog/sorts.hpp"

namespace nomlog {

struct OpenTermError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Term {
 public:
  enum class Kind { NameRef, Susp, Const, App, Abs };

  static Term name(Name n) {
    Sort s = Sort::name_sort(n.type.ident);
    return Term(std::make_shared<Node>(
        Node{Kind::NameRef, std::move(s), std::move(n), Perm{}, "", "", {}}));
  }

  static Term susp(Perm p, std::string var, Sort sort) {
    return Term(std::make_shared<Node>(Node{Kind::Susp, std::move(sort),
                                            Name{}, std::move(p),
                                            std::move(var), "", {}}));
  }

  static Term var(std::string v, Sort sort) {
    return susp(Perm{}, std::move(v), std::move(sort));
  }

  static Term constant(const Signature& sig, const std::string& c) {
    Sort s = sig.const_sort(c);
    return Term(std::make_shared<Node>(
        Node{Kind::Const, std::move(s), Name{}, Perm{}, "", c, {}}));
  }

  static Term app(const Signature& sig, const std::string& f,
                  std::vector<Term> args) {
    const FuncDecl& d = sig.func_decl(f);
    if (d.args.size() != args.size())
      throw SortError("'" + f + "' expects " + std::to_string(d.args.size()) +
                      " arguments, got " + std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].sort() != d.args[i])
        throw SortError("argument " + std::to_string(i + 1) + " of '" + f +
                        "' has sort " + args[i].sort().to_string() +
                        ", expected " + d.args[i].to_string());
    return Term(std::make_shared<Node>(
        Node{Kind::App, d.result, Name{}, Perm{}, "", f, std::move(args)}));
  }

  static Term abs(Name binder, Term body) {
    Sort s = Sort::abstraction(binder.type.ident, body.sort());
    std::vector<Term> args{std::move(body)};
    return Term(std::make_shared<Node>(Node{Kind::Abs, std::move(s),
                                            std::move(binder), Perm{}, "", "",
                                            std::move(args)}));
  }

  Kind kind() const { return p_->kind; }
  const Sort& sort() const { return p_->sort; }

  const Name& name_value() const { return p_->name; }       // NameRef
  const Name& binder() const { return p_->name; }           // Abs
  const Term& body() const { return p_->args[0]; }          // Abs
  const Perm& susp_perm() const { return p_->perm; }        // Susp
  const std::string& var_ident() const { return p_->var; }  // Susp
  const std::string& symbol() const { return p_->sym; }     // Const, App
  const std::vector<Term>& args() const { return p_->args; }  // App

  bool is_ground() const {
    switch (kind()) {
      case Kind::Susp:
        return false;
      case Kind::NameRef:
      case Kind::Const:
        return true;
      case Kind::App:
      case Kind::Abs:
        for (const auto& a : p_->args)
          if (!a.is_ground()) return false;
        return true;
    }
    return false;
  }

  // Syntactic equality: binder names, suspensions and all.
  friend bool operator==(const Term& t, const Term& u) {
    if (t.p_ == u.p_) return true;
    if (t.kind() != u.kind()) return false;
    switch (t.kind()) {
      case Kind::NameRef:
        return t.name_value() == u.name_value();
      case Kind::Susp:
        return t.var_ident() == u.var_ident() &&
               t.susp_perm() == u.susp_perm() && t.sort() == u.sort();
      case Kind::Const:
        return t.symbol() == u.symbol();
      case Kind::App: {
        if (t.symbol() != u.symbol() || t.args().size() != u.args().size())
          return false;
        for (std::size_t i = 0; i < t.args().size(); ++i)
          if (!(t.args()[i] == u.args()[i])) return false;
        return true;
      }
      case Kind::Abs:
        return t.binder() == u.binder() && t.body() == u.body();
    }
    return false;
  }
  friend bool operator!=(const Term& t, const Term& u) { return !(t == u); }

 private:
  struct Node {
    Kind kind;
    Sort sort;
    Name name;
    Perm perm;
    std::string var;
    std::string sym;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;

  friend Term rebuild_app(const Term& t, std::vector<Term> args);
  friend Term rebuild_abs(const Term& t, Name binder, Term body);
};

// Rebuild an App/Abs node without re-running signature checks; used by
// sort-preserving transformations (swapping, substitution).
inline Term rebuild_app(const Term& t, std::vector<Term> args) {
  return Term(std::make_shared<Term::Node>(Term::Node{
      Term::Kind::App, t.sort(), Name{}, Perm{}, "", t.symbol(),
      std::move(args)}));
}
inline Term rebuild_abs(const Term& t, Name binder, Term body) {
  return Term(std::make_shared<Term::Node>(Term::Node{
      Term::Kind::Abs, t.sort(), std::move(binder), Perm{}, "", "",
      std::vector<Term>{std::move(body)}}));
}

// (a b) . t, structurally.  Binder names are swapped, never renamed first.
// On suspensions the swap is prepended to the delayed permutation.
inline Term swap_term(const Swap& sw, const Term& t) {
  const auto& [a, b] = sw;
  if (a.type != b.type)
    throw SortError("cannot swap names of different types: " + a.label() +
                    ", " + b.label());
  if (a == b) return t;
  switch (t.kind()) {
    case Term::Kind::NameRef: {
      const Name& n = t.name_value();
      if (n == a) return Term::name(b);
      if (n == b) return Term::name(a);
      return t;
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::Susp:
      return Term::susp(Perm::compose(Perm::single(a, b), t.susp_perm()),
                        t.var_ident(), t.sort());
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& arg : t.args()) args.push_back(swap_term(sw, arg));
      return rebuild_app(t, std::move(args));
    }
    case Term::Kind::Abs: {
      Name binder = t.binder();
      if (binder == a)
        binder = b;
      else if (binder == b)
        binder = a;
      return rebuild_abs(t, std::move(binder), swap_term(sw, t.body()));
    }
  }
  throw std::logic_error("swap_term: bad kind");
}

// pi . t: fold the transposition sequence, rightmost swap first.
inline Term perm_term(const Perm& p, const Term& t) {
  if (t.kind() == Term::Kind::Susp)
    return Term::susp(Perm::compose(p, t.susp_perm()), t.var_ident(), t.sort());
  Term r = t;
  const auto& sw = p.swaps();
  for (auto it = sw.rbegin(); it != sw.rend(); ++it) r = swap_term(*it, r);
  return r;
}

// a # t for ground t, by the five freshness rules.
inline bool fresh_ground(const Name& a, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::NameRef:
      return !(a == t.name_value());
    case Term::Kind::Const:
      return true;
    case Term::Kind::App:
      for (const auto& arg : t.args())
        if (!fresh_ground(a, arg)) return false;
      return true;
    case Term::Kind::Abs:
      if (a == t.binder()) return true;
      return fresh_ground(a, t.body());
    case Term::Kind::Susp:
      throw OpenTermError("freshness on open term — use constraint-solver");
  }
  return false;
}

// t ~ u for ground terms of equal sort, by the equality rules.  The second
// abstraction rule checks a # u and t ~ (a b).u.
inline bool alpha_eq_ground(const Term& t, const Term& u) {
  if (t.kind() == Term::Kind::Susp || u.kind() == Term::Kind::Susp)
    throw OpenTermError("alpha-equality on open term — use constraint-solver");
  if (t.sort() != u.sort())
    throw SortError("alpha-equality requires equal sorts: " +
                    t.sort().to_string() + " vs " + u.sort().to_string());
  if (t.kind() != u.kind()) return false;
  switch (t.kind()) {
    case Term::Kind::NameRef:
      return t.name_value() == u.name_value();
    case Term::Kind::Const:
      return t.symbol() == u.symbol();
    case Term::Kind::App: {
      if (t.symbol() != u.symbol()) return false;
      for (std::size_t i = 0; i < t.args().size(); ++i)
        if (!alpha_eq_ground(t.args()[i], u.args()[i])) return false;
      return true;
    }
    case Term::Kind::Abs: {
      const Name& a = t.binder();
      const Name& b = u.binder();
      if (a == b) return alpha_eq_ground(t.body(), u.body());
      if (!fresh_ground(a, u.body())) return false;
      return alpha_eq_ground(t.body(), swap_term({a, b}, u.body()));
    }
    case Term::Kind::Susp:
      break;
  }
  return false;
}

// FN(t): the names not fresh for t.
inline void support_into(const Term& t, std::set<Name>& out) {
  switch (t.kind()) {
    case Term::Kind::NameRef:
      out.insert(t.name_value());
      return;
    case Term::Kind::Const:
      return;
    case Term::Kind::App:
      for (const auto& arg : t.args()) support_into(arg, out);
      return;
    case Term::Kind::Abs: {
      std::set<Name> inner;
      support_into(t.body(), inner);
      inner.erase(t.binder());
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Term::Kind::Susp:
      throw OpenTermError("support of open term is not defined");
  }
}

inline std::set<Name> support(const Term& t) {
  std::set<Name> s;
  support_into(t, s);
  return s;
}

// Free variable idents of a (possibly open) term.
inline void free_vars_into(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Susp:
      out.insert(t.var_ident());
      return;
    case Term::Kind::App:
    case Term::Kind::Abs:
      for (const auto& arg : t.args()) free_vars_into(arg, out);
      return;
    default:
      return;
  }
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> s;
  free_vars_into(t, s);
  return s;
}

// Names occurring anywhere in a possibly-open term: free names, binders, and
// names mentioned by suspended permutations.  Superset of the support.
inline void names_occurring_into(const Term& t, std::set<Name>& out) {
  switch (t.kind()) {
    case Term::Kind::NameRef:
      out.insert(t.name_value());
      return;
    case Term::Kind::Const:
      return;
    case Term::Kind::Susp:
      for (const auto& n : t.susp_perm().domain()) out.insert(n);
      return;
    case Term::Kind::App:
      for (const auto& arg : t.args()) names_occurring_into(arg, out);
      return;
    case Term::Kind::Abs:
      out.insert(t.binder());
      names_occurring_into(t.body(), out);
      return;
  }
}

inline std::set<Name> names_occurring(const Term& t) {
  std::set<Name> s;
  names_occurring_into(t, s);
  return s;
}

// A name of the given type fresh for everything in `avoid`.
inline Name fresh_name(NameGen& gen, const NameType& type,
                       const std::vector<Term>& avoid) {
  std::set<Name> taken;
  for (const auto& t : avoid) names_occurring_into(t, taken);
  Name n = gen.fresh(type);
  while (taken.count(n)) n = gen.fresh(type);
  return n;
}

// Re-derive a term's sort from the typing rules, validating App arities and
// argument sorts against the signature and Susp sorts against the context.
inline Sort well_sorted(const SortContext& ctx, const Signature& sig,
                        const Term& t) {
  switch (t.kind()) {
    case Term::Kind::NameRef: {
      const std::string& nu = t.name_value().type.ident;
      if (!sig.has_name_type(nu))
        throw SortError("name '" + t.name_value().label() +
                        "' has undeclared name type '" + nu + "'");
      return Sort::name_sort(nu);
    }
    case Term::Kind::Susp: {
      const Sort& declared = ctx.var_sort(t.var_ident());
      if (declared != t.sort())
        throw SortError("variable '" + t.var_ident() + "' has sort " +
                        declared.to_string() + " in context but " +
                        t.sort().to_string() + " in term");
      return declared;
    }
    case Term::Kind::Const:
      return sig.const_sort(t.symbol());
    case Term::Kind::App: {
      const FuncDecl& d = sig.func_decl(t.symbol());
      if (d.args.size() != t.args().size())
        throw SortError("'" + t.symbol() + "' arity mismatch");
      for (std::size_t i = 0; i < t.args().size(); ++i)
        if (well_sorted(ctx, sig, t.args()[i]) != d.args[i])
          throw SortError("argument sort mismatch in '" + t.symbol() + "'");
      return d.result;
    }
    case Term::Kind::Abs:
      return Sort::abstraction(t.binder().type.ident,
                               well_sorted(ctx, sig, t.body()));
  }
  throw std::logic_error("well_sorted: bad kind");
}

// Canonical string key for a ground term, invariant under alpha-equality:
// binders print as back-references to their abstraction depth.
inline void canonical_key_into(const Term& t, std::vector<Name>& binders,
                               std::string& out) {
  switch (t.kind()) {
    case Term::Kind::NameRef: {
      const Name& n = t.name_value();
      for (std::size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == n) {
          out += "^" + std::to_string(binders.size() - i);
          return;
        }
      }
      out += "n(" + n.type.ident + "," + std::to_string(n.id) + ")";
      return;
    }
    case Term::Kind::Const:
      out += t.symbol();
      return;
    case Term::Kind::App: {
      out += t.symbol();
      out += "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ",";
        canonical_key_into(t.args()[i], binders, out);
      }
      out += ")";
      return;
    }
    case Term::Kind::Abs:
      out += "<>";
      binders.push_back(t.binder());
      canonical_key_into(t.body(), binders, out);
      binders.pop_back();
      return;
    case Term::Kind::Susp:
      throw OpenTermError("canonical key of open term");
  }
}

inline std::string canonical_key(const Term& t) {
  std::vector<Name> binders;
  std::string out;
  canonical_key_into(t, binders, out);
  return out;
}

}  // namespace nomlog
