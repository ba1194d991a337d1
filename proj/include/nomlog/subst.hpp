#pragma once

// Freshness contexts, substitutions, and freshness-constraint reduction over
// open terms.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nomlog/term.hpp"

namespace nomlog {

struct FreshnessConstraint {
  Name name;
  Term target;
};

// Finite set of solved constraints "a # X".
class FreshnessContext {
 public:
  void add(Name a, const std::string& var) { items_.insert({std::move(a), var}); }
  bool contains(const Name& a, const std::string& var) const {
    return items_.count({a, var}) > 0;
  }
  void merge(const FreshnessContext& other) {
    items_.insert(other.items_.begin(), other.items_.end());
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::set<std::pair<Name, std::string>>& items() const { return items_; }

  // Keep only constraints on the given variables.
  FreshnessContext restricted_to(const std::set<std::string>& vars) const {
    FreshnessContext out;
    for (const auto& [a, x] : items_)
      if (vars.count(x)) out.add(a, x);
    return out;
  }

 private:
  std::set<std::pair<Name, std::string>> items_;
};

// Idempotent variable-to-term map.
class Substitution {
 public:
  bool has(const std::string& x) const { return map_.count(x) > 0; }
  const Term& get(const std::string& x) const { return map_.at(x); }
  bool empty() const { return map_.empty(); }
  const std::map<std::string, Term>& entries() const { return map_; }

  Term apply(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::Susp: {
        auto it = map_.find(t.var_ident());
        if (it == map_.end()) return t;
        return perm_term(t.susp_perm(), it->second);
      }
      case Term::Kind::App: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(apply(a));
        return rebuild_app(t, std::move(args));
      }
      case Term::Kind::Abs:
        return rebuild_abs(t, t.binder(), apply(t.body()));
      default:
        return t;
    }
  }

  // Extend with x := v; v must not mention x.  Existing images are rewritten
  // so the map stays idempotent.
  void bind(const std::string& x, const Term& v) {
    Substitution one;
    one.map_.insert({x, v});
    for (auto& [y, img] : map_) img = one.apply(img);
    map_.insert({x, v});
  }

  Substitution restricted_to(const std::set<std::string>& vars) const {
    Substitution out;
    for (const auto& [x, img] : map_)
      if (vars.count(x)) out.map_.insert({x, img});
    return out;
  }

 private:
  std::map<std::string, Term> map_;
};

inline Term apply_subst(const Substitution& s, const Term& t) {
  return s.apply(t);
}

// Reduce a # t to atomic constraints.  Returns the least set of atoms that,
// together with `known`, entails a # t; nullopt if a # t is refutable.
inline std::optional<FreshnessContext> fresh_open(const FreshnessContext& known,
                                                  const Name& a,
                                                  const Term& t) {
  FreshnessContext residual;
  std::vector<std::pair<Name, Term>> work{{a, t}};
  while (!work.empty()) {
    auto [n, u] = work.back();
    work.pop_back();
    switch (u.kind()) {
      case Term::Kind::NameRef:
        if (n == u.name_value()) return std::nullopt;
        break;
      case Term::Kind::Const:
        break;
      case Term::Kind::App:
        for (const auto& arg : u.args()) work.push_back({n, arg});
        break;
      case Term::Kind::Abs:
        if (!(n == u.binder())) work.push_back({n, u.body()});
        break;
      case Term::Kind::Susp: {
        Name moved = u.susp_perm().inverse().apply(n);
        if (!known.contains(moved, u.var_ident()))
          residual.add(moved, u.var_ident());
        break;
      }
    }
  }
  return residual;
}

// Apply a substitution to a batch of freshness goals and reduce them all.
inline std::optional<FreshnessContext> solve_freshness(
    const std::vector<FreshnessConstraint>& goals, const Substitution& theta) {
  FreshnessContext out;
  for (const auto& g : goals) {
    auto r = fresh_open(out, g.name, theta.apply(g.target));
    if (!r) return std::nullopt;
    out.merge(*r);
  }
  return out;
}

}  // namespace nomlog
