#pragma once

// Term printing, raw and sugared.  Raw form round-trips through the parser;
// the sugared form folds in list, pair, and lambda notation.

#include <string>

#include "nomlog/term.hpp"

namespace nomlog {

inline std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::NameRef:
      return t.name_value().label();
    case Term::Kind::Const:
      return t.symbol();
    case Term::Kind::Susp: {
      std::string out;
      for (const auto& [a, b] : t.susp_perm().swaps())
        out += "(" + a.label() + " " + b.label() + ").";
      return out + t.var_ident();
    }
    case Term::Kind::App: {
      std::string out = t.symbol() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        out += print_term(t.args()[i]);
      }
      return out + ")";
    }
    case Term::Kind::Abs:
      return "<" + t.binder().label() + "> " + print_term(t.body());
  }
  return "?";
}

namespace detail {

inline bool is_lambda_var(const Term& t) {
  return t.kind() == Term::Kind::App && t.symbol() == "var" &&
         t.args().size() == 1 &&
         t.args()[0].kind() == Term::Kind::NameRef;
}
inline bool is_lambda_lam(const Term& t) {
  return t.kind() == Term::Kind::App && t.symbol() == "lam" &&
         t.args().size() == 1 && t.args()[0].kind() == Term::Kind::Abs;
}
inline bool is_lambda_app(const Term& t) {
  return t.kind() == Term::Kind::App && t.symbol() == "app" &&
         t.args().size() == 2;
}

inline std::string print_sugar_inner(const Term& t, bool atom_position);

inline std::string parenthesize(const std::string& s, bool needed) {
  return needed ? "(" + s + ")" : s;
}

inline std::string print_sugar_inner(const Term& t, bool atom_position) {
  if (is_lambda_var(t)) return t.args()[0].name_value().label();
  if (is_lambda_lam(t)) {
    const Term& a = t.args()[0];
    std::string s =
        "\\" + a.binder().label() + ". " + print_sugar_inner(a.body(), false);
    return parenthesize(s, atom_position);
  }
  if (is_lambda_app(t)) {
    std::string s = print_sugar_inner(t.args()[0], true) + " " +
                    print_sugar_inner(t.args()[1], true);
    return parenthesize(s, atom_position);
  }
  if (t.kind() == Term::Kind::Const && t.symbol() == "nil") return "[]";
  if (t.kind() == Term::Kind::App && t.symbol() == "cons" &&
      t.args().size() == 2) {
    std::string out = "[" + print_sugar_inner(t.args()[0], false);
    Term rest = t.args()[1];
    while (rest.kind() == Term::Kind::App && rest.symbol() == "cons" &&
           rest.args().size() == 2) {
      out += ", " + print_sugar_inner(rest.args()[0], false);
      rest = rest.args()[1];
    }
    if (rest.kind() == Term::Kind::Const && rest.symbol() == "nil")
      return out + "]";
    return out + " | " + print_sugar_inner(rest, false) + "]";
  }
  if (t.kind() == Term::Kind::App && t.symbol() == "pr" &&
      t.args().size() == 2)
    return "(" + print_sugar_inner(t.args()[0], false) + ", " +
           print_sugar_inner(t.args()[1], false) + ")";
  switch (t.kind()) {
    case Term::Kind::App: {
      std::string out = t.symbol() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        out += print_sugar_inner(t.args()[i], false);
      }
      return out + ")";
    }
    case Term::Kind::Abs:
      return "<" + t.binder().label() + "> " +
             print_sugar_inner(t.body(), true);
    default:
      return print_term(t);
  }
}

}  // namespace detail

inline std::string print_term_sugar(const Term& t) {
  return detail::print_sugar_inner(t, false);
}

}  // namespace nomlog
