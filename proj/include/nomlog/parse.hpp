#pragma once

// Concrete syntax: a tokenizer, raw syntax trees, sort inference, and the
// elaborator turning source text into terms, goals, programs, and formulas.
//
// Identifier conventions: lowercase idents are names, constants, or symbols;
// capitalized idents are variables.  In clause bodies and heads, undeclared
// lowercase name idents are clause-local (freshened per resolution step);
// in goals they are auto-declared as globals.

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nomlog/lambda.hpp"
#include "nomlog/logic.hpp"

namespace nomlog {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " +
                           std::to_string(c) + ")"),
        line(l),
        col(c) {}
};

// ---------------------------------------------------------------------------
// Tokens

struct Token {
  enum class Kind { Lower, Upper, Sym, End };
  Kind kind;
  std::string text;
  int line = 1, col = 1;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto step = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'' || c == '$';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      step(c);
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    int tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string text = src.substr(i, j - i);
      bool upper = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      out.push_back({upper ? Token::Kind::Upper : Token::Kind::Lower,
                     std::move(text), tl, tc});
      while (i < j) {
        step(src[i]);
        ++i;
      }
      continue;
    }
    auto sym = [&](const std::string& s) {
      out.push_back({Token::Kind::Sym, s, tl, tc});
      for (char ch : s) {
        step(ch);
        ++i;
      }
    };
    switch (c) {
      case ':':
        if (i + 1 < src.size() && src[i + 1] == '-') sym(":-");
        else sym(":");
        break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') sym("->");
        else throw ParseError("unexpected character '-'", line, col);
        break;
      case '<':
        if (i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>')
          sym("<->");
        else sym("<");
        break;
      case '(': case ')': case '>': case '[': case ']': case ',': case '.':
      case '|': case '\\': case '#': case '=': case '&': case '~': case '?':
        sym(std::string(1, c));
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Raw syntax

struct RawTerm {
  enum class K { Ident, Var, Call, Abs, SwapPre, Lam, List, Pair, Juxt };
  K k{};
  std::string ident;   // Ident/Var text; Call symbol; Abs/Lam binder; SwapPre lhs
  std::string ident2;  // SwapPre rhs
  std::vector<RawTerm> subs;
  bool list_tail = false;  // List: last sub is the tail after '|'
  int line = 1, col = 1;
};

struct RawGoal {
  ClauseGoal::Kind kind;
  std::string pred;
  std::vector<RawTerm> terms;
  int line = 1, col = 1;
};

struct RawClause {
  std::string head_pred;
  std::vector<RawTerm> head_args;
  std::vector<RawGoal> body;
  int line = 1, col = 1;
};

struct RawFormula {
  enum class K {
    Atom, Eq, Fresh, True, False, Not, And, Or, Impl, Iff, Forall, Exists, New
  };
  K k{};
  std::string pred;   // Atom
  std::string qident; // Forall/Exists variable; New name
  std::string qsort;  // sort ident for quantifiers (New: name type)
  bool qsort_is_abs = false;      // unused; quantifier sorts are base sorts
  std::vector<RawTerm> terms;
  std::vector<std::shared_ptr<RawFormula>> subs;
  int line = 1, col = 1;
};
using RawFormulaPtr = std::shared_ptr<RawFormula>;

// ---------------------------------------------------------------------------
// Raw parser

class RawParser {
 public:
  explicit RawParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool at_lower(std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Lower;
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect_sym(const std::string& s) {
    if (!at_sym(s))
      throw ParseError("expected '" + s + "', found '" + peek().text + "'",
                       peek().line, peek().col);
    next();
  }
  std::string expect_lower(const std::string& what) {
    if (!at_lower())
      throw ParseError("expected " + what + ", found '" + peek().text + "'",
                       peek().line, peek().col);
    return next().text;
  }
  std::size_t save() const { return pos_; }
  void restore(std::size_t p) { pos_ = p; }

  RawTerm parse_term() {
    const Token& t = peek();
    if (at_sym("\\")) {
      next();
      RawTerm r;
      r.k = RawTerm::K::Lam;
      r.line = t.line;
      r.col = t.col;
      r.ident = expect_lower("a binder name");
      expect_sym(".");
      r.subs.push_back(parse_term());
      return r;
    }
    if (at_sym("<")) {
      next();
      RawTerm r;
      r.k = RawTerm::K::Abs;
      r.line = t.line;
      r.col = t.col;
      r.ident = expect_lower("a binder name");
      expect_sym(">");
      r.subs.push_back(parse_term());
      return r;
    }
    // swap prefix "(a b). t"
    if (at_sym("(") && at_lower(1) && at_lower(2) && at_sym(")", 3) &&
        at_sym(".", 4)) {
      next();
      RawTerm r;
      r.k = RawTerm::K::SwapPre;
      r.line = t.line;
      r.col = t.col;
      r.ident = next().text;
      r.ident2 = next().text;
      next();  // ')'
      next();  // '.'
      r.subs.push_back(parse_term());
      return r;
    }
    RawTerm first = parse_primary();
    if (!starts_primary()) return first;
    RawTerm r;
    r.k = RawTerm::K::Juxt;
    r.line = first.line;
    r.col = first.col;
    r.subs.push_back(std::move(first));
    while (starts_primary()) r.subs.push_back(parse_primary());
    return r;
  }

  RawGoal parse_goal_unit(const Signature& sig) {
    RawGoal g;
    g.line = peek().line;
    g.col = peek().col;
    if (at_lower() && sig.has_pred(peek().text)) {
      g.kind = ClauseGoal::Kind::Atom;
      g.pred = next().text;
      if (at_sym("(")) {
        next();
        if (!at_sym(")")) {
          g.terms.push_back(parse_term());
          while (at_sym(",")) {
            next();
            g.terms.push_back(parse_term());
          }
        }
        expect_sym(")");
      }
      return g;
    }
    RawTerm lhs = parse_term();
    if (at_sym("=")) {
      next();
      g.kind = ClauseGoal::Kind::Eq;
    } else if (at_sym("#")) {
      next();
      g.kind = ClauseGoal::Kind::Fresh;
    } else {
      throw ParseError("expected a predicate, '=', or '#'", peek().line,
                       peek().col);
    }
    g.terms.push_back(std::move(lhs));
    g.terms.push_back(parse_term());
    return g;
  }

  std::vector<RawGoal> parse_goal_list(const Signature& sig) {
    std::vector<RawGoal> out;
    out.push_back(parse_goal_unit(sig));
    while (at_sym(",")) {
      next();
      out.push_back(parse_goal_unit(sig));
    }
    return out;
  }

  RawClause parse_clause(const Signature& sig) {
    RawClause c;
    c.line = peek().line;
    c.col = peek().col;
    c.head_pred = expect_lower("a predicate name");
    if (!sig.has_pred(c.head_pred))
      throw ParseError("unknown predicate '" + c.head_pred + "'", c.line,
                       c.col);
    if (at_sym("(")) {
      next();
      if (!at_sym(")")) {
        c.head_args.push_back(parse_term());
        while (at_sym(",")) {
          next();
          c.head_args.push_back(parse_term());
        }
      }
      expect_sym(")");
    }
    if (at_sym(":-")) {
      next();
      c.body = parse_goal_list(sig);
    }
    expect_sym(".");
    return c;
  }

  // formula grammar: iff < impl (right) < or < and < not/quantifiers < primary
  RawFormulaPtr parse_formula(const Signature& sig) {
    RawFormulaPtr l = parse_impl(sig);
    while (at_sym("<->")) {
      auto t = next();
      auto r = parse_impl(sig);
      l = mkf(RawFormula::K::Iff, t, {l, r});
    }
    return l;
  }

 private:
  static RawFormulaPtr mkf(RawFormula::K k, const Token& t,
                           std::vector<RawFormulaPtr> subs) {
    auto f = std::make_shared<RawFormula>();
    f->k = k;
    f->line = t.line;
    f->col = t.col;
    f->subs = std::move(subs);
    return f;
  }

  RawFormulaPtr parse_impl(const Signature& sig) {
    RawFormulaPtr l = parse_or(sig);
    if (at_sym("->")) {
      auto t = next();
      auto r = parse_impl(sig);
      return mkf(RawFormula::K::Impl, t, {l, r});
    }
    return l;
  }
  RawFormulaPtr parse_or(const Signature& sig) {
    RawFormulaPtr l = parse_and(sig);
    while (at_sym("|")) {
      auto t = next();
      l = mkf(RawFormula::K::Or, t, {l, parse_and(sig)});
    }
    return l;
  }
  RawFormulaPtr parse_and(const Signature& sig) {
    RawFormulaPtr l = parse_funit(sig);
    while (at_sym("&")) {
      auto t = next();
      l = mkf(RawFormula::K::And, t, {l, parse_funit(sig)});
    }
    return l;
  }

  RawFormulaPtr parse_funit(const Signature& sig) {
    const Token& t = peek();
    if (at_sym("~")) {
      next();
      return mkf(RawFormula::K::Not, t, {parse_funit(sig)});
    }
    if (at_lower() && (t.text == "forall" || t.text == "exists")) {
      bool uni = t.text == "forall";
      next();
      auto f = mkf(uni ? RawFormula::K::Forall : RawFormula::K::Exists, t, {});
      if (peek().kind != Token::Kind::Upper)
        throw ParseError("expected a variable after '" + t.text + "'",
                         peek().line, peek().col);
      f->qident = next().text;
      expect_sym(":");
      f->qsort = expect_lower("a sort");
      expect_sym(".");
      f->subs.push_back(parse_formula(sig));  // scope extends maximally
      return f;
    }
    if (at_lower() && t.text == "new") {
      next();
      auto f = mkf(RawFormula::K::New, t, {});
      f->qident = expect_lower("a name");
      expect_sym(":");
      f->qsort = expect_lower("a name type");
      expect_sym(".");
      f->subs.push_back(parse_formula(sig));
      return f;
    }
    if (at_lower() && t.text == "true" && !at_sym("(", 1)) {
      next();
      return mkf(RawFormula::K::True, t, {});
    }
    if (at_lower() && t.text == "false" && !at_sym("(", 1)) {
      next();
      return mkf(RawFormula::K::False, t, {});
    }
    // predicate atom
    if (at_lower() && sig.has_pred(t.text)) {
      auto f = mkf(RawFormula::K::Atom, t, {});
      f->pred = next().text;
      f->terms = parse_paren_args();
      return f;
    }
    // parenthesized formula, unless it reads as a term comparison
    if (at_sym("(")) {
      std::size_t mark = save();
      try {
        next();
        auto f = parse_formula(sig);
        expect_sym(")");
        return f;
      } catch (const ParseError&) {
        restore(mark);
      }
    }
    // term comparison t = u or a # t
    auto f = mkf(RawFormula::K::Eq, t, {});
    f->terms.push_back(parse_term());
    if (at_sym("=")) {
      next();
    } else if (at_sym("#")) {
      next();
      f->k = RawFormula::K::Fresh;
    } else {
      throw ParseError("expected '=' or '#' in formula", peek().line,
                       peek().col);
    }
    f->terms.push_back(parse_term());
    return f;
  }

  std::vector<RawTerm> parse_paren_args() {
    std::vector<RawTerm> args;
    if (!at_sym("(")) return args;
    next();
    if (!at_sym(")")) {
      args.push_back(parse_term());
      while (at_sym(",")) {
        next();
        args.push_back(parse_term());
      }
    }
    expect_sym(")");
    return args;
  }

  bool starts_primary() const {
    if (peek().kind == Token::Kind::Lower || peek().kind == Token::Kind::Upper)
      return true;
    if (at_sym("[")) return true;
    if (at_sym("(") &&
        !(at_lower(1) && at_lower(2) && at_sym(")", 3) && at_sym(".", 4)))
      return true;
    return false;
  }

  RawTerm parse_primary() {
    const Token& t = peek();
    RawTerm r;
    r.line = t.line;
    r.col = t.col;
    if (t.kind == Token::Kind::Upper) {
      r.k = RawTerm::K::Var;
      r.ident = next().text;
      return r;
    }
    if (t.kind == Token::Kind::Lower) {
      r.ident = next().text;
      if (at_sym("(")) {
        r.k = RawTerm::K::Call;
        r.subs = parse_paren_args();
      } else {
        r.k = RawTerm::K::Ident;
      }
      return r;
    }
    if (at_sym("[")) {
      next();
      r.k = RawTerm::K::List;
      if (at_sym("]")) {
        next();
        return r;
      }
      r.subs.push_back(parse_term());
      while (at_sym(",")) {
        next();
        r.subs.push_back(parse_term());
      }
      if (at_sym("|")) {
        next();
        r.subs.push_back(parse_term());
        r.list_tail = true;
      }
      expect_sym("]");
      return r;
    }
    if (at_sym("(")) {
      next();
      RawTerm inner = parse_term();
      if (at_sym(",")) {
        next();
        r.k = RawTerm::K::Pair;
        r.subs.push_back(std::move(inner));
        r.subs.push_back(parse_term());
        expect_sym(")");
        return r;
      }
      expect_sym(")");
      return inner;
    }
    throw ParseError("expected a term, found '" + t.text + "'", t.line, t.col);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Sort inference (union-find over sort skeletons with unknowns)

namespace sx {

struct Node;
using P = std::shared_ptr<Node>;

struct Node {
  enum class K { U, N, D, A };
  K k;
  std::string id;  // N/D sort ident; A binder name-type
  P body;          // A only
  P link;          // union-find forwarding
};

inline P mk(Node::K k, std::string id = "", P body = nullptr) {
  return std::make_shared<Node>(Node{k, std::move(id), std::move(body), nullptr});
}
inline P unknown() { return mk(Node::K::U); }

inline P find(P p) {
  while (p->link) p = p->link;
  return p;
}

inline std::string str(const P& p0) {
  P p = find(p0);
  switch (p->k) {
    case Node::K::U: return "?";
    case Node::K::N:
    case Node::K::D: return p->id;
    case Node::K::A: return "<" + p->id + ">" + str(p->body);
  }
  return "?";
}

inline void unify(P x, P y, int line, int col) {
  x = find(x);
  y = find(y);
  if (x == y) return;
  if (x->k == Node::K::U) {
    x->link = y;
    return;
  }
  if (y->k == Node::K::U) {
    y->link = x;
    return;
  }
  if (x->k != y->k || x->id != y->id)
    throw ParseError("sort mismatch: " + str(x) + " vs " + str(y), line, col);
  if (x->k == Node::K::A) unify(x->body, y->body, line, col);
}

inline P of_sort(const Sort& s) {
  switch (s.kind()) {
    case Sort::Kind::NameSort: return mk(Node::K::N, s.ident());
    case Sort::Kind::DataSort: return mk(Node::K::D, s.ident());
    case Sort::Kind::Abstraction:
      return mk(Node::K::A, s.ident(), of_sort(s.body()));
  }
  return unknown();
}

inline Sort to_sort(const P& p0, const Sort& fallback) {
  P p = find(p0);
  switch (p->k) {
    case Node::K::U: return fallback;
    case Node::K::N: return Sort::name_sort(p->id);
    case Node::K::D: return Sort::data_sort(p->id);
    case Node::K::A:
      return Sort::abstraction(p->id, to_sort(p->body, fallback));
  }
  return fallback;
}

}  // namespace sx

// ---------------------------------------------------------------------------
// Elaboration

// Holds the signature, global names, and fresh-id state; parses program
// files, goal text, single terms, and formulas against that state.  One
// Workspace per loaded program (or per ad-hoc session).
class Workspace {
 public:
  Workspace() = default;

  // Ad-hoc sessions start from the lambda-calculus signature and invent
  // declarations for unknown symbols on first use.
  static Workspace adhoc() {
    Workspace w;
    w.prog_.sig = lambda_signature();
    w.adhoc_ = true;
    return w;
  }

  const Program& program() const { return prog_; }
  Program& program() { return prog_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void clear_warnings() { warnings_.clear(); }

  void load_program(const std::string& src) {
    RawParser p(lex(src));
    while (!p.at_end()) parse_statement(p);
  }

  Term parse_term(const std::string& src) {
    RawParser p(lex(src));
    RawTerm raw = p.parse_term();
    if (!p.at_end())
      throw ParseError("trailing input after term", p.peek().line,
                       p.peek().col);
    ElabCtx cx;
    sx::P top = sx::unknown();
    infer(raw, top, cx);
    finish_inference(cx);
    return build(raw, sx::to_sort(top, fallback_sort()), cx);
  }

  // Two terms destined for comparison or unification share one inference
  // session, so a variable on one side picks up its sort from the other.
  std::pair<Term, Term> parse_term_pair(const std::string& s1,
                                        const std::string& s2,
                                        bool same_sort = true) {
    RawParser p1(lex(s1));
    RawTerm r1 = p1.parse_term();
    if (!p1.at_end())
      throw ParseError("trailing input after term", p1.peek().line,
                       p1.peek().col);
    RawParser p2(lex(s2));
    RawTerm r2 = p2.parse_term();
    if (!p2.at_end())
      throw ParseError("trailing input after term", p2.peek().line,
                       p2.peek().col);
    ElabCtx cx;
    sx::P top1 = sx::unknown();
    sx::P top2 = same_sort ? top1 : sx::unknown();
    infer(r1, top1, cx);
    infer(r2, top2, cx);
    finish_inference(cx);
    return {build(r1, sx::to_sort(top1, fallback_sort()), cx),
            build(r2, sx::to_sort(top2, fallback_sort()), cx)};
  }

  Goal parse_goal(const std::string& src) {
    RawParser p(lex(src));
    std::vector<RawGoal> raw = p.parse_goal_list(prog_.sig);
    if (p.at_sym(".")) p.next();
    if (!p.at_end())
      throw ParseError("trailing input after goal", p.peek().line,
                       p.peek().col);
    ElabCtx cx;
    for (const auto& g : raw) infer_goal(g, cx);
    finish_inference(cx);
    Goal out;
    for (const auto& g : raw) out.goals.push_back(build_goal(g, cx));
    out.vars = cx.var_sort_out;
    return out;
  }

  FormulaPtr parse_formula(const std::string& src) {
    RawParser p(lex(src));
    RawFormulaPtr raw = p.parse_formula(prog_.sig);
    if (!p.at_end())
      throw ParseError("trailing input after formula", p.peek().line,
                       p.peek().col);
    ElabCtx cx;
    infer_formula(raw, cx);
    finish_inference(cx);
    return build_formula(raw, cx);
  }

 private:
  struct ElabCtx {
    std::map<std::string, sx::P> var_sorts;
    std::map<std::string, Sort> var_sort_out;  // filled by finish_inference
    bool clause_mode = false;
    std::map<std::string, Name> locals;  // clause И-names / formula new-names
    std::vector<std::string> local_order;
  };

  Sort fallback_sort() const {
    if (prog_.sig.has_data_type("exp")) return Sort::data_sort("exp");
    if (!prog_.sig.data_types().empty())
      return Sort::data_sort(*prog_.sig.data_types().begin());
    return Sort::data_sort("exp");  // unused unless something is unresolved
  }

  Name make_name(const std::string& label, const NameType& ty) {
    Name n{ty, next_name_id_++, label};
    if (prog_.max_parsed_id < n.id) prog_.max_parsed_id = n.id;
    return n;
  }

  // Name constants in program clauses are clause-local, never global, so in
  // clause mode a declared global with the same label is deliberately
  // shadowed by a fresh clause name.
  std::optional<Name> lookup_name(const std::string& label,
                                  const ElabCtx& cx) const {
    auto it = cx.locals.find(label);
    if (it != cx.locals.end()) return it->second;
    if (cx.clause_mode) return std::nullopt;
    auto ig = prog_.global_names.find(label);
    if (ig != prog_.global_names.end()) return ig->second;
    return std::nullopt;
  }

  Name intro_name(const std::string& label, const NameType& ty, ElabCtx& cx) {
    Name n = make_name(label, ty);
    if (cx.clause_mode) {
      cx.locals.insert({label, n});
      cx.local_order.push_back(label);
    } else {
      prog_.global_names.insert({label, n});
      warnings_.push_back("name '" + label + "' auto-declared with type '" +
                          ty.ident + "'");
    }
    return n;
  }

  // The single name type to assume when nothing constrains a new name.
  std::optional<NameType> default_name_type() const {
    if (prog_.sig.name_types().size() == 1)
      return prog_.sig.name_types().begin()->second;
    if (prog_.sig.has_name_type("var")) return NameType{"var"};
    return std::nullopt;
  }

  // Unary function from a name sort into the given data sort, if any
  // (prefers "var", matching the lambda signature's reading of bare names).
  std::optional<std::string> coercion_into(const std::string& delta) const {
    std::optional<std::string> found;
    for (const auto& [f, d] : prog_.sig.funcs()) {
      if (d.args.size() != 1 || !d.args[0].is_name_sort()) continue;
      if (!(d.result == Sort::data_sort(delta))) continue;
      if (f == "var") return f;
      if (!found) found = f;
    }
    return found;
  }

  const FuncDecl& sugar_func(const std::string& f, int line, int col) const {
    if (!prog_.sig.has_func(f))
      throw ParseError("this notation needs a '" + f + "' function symbol",
                       line, col);
    return prog_.sig.func_decl(f);
  }

  // ---- inference pass -----------------------------------------------------

  struct AdhocFunc {
    std::vector<sx::P> args;
    sx::P result;
  };

  void infer(const RawTerm& r, const sx::P& expected, ElabCtx& cx) {
    switch (r.k) {
      case RawTerm::K::Var: {
        auto it = cx.var_sorts.find(r.ident);
        if (it == cx.var_sorts.end())
          it = cx.var_sorts.insert({r.ident, sx::unknown()}).first;
        sx::unify(it->second, expected, r.line, r.col);
        return;
      }
      case RawTerm::K::Ident:
        infer_ident(r, expected, cx);
        return;
      case RawTerm::K::Call:
        infer_call(r, expected, cx);
        return;
      case RawTerm::K::Abs: {
        NameType ty = binder_type(r, expected, cx);
        sx::P body = sx::unknown();
        sx::unify(expected, sx::mk(sx::Node::K::A, ty.ident, body), r.line,
                  r.col);
        infer(r.subs[0], body, cx);
        return;
      }
      case RawTerm::K::SwapPre: {
        resolve_swap_names(r, cx);
        infer(r.subs[0], expected, cx);
        return;
      }
      case RawTerm::K::Lam: {
        const FuncDecl& lam = sugar_func("lam", r.line, r.col);
        if (lam.args.size() != 1 || !lam.args[0].is_abstraction())
          throw ParseError("'lam' must take one abstraction argument", r.line,
                           r.col);
        NameType ty{lam.args[0].ident()};
        if (!lookup_name(r.ident, cx)) intro_binder(r.ident, ty, cx);
        sx::unify(expected, sx::of_sort(lam.result), r.line, r.col);
        infer(r.subs[0], sx::of_sort(lam.args[0].body()), cx);
        return;
      }
      case RawTerm::K::Juxt: {
        const FuncDecl& app = sugar_func("app", r.line, r.col);
        if (app.args.size() != 2)
          throw ParseError("'app' must be binary", r.line, r.col);
        sx::unify(expected, sx::of_sort(app.result), r.line, r.col);
        for (const auto& part : r.subs)
          infer(part, sx::of_sort(app.args[0]), cx);
        return;
      }
      case RawTerm::K::List: {
        const FuncDecl& cons = sugar_func("cons", r.line, r.col);
        if (cons.args.size() != 2)
          throw ParseError("'cons' must be binary", r.line, r.col);
        sx::unify(expected, sx::of_sort(cons.result), r.line, r.col);
        for (std::size_t i = 0; i < r.subs.size(); ++i) {
          bool is_tail = r.list_tail && i + 1 == r.subs.size();
          infer(r.subs[i], sx::of_sort(is_tail ? cons.result : cons.args[0]),
                cx);
        }
        return;
      }
      case RawTerm::K::Pair: {
        const FuncDecl& pr = sugar_func("pr", r.line, r.col);
        if (pr.args.size() != 2)
          throw ParseError("'pr' must be binary", r.line, r.col);
        sx::unify(expected, sx::of_sort(pr.result), r.line, r.col);
        infer(r.subs[0], sx::of_sort(pr.args[0]), cx);
        infer(r.subs[1], sx::of_sort(pr.args[1]), cx);
        return;
      }
    }
  }

  void infer_ident(const RawTerm& r, const sx::P& expected, ElabCtx& cx) {
    if (prog_.sig.has_const(r.ident)) {
      sx::unify(expected, sx::of_sort(prog_.sig.const_sort(r.ident)), r.line,
                r.col);
      return;
    }
    if (prog_.sig.has_func(r.ident))
      throw ParseError("function '" + r.ident + "' needs arguments", r.line,
                       r.col);
    auto known = lookup_name(r.ident, cx);
    sx::P e = sx::find(expected);
    if (known) {
      if (e->k == sx::Node::K::D) {
        if (!coercion_into(e->id))
          throw ParseError("name '" + r.ident + "' used at data sort " +
                               e->id + " with no injection",
                           r.line, r.col);
        return;  // expected stays the data sort; build wraps the name
      }
      sx::unify(expected, sx::mk(sx::Node::K::N, known->type.ident), r.line,
                r.col);
      return;
    }
    // fresh ident: decide its name type from the expected sort
    if (e->k == sx::Node::K::N) {
      intro_name(r.ident, NameType{e->id}, cx);
      return;
    }
    if (e->k == sx::Node::K::D) {
      auto f = coercion_into(e->id);
      if (!f)
        throw ParseError("unknown identifier '" + r.ident + "' at sort " +
                             e->id,
                         r.line, r.col);
      NameType ty{prog_.sig.func_decl(*f).args[0].ident()};
      intro_name(r.ident, ty, cx);
      return;
    }
    if (e->k == sx::Node::K::U) {
      auto ty = default_name_type();
      if (!ty)
        throw ParseError("cannot infer a sort for '" + r.ident + "'", r.line,
                         r.col);
      intro_name(r.ident, *ty, cx);
      sx::unify(expected, sx::mk(sx::Node::K::N, ty->ident), r.line, r.col);
      return;
    }
    throw ParseError("identifier '" + r.ident + "' used at abstraction sort",
                     r.line, r.col);
  }

  void infer_call(const RawTerm& r, const sx::P& expected, ElabCtx& cx) {
    if (prog_.sig.has_func(r.ident)) {
      const FuncDecl& d = prog_.sig.func_decl(r.ident);
      if (d.args.size() != r.subs.size())
        throw ParseError("'" + r.ident + "' expects " +
                             std::to_string(d.args.size()) + " arguments",
                         r.line, r.col);
      sx::unify(expected, sx::of_sort(d.result), r.line, r.col);
      for (std::size_t i = 0; i < r.subs.size(); ++i)
        infer(r.subs[i], sx::of_sort(d.args[i]), cx);
      return;
    }
    if (prog_.sig.has_const(r.ident) || prog_.sig.has_pred(r.ident))
      throw ParseError("'" + r.ident + "' cannot be applied here", r.line,
                       r.col);
    if (!adhoc_)
      throw ParseError("unknown symbol '" + r.ident + "'", r.line, r.col);
    auto it = adhoc_funcs_.find(r.ident);
    if (it == adhoc_funcs_.end()) {
      AdhocFunc f;
      for (std::size_t i = 0; i < r.subs.size(); ++i)
        f.args.push_back(sx::unknown());
      f.result = sx::unknown();
      it = adhoc_funcs_.insert({r.ident, std::move(f)}).first;
    }
    if (it->second.args.size() != r.subs.size())
      throw ParseError("'" + r.ident + "' used with inconsistent arity",
                       r.line, r.col);
    sx::unify(expected, it->second.result, r.line, r.col);
    for (std::size_t i = 0; i < r.subs.size(); ++i)
      infer(r.subs[i], it->second.args[i], cx);
  }

  NameType binder_type(const RawTerm& r, const sx::P& expected, ElabCtx& cx) {
    auto known = lookup_name(r.ident, cx);
    if (known) return known->type;
    sx::P e = sx::find(expected);
    if (e->k == sx::Node::K::A) {
      NameType ty{e->id};
      intro_binder(r.ident, ty, cx);
      return ty;
    }
    auto ty = default_name_type();
    if (!ty)
      throw ParseError("cannot infer the name type of binder '" + r.ident +
                           "'",
                       r.line, r.col);
    intro_binder(r.ident, *ty, cx);
    return *ty;
  }

  // Binders introduce names without an auto-declaration warning.
  void intro_binder(const std::string& label, const NameType& ty, ElabCtx& cx) {
    Name n = make_name(label, ty);
    if (cx.clause_mode) {
      cx.locals.insert({label, n});
      cx.local_order.push_back(label);
    } else {
      prog_.global_names.insert({label, n});
    }
  }

  void resolve_swap_names(const RawTerm& r, ElabCtx& cx) {
    auto a = lookup_name(r.ident, cx);
    auto b = lookup_name(r.ident2, cx);
    if (!a && b) a = intro_name(r.ident, b->type, cx);
    if (a && !b) b = intro_name(r.ident2, a->type, cx);
    if (!a && !b) {
      auto ty = default_name_type();
      if (!ty)
        throw ParseError("cannot infer name types in swap", r.line, r.col);
      a = intro_name(r.ident, *ty, cx);
      b = intro_name(r.ident2, *ty, cx);
    }
    if (a->type != b->type)
      throw ParseError("swap of names with different types", r.line, r.col);
  }

  void infer_goal(const RawGoal& g, ElabCtx& cx) {
    switch (g.kind) {
      case ClauseGoal::Kind::Atom: {
        const PredDecl& d = prog_.sig.pred_decl(g.pred);
        if (d.args.size() != g.terms.size())
          throw ParseError("'" + g.pred + "' expects " +
                               std::to_string(d.args.size()) + " arguments",
                           g.line, g.col);
        for (std::size_t i = 0; i < g.terms.size(); ++i)
          infer(g.terms[i], sx::of_sort(d.args[i]), cx);
        return;
      }
      case ClauseGoal::Kind::Eq: {
        sx::P s = sx::unknown();
        infer(g.terms[0], s, cx);
        infer(g.terms[1], s, cx);
        return;
      }
      case ClauseGoal::Kind::Fresh: {
        infer(g.terms[0], sx::unknown(), cx);
        infer(g.terms[1], sx::unknown(), cx);
        return;
      }
    }
  }

  void finish_inference(ElabCtx& cx) {
    // materialize ad-hoc function declarations discovered this parse
    for (auto& [f, d] : adhoc_funcs_) {
      if (prog_.sig.has_func(f) || prog_.sig.has_const(f)) continue;
      std::vector<Sort> args;
      for (const auto& a : d.args) args.push_back(sx::to_sort(a, fallback_sort()));
      prog_.sig.declare_func(f, std::move(args),
                             sx::to_sort(d.result, fallback_sort()));
    }
    for (const auto& [x, s] : cx.var_sorts)
      cx.var_sort_out.insert({x, sx::to_sort(s, fallback_sort())});
  }

  // ---- build pass ---------------------------------------------------------

  Term build(const RawTerm& r, const Sort& expected, ElabCtx& cx) {
    switch (r.k) {
      case RawTerm::K::Var:
        return Term::var(r.ident, cx.var_sort_out.at(r.ident));
      case RawTerm::K::Ident: {
        if (prog_.sig.has_const(r.ident))
          return Term::constant(prog_.sig, r.ident);
        Name n = *lookup_name(r.ident, cx);
        if (expected.is_data_sort()) {
          auto f = coercion_into(expected.ident());
          return Term::app(prog_.sig, *f, {Term::name(n)});
        }
        return Term::name(n);
      }
      case RawTerm::K::Call: {
        const FuncDecl& d = prog_.sig.func_decl(r.ident);
        std::vector<Term> args;
        for (std::size_t i = 0; i < r.subs.size(); ++i)
          args.push_back(build(r.subs[i], d.args[i], cx));
        return Term::app(prog_.sig, r.ident, std::move(args));
      }
      case RawTerm::K::Abs: {
        Name n = *lookup_name(r.ident, cx);
        Sort body = expected.is_abstraction() ? expected.body()
                                              : fallback_sort();
        return Term::abs(n, build(r.subs[0], body, cx));
      }
      case RawTerm::K::SwapPre: {
        Name a = *lookup_name(r.ident, cx);
        Name b = *lookup_name(r.ident2, cx);
        return swap_term({a, b}, build(r.subs[0], expected, cx));
      }
      case RawTerm::K::Lam: {
        const FuncDecl& lam = prog_.sig.func_decl("lam");
        Name n = *lookup_name(r.ident, cx);
        Term body = build(r.subs[0], lam.args[0].body(), cx);
        return Term::app(prog_.sig, "lam", {Term::abs(n, body)});
      }
      case RawTerm::K::Juxt: {
        const FuncDecl& app = prog_.sig.func_decl("app");
        Term acc = build(r.subs[0], app.args[0], cx);
        for (std::size_t i = 1; i < r.subs.size(); ++i)
          acc = Term::app(prog_.sig, "app",
                          {acc, build(r.subs[i], app.args[1], cx)});
        return acc;
      }
      case RawTerm::K::List: {
        const FuncDecl& cons = prog_.sig.func_decl("cons");
        Term tail = r.list_tail
                        ? build(r.subs.back(), cons.result, cx)
                        : Term::constant(prog_.sig, "nil");
        std::size_t n = r.subs.size() - (r.list_tail ? 1 : 0);
        for (std::size_t i = n; i-- > 0;)
          tail = Term::app(prog_.sig, "cons",
                           {build(r.subs[i], cons.args[0], cx), tail});
        return tail;
      }
      case RawTerm::K::Pair: {
        const FuncDecl& pr = prog_.sig.func_decl("pr");
        return Term::app(prog_.sig, "pr",
                         {build(r.subs[0], pr.args[0], cx),
                          build(r.subs[1], pr.args[1], cx)});
      }
    }
    throw ParseError("unreachable term form", r.line, r.col);
  }

  // Sort a raw term was assigned; used where build needs a concrete expected
  // sort for Eq/Fresh operands.
  Sort goal_operand_sort(const RawTerm& r, ElabCtx& cx) {
    switch (r.k) {
      case RawTerm::K::Var:
        return cx.var_sort_out.at(r.ident);
      case RawTerm::K::Ident: {
        if (prog_.sig.has_const(r.ident))
          return prog_.sig.const_sort(r.ident);
        Name n = *lookup_name(r.ident, cx);
        return Sort::name_sort(n.type.ident);
      }
      case RawTerm::K::Call:
        return prog_.sig.func_decl(r.ident).result;
      case RawTerm::K::Abs: {
        Name n = *lookup_name(r.ident, cx);
        return Sort::abstraction(n.type.ident,
                                 goal_operand_sort(r.subs[0], cx));
      }
      case RawTerm::K::SwapPre:
        return goal_operand_sort(r.subs[0], cx);
      case RawTerm::K::Lam:
        return prog_.sig.func_decl("lam").result;
      case RawTerm::K::Juxt:
        return prog_.sig.func_decl("app").result;
      case RawTerm::K::List:
        return prog_.sig.func_decl("cons").result;
      case RawTerm::K::Pair:
        return prog_.sig.func_decl("pr").result;
    }
    return fallback_sort();
  }

  ClauseGoal build_goal(const RawGoal& g, ElabCtx& cx) {
    ClauseGoal out{g.kind, g.pred, {}};
    switch (g.kind) {
      case ClauseGoal::Kind::Atom: {
        const PredDecl& d = prog_.sig.pred_decl(g.pred);
        for (std::size_t i = 0; i < g.terms.size(); ++i)
          out.terms.push_back(build(g.terms[i], d.args[i], cx));
        return out;
      }
      case ClauseGoal::Kind::Eq: {
        Sort s0 = goal_operand_sort(g.terms[0], cx);
        Sort s1 = goal_operand_sort(g.terms[1], cx);
        // prefer the more informative side for both
        Sort s = s0;
        out.terms.push_back(build(g.terms[0], s, cx));
        out.terms.push_back(build(g.terms[1], s1 == s0 ? s1 : s, cx));
        return out;
      }
      case ClauseGoal::Kind::Fresh: {
        Sort s0 = goal_operand_sort(g.terms[0], cx);
        if (!s0.is_name_sort())
          throw ParseError("left side of '#' must be a name", g.line, g.col);
        out.terms.push_back(build(g.terms[0], s0, cx));
        out.terms.push_back(
            build(g.terms[1], goal_operand_sort(g.terms[1], cx), cx));
        return out;
      }
    }
    return out;
  }

  // ---- formulas -----------------------------------------------------------

  Sort quant_sort(const RawFormulaPtr& f) const {
    if (prog_.sig.has_name_type(f->qsort)) return Sort::name_sort(f->qsort);
    if (prog_.sig.has_data_type(f->qsort)) return Sort::data_sort(f->qsort);
    throw ParseError("unknown sort '" + f->qsort + "'", f->line, f->col);
  }

  void infer_formula(const RawFormulaPtr& f, ElabCtx& cx) {
    switch (f->k) {
      case RawFormula::K::True:
      case RawFormula::K::False:
        return;
      case RawFormula::K::Atom: {
        RawGoal g{ClauseGoal::Kind::Atom, f->pred, f->terms, f->line, f->col};
        infer_goal(g, cx);
        return;
      }
      case RawFormula::K::Eq: {
        sx::P s = sx::unknown();
        infer(f->terms[0], s, cx);
        infer(f->terms[1], s, cx);
        return;
      }
      case RawFormula::K::Fresh:
        infer(f->terms[0], sx::unknown(), cx);
        infer(f->terms[1], sx::unknown(), cx);
        return;
      case RawFormula::K::Not:
      case RawFormula::K::And:
      case RawFormula::K::Or:
      case RawFormula::K::Impl:
      case RawFormula::K::Iff:
        for (const auto& s : f->subs) infer_formula(s, cx);
        return;
      case RawFormula::K::Forall:
      case RawFormula::K::Exists: {
        Sort s = quant_sort(f);
        auto old = cx.var_sorts.find(f->qident) == cx.var_sorts.end()
                       ? std::optional<sx::P>{}
                       : std::optional<sx::P>{cx.var_sorts[f->qident]};
        cx.var_sorts[f->qident] = sx::of_sort(s);
        infer_formula(f->subs[0], cx);
        // keep the binding for finish_inference (sorts are fixed anyway);
        // restore shadowed outer binding if present
        if (old) cx.var_sorts[f->qident] = *old;
        return;
      }
      case RawFormula::K::New: {
        if (!prog_.sig.has_name_type(f->qsort))
          throw ParseError("'new' needs a name type", f->line, f->col);
        NameType ty{f->qsort};
        Name n = make_name(f->qident, ty);
        auto old = cx.locals.find(f->qident) == cx.locals.end()
                       ? std::optional<Name>{}
                       : std::optional<Name>{cx.locals[f->qident]};
        cx.locals[f->qident] = n;
        new_names_.push_back(n);  // keyed by traversal order, reused in build
        infer_formula(f->subs[0], cx);
        if (old)
          cx.locals[f->qident] = *old;
        else
          cx.locals.erase(f->qident);
        return;
      }
    }
  }

  FormulaPtr build_formula(const RawFormulaPtr& f, ElabCtx& cx) {
    switch (f->k) {
      case RawFormula::K::True:
        return Formula::connective(Formula::Kind::Not, Formula::falsum());
      case RawFormula::K::False:
        return Formula::falsum();
      case RawFormula::K::Atom: {
        const PredDecl& d = prog_.sig.pred_decl(f->pred);
        std::vector<Term> ts;
        for (std::size_t i = 0; i < f->terms.size(); ++i)
          ts.push_back(build(f->terms[i], d.args[i], cx));
        return Formula::atom(f->pred, std::move(ts));
      }
      case RawFormula::K::Eq: {
        Sort s0 = goal_operand_sort(f->terms[0], cx);
        return Formula::eq(build(f->terms[0], s0, cx),
                           build(f->terms[1],
                                 goal_operand_sort(f->terms[1], cx), cx));
      }
      case RawFormula::K::Fresh: {
        Sort s0 = goal_operand_sort(f->terms[0], cx);
        if (!s0.is_name_sort())
          throw ParseError("left side of '#' must be a name", f->line,
                           f->col);
        return Formula::fresh(
            build(f->terms[0], s0, cx),
            build(f->terms[1], goal_operand_sort(f->terms[1], cx), cx));
      }
      case RawFormula::K::Not:
        return Formula::connective(Formula::Kind::Not,
                                   build_formula(f->subs[0], cx));
      case RawFormula::K::And:
        return Formula::connective(Formula::Kind::And,
                                   build_formula(f->subs[0], cx),
                                   build_formula(f->subs[1], cx));
      case RawFormula::K::Or:
        return Formula::connective(Formula::Kind::Or,
                                   build_formula(f->subs[0], cx),
                                   build_formula(f->subs[1], cx));
      case RawFormula::K::Impl:
        return Formula::connective(Formula::Kind::Impl,
                                   build_formula(f->subs[0], cx),
                                   build_formula(f->subs[1], cx));
      case RawFormula::K::Iff:
        return Formula::connective(Formula::Kind::Iff,
                                   build_formula(f->subs[0], cx),
                                   build_formula(f->subs[1], cx));
      case RawFormula::K::Forall:
      case RawFormula::K::Exists: {
        Sort s = quant_sort(f);
        auto old = cx.var_sort_out.find(f->qident) == cx.var_sort_out.end()
                       ? std::optional<Sort>{}
                       : std::optional<Sort>{cx.var_sort_out.at(f->qident)};
        cx.var_sort_out.insert_or_assign(f->qident, s);
        FormulaPtr body = build_formula(f->subs[0], cx);
        if (old)
          cx.var_sort_out.insert_or_assign(f->qident, *old);
        else
          cx.var_sort_out.erase(f->qident);
        return f->k == RawFormula::K::Forall
                   ? Formula::forall(f->qident, s, std::move(body))
                   : Formula::exists(f->qident, s, std::move(body));
      }
      case RawFormula::K::New: {
        Name n = new_names_[new_name_cursor_++];
        auto old = cx.locals.find(f->qident) == cx.locals.end()
                       ? std::optional<Name>{}
                       : std::optional<Name>{cx.locals[f->qident]};
        cx.locals[f->qident] = n;
        FormulaPtr body = build_formula(f->subs[0], cx);
        if (old)
          cx.locals[f->qident] = *old;
        else
          cx.locals.erase(f->qident);
        return Formula::nu(n, std::move(body));
      }
    }
    throw ParseError("unreachable formula form", f->line, f->col);
  }

  // ---- program statements -------------------------------------------------

  Sort parse_decl_sort(RawParser& p) {
    if (p.at_sym("<")) {
      p.next();
      std::string nu = p.expect_lower("a name type");
      if (!prog_.sig.has_name_type(nu))
        throw ParseError("unknown name type '" + nu + "'", p.peek().line,
                         p.peek().col);
      p.expect_sym(">");
      return Sort::abstraction(nu, parse_decl_sort(p));
    }
    const Token& t = p.peek();
    std::string id = p.expect_lower("a sort");
    if (prog_.sig.has_name_type(id)) return Sort::name_sort(id);
    if (prog_.sig.has_data_type(id)) return Sort::data_sort(id);
    throw ParseError("unknown sort '" + id + "'", t.line, t.col);
  }

  std::vector<Sort> parse_decl_args(RawParser& p) {
    std::vector<Sort> args;
    if (!p.at_sym("(")) return args;
    p.next();
    if (!p.at_sym(")")) {
      args.push_back(parse_decl_sort(p));
      while (p.at_sym(",")) {
        p.next();
        args.push_back(parse_decl_sort(p));
      }
    }
    p.expect_sym(")");
    return args;
  }

  void parse_statement(RawParser& p) {
    const Token& t = p.peek();
    if (p.at_lower()) {
      if (t.text == "name" && p.peek(1).kind == Token::Kind::Lower &&
          !p.at_sym("(", 1)) {
        p.next();
        std::vector<std::string> labels{p.expect_lower("a name")};
        while (p.at_sym(",")) {
          p.next();
          labels.push_back(p.expect_lower("a name"));
        }
        p.expect_sym(":");
        std::string nu = p.expect_lower("a name type");
        p.expect_sym(".");
        prog_.sig.declare_name_type(nu);
        for (const auto& l : labels) {
          if (prog_.global_names.count(l))
            throw ParseError("name '" + l + "' already declared", t.line,
                             t.col);
          prog_.global_names.insert({l, make_name(l, NameType{nu})});
        }
        return;
      }
      if (t.text == "type" && p.peek(1).kind == Token::Kind::Lower) {
        p.next();
        std::string id = p.expect_lower("a type name");
        p.expect_sym(".");
        prog_.sig.declare_data_type(id);
        return;
      }
      if (t.text == "func" && p.peek(1).kind == Token::Kind::Lower) {
        p.next();
        std::string f = p.expect_lower("a function symbol");
        std::vector<Sort> args = parse_decl_args(p);
        p.expect_sym("->");
        Sort res = parse_decl_sort(p);
        p.expect_sym(".");
        prog_.sig.declare_func(f, std::move(args), std::move(res));
        return;
      }
      if (t.text == "const" && p.peek(1).kind == Token::Kind::Lower) {
        p.next();
        std::string c = p.expect_lower("a constant");
        p.expect_sym(":");
        Sort res = parse_decl_sort(p);
        p.expect_sym(".");
        prog_.sig.declare_const(c, std::move(res));
        return;
      }
      if (t.text == "pred" && p.peek(1).kind == Token::Kind::Lower) {
        p.next();
        std::string pr = p.expect_lower("a predicate");
        std::vector<Sort> args = parse_decl_args(p);
        p.expect_sym(".");
        prog_.sig.declare_pred(pr, std::move(args));
        return;
      }
    }
    RawClause rc = p.parse_clause(prog_.sig);
    prog_.clauses.push_back(elaborate_clause(rc));
  }

  HornClause elaborate_clause(const RawClause& rc) {
    ElabCtx cx;
    cx.clause_mode = true;
    const PredDecl& d = prog_.sig.pred_decl(rc.head_pred);
    if (d.args.size() != rc.head_args.size())
      throw ParseError("'" + rc.head_pred + "' expects " +
                           std::to_string(d.args.size()) + " arguments",
                       rc.line, rc.col);
    for (std::size_t i = 0; i < rc.head_args.size(); ++i)
      infer(rc.head_args[i], sx::of_sort(d.args[i]), cx);
    for (const auto& g : rc.body) infer_goal(g, cx);
    finish_inference(cx);

    HornClause c;
    c.head_pred = rc.head_pred;
    for (std::size_t i = 0; i < rc.head_args.size(); ++i)
      c.head_args.push_back(build(rc.head_args[i], d.args[i], cx));
    for (const auto& g : rc.body) c.body.push_back(build_goal(g, cx));
    for (const auto& l : cx.local_order) c.new_names.push_back(cx.locals.at(l));
    c.vars = cx.var_sort_out;
    return c;
  }

  Program prog_;
  bool adhoc_ = false;
  std::uint64_t next_name_id_ = 1;
  std::vector<std::string> warnings_;
  std::map<std::string, AdhocFunc> adhoc_funcs_;
  std::vector<Name> new_names_;  // formula 'new' binders, in traversal order
  std::size_t new_name_cursor_ = 0;
};

// Convenience wrappers matching the one-shot uses.
inline Program load_program(const std::string& src) {
  Workspace w;
  w.load_program(src);
  return w.program();
}

}  // namespace nomlog
