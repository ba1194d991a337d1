// nomlog — command-line front end for the nominal logic engine.
//
// Subcommands:
//   check FILE                 parse and sort-check a program file
//   eq    T U                  ground/open alpha-equality of two terms
//   fresh A T                  freshness of name A for term T
//   unify T U                  nominal unification; prints the answer
//   query FILE GOAL            SLD resolution against a program
//   norm  TERM                 lambda-term normalisation (beta/eta or NBE)
//   model FILE                 bounded least-model enumeration
//   eval  FILE FORMULA         three-valued formula evaluation
//   repl  [FILE]               interactive session
//
// Exit codes: 0 success / formula true; 1 logical failure (no proof, not
// equal, not fresh, no unifier, formula false); 2 parse, sort, or usage
// error; 3 resource exhaustion (depth or fuel limit hit, verdict unknown).

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "nomlog/lambda.hpp"
#include "nomlog/logic.hpp"
#include "nomlog/parse.hpp"
#include "nomlog/print.hpp"
#include "nomlog/unify.hpp"

namespace {

using namespace nomlog;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kError = 2;
constexpr int kExhausted = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Give generated (unlabeled) names readable display labels for printing.
// Equality ignores the display string, so this is purely cosmetic.
Term relabel(const Term& t, std::map<Name, std::string>& assigned,
             std::set<std::string>& taken, int& counter) {
  auto freshen = [&](const Name& n) -> Name {
    if (!n.display.empty()) return n;
    auto it = assigned.find(n);
    if (it == assigned.end()) {
      std::string lab;
      do {
        lab = "x" + std::to_string(++counter);
      } while (taken.count(lab));
      taken.insert(lab);
      it = assigned.emplace(n, lab).first;
    }
    Name out = n;
    out.display = it->second;
    return out;
  };
  switch (t.kind()) {
    case Term::Kind::NameRef:
      return Term::name(freshen(t.name_value()));
    case Term::Kind::Const:
    case Term::Kind::Susp:
      return t;
    case Term::Kind::App: {
      std::vector<Term> args;
      for (const auto& a : t.args())
        args.push_back(relabel(a, assigned, taken, counter));
      return rebuild_app(t, std::move(args));
    }
    case Term::Kind::Abs: {
      Name b = freshen(t.binder());
      Term body = relabel(t.body(), assigned, taken, counter);
      return rebuild_abs(t, std::move(b), std::move(body));
    }
  }
  return t;
}

Term relabel(const Term& t) {
  std::map<Name, std::string> assigned;
  std::set<std::string> taken;
  std::set<Name> occ;
  names_occurring_into(t, occ);
  for (const auto& n : occ)
    if (!n.display.empty()) taken.insert(n.display);
  int counter = 0;
  return relabel(t, assigned, taken, counter);
}

// Print one resolution/unification answer as `X = t` and `a # X` lines.
// Shows a line per goal variable (identity when unbound), then the
// freshness constraints touching a displayed variable.
void print_answer(const std::map<std::string, Sort>& goal_vars,
                  const Substitution& theta, const FreshnessContext& ctx) {
  std::set<std::string> shown;
  bool any = false;
  for (const auto& [x, s] : goal_vars) {
    shown.insert(x);
    if (theta.has(x)) {
      Term v = theta.get(x);
      for (const auto& fv : free_vars(v)) shown.insert(fv);
      std::cout << x << " = " << print_term(v) << "\n";
    } else {
      std::cout << x << " = " << x << "\n";
    }
    any = true;
  }
  for (const auto& [a, x] : ctx.items()) {
    if (!shown.count(x)) continue;
    std::cout << a.label() << " # " << x << "\n";
    any = true;
  }
  if (!any) std::cout << "true\n";
}

const char* failure_kind(UnifyFailure::Kind k) {
  switch (k) {
    case UnifyFailure::Kind::SymbolClash: return "symbol clash";
    case UnifyFailure::Kind::NameClash: return "name clash";
    case UnifyFailure::Kind::OccursCheck: return "occurs check";
    case UnifyFailure::Kind::FreshnessRefuted: return "freshness refuted";
    case UnifyFailure::Kind::SortMismatch: return "sort mismatch";
  }
  return "failure";
}

struct QueryOpts {
  std::size_t depth = 50;
  bool equivariant = false;
  std::size_t max_answers = 1;
};

// Runs a goal against a loaded program and prints the answers; returns the
// process exit code.
int run_query(Workspace& ws, const std::string& goal_text,
              const QueryOpts& qo) {
  Goal g = ws.parse_goal(goal_text);
  SolveOpts so;
  so.depth_limit = qo.depth;
  so.equivariant = qo.equivariant;
  so.max_answers = qo.max_answers;
  SolveOutcome out = solve(ws.program(), g, so);
  for (std::size_t i = 0; i < out.answers.size(); ++i) {
    if (i) std::cout << ";\n";
    print_answer(g.vars, out.answers[i].subst, out.answers[i].ctx);
  }
  if (out.answers.empty()) {
    if (out.depth_exhausted) {
      std::cout << "no (depth limit " << qo.depth << " reached).\n";
      return kExhausted;
    }
    std::cout << "no.\n";
    return kFail;
  }
  return kOk;
}

int cmd_check(const std::string& path) {
  Workspace ws;
  ws.load_program(read_file(path));
  for (const auto& w : ws.warnings()) std::cerr << "warning: " << w << "\n";
  const Program& p = ws.program();
  std::cout << "ok: " << p.clauses.size() << " clauses, "
            << p.global_names.size() << " names\n";
  return kOk;
}

int cmd_eq(Workspace& ws, const std::string& s1, const std::string& s2) {
  auto [t, u] = ws.parse_term_pair(s1, s2);
  bool eq;
  if (t.is_ground() && u.is_ground())
    eq = alpha_eq_ground(t, u);
  else
    eq = alpha_eq_open(FreshnessContext{}, t, u);
  std::cout << (eq ? "true" : "false") << "\n";
  return eq ? kOk : kFail;
}

int cmd_fresh(Workspace& ws, const std::string& s1, const std::string& s2) {
  auto [a, t] = ws.parse_term_pair(s1, s2, /*same_sort=*/false);
  if (a.kind() != Term::Kind::NameRef)
    throw ParseError("first argument of fresh must be a name", 1, 1);
  if (t.is_ground()) {
    bool f = fresh_ground(a.name_value(), t);
    std::cout << (f ? "true" : "false") << "\n";
    return f ? kOk : kFail;
  }
  auto r = fresh_open(FreshnessContext{}, a.name_value(), t);
  if (!r) {
    std::cout << "false\n";
    return kFail;
  }
  if (r->empty()) {
    std::cout << "true\n";
  } else {
    std::cout << "true if:\n";
    for (const auto& [n, x] : r->items())
      std::cout << n.label() << " # " << x << "\n";
  }
  return kOk;
}

int cmd_unify(Workspace& ws, const std::string& s1, const std::string& s2) {
  auto [t, u] = ws.parse_term_pair(s1, s2);
  UnifyResult r = unify(t, u);
  if (auto* fail = std::get_if<UnifyFailure>(&r)) {
    std::cout << "fail: " << failure_kind(fail->kind) << ": " << fail->detail
              << "\n";
    return kFail;
  }
  const Solution& sol = std::get<Solution>(r);
  std::map<std::string, Sort> vars;
  for (const Term& side : {t, u})
    for (const auto& x : free_vars(side))
      vars.emplace(x, Sort::data_sort("_"));
  print_answer(vars, sol.subst, sol.ctx);
  return kOk;
}

int cmd_norm(const std::string& src, std::size_t fuel, bool use_nbe,
             bool no_eta, bool raw) {
  Workspace ws = Workspace::adhoc();
  Term t = ws.parse_term(src);
  if (!t.is_ground())
    throw ParseError("norm expects a closed term (no variables)", 1, 1);
  NameGen gen(ws.program().max_parsed_id + 1);
  std::optional<Term> nf;
  if (use_nbe) {
    nf = nbe_normalize(gen, t, fuel);
  } else {
    nf = normalize(gen, t, fuel, /*with_eta=*/!no_eta);
  }
  if (!nf) {
    std::cout << "no normal form within fuel " << fuel << "\n";
    return kExhausted;
  }
  Term pretty = relabel(*nf);
  std::cout << (raw ? print_term(pretty) : print_term_sugar(pretty)) << "\n";
  return kOk;
}

int cmd_model(const std::string& path, std::size_t universe,
              std::size_t term_depth, bool print_atoms) {
  Workspace ws;
  ws.load_program(read_file(path));
  ModelBound bound{term_depth, universe};
  LeastModel m = least_model_enum(ws.program(), bound);
  std::cout << "atoms: " << m.atoms().size() << "\n";
  if (print_atoms) {
    std::vector<std::string> lines;
    for (const auto& a : m.atoms()) {
      std::string line = a.pred;
      if (!a.args.empty()) {
        line += "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          if (i) line += ", ";
          line += print_term(a.args[i]);
        }
        line += ")";
      }
      lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) std::cout << l << "\n";
  }
  return kOk;
}

int cmd_eval(const std::string& path, const std::string& formula_text,
             std::size_t universe, std::size_t term_depth) {
  Workspace ws;
  ws.load_program(read_file(path));
  FormulaPtr f = ws.parse_formula(formula_text);
  ModelBound bound{term_depth, universe};
  LeastModel m = least_model_enum(ws.program(), bound);
  Verdict v = eval_formula(ws.program(), m, f);
  if (v.is_true()) {
    std::cout << "true\n";
    return kOk;
  }
  if (v.is_false()) {
    std::cout << "false\n";
    return kFail;
  }
  std::cout << "unknown: " << v.bound_reason << "\n";
  return kExhausted;
}

int cmd_repl(const std::optional<std::string>& path) {
  Workspace ws;
  if (path) {
    ws.load_program(read_file(*path));
    std::cout << "loaded " << *path << " (" << ws.program().clauses.size()
              << " clauses)\n";
  }
  QueryOpts qo;
  std::cout << "nomlog repl — :help for commands, :quit to exit\n";
  std::string line;
  while (std::cout << "?- " << std::flush, std::getline(std::cin, line)) {
    std::string s = line;
    // trim
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    s = s.substr(b, e - b + 1);
    try {
      if (s[0] == ':') {
        std::istringstream cmd(s.substr(1));
        std::string word;
        cmd >> word;
        if (word == "quit" || word == "q") break;
        if (word == "help" || word == "h") {
          std::cout << ":load FILE        load a program (replaces the current one)\n"
                       ":depth N          set the resolution depth limit\n"
                       ":max N            set the maximum number of answers\n"
                       ":equivariant on|off   toggle equivariant clause matching\n"
                       ":norm TERM        normalise a lambda term\n"
                       ":quit             leave\n"
                       "anything else is read as a goal, e.g.  p(X), a # X.\n";
        } else if (word == "load") {
          std::string file;
          cmd >> file;
          Workspace fresh_ws;
          fresh_ws.load_program(read_file(file));
          ws = std::move(fresh_ws);
          std::cout << "loaded " << file << " ("
                    << ws.program().clauses.size() << " clauses)\n";
        } else if (word == "depth") {
          cmd >> qo.depth;
          std::cout << "depth limit: " << qo.depth << "\n";
        } else if (word == "max") {
          cmd >> qo.max_answers;
          std::cout << "max answers: " << qo.max_answers << "\n";
        } else if (word == "equivariant") {
          std::string v;
          cmd >> v;
          qo.equivariant = (v == "on" || v == "true" || v == "1");
          std::cout << "equivariant: " << (qo.equivariant ? "on" : "off")
                    << "\n";
        } else if (word == "norm") {
          std::string rest;
          std::getline(cmd, rest);
          cmd_norm(rest, 1000, /*use_nbe=*/false, /*no_eta=*/false,
                   /*raw=*/false);
        } else {
          std::cout << "unknown command :" << word << " (try :help)\n";
        }
      } else {
        run_query(ws, s, qo);
      }
    } catch (const ParseError& ex) {
      std::cout << "parse error (line " << ex.line << ", col " << ex.col
                << "): " << ex.what() << "\n";
    } catch (const std::exception& ex) {
      std::cout << "error: " << ex.what() << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nomlog — nominal logic programming engine"};
  app.require_subcommand(1);

  std::string file, arg1, arg2;
  std::string program_path;
  QueryOpts qo;
  std::size_t fuel = 1000;
  std::size_t universe = 2, term_depth = 2;
  bool use_nbe = false, no_eta = false, raw = false, print_atoms = false;
  std::optional<std::string> repl_file;

  auto* check = app.add_subcommand("check", "parse and sort-check a program");
  check->add_option("file", file, "program file")->required();

  auto* eq = app.add_subcommand("eq", "alpha-equality of two terms");
  eq->add_option("t", arg1, "first term")->required();
  eq->add_option("u", arg2, "second term")->required();
  eq->add_option("--program", program_path, "program file for the signature");

  auto* fresh = app.add_subcommand("fresh", "freshness of a name for a term");
  fresh->add_option("a", arg1, "name")->required();
  fresh->add_option("t", arg2, "term")->required();
  fresh->add_option("--program", program_path,
                    "program file for the signature");

  auto* uni = app.add_subcommand("unify", "nominal unification of two terms");
  uni->add_option("t", arg1, "first term")->required();
  uni->add_option("u", arg2, "second term")->required();
  uni->add_option("--program", program_path, "program file for the signature");

  auto* query = app.add_subcommand("query", "run a goal against a program");
  query->add_option("file", file, "program file")->required();
  query->add_option("goal", arg1, "goal, e.g. \"p(X), a # X\"")->required();
  query->add_option("--depth", qo.depth, "resolution depth limit")
      ->default_val(50);
  query->add_flag("--equivariant", qo.equivariant,
                  "match clauses up to renaming of their local names");
  query->add_option("--max-answers", qo.max_answers,
                    "stop after this many answers")
      ->default_val(1);

  auto* norm = app.add_subcommand("norm", "normalise a lambda term");
  norm->add_option("term", arg1, "term, e.g. \"app(lam(<a> var(a)), M)\"")
      ->required();
  norm->add_option("--fuel", fuel, "reduction step budget")->default_val(1000);
  norm->add_flag("--nbe", use_nbe, "use normalisation by evaluation");
  norm->add_flag("--no-eta", no_eta, "skip eta-contraction (beta only)");
  norm->add_flag("--raw", raw, "print the raw constructor form");

  auto* model = app.add_subcommand("model", "enumerate the bounded least model");
  model->add_option("file", file, "program file")->required();
  model->add_option("--universe", universe, "names per name-type")
      ->default_val(2);
  model->add_option("--term-depth", term_depth, "max function nesting depth")
      ->default_val(2);
  model->add_flag("--atoms", print_atoms, "print every atom");

  auto* ev = app.add_subcommand("eval", "evaluate a formula in the bounded model");
  ev->add_option("file", file, "program file")->required();
  ev->add_option("formula", arg1, "formula, e.g. \"new a:var. a # X\"")
      ->required();
  ev->add_option("--universe", universe, "names per name-type")
      ->default_val(2);
  ev->add_option("--term-depth", term_depth, "max function nesting depth")
      ->default_val(2);

  auto* repl = app.add_subcommand("repl", "interactive session");
  std::string repl_path;
  repl->add_option("file", repl_path, "program file to load at startup");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kOk : kError;
  }

  try {
    if (check->parsed()) return cmd_check(file);
    if (eq->parsed() || fresh->parsed() || uni->parsed()) {
      Workspace ws;
      if (!program_path.empty())
        ws.load_program(read_file(program_path));
      else
        ws = Workspace::adhoc();
      if (eq->parsed()) return cmd_eq(ws, arg1, arg2);
      if (fresh->parsed()) return cmd_fresh(ws, arg1, arg2);
      return cmd_unify(ws, arg1, arg2);
    }
    if (query->parsed()) {
      Workspace ws;
      ws.load_program(read_file(file));
      return run_query(ws, arg1, qo);
    }
    if (norm->parsed()) return cmd_norm(arg1, fuel, use_nbe, no_eta, raw);
    if (model->parsed()) return cmd_model(file, universe, term_depth, print_atoms);
    if (ev->parsed()) return cmd_eval(file, arg1, universe, term_depth);
    if (repl->parsed())
      return cmd_repl(repl_path.empty()
                          ? std::nullopt
                          : std::optional<std::string>(repl_path));
  } catch (const ParseError& ex) {
    std::cerr << "error (line " << ex.line << ", col " << ex.col
              << "): " << ex.what() << "\n";
    return kError;
  } catch (const SortError& ex) {
    std::cerr << "sort error: " << ex.what() << "\n";
    return kError;
  } catch (const NbeOutOfFuel&) {
    std::cerr << "no normal form within fuel " << fuel << "\n";
    return kExhausted;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kError;
  }
  return kError;
}
