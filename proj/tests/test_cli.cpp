// End-to-end tests of the nomlog binary: output text and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string(NOMLOG_CLI_PATH) + " " + args + " 2>&1";
  if (!stdin_text.empty()) {
    std::string esc;
    for (char ch : stdin_text) {
      if (ch == '\'') esc += "'\\''";
      else esc += ch;
    }
    cmd = "printf '%s' '" + esc + "' | " + cmd;
  }
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 512> buf;
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string prog(const std::string& rel) {
  return std::string(NOMLOG_PROGRAMS_DIR) + "/" + rel;
}

}  // namespace

TEST_CASE("check reports clause and name counts") {
  auto r = run("check " + prog("subst.nl"));
  CHECK(r.code == 0);
  CHECK(r.out == "ok: 4 clauses, 3 names\n");
}

TEST_CASE("check on a missing file exits 2") {
  auto r = run("check /nonexistent.nl");
  CHECK(r.code == 2);
}

TEST_CASE("eq distinguishes alpha-equal from unequal") {
  auto yes = run("eq \"lam(<a> var(a))\" \"lam(<b> var(b))\"");
  CHECK(yes.code == 0);
  CHECK(yes.out == "true\n");
  auto no = run("eq \"lam(<a> var(a))\" \"lam(<a> var(b))\"");
  CHECK(no.code == 1);
  CHECK(no.out == "false\n");
}

TEST_CASE("fresh checks the binder rule") {
  auto yes = run("fresh a \"lam(<a> var(a))\"");
  CHECK(yes.code == 0);
  CHECK(yes.out == "true\n");
  auto no = run("fresh a \"var(a)\"");
  CHECK(no.code == 1);
  CHECK(no.out == "false\n");
}

TEST_CASE("unify prints substitutions and freshness constraints") {
  auto bind = run("unify \"<a> X\" \"<b> b\"");
  CHECK(bind.code == 0);
  CHECK(bind.out == "X = a\n");

  auto constrain = run("unify \"<a> X\" \"<b> X\"");
  CHECK(constrain.code == 0);
  CHECK(constrain.out == "X = X\na # X\nb # X\n");

  auto clash = run("unify \"var(a)\" \"app(X, Y)\"");
  CHECK(clash.code == 1);
  CHECK(clash.out.rfind("fail:", 0) == 0);
}

TEST_CASE("query returns bindings, failure, and depth exhaustion codes") {
  auto one = run("query " + prog("subst.nl") + " \"subst(var(a), var(c), a, X)\"");
  CHECK(one.code == 0);
  CHECK(one.out == "X = var(c)\n");

  auto no = run("query " + prog("pab.nl") + " \"p(a)\"");
  CHECK(no.code == 1);
  CHECK(no.out == "no.\n");

  auto equiv = run("query " + prog("pab.nl") + " --equivariant \"p(a)\"");
  CHECK(equiv.code == 0);

  auto deep = run("query " + prog("typ.nl") + " --depth 3 " +
                  "\"typ([], lam(<x> lam(<y> app(var(x), var(y)))), T)\"");
  CHECK(deep.code == 3);

  auto bad = run("query " + prog("subst.nl") + " \"subst(var(a)\"");
  CHECK(bad.code == 2);
}

TEST_CASE("query streams multiple answers separated by ;") {
  auto r = run("query " + prog("typ.nl") + " --max-answers 3 " +
               "\"mem(P, [(x, o), (y, o)])\"");
  CHECK(r.code == 0);
  CHECK(r.out == "P = pr(x, o)\n;\nP = pr(y, o)\n");
}

TEST_CASE("norm normalizes with sugar output and honors fuel") {
  auto r = run("norm \"app(lam(<a> lam(<b> app(var(a), var(b)))), lam(<c> var(c)))\"");
  CHECK(r.code == 0);
  CHECK(r.out == "\\b. b\n");

  auto omega = run("norm --fuel 20 "
                   "\"app(lam(<a> app(var(a), var(a))), lam(<a> app(var(a), var(a))))\"");
  CHECK(omega.code == 3);

  auto nbe = run("norm --nbe \"app(lam(<a> var(a)), var(b))\"");
  CHECK(nbe.code == 0);
  CHECK(nbe.out == "b\n");
}

TEST_CASE("model prints atom counts at the requested bounds") {
  auto r = run("model " + prog("typ.nl") + " --universe 3 --term-depth 2");
  CHECK(r.code == 0);
  CHECK(r.out == "atoms: 7\n");

  auto atoms = run("model " + prog("pab.nl") + " --universe 2 --atoms");
  CHECK(atoms.code == 0);
  CHECK(atoms.out.find("atoms: 2") == 0);
}

TEST_CASE("eval reports true, false, and unknown with exit codes") {
  auto t = run("eval " + prog("subst.nl") + " \"new n:var. n # var(a)\"");
  CHECK(t.code == 0);
  CHECK(t.out == "true\n");

  auto f = run("eval " + prog("subst.nl") + " \"forall N:var. N # var(a)\"");
  CHECK(f.code == 1);
  CHECK(f.out == "false\n");

  auto u = run("eval " + prog("subst.nl") + " \"forall M:exp. M = M\"");
  CHECK(u.code == 3);
  CHECK(u.out.rfind("unknown:", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate").code == 2);
  CHECK(run("eq onlyone").code == 2);
}

TEST_CASE("repl answers goals and honors :commands") {
  std::string script =
      ":load " + prog("subst.nl") + "\n"
      "subst(var(a), var(c), a, X).\n"
      ":equivariant on\n"
      ":quit\n";
  auto r = run("repl", script);
  CHECK(r.code == 0);
  CHECK(r.out.find("loaded") != std::string::npos);
  CHECK(r.out.find("X = var(c)") != std::string::npos);
  CHECK(r.out.find("equivariant: on") != std::string::npos);
}

TEST_CASE("repl recovers from parse errors") {
  auto r = run("repl " + prog("pab.nl"), "p((.\np(a).\n:quit\n");
  CHECK(r.code == 0);
  CHECK(r.out.find("parse error") != std::string::npos);
  // the session continues; the second goal still runs (nominal mode -> no.)
  CHECK(r.out.find("no.") != std::string::npos);
}
