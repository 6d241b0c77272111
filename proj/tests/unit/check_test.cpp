#include "doctest.h"
#include "support.hpp"

using namespace xtt;
using namespace xtt::test;

namespace {

std::string first_code(const std::string& src) {
  try {
    CheckedProgram p = check_source(src);
    return p.ok() ? "ok" : p.diagnostics[0].code;
  } catch (const DiagnosticError& e) {
    return e.diag.code;
  }
}

}  // namespace

TEST_CASE("dimension abstractions") {
  CHECK(first_code("def a : Eq (_ . bool) tt tt = <i> tt\n") == "ok");
  CHECK(first_code("def a : Eq (_ . bool) tt ff = <i> tt\n") == "E-BOUNDARY");
  CheckedProgram p = check_source("def a : Eq (_ . bool) tt ff = <i> tt\n");
  REQUIRE_FALSE(p.ok());
  CHECK(p.diagnostics[0].expected == "ff");
  CHECK(p.diagnostics[0].actual == "tt");
}

TEST_CASE("prelude combinators") {
  CheckedProgram p = check_source(read_data("prelude.xtt"));
  CHECK_MESSAGE(p.ok(), describe(p));
  for (const char* name : {"funext", "sym", "trans", "Id", "refl", "J", "J_refl"}) CHECK(p.globals.count(name) == 1);
}

TEST_CASE("inference") {
  auto [tm, ty] = elaborate("coe i. bool 0 1 tt", "");
  CHECK(print(ty) == "bool");
  CHECK(tm->tag == Tag::Coe);
  CHECK(print(elaborate("hcom bool 0 0 tt [ 0=0 => j. tt | 0=1 => j. tt ]", "").second) == "bool");
  CHECK(print(elaborate("(tt, ff)", "").second) == "bool * bool");
  CHECK(print(elaborate("<i> tt", "").second) == "Eq (_ . bool) tt tt");
}

TEST_CASE("annotations are synthesized") {
  auto [tm, ty] = elaborate("(fun x => x : bool -> bool) tt", "bool");
  REQUIRE(tm->tag == Tag::App);
  CHECK(tm->kids[2]);
  CHECK(tm->kids[3]);
  CHECK(print(tm) == "app [_ : bool . bool] (fun x => x) tt");
}

TEST_CASE("type levels") {
  CheckState st = empty_state(nullptr, nullptr);
  CHECK(check_type(st, resolve(parse_term("(x : bool) -> bool"), Scope{})).second == 0);
  CHECK(check_type(st, resolve(parse_term("U 3"), Scope{})).second == 4);
  CHECK(check_type(st, resolve(parse_term("lift 1 2 (U 0)"), Scope{})).second == 2);
  CHECK(first_code("def u : U 0 = U 0\n") == "E-LEVEL");
  CHECK(first_code("def u : U 2 = U 0\n") == "ok");
  CHECK(first_code("def u (A : U 0) : U 1 = A\n") == "ok");
  CHECK(first_code("def l : U 1 = lift 1 0 bool\n") == "E-LEVEL");
}

TEST_CASE("type errors") {
  CHECK(first_code("def a : bool = tt tt\n") == "E-TYPE-MISMATCH");
  CHECK(first_code("def a : bool = U 0\n") == "E-TYPE-MISMATCH");
  CHECK(first_code("def a : bool = y\n") == "E-SCOPE");
  CHECK(first_code("def a : bool = hcom bool 0 1 tt [ 0=0 => _. ff | 0=1 => _. tt ]\n") == "E-FACE");
  CHECK(first_code("def a <i> : bool = hcom bool 0 1 tt [ i=0 => _. tt | i=1 => _. ff ]\n") == "E-FACE");
}

TEST_CASE("equality type endpoints are checked at the line's faces") {
  CHECK(first_code("def e (h : Eq (_ . U 0) bool bool) : U 0 = Eq (i . h @ i) tt ff\n") == "ok");
  CHECK(first_code("def e (A : U 0) (h : Eq (_ . U 0) A bool) (a : A) : U 0 = Eq (i . h @ i) a tt\n") == "ok");
  CHECK(first_code("def e (A : U 0) (h : Eq (_ . U 0) A bool) (a : A) : U 0 = Eq (i . h @ i) tt a\n") ==
        "E-TYPE-MISMATCH");
}

TEST_CASE("definitions under a dimension context") {
  CheckedProgram p = check_source("def d <i> [i = 0] (A : U 0) (a b : A) (p : Eq (_ . A) a b) : Eq (_ . A) (p @ i) a = <_> a\n"
                                  "def use : bool = d\n");
  REQUIRE(p.diagnostics.size() == 1);
  CHECK(p.diagnostics[0].code == "E-SCOPE");
  CHECK(p.defs.size() == 1);
  CHECK_FALSE(p.defs[0].referenceable);
  CHECK(first_code("def d (A : U 0) <i> : U 0 = A\n") == "E-PARSE");
}

TEST_CASE("inconsistent cubes accept anything") {
  CheckedProgram p = check_source(read_data("collapse.xtt"));
  CHECK_MESSAGE(p.ok(), describe(p));
  CHECK(first_code("def x <i> [i = 0] : bool = tt tt\n") == "E-TYPE-MISMATCH");
}

TEST_CASE("lift coherence") {
  auto [a, ta] = elaborate("fun x => x", "bool -> bool");
  auto [b, tb] = elaborate("fun x => x", "lift 0 1 (bool -> bool)");
  CHECK(alpha_eq(a, b));
}

TEST_CASE("diagnostics carry spans inside the source") {
  std::string src = "def a : bool =\n  (fun x => x : bool -> bool) ff ff\n";
  CheckedProgram p = check_source(src);
  REQUIRE_FALSE(p.ok());
  CHECK(p.diagnostics[0].span.line == 2);
  CHECK(p.diagnostics[0].span.col >= 3);
}
