#ifndef XTT_TESTS_KAN_CASES_HPP
#define XTT_TESTS_KAN_CASES_HPP

#include <string>
#include <vector>

#include "support.hpp"

namespace xtt::test {

// A conversion instance of one Kan equation. `rule` is the trace line the
// left-hand side must produce; empty when the equation holds by erasure.
struct KanCase {
  std::string name;
  std::string rule;
  std::string src;
};

inline std::vector<KanCase> kan_cases() {
  const std::string tubes_h = "[ s=0 => j. h @ j | s=1 => j. h @ j ]";
  const std::string line_params =
      "(A A2 : U 0) (h : Eq (_ . U 0) A A2) (F : A -> U 0) (G : A2 -> U 0) (hB : Eq (i . h @ i -> U 0) F G)";
  const std::string square_params =
      "(X Y : U 0) (p q : Eq (_ . U 0) X Y) (hA : Eq (_ . Eq (_ . U 0) X Y) p q) "
      "(m m2 : X) (mM : Eq (_ . X) m m2) (n n2 : Y) (nN : Eq (_ . Y) n n2)";
  auto ta = [](const std::string& d) {
    return "hcom (U 0) r " + d + " (h @ r) [ s=0 => j. h @ j | s=1 => j. h @ j ]";
  };
  auto xt = [&](const std::string& d) { return "coe (k . " + ta("k") + ") r2 " + d + " x"; };
  auto at = [](const std::string& d, const std::string& e) {
    return "hcom (U 0) r " + d + " (hA @ r @ " + e + ") [ s=0 => j. hA @ j @ " + e + " | s=1 => j. hA @ j @ " + e +
           " ]";
  };
  const std::string fst_tubes = "[ s=0 => j. fst (h @ j) | s=1 => j. fst (h @ j) ]";
  const std::string fst_filler = "hcom A r k (fst (h @ r)) " + fst_tubes;

  std::vector<KanCase> cs;
  cs.push_back({"coe adjacency", "coercion boundary",
                conv_def("t", "<r> (P : Eq (_ . U 0) bool bool) (M : P @ r)", "P @ r", "coe (i . P @ i) r r M", "M")});
  cs.push_back({"hcom adjacency", "composition boundary",
                conv_def("t", "<r s> (A : U 0) (a b : A) (h : Eq (_ . A) a b)", "A",
                         "hcom A r r (h @ r) " + tubes_h, "h @ r")});
  cs.push_back({"tube face", "composition boundary",
                conv_def("t", "<r r2> (A : U 0) (a b : A) (h : Eq (_ . A) a b)", "A",
                         "hcom A r r2 (h @ r) [ 0=0 => j. h @ j | 0=1 => _. h @ r ]", "h @ r2")});
  cs.push_back({"coercion regularity", "coercion regularity",
                conv_def("t", "<r r2> (A : U 0) (M : A)", "A", "coe (_ . A) r r2 M", "M")});
  cs.push_back({"composition regularity", "composition regularity",
                conv_def("t", "<r r2 s> (A : U 0) (M : A)", "A", "hcom A r r2 M [ s=0 => _. M | s=1 => _. M ]", "M")});
  cs.push_back({"lift coercion", "",
                conv_def("t", "<r r2> (P : Eq (_ . U 0) bool bool) (M : P @ r)", "lift 0 1 (P @ r2)",
                         "coe (i . lift 0 1 (P @ i)) r r2 M", "coe (i . P @ i) r r2 M")});
  cs.push_back({"lift composition", "",
                conv_def("t", "<r r2 s> (A : U 0) (a b : A) (h : Eq (_ . A) a b)", "lift 0 1 A",
                         "hcom (lift 0 1 A) r r2 (h @ r) " + tubes_h, "hcom A r r2 (h @ r) " + tubes_h)});
  cs.push_back({"lift type composition", "",
                conv_def("t", "<r r2 s> (X Y : U 0) (h : Eq (_ . U 0) X Y)", "U 1",
                         "hcom (U 1) r r2 (lift 0 1 (h @ r)) [ s=0 => j. lift 0 1 (h @ j) | s=1 => j. lift 0 1 (h @ j) ]",
                         "lift 0 1 (hcom (U 0) r r2 (h @ r) " + tubes_h + ")")});
  cs.push_back({"function composition computation", "function composition computation",
                conv_def("t",
                         "<r r2 s> (A : U 0) (B : A -> U 0) (f g : (x : A) -> B x) "
                         "(h : Eq (_ . (x : A) -> B x) f g) (N : A)",
                         "B N", "(hcom ((x : A) -> B x) r r2 (h @ r) " + tubes_h + ") N",
                         "hcom (B N) r r2 ((h @ r) N) [ s=0 => j. (h @ j) N | s=1 => j. (h @ j) N ]")});
  const std::string sg_params =
      "<r r2 s> (A : U 0) (B : A -> U 0) (p q : (x : A) * B x) (h : Eq (_ . (x : A) * B x) p q)";
  cs.push_back({"pair composition computation (1)", "pair composition computation",
                conv_def("t", sg_params, "A", "fst (hcom ((x : A) * B x) r r2 (h @ r) " + tubes_h + ")",
                         "hcom A r r2 (fst (h @ r)) " + fst_tubes)});
  cs.push_back({"pair composition computation (2)", "pair composition computation",
                conv_def("t", sg_params, "B (hcom A r r2 (fst (h @ r)) " + fst_tubes + ")",
                         "snd (hcom ((x : A) * B x) r r2 (h @ r) " + tubes_h + ")",
                         "com (k . B (" + fst_filler + ")) r r2 (snd (h @ r)) "
                         "[ s=0 => j. snd (h @ j) | s=1 => j. snd (h @ j) ]")});
  cs.push_back({"equality composition computation", "equality composition computation",
                conv_def("t", "<r r2 s t> (A : U 0) (a b : A) (p q : Eq (_ . A) a b) (h : Eq (_ . Eq (_ . A) a b) p q)",
                         "A", "(hcom (Eq (_ . A) a b) r r2 (h @ r) " + tubes_h + ") @ t",
                         "hcom A r r2 (h @ r @ t) [ s=0 => j. h @ j @ t | s=1 => j. h @ j @ t ]")});
  cs.push_back({"function type composition", "function type composition",
                conv_def("t", "<r r2 s> " + line_params, "U 0",
                         "hcom (U 0) r r2 ((x : h @ r) -> (hB @ r) x) "
                         "[ s=0 => j. (x : h @ j) -> (hB @ j) x | s=1 => j. (x : h @ j) -> (hB @ j) x ]",
                         "(x : " + ta("r2") + ") -> hcom (U 0) r r2 ((hB @ r) (" + xt("r") + ")) [ s=0 => j. (hB @ j) (" +
                             xt("j") + ") | s=1 => j. (hB @ j) (" + xt("j") + ") ]")});
  cs.push_back({"pair type composition", "pair type composition",
                conv_def("t", "<r r2 s> " + line_params, "U 0",
                         "hcom (U 0) r r2 ((x : h @ r) * (hB @ r) x) "
                         "[ s=0 => j. (x : h @ j) * (hB @ j) x | s=1 => j. (x : h @ j) * (hB @ j) x ]",
                         "(x : " + ta("r2") + ") * hcom (U 0) r r2 ((hB @ r) (" + xt("r") + ")) [ s=0 => j. (hB @ j) (" +
                             xt("j") + ") | s=1 => j. (hB @ j) (" + xt("j") + ") ]")});
  cs.push_back({"equality type composition", "equality type composition",
                conv_def("t", "<r r2 s> " + square_params, "U 0",
                         "hcom (U 0) r r2 (Eq (i . hA @ r @ i) (mM @ r) (nN @ r)) "
                         "[ s=0 => j. Eq (i . hA @ j @ i) (mM @ j) (nN @ j) | s=1 => j. Eq (i . hA @ j @ i) (mM @ j) (nN @ j) ]",
                         "Eq (i . " + at("r2", "i") + ") (com (j . " + at("j", "0") +
                             ") r r2 (mM @ r) [ s=0 => j. mM @ j | s=1 => j. mM @ j ]) (com (j . " + at("j", "1") +
                             ") r r2 (nN @ r) [ s=0 => j. nN @ j | s=1 => j. nN @ j ])")});
  cs.push_back({"boolean type composition", "boolean type composition",
                conv_def("t", "<r r2 s>", "U 0", "hcom (U 0) r r2 bool [ s=0 => _. bool | s=1 => _. bool ]", "bool")});
  cs.push_back({"universe type composition", "universe type composition",
                conv_def("t", "<r r2 s>", "U 1", "hcom (U 1) r r2 (U 0) [ s=0 => _. U 0 | s=1 => _. U 0 ]", "U 0")});
  const std::string pline = "coe (i . P @ i) r j M";
  cs.push_back({"heterogeneous composition boundary (adjacent)", "",
                conv_def("t", "<r s> (P : Eq (_ . U 0) bool bool) (M : P @ r)", "P @ r",
                         "com (i . P @ i) r r M [ s=0 => j. " + pline + " | s=1 => j. " + pline + " ]", "M")});
  cs.push_back({"heterogeneous composition boundary (face)", "",
                conv_def("t", "<r r2> (P : Eq (_ . U 0) bool bool) (M : P @ r)", "P @ r2",
                         "com (i . P @ i) r r2 M [ 0=0 => j. " + pline + " | 0=1 => _. M ]", "coe (i . P @ i) r r2 M")});
  cs.push_back({"function coercion computation", "function coercion computation",
                conv_def("t", "<r r2> " + line_params + " (f : (x : h @ r) -> (hB @ r) x) (N : h @ r2)", "(hB @ r2) N",
                         "(coe (i . (x : h @ i) -> (hB @ i) x) r r2 f) N",
                         "coe (i . (hB @ i) (coe (k . h @ k) r2 i N)) r r2 (f (coe (k . h @ k) r2 r N))")});
  const std::string p_params = "<r r2> " + line_params + " (p : (x : h @ r) * (hB @ r) x)";
  cs.push_back({"pair coercion computation (1)", "pair coercion computation",
                conv_def("t", p_params, "h @ r2", "fst (coe (i . (x : h @ i) * (hB @ i) x) r r2 p)",
                         "coe (i . h @ i) r r2 (fst p)")});
  cs.push_back({"pair coercion computation (2)", "pair coercion computation",
                conv_def("t", p_params, "(hB @ r2) (coe (i . h @ i) r r2 (fst p))",
                         "snd (coe (i . (x : h @ i) * (hB @ i) x) r r2 p)",
                         "coe (i . (hB @ i) (coe (k . h @ k) r i (fst p))) r r2 (snd p)")});
  cs.push_back({"equality coercion computation", "equality coercion computation",
                conv_def("t", "<r r2 t> " + square_params + " (P : Eq (k . hA @ r @ k) (mM @ r) (nN @ r))",
                         "hA @ r2 @ t", "(coe (i . Eq (k . hA @ i @ k) (mM @ i) (nN @ i)) r r2 P) @ t",
                         "com (i . hA @ i @ t) r r2 (P @ t) [ t=0 => i. mM @ i | t=1 => i. nN @ i ]")});
  return cs;
}

}  // namespace xtt::test

#endif
