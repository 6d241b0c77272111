#ifndef XTT_TESTS_TYPECASE_CASES_HPP
#define XTT_TESTS_TYPECASE_CASES_HPP

#include <string>
#include <vector>

#include "support.hpp"

namespace xtt::test {

struct TypeCaseCase {
  std::string branch;
  std::string src;  // a single definition whose body, under its parameters, is a type-case
  int params;       // number of term parameters
};

inline std::string tycase_def(const std::string& params, int level, const std::string& scrut, const std::string& which,
                              const std::string& body) {
  auto br = [&](const std::string& name, const std::string& pat) {
    return pat + " => " + (which == name ? body : std::string("bool"));
  };
  return "def t " + params + " : U 0 = tycase [" + std::to_string(level) + "] (" + scrut + ") at U 0 { " +
         br("pi", "pi X Y") + " | " + br("sg", "sg X Y") + " | " + br("eq", "eq X0 X1 Q y0 y1") + " | " +
         br("bool", "bool") + " | " + br("univ", "univ") + " }\n";
}

inline std::vector<TypeCaseCase> typecase_cases() {
  return {
      {"pi", tycase_def("(A : U 0) (B : A -> U 0)", 0, "(x : A) -> B x", "pi", "(z : X) * Y z"), 2},
      {"sg", tycase_def("(A : U 0) (B : A -> U 0)", 0, "(x : A) * B x", "sg", "(z : X) -> Y z"), 2},
      {"eq",
       tycase_def("(A0 A1 : U 0) (h : Eq (_ . U 0) A0 A1) (a0 : A0) (a1 : A1)", 0, "Eq (i . h @ i) a0 a1", "eq",
                  "(Eq (i . Q @ i) y0 y1) * (X0 -> X1)"),
       5},
      {"bool", tycase_def("(A : U 0)", 0, "bool", "bool", "A -> A"), 1},
      {"univ", tycase_def("(A : U 0)", 1, "U 0", "univ", "A * A"), 1},
  };
}

// The reduct of a type-case node by direct substitution into the chosen branch.
inline Term typecase_reduct(const Term& tc) {
  const Term& x = tc->kids[0];
  switch (x->tag) {
    case Tag::Pi: return instantiate(tc->kids[2], {x->kids[0], mk_lam(x->kids[1])});
    case Tag::Sg: return instantiate(tc->kids[3], {x->kids[0], mk_lam(x->kids[1])});
    case Tag::Eq:
      return instantiate(tc->kids[4], {instantiate_dim(x->kids[0], Dim::zero()), instantiate_dim(x->kids[0], Dim::one()),
                                       mk_dlam(x->kids[0]), x->kids[1], x->kids[2]});
    case Tag::Bool: return tc->kids[5];
    case Tag::Univ: return tc->kids[6];
    default: return nullptr;
  }
}

}  // namespace xtt::test

#endif
