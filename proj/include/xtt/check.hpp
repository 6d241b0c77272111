#ifndef XTT_CHECK_HPP
#define XTT_CHECK_HPP

#include <string>
#include <utility>
#include <vector>

#include "xtt/diagnostic.hpp"
#include "xtt/eval.hpp"
#include "xtt/surface.hpp"

namespace xtt {

// Context of a checking judgment: a cube, a telescope of term variables over
// it, and the values the evaluator needs for both.
struct CheckState {
  Cube cube;
  Cx cx;  // cx.classes = build_classes(cube)
  Telescope tele;
  Env env;
  std::vector<Val> types;
  std::vector<std::string> names, dim_names;

  CheckState with_var(std::string name, Term type, Val type_value) const;
  CheckState with_dim(std::string name) const;
  // Dimensions given as values (levels or constants).
  CheckState with_constraint(Dim a, Dim b) const;
  bool consistent() const { return cx.classes.consistent(); }
  Dim fresh_dim() const { return Dim::variable(cx.ndims()); }

  Val eval(const Term& t) const;
  Term quote_type(const Val& v) const;
  std::string show_type(const Val& v) const;
  std::string show(const Val& v, const Val& type) const;
};

CheckState empty_state(const GlobalTable* globals, const EvalConfig* cfg);

// All three throw DiagnosticError on failure and return annotated core terms.
Term check(const CheckState& st, const Term& raw, const Val& type);
std::pair<Term, Val> infer(const CheckState& st, const Term& raw);
std::pair<Term, int> check_type(const CheckState& st, const Term& raw);

struct CheckedDef {
  std::string name;
  Term type, body;
  Cube cube;
  Telescope tele;
  std::vector<std::string> names, dim_names;
  bool referenceable = true;
  Span span;
};

struct CheckedProgram {
  std::vector<CheckedDef> defs;
  GlobalTable globals;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

CheckedProgram check_program(const std::vector<Definition>& defs, const EvalConfig* cfg = nullptr);

// Parses, resolves and checks a closed surface term against a closed surface type,
// or infers its type when `type` is empty.
std::pair<Term, Term> elaborate(std::string_view term, std::string_view type, const CheckedProgram* prelude = nullptr,
                                const EvalConfig* cfg = nullptr);

}  // namespace xtt

#endif
