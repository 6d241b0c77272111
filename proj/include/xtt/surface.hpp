#ifndef XTT_SURFACE_HPP
#define XTT_SURFACE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xtt/diagnostic.hpp"
#include "xtt/syntax.hpp"

namespace xtt {

// A dimension as written: a constant or a name.
struct SurfaceDim {
  int konst = -1;
  std::string name;
  Span span;
};

struct SurfaceNode;
using SurfaceTerm = std::shared_ptr<const SurfaceNode>;

// Named syntax tree. Uses the slot layout of TermNode; `binders[slot]` holds
// the names bound by that slot (outermost first). For Var, `name` is the
// identifier as written and may turn out to be a global.
struct SurfaceNode {
  Tag tag = Tag::Bool;
  std::string name;
  int k = 0, l = 0;
  std::vector<SurfaceTerm> kids;
  std::vector<SurfaceDim> dims;
  std::vector<std::vector<std::string>> binders;
  Span span;
};

struct Param {
  enum class Kind { Term, Dim, Constraint };
  Kind kind = Kind::Term;
  std::vector<std::string> names;
  SurfaceTerm type;
  SurfaceDim lhs, rhs;
  Span span;
};

struct Definition {
  std::string name;
  std::vector<Param> params;
  SurfaceTerm type;  // may be null
  SurfaceTerm body;
  Span span;
};

// Throw DiagnosticError with code E-PARSE.
std::vector<Definition> parse(std::string_view src);
SurfaceTerm parse_term(std::string_view src);

struct Scope {
  std::vector<std::string> terms;  // innermost last
  std::vector<std::string> dims;
  std::function<bool(std::string_view)> is_global;
};

// Throws DiagnosticError with code E-SCOPE.
Term resolve(const SurfaceTerm& t, const Scope& scope);
Dim resolve_dim(const SurfaceDim& d, const Scope& scope);

struct PrintOptions {
  bool annotations = true;
};

// Names of the variables in scope of the printed term, innermost last.
struct PrintScope {
  std::vector<std::string> terms;
  std::vector<std::string> dims;
};

std::string print(const Term& t, const PrintScope& scope = {}, PrintOptions opts = {});
std::string print_dim(Dim d, const PrintScope& scope);

}  // namespace xtt

#endif
