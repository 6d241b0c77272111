#ifndef XTT_SYNTAX_HPP
#define XTT_SYNTAX_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace xtt {

// Source location attached to raw terms and diagnostics (1-based, end exclusive).
struct Span {
  int line = 0, col = 0, end_line = 0, end_col = 0;
  bool valid() const { return line > 0; }
};

// A dimension: the constants 0/1 or a variable.
// Inside a Term the variable is a de Bruijn index counting dimension binders;
// inside values and cubes it is a de Bruijn level.
struct Dim {
  enum class Kind : std::uint8_t { Zero, One, Var };
  Kind kind = Kind::Zero;
  int var = 0;

  static Dim zero() { return {Kind::Zero, 0}; }
  static Dim one() { return {Kind::One, 0}; }
  static Dim constant(int eps) { return eps == 0 ? zero() : one(); }
  static Dim variable(int v) { return {Kind::Var, v}; }

  bool is_const() const { return kind != Kind::Var; }
  bool is_var() const { return kind == Kind::Var; }
  int eps() const { return kind == Kind::One ? 1 : 0; }
  friend bool operator==(const Dim&, const Dim&) = default;
};

struct Level {
  int value = 0;
  friend auto operator<=>(const Level&, const Level&) = default;
};

struct Constraint {
  Dim lhs, rhs;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct DimBinder {
  std::string name;
};

// Dimension context: binders and constraints, in order. Dim variables in
// constraints are levels counting the binders declared before them.
struct Cube {
  std::vector<std::variant<DimBinder, Constraint>> entries;

  int dim_count() const;
  std::vector<Constraint> constraints() const;
  Cube with_dim(std::string name = "i") const;
  Cube with_constraint(Dim lhs, Dim rhs) const;
  // Throws ScopeError if a constraint mentions a binder not yet declared.
  void validate() const;
};

class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Tag : std::uint8_t {
  Var, Global,
  Pi, Sg, Eq, Lift, Univ, Bool,
  Lam, App, Pair, Fst, Snd,
  DLam, PApp,
  True, False, If,
  Coe, HCom,
  TyCase,
  // raw-only: removed by elaboration
  Ann, Let, Com,
};

const char* tag_name(Tag t);

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// One node of the syntax tree. Children live in fixed slots per tag; a slot
// may bind term variables and/or dimension variables (see binders_of). Slots
// holding annotations are null in raw terms that omit them.
//
//   Var     index                      Global  name
//   Pi      [A, x.B]                   Sg      [A, x.B]
//   Eq      [i.A, N0, N1]              Lift    [A]  k, l
//   Univ    k                          Bool
//   Lam     [x.M]                      App     [M, N, A?, x.B?]
//   Pair    [M, N]                     Fst/Snd [M, A?, x.B?]
//   DLam    [i.M]                      PApp    [M, i.A?]  dims {r}
//   If      [x.C?, M, N0, N1]          Coe     [i.A, M]  dims {r, r'}
//   HCom    [A, M, j.N0, j.N1]  dims {r, r', s}
//   TyCase  [X, C, x y.Mpi, x y.Msg, x0 x1 q y0 y1.Meq, Mbool, Mu]  k (-1 = unknown)
//   Ann     [M, A]                     Let     [M, A?, x.N]
//   Com     [i.A, M, j.N0, j.N1]  dims {r, r', s}
struct TermNode {
  Tag tag = Tag::Bool;
  int index = 0;          // Var
  int k = 0, l = 0;       // levels (Univ, Lift, TyCase)
  std::string name;       // Global
  std::vector<Term> kids;
  std::vector<Dim> dims;
  std::vector<std::string> hints;  // binder names for printing; ignored by alpha_eq
  Span span;
};

struct Binders {
  int terms = 0;
  int dims = 0;
};
Binders binders_of(Tag tag, std::size_t slot);
std::size_t slot_count(Tag tag);

// Constructors.
Term mk_var(int index);
Term mk_global(std::string name);
Term mk_pi(Term a, Term b, std::string x = "x");
Term mk_sg(Term a, Term b, std::string x = "x");
Term mk_eq(Term line, Term n0, Term n1, std::string i = "i");
Term mk_lift(int k, int l, Term a);
Term mk_univ(int k);
Term mk_bool();
Term mk_lam(Term body, std::string x = "x");
Term mk_app(Term f, Term arg, Term dom = nullptr, Term cod = nullptr);
Term mk_pair(Term a, Term b);
Term mk_fst(Term m, Term dom = nullptr, Term cod = nullptr);
Term mk_snd(Term m, Term dom = nullptr, Term cod = nullptr);
Term mk_dlam(Term body, std::string i = "i");
Term mk_papp(Term m, Dim r, Term line = nullptr);
Term mk_true();
Term mk_false();
Term mk_if(Term motive, Term scrut, Term t, Term f);
Term mk_coe(Term line, Dim r, Dim r2, Term m, std::string i = "i");
Term mk_hcom(Term ty, Dim r, Dim r2, Term cap, Dim s, Term tube0, Term tube1, std::string j = "j");
Term mk_tycase(int k, Term scrut, Term motive, Term on_pi, Term on_sg, Term on_eq, Term on_bool,
               Term on_univ);
Term mk_ann(Term m, Term a);
Term mk_let(Term m, Term a, Term body, std::string x = "x");
Term mk_com(Term line, Dim r, Dim r2, Term cap, Dim s, Term tube0, Term tube1, std::string i = "i",
            std::string j = "j");

Term with_span(Term t, Span span);
Term with_kids(const Term& t, std::vector<Term> kids, std::vector<Dim> dims);

// Generic variable traversal. `on_var(index, term_depth, dim_depth)` replaces a
// term variable; `on_dim(index, dim_depth)` replaces a dimension variable.
// Depths count the binders crossed since the root of the traversal.
struct VarMap {
  std::function<Term(int, int, int)> on_var;
  std::function<Dim(int, int)> on_dim;
};
Term map_vars(const Term& t, const VarMap& m);

Term shift(const Term& t, int term_by, int dim_by = 0, int term_cut = 0, int dim_cut = 0);
Dim shift_dim(Dim d, int by, int cut = 0);

// t[r/target]; r is scoped like t and the target binder is retained.
Term subst_dim(const Term& t, Dim r, int target);
// Instantiates the innermost dimension binder of a body with r (scoped outside the binder).
Term instantiate_dim(const Term& body, Dim r);
// t[v/target]; v is scoped in t's context minus the target, and indices above target drop by one.
Term subst_tm(const Term& t, const Term& v, int target);
// Instantiates the innermost term binders of a body: args[0] for the outermost of them.
Term instantiate(const Term& body, const std::vector<Term>& args);

bool occurs_dim(const Term& t, int index);
bool occurs_var(const Term& t, int index);
std::vector<int> free_dims(const Term& t);

bool alpha_eq(const Term& a, const Term& b);
bool dim_eq_syntactic(Dim a, Dim b);

// Throws ScopeError when an index escapes the given scope sizes.
void check_scope(const Term& t, int term_scope, int dim_scope);

bool is_type_former(const Term& t);

// Term context over a cube.
struct Telescope {
  std::vector<Term> types;
  Cube over;
};

}  // namespace xtt

#endif
