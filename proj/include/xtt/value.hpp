#ifndef XTT_VALUE_HPP
#define XTT_VALUE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "xtt/dim_solver.hpp"
#include "xtt/syntax.hpp"

namespace xtt {

// Raised when evaluation meets input that cannot be well typed.
class KernelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Value;
using Val = std::shared_ptr<const Value>;
struct Cx;

// Dimension entries are levels or constants; term entries are values.
// Index 0 is the back of each vector.
struct Env {
  std::vector<Dim> dims;
  std::vector<Val> vals;

  Env push(Val v) const;
  Env push_dim(Dim d) const;
};

// Binds `arity` term variables. Either syntax under an environment or a
// native semantic function (used by the Kan computation rules).
struct Closure {
  Term body;
  Env env;
  std::function<Val(const Cx&, const std::vector<Val>&)> native;
  std::string hint;  // binder name for readback
};

struct DimClosure {
  Term body;
  Env env;
  std::function<Val(const Cx&, Dim)> native;
  std::string hint;
};

struct VPi { Val dom; Closure cod; };
struct VSg { Val dom; Closure cod; };
struct VEq { DimClosure line; Val left, right; };
struct VBool {};
struct VUniv { int k = 0; };
struct VLam { Closure body; };
struct VPair { Val fst, snd; };
struct VDLam { DimClosure body; };
struct VTrue {};
struct VFalse {};

struct Neutral;
struct VNeutral {
  std::shared_ptr<const Neutral> neu;
  Val type;
};

struct Value {
  std::variant<VPi, VSg, VEq, VBool, VUniv, VLam, VPair, VDLam, VTrue, VFalse, VNeutral> node;
};

// Neutral heads.
struct HVar { int level = 0; Val type; };
struct HCoe { DimClosure line; Dim r, r2; Val arg; };
struct HHCom { Val type; Dim r, r2, s; Val cap; DimClosure tube0, tube1; };
struct HTyCase {
  int k = 0;
  Val scrut;
  Val motive;
  Closure on_pi, on_sg, on_eq, on_bool, on_univ;
};
using Head = std::variant<HVar, HCoe, HHCom, HTyCase>;

// Spine frames.
struct FApp { Val arg; };
struct FFst {};
struct FSnd {};
struct FPApp { Dim r; };
struct FIf { Closure motive; Val on_true, on_false; };
using Frame = std::variant<FApp, FFst, FSnd, FPApp, FIf>;

struct Neutral {
  Head head;
  std::vector<Frame> spine;
  // Constraint stamp of the classes the neutral was computed under.
  std::uint64_t stamp = 0;
};

template <class T>
const T* as(const Val& v) {
  return v ? std::get_if<T>(&v->node) : nullptr;
}

template <class T>
Val make_val(T node) {
  return std::make_shared<const Value>(Value{std::move(node)});
}

Val vbool();
Val vuniv(int k);
Val vtrue();
Val vfalse();
Val make_var(int level, Val type);

struct GlobalDef {
  Term type;
  Term body;
  // Definitions checked under their own dimension context cannot be referenced.
  bool referenceable = true;
};
using GlobalTable = std::map<std::string, GlobalDef, std::less<>>;

// Deliberate kernel faults for mutation testing.
enum class Fault : std::uint8_t { None, NoAdjacency, NoRegularity };

// Conversion settings: how many boundary-separation case splits to try, and
// whether coercion regularity is decided by conversion rather than an occurs check.
struct ConvConfig {
  int split_depth = 2;
  bool full_regularity = false;
};

struct EvalConfig {
  ConvConfig conv;
  Fault fault = Fault::None;
  std::function<void(std::string_view)> trace;
};

// Everything evaluation needs besides the environment: the constraint
// classes of the current cube, the number of term variables in scope (for
// fresh levels), globals and configuration.
struct Cx {
  DimClasses classes;
  int nvars = 0;
  const GlobalTable* globals = nullptr;
  const EvalConfig* cfg = nullptr;
  int split_budget = 2;

  int ndims() const { return classes.dim_count(); }
  Dim fresh_dim_value() const { return Dim::variable(ndims()); }
  Cx with_dim() const;
  Cx with_var() const;
  Cx restrict(Dim a, Dim b) const;
  void trace(std::string_view rule) const;
};

Cx make_cx(const Cube& cube, int nvars, const GlobalTable* globals, const EvalConfig* cfg);

}  // namespace xtt

#endif
