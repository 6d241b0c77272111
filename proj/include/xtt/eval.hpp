#ifndef XTT_EVAL_HPP
#define XTT_EVAL_HPP

#include <utility>
#include <vector>

#include "xtt/value.hpp"

namespace xtt {

Val eval(const Cx& cx, const Term& t, const Env& env);
Dim eval_dim(const Env& env, Dim d);

Val inst(const Cx& cx, const Closure& c, const std::vector<Val>& args);
Val inst_dim(const Cx& cx, const DimClosure& c, Dim r);

// Re-evaluates a stale neutral under the current constraint classes.
Val force(const Cx& cx, const Val& v);

Val do_app(const Cx& cx, const Val& f, const Val& arg);
Val do_fst(const Cx& cx, const Val& p);
Val do_snd(const Cx& cx, const Val& p);
Val do_papp(const Cx& cx, const Val& p, Dim r);
Val do_if(const Cx& cx, const Closure& motive, const Val& scrut, const Val& on_true, const Val& on_false);

Val do_coe(const Cx& cx, const DimClosure& line, Dim r, Dim r2, const Val& m);
Val do_hcom(const Cx& cx, const Val& ty, Dim r, Dim r2, const Val& cap, Dim s, const DimClosure& tube0,
            const DimClosure& tube1);
Val do_com(const Cx& cx, const DimClosure& line, Dim r, Dim r2, const Val& cap, Dim s,
           const DimClosure& tube0, const DimClosure& tube1);
Val do_typecase(const Cx& cx, int k, const Val& scrut, const Val& motive, const Closure& on_pi,
                const Closure& on_sg, const Closure& on_eq, const Closure& on_bool, const Closure& on_univ);

// Type-directed quotation into beta-normal, eta-long core syntax.
Term readback(const Cx& cx, const Val& v, const Val& type);
Term readback_type(const Cx& cx, const Val& type);
std::pair<Term, Val> readback_neutral(const Cx& cx, const Neutral& neu);
Dim readback_dim(const Cx& cx, Dim d);

// Builds the evaluation context and environment for a cube and telescope.
std::pair<Cx, Env> context_of(const Cube& cube, const Telescope& tele, const GlobalTable* globals,
                              const EvalConfig* cfg);

Term normalize(const Term& t, const Cube& cube, const Telescope& tele, const Term& type,
               const GlobalTable* globals = nullptr, const EvalConfig* cfg = nullptr);

// Helpers for building dimension lines from C++ code.
DimClosure native_line(std::function<Val(const Cx&, Dim)> f);
Closure native_closure(std::function<Val(const Cx&, const std::vector<Val>&)> f);
Closure constant_closure(Val v);

}  // namespace xtt

#endif
