#include "xtt/eval.hpp"

#include <string>

#include "xtt/conv.hpp"

namespace xtt {

// --- small helpers ----------------------------------------------------------

Env Env::push(Val v) const {
  Env e = *this;
  e.vals.push_back(std::move(v));
  return e;
}

Env Env::push_dim(Dim d) const {
  Env e = *this;
  e.dims.push_back(d);
  return e;
}

Val vbool() {
  static const Val v = make_val(VBool{});
  return v;
}
Val vuniv(int k) { return make_val(VUniv{k}); }
Val vtrue() {
  static const Val v = make_val(VTrue{});
  return v;
}
Val vfalse() {
  static const Val v = make_val(VFalse{});
  return v;
}

Val make_var(int level, Val type) {
  auto n = std::make_shared<Neutral>();
  n->head = HVar{level, type};
  return make_val(VNeutral{std::move(n), std::move(type)});
}

namespace {

const EvalConfig& default_config() {
  static const EvalConfig cfg;
  return cfg;
}

const EvalConfig& config(const Cx& cx) { return cx.cfg ? *cx.cfg : default_config(); }

bool faulty(const Cx& cx, Fault f) { return config(cx).fault == f; }

}  // namespace

Cx Cx::with_dim() const {
  Cx c = *this;
  c.classes = classes.with_dim();
  return c;
}

Cx Cx::with_var() const {
  Cx c = *this;
  ++c.nvars;
  return c;
}

Cx Cx::restrict(Dim a, Dim b) const {
  Cx c = *this;
  c.classes = classes.with_constraint(a, b);
  return c;
}

void Cx::trace(std::string_view rule) const {
  if (cfg && cfg->trace) cfg->trace(rule);
}

Cx make_cx(const Cube& cube, int nvars, const GlobalTable* globals, const EvalConfig* cfg) {
  Cx cx;
  cx.classes = build_classes(cube);
  cx.nvars = nvars;
  cx.globals = globals;
  cx.cfg = cfg;
  cx.split_budget = cfg ? cfg->conv.split_depth : 2;
  return cx;
}

DimClosure native_line(std::function<Val(const Cx&, Dim)> f) {
  DimClosure c;
  c.native = std::move(f);
  return c;
}

Closure native_closure(std::function<Val(const Cx&, const std::vector<Val>&)> f) {
  Closure c;
  c.native = std::move(f);
  return c;
}

Closure constant_closure(Val v) {
  return native_closure([v](const Cx&, const std::vector<Val>&) { return v; });
}

namespace {

template <class T>
const T& expect(const Val& v, const char* what) {
  if (const T* p = as<T>(v)) return *p;
  throw KernelError(std::string("expected ") + what);
}

Val extend(const Cx& cx, const VNeutral& n, Frame f, Val type) {
  auto neu = std::make_shared<Neutral>(*n.neu);
  neu->spine.push_back(std::move(f));
  neu->stamp = cx.classes.stamp();
  return make_val(VNeutral{std::move(neu), std::move(type)});
}

Val stuck(const Cx& cx, Head head, Val type) {
  auto neu = std::make_shared<Neutral>();
  neu->head = std::move(head);
  neu->stamp = cx.classes.stamp();
  return make_val(VNeutral{std::move(neu), std::move(type)});
}

// The type of a line at a fresh dimension, forced.
Val line_at_fresh(const Cx& cxi, const DimClosure& line) {
  return force(cxi, inst_dim(cxi, line, Dim::variable(cxi.ndims() - 1)));
}

}  // namespace

// --- evaluation -------------------------------------------------------------

Dim eval_dim(const Env& env, Dim d) {
  if (d.is_const()) return d;
  const int n = static_cast<int>(env.dims.size());
  if (d.var < 0 || d.var >= n) throw KernelError("dimension index out of scope");
  return env.dims[n - 1 - d.var];
}

namespace {

std::string hint_of(const Term& t) { return t->hints.empty() ? std::string() : t->hints[0]; }

}  // namespace

Val eval(const Cx& cx, const Term& t, const Env& env) {
  if (!t) throw KernelError("missing subterm");
  const auto& k = t->kids;
  switch (t->tag) {
    case Tag::Var: {
      const int n = static_cast<int>(env.vals.size());
      if (t->index < 0 || t->index >= n) throw KernelError("variable index out of scope");
      return env.vals[n - 1 - t->index];
    }
    case Tag::Global: {
      if (!cx.globals) throw KernelError("unknown global " + t->name);
      auto it = cx.globals->find(t->name);
      if (it == cx.globals->end()) throw KernelError("unknown global " + t->name);
      return eval(cx, it->second.body, Env{});
    }
    case Tag::Pi: return make_val(VPi{eval(cx, k[0], env), Closure{k[1], env, {}, hint_of(t)}});
    case Tag::Sg: return make_val(VSg{eval(cx, k[0], env), Closure{k[1], env, {}, hint_of(t)}});
    case Tag::Eq:
      return make_val(VEq{DimClosure{k[0], env, {}, hint_of(t)}, eval(cx, k[1], env), eval(cx, k[2], env)});
    case Tag::Lift: return eval(cx, k[0], env);
    case Tag::Univ: return vuniv(t->k);
    case Tag::Bool: return vbool();
    case Tag::Lam: return make_val(VLam{Closure{k[0], env, {}, hint_of(t)}});
    case Tag::App: return do_app(cx, eval(cx, k[0], env), eval(cx, k[1], env));
    case Tag::Pair: return make_val(VPair{eval(cx, k[0], env), eval(cx, k[1], env)});
    case Tag::Fst: return do_fst(cx, eval(cx, k[0], env));
    case Tag::Snd: return do_snd(cx, eval(cx, k[0], env));
    case Tag::DLam: return make_val(VDLam{DimClosure{k[0], env, {}, hint_of(t)}});
    case Tag::PApp: return do_papp(cx, eval(cx, k[0], env), eval_dim(env, t->dims[0]));
    case Tag::True: return vtrue();
    case Tag::False: return vfalse();
    case Tag::If: {
      Val b = force(cx, eval(cx, k[1], env));
      if (as<VTrue>(b)) return eval(cx, k[2], env);
      if (as<VFalse>(b)) return eval(cx, k[3], env);
      if (!k[0]) throw KernelError("if without motive");
      return do_if(cx, Closure{k[0], env, {}, {}}, b, eval(cx, k[2], env), eval(cx, k[3], env));
    }
    case Tag::Coe:
      return do_coe(cx, DimClosure{k[0], env, {}, {}}, eval_dim(env, t->dims[0]), eval_dim(env, t->dims[1]),
                    eval(cx, k[1], env));
    case Tag::HCom:
      return do_hcom(cx, eval(cx, k[0], env), eval_dim(env, t->dims[0]), eval_dim(env, t->dims[1]),
                     eval(cx, k[1], env), eval_dim(env, t->dims[2]), DimClosure{k[2], env, {}, {}},
                     DimClosure{k[3], env, {}, {}});
    case Tag::TyCase:
      return do_typecase(cx, t->k, eval(cx, k[0], env), eval(cx, k[1], env), Closure{k[2], env, {}, {}},
                         Closure{k[3], env, {}, {}}, Closure{k[4], env, {}, {}}, Closure{k[5], env, {}, {}},
                         Closure{k[6], env, {}, {}});
    case Tag::Ann: return eval(cx, k[0], env);
    case Tag::Let: return eval(cx, k[2], env.push(eval(cx, k[0], env)));
    case Tag::Com:
      return do_com(cx, DimClosure{k[0], env, {}, {}}, eval_dim(env, t->dims[0]), eval_dim(env, t->dims[1]),
                    eval(cx, k[1], env), eval_dim(env, t->dims[2]), DimClosure{k[2], env, {}, {}},
                    DimClosure{k[3], env, {}, {}});
  }
  throw KernelError("unknown term");
}

Val inst(const Cx& cx, const Closure& c, const std::vector<Val>& args) {
  if (c.native) return c.native(cx, args);
  Env e = c.env;
  for (const auto& a : args) e.vals.push_back(a);
  return eval(cx, c.body, e);
}

Val inst_dim(const Cx& cx, const DimClosure& c, Dim r) {
  if (c.native) return c.native(cx, r);
  return eval(cx, c.body, c.env.push_dim(r));
}

Val force(const Cx& cx, const Val& v) {
  const auto* n = as<VNeutral>(v);
  if (!n) return v;
  const Neutral& neu = *n->neu;
  if (neu.stamp == cx.classes.stamp()) return v;
  if (neu.spine.empty() && std::holds_alternative<HVar>(neu.head)) return v;

  Val cur = std::visit(
      [&](const auto& h) -> Val {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, HVar>) {
          auto fresh = std::make_shared<Neutral>();
          fresh->head = h;
          fresh->stamp = cx.classes.stamp();
          return make_val(VNeutral{std::move(fresh), h.type});
        } else if constexpr (std::is_same_v<H, HCoe>) {
          return do_coe(cx, h.line, h.r, h.r2, h.arg);
        } else if constexpr (std::is_same_v<H, HHCom>) {
          return do_hcom(cx, h.type, h.r, h.r2, h.cap, h.s, h.tube0, h.tube1);
        } else {
          return do_typecase(cx, h.k, h.scrut, h.motive, h.on_pi, h.on_sg, h.on_eq, h.on_bool, h.on_univ);
        }
      },
      neu.head);

  for (const auto& f : neu.spine) {
    cur = std::visit(
        [&](const auto& fr) -> Val {
          using F = std::decay_t<decltype(fr)>;
          if constexpr (std::is_same_v<F, FApp>) return do_app(cx, cur, fr.arg);
          else if constexpr (std::is_same_v<F, FFst>) return do_fst(cx, cur);
          else if constexpr (std::is_same_v<F, FSnd>) return do_snd(cx, cur);
          else if constexpr (std::is_same_v<F, FPApp>) return do_papp(cx, cur, fr.r);
          else return do_if(cx, fr.motive, cur, fr.on_true, fr.on_false);
        },
        f);
  }
  return cur;
}

// --- eliminators ------------------------------------------------------------

Val do_app(const Cx& cx, const Val& f0, const Val& arg) {
  Val f = force(cx, f0);
  if (const auto* lam = as<VLam>(f)) return inst(cx, lam->body, {arg});
  if (const auto* n = as<VNeutral>(f)) {
    Val ty = force(cx, n->type);
    const auto& pi = expect<VPi>(ty, "function type");
    return extend(cx, *n, FApp{arg}, inst(cx, pi.cod, {arg}));
  }
  throw KernelError("application of a non-function");
}

Val do_fst(const Cx& cx, const Val& p0) {
  Val p = force(cx, p0);
  if (const auto* pr = as<VPair>(p)) return pr->fst;
  if (const auto* n = as<VNeutral>(p)) {
    Val ty = force(cx, n->type);
    const auto& sg = expect<VSg>(ty, "pair type");
    return extend(cx, *n, FFst{}, sg.dom);
  }
  throw KernelError("projection from a non-pair");
}

Val do_snd(const Cx& cx, const Val& p0) {
  Val p = force(cx, p0);
  if (const auto* pr = as<VPair>(p)) return pr->snd;
  if (const auto* n = as<VNeutral>(p)) {
    Val ty = force(cx, n->type);
    const auto& sg = expect<VSg>(ty, "pair type");
    return extend(cx, *n, FSnd{}, inst(cx, sg.cod, {do_fst(cx, p)}));
  }
  throw KernelError("projection from a non-pair");
}

Val do_papp(const Cx& cx, const Val& p0, Dim r) {
  Val p = force(cx, p0);
  if (const auto* dl = as<VDLam>(p)) return inst_dim(cx, dl->body, r);
  if (const auto* n = as<VNeutral>(p)) {
    Val ty = force(cx, n->type);
    const auto& eq = expect<VEq>(ty, "equality type");
    if (auto eps = cx.classes.constant_of(r)) return *eps == 0 ? eq.left : eq.right;
    return extend(cx, *n, FPApp{r}, inst_dim(cx, eq.line, r));
  }
  throw KernelError("dimension application of a non-equality");
}

Val do_if(const Cx& cx, const Closure& motive, const Val& scrut0, const Val& on_true, const Val& on_false) {
  Val b = force(cx, scrut0);
  if (as<VTrue>(b)) return on_true;
  if (as<VFalse>(b)) return on_false;
  if (const auto* n = as<VNeutral>(b)) return extend(cx, *n, FIf{motive, on_true, on_false}, inst(cx, motive, {b}));
  throw KernelError("if on a non-boolean");
}

// --- Kan operations ---------------------------------------------------------

namespace {

bool line_is_regular(const Cx& cx, const DimClosure& line) {
  if (config(cx).conv.full_regularity) {
    Cx c2 = cx.with_dim().with_dim();
    Dim j = Dim::variable(cx.ndims()), j2 = Dim::variable(cx.ndims() + 1);
    return conv_ty(c2, inst_dim(c2, line, j), inst_dim(c2, line, j2));
  }
  Cx cxi = cx.with_dim();
  Term ty = readback_type(cxi, line_at_fresh(cxi, line));
  return !occurs_dim(ty, 0);
}

// A tube is regular when it is constant in its binder (or its face is vacuous).
bool tube_is_regular(const Cx& cx, const Val& ty, Dim s, int eps, const DimClosure& tube) {
  Cx face = cx.restrict(s, Dim::constant(eps));
  if (!face.classes.consistent()) return true;
  Cx cxj = face.with_dim();
  Term t = readback(cxj, inst_dim(cxj, tube, Dim::variable(cx.ndims())), ty);
  return !occurs_dim(t, 0);
}

}  // namespace

Val do_coe(const Cx& cx, const DimClosure& line, Dim r, Dim r2, const Val& m) {
  if (!faulty(cx, Fault::NoAdjacency) && cx.classes.equal(r, r2)) {
    cx.trace("coercion boundary");
    return m;
  }
  if (!faulty(cx, Fault::NoRegularity) && line_is_regular(cx, line)) {
    cx.trace("coercion regularity");
    return m;
  }
  Cx cxi = cx.with_dim();
  Val head = line_at_fresh(cxi, line);

  if (as<VPi>(head)) {
    cx.trace("function coercion computation");
    return make_val(VLam{native_closure([line, r, r2, m](const Cx& c, const std::vector<Val>& args) {
      Val x = args[0];
      DimClosure dom = native_line([line](const Cx& c2, Dim d) {
        return expect<VPi>(force(c2, inst_dim(c2, line, d)), "function type").dom;
      });
      auto filler = [dom, r2, x](const Cx& c2, Dim j) { return do_coe(c2, dom, r2, j, x); };
      DimClosure cod = native_line([line, filler](const Cx& c2, Dim d) {
        Val pi = force(c2, inst_dim(c2, line, d));
        return inst(c2, expect<VPi>(pi, "function type").cod, {filler(c2, d)});
      });
      return do_coe(c, cod, r, r2, do_app(c, m, filler(c, r)));
    })});
  }

  if (as<VSg>(head)) {
    cx.trace("pair coercion computation");
    DimClosure dom = native_line([line](const Cx& c2, Dim d) {
      return expect<VSg>(force(c2, inst_dim(c2, line, d)), "pair type").dom;
    });
    Val a = do_fst(cx, m);
    auto filler = [dom, r, a](const Cx& c2, Dim j) { return do_coe(c2, dom, r, j, a); };
    DimClosure cod = native_line([line, filler](const Cx& c2, Dim d) {
      Val sg = force(c2, inst_dim(c2, line, d));
      return inst(c2, expect<VSg>(sg, "pair type").cod, {filler(c2, d)});
    });
    return make_val(VPair{filler(cx, r2), do_coe(cx, cod, r, r2, do_snd(cx, m))});
  }

  if (as<VEq>(head)) {
    cx.trace("equality coercion computation");
    return make_val(VDLam{native_line([line, r, r2, m](const Cx& c, Dim s) {
      auto eq_at = [line](const Cx& c2, Dim d) { return force(c2, inst_dim(c2, line, d)); };
      DimClosure ty = native_line([eq_at, s](const Cx& c2, Dim j) {
        return inst_dim(c2, expect<VEq>(eq_at(c2, j), "equality type").line, s);
      });
      DimClosure left = native_line(
          [eq_at](const Cx& c2, Dim j) { return expect<VEq>(eq_at(c2, j), "equality type").left; });
      DimClosure right = native_line(
          [eq_at](const Cx& c2, Dim j) { return expect<VEq>(eq_at(c2, j), "equality type").right; });
      return do_com(c, ty, r, r2, do_papp(c, m, s), s, left, right);
    })});
  }

  if ((as<VBool>(head) || as<VUniv>(head)) && !faulty(cx, Fault::NoRegularity)) return m;
  if (as<VNeutral>(head) || as<VBool>(head) || as<VUniv>(head))
    return stuck(cx, HCoe{line, r, r2, m}, inst_dim(cx, line, r2));
  throw KernelError("coercion along a non-type line");
}

namespace {

enum class HeadKind { Pi, Sg, Eq, Bool, Univ, Other };

HeadKind head_kind(const Val& v) {
  if (as<VPi>(v)) return HeadKind::Pi;
  if (as<VSg>(v)) return HeadKind::Sg;
  if (as<VEq>(v)) return HeadKind::Eq;
  if (as<VBool>(v)) return HeadKind::Bool;
  if (as<VUniv>(v)) return HeadKind::Univ;
  return HeadKind::Other;
}

// The common head former of the cap and both tubes of a composite in a universe.
HeadKind common_head(const Cx& cx, const Val& cap, Dim s, const DimClosure& t0, const DimClosure& t1) {
  HeadKind h = head_kind(force(cx, cap));
  if (h == HeadKind::Other) return h;
  for (int eps = 0; eps < 2; ++eps) {
    Cx face = cx.restrict(s, Dim::constant(eps));
    if (!face.classes.consistent()) continue;
    Cx cxj = face.with_dim();
    const DimClosure& tube = eps == 0 ? t0 : t1;
    if (head_kind(force(cxj, inst_dim(cxj, tube, Dim::variable(cx.ndims())))) != h) return HeadKind::Other;
  }
  return h;
}

Val compose_pi_or_sigma(const Cx& cx, bool is_pi, int k, Dim r, Dim r2, const Val& cap, Dim s,
                        const DimClosure& t0, const DimClosure& t1) {
  auto dom_of = [is_pi](const Cx& c, const Val& v) -> Val {
    Val f = force(c, v);
    return is_pi ? expect<VPi>(f, "function type").dom : expect<VSg>(f, "pair type").dom;
  };
  auto cod_of = [is_pi](const Cx& c, const Val& v) -> Closure {
    Val f = force(c, v);
    return is_pi ? expect<VPi>(f, "function type").cod : expect<VSg>(f, "pair type").cod;
  };
  Val univ = vuniv(k);
  auto tube_dom = [dom_of](const DimClosure& tube) {
    return native_line([tube, dom_of](const Cx& c, Dim j) { return dom_of(c, inst_dim(c, tube, j)); });
  };
  DimClosure d0 = tube_dom(t0), d1 = tube_dom(t1);
  Val cap_dom = dom_of(cx, cap);
  Closure cap_cod = cod_of(cx, cap);
  // dom filler: hcom U r k A [s = e -> j. A_e]
  DimClosure dom_line = native_line([univ, r, cap_dom, s, d0, d1](const Cx& c, Dim kk) {
    return do_hcom(c, univ, r, kk, cap_dom, s, d0, d1);
  });
  Closure cod = native_closure([=](const Cx& c, const std::vector<Val>& args) {
    Val x = args[0];
    auto xt = [dom_line, r2, x](const Cx& c2, Dim j) { return do_coe(c2, dom_line, r2, j, x); };
    auto tube_cod = [cod_of, xt](const DimClosure& tube) {
      return native_line([tube, cod_of, xt](const Cx& c2, Dim j) {
        return inst(c2, cod_of(c2, inst_dim(c2, tube, j)), {xt(c2, j)});
      });
    };
    return do_hcom(c, univ, r, r2, inst(c, cap_cod, {xt(c, r)}), s, tube_cod(t0), tube_cod(t1));
  });
  Val dom = inst_dim(cx, dom_line, r2);
  if (is_pi) return make_val(VPi{dom, cod});
  return make_val(VSg{dom, cod});
}

Val compose_eq(const Cx& cx, int k, Dim r, Dim r2, const Val& cap, Dim s, const DimClosure& t0,
               const DimClosure& t1) {
  Val univ = vuniv(k);
  const VEq cap_eq = expect<VEq>(force(cx, cap), "equality type");
  auto eq_part = [](const DimClosure& tube, int which) {
    return native_line([tube, which](const Cx& c, Dim j) -> Val {
      Val v = force(c, inst_dim(c, tube, j));
      const auto& eq = expect<VEq>(v, "equality type");
      return which == 0 ? eq.left : eq.right;
    });
  };
  auto tube_line_at = [](const DimClosure& tube, Dim i) {
    return native_line([tube, i](const Cx& c, Dim j) {
      return inst_dim(c, expect<VEq>(force(c, inst_dim(c, tube, j)), "equality type").line, i);
    });
  };
  // filled(j, i) = hcom U r j A(i) [s = e -> j'. A_e(j')(i)]
  auto filled = [=](const Cx& c, Dim j, Dim i) {
    return do_hcom(c, univ, r, j, inst_dim(c, cap_eq.line, i), s, tube_line_at(t0, i), tube_line_at(t1, i));
  };
  auto endpoint_line = [filled](int eps) {
    return native_line([filled, eps](const Cx& c, Dim j) { return filled(c, j, Dim::constant(eps)); });
  };
  Val left = do_com(cx, endpoint_line(0), r, r2, cap_eq.left, s, eq_part(t0, 0), eq_part(t1, 0));
  Val right = do_com(cx, endpoint_line(1), r, r2, cap_eq.right, s, eq_part(t0, 1), eq_part(t1, 1));
  DimClosure line = native_line([filled, r2](const Cx& c, Dim i) { return filled(c, r2, i); });
  return make_val(VEq{line, left, right});
}

}  // namespace

Val do_hcom(const Cx& cx, const Val& ty0, Dim r, Dim r2, const Val& cap, Dim s, const DimClosure& tube0,
            const DimClosure& tube1) {
  if (!faulty(cx, Fault::NoAdjacency) && cx.classes.equal(r, r2)) {
    cx.trace("composition boundary");
    return cap;
  }
  if (cx.classes.equal(s, Dim::zero())) {
    cx.trace("composition boundary");
    return inst_dim(cx, tube0, r2);
  }
  if (cx.classes.equal(s, Dim::one())) {
    cx.trace("composition boundary");
    return inst_dim(cx, tube1, r2);
  }
  Val ty = force(cx, ty0);

  if (const auto* pi = as<VPi>(ty)) {
    cx.trace("function composition computation");
    Closure cod = pi->cod;
    return make_val(VLam{native_closure([=](const Cx& c, const std::vector<Val>& args) {
      Val x = args[0];
      auto at = [x](const DimClosure& tube) {
        return native_line([tube, x](const Cx& c2, Dim j) { return do_app(c2, inst_dim(c2, tube, j), x); });
      };
      return do_hcom(c, inst(c, cod, {x}), r, r2, do_app(c, cap, x), s, at(tube0), at(tube1));
    })});
  }

  if (const auto* sg = as<VSg>(ty)) {
    cx.trace("pair composition computation");
    Val dom = sg->dom;
    Closure cod = sg->cod;
    auto proj = [](const DimClosure& tube, bool first) {
      return native_line([tube, first](const Cx& c, Dim j) {
        Val v = inst_dim(c, tube, j);
        return first ? do_fst(c, v) : do_snd(c, v);
      });
    };
    DimClosure f0 = proj(tube0, true), f1 = proj(tube1, true);
    Val cap_fst = do_fst(cx, cap);
    auto filler = [dom, r, cap_fst, s, f0, f1](const Cx& c, Dim k) {
      return do_hcom(c, dom, r, k, cap_fst, s, f0, f1);
    };
    DimClosure snd_line =
        native_line([cod, filler](const Cx& c, Dim k) { return inst(c, cod, {filler(c, k)}); });
    Val second = do_com(cx, snd_line, r, r2, do_snd(cx, cap), s, proj(tube0, false), proj(tube1, false));
    return make_val(VPair{filler(cx, r2), second});
  }

  if (const auto* eq = as<VEq>(ty)) {
    cx.trace("equality composition computation");
    DimClosure line = eq->line;
    return make_val(VDLam{native_line([=](const Cx& c, Dim d) {
      auto at = [d](const DimClosure& tube) {
        return native_line([tube, d](const Cx& c2, Dim j) { return do_papp(c2, inst_dim(c2, tube, j), d); });
      };
      return do_hcom(c, inst_dim(c, line, d), r, r2, do_papp(c, cap, d), s, at(tube0), at(tube1));
    })});
  }

  if (const auto* u = as<VUniv>(ty)) {
    switch (common_head(cx, cap, s, tube0, tube1)) {
      case HeadKind::Bool:
        cx.trace("boolean type composition");
        return vbool();
      case HeadKind::Univ:
        cx.trace("universe type composition");
        return force(cx, cap);
      case HeadKind::Pi:
        cx.trace("function type composition");
        return compose_pi_or_sigma(cx, true, u->k, r, r2, cap, s, tube0, tube1);
      case HeadKind::Sg:
        cx.trace("pair type composition");
        return compose_pi_or_sigma(cx, false, u->k, r, r2, cap, s, tube0, tube1);
      case HeadKind::Eq:
        cx.trace("equality type composition");
        return compose_eq(cx, u->k, r, r2, cap, s, tube0, tube1);
      case HeadKind::Other:
        break;
    }
  } else if (!as<VBool>(ty) && !as<VNeutral>(ty)) {
    throw KernelError("composition in a non-type");
  }

  if (!faulty(cx, Fault::NoRegularity) && tube_is_regular(cx, ty, s, 0, tube0) &&
      tube_is_regular(cx, ty, s, 1, tube1)) {
    cx.trace("composition regularity");
    return cap;
  }
  return stuck(cx, HHCom{ty, r, r2, s, cap, tube0, tube1}, ty);
}

Val do_com(const Cx& cx, const DimClosure& line, Dim r, Dim r2, const Val& cap, Dim s,
           const DimClosure& tube0, const DimClosure& tube1) {
  if (!faulty(cx, Fault::NoAdjacency) && cx.classes.equal(r, r2)) {
    cx.trace("heterogeneous composition boundary");
    return cap;
  }
  if (auto eps = cx.classes.constant_of(s); eps && cx.classes.consistent()) {
    cx.trace("heterogeneous composition boundary");
    return inst_dim(cx, *eps == 0 ? tube0 : tube1, r2);
  }
  auto coerced = [line, r2](const DimClosure& tube) {
    return native_line(
        [tube, line, r2](const Cx& c, Dim j) { return do_coe(c, line, j, r2, inst_dim(c, tube, j)); });
  };
  return do_hcom(cx, inst_dim(cx, line, r2), r, r2, do_coe(cx, line, r, r2, cap), s, coerced(tube0),
                 coerced(tube1));
}

Val do_typecase(const Cx& cx, int k, const Val& scrut0, const Val& motive, const Closure& on_pi,
                const Closure& on_sg, const Closure& on_eq, const Closure& on_bool, const Closure& on_univ) {
  Val x = force(cx, scrut0);
  if (const auto* pi = as<VPi>(x)) {
    cx.trace("type-case computation");
    return inst(cx, on_pi, {pi->dom, make_val(VLam{pi->cod})});
  }
  if (const auto* sg = as<VSg>(x)) {
    cx.trace("type-case computation");
    return inst(cx, on_sg, {sg->dom, make_val(VLam{sg->cod})});
  }
  if (const auto* eq = as<VEq>(x)) {
    cx.trace("type-case computation");
    return inst(cx, on_eq,
                {inst_dim(cx, eq->line, Dim::zero()), inst_dim(cx, eq->line, Dim::one()),
                 make_val(VDLam{eq->line}), eq->left, eq->right});
  }
  if (as<VBool>(x)) {
    cx.trace("type-case computation");
    return inst(cx, on_bool, {});
  }
  if (as<VUniv>(x)) {
    cx.trace("type-case computation");
    return inst(cx, on_univ, {});
  }
  if (as<VNeutral>(x)) return stuck(cx, HTyCase{k, x, motive, on_pi, on_sg, on_eq, on_bool, on_univ}, motive);
  throw KernelError("type-case on a non-type");
}

// --- readback ---------------------------------------------------------------

Dim readback_dim(const Cx& cx, Dim d) {
  Dim c = cx.classes.canonical(d);
  if (c.is_const()) return c;
  return Dim::variable(cx.ndims() - 1 - c.var);
}

namespace {

Val fresh_var(const Cx& cx, Val type) { return make_var(cx.nvars, std::move(type)); }

// Types of the variables bound by the type-case branches.
Val arrow_to_univ(const Val& dom, int k) { return make_val(VPi{dom, constant_closure(vuniv(k))}); }

}  // namespace

namespace {

std::string pick(const std::string& a, const std::string& b, const char* fallback) {
  if (!a.empty() && a != "_") return a;
  if (!b.empty() && b != "_") return b;
  return fallback;
}

}  // namespace

Term readback(const Cx& cx, const Val& v, const Val& type0) {
  Val type = force(cx, type0);
  if (const auto* pi = as<VPi>(type)) {
    Val x = fresh_var(cx, pi->dom);
    Cx c1 = cx.with_var();
    const auto* lam = as<VLam>(v);
    return mk_lam(readback(c1, do_app(c1, v, x), inst(c1, pi->cod, {x})),
                  pick(lam ? lam->body.hint : "", pi->cod.hint, "x"));
  }
  if (const auto* sg = as<VSg>(type)) {
    Val a = do_fst(cx, v);
    return mk_pair(readback(cx, a, sg->dom), readback(cx, do_snd(cx, v), inst(cx, sg->cod, {a})));
  }
  if (const auto* eq = as<VEq>(type)) {
    Cx ci = cx.with_dim();
    Dim i = Dim::variable(cx.ndims());
    const auto* dl = as<VDLam>(v);
    return mk_dlam(readback(ci, do_papp(ci, v, i), inst_dim(ci, eq->line, i)), pick(dl ? dl->body.hint : "", "", "i"));
  }
  if (as<VUniv>(type)) return readback_type(cx, v);
  Val w = force(cx, v);
  if (as<VTrue>(w)) return mk_true();
  if (as<VFalse>(w)) return mk_false();
  if (const auto* n = as<VNeutral>(w)) return readback_neutral(cx, *n->neu).first;
  throw KernelError("readback of an ill-typed value");
}

Term readback_type(const Cx& cx, const Val& v0) {
  Val v = force(cx, v0);
  if (const auto* pi = as<VPi>(v)) {
    Val x = fresh_var(cx, pi->dom);
    Cx c1 = cx.with_var();
    return mk_pi(readback_type(cx, pi->dom), readback_type(c1, inst(c1, pi->cod, {x})), pick(pi->cod.hint, "", "x"));
  }
  if (const auto* sg = as<VSg>(v)) {
    Val x = fresh_var(cx, sg->dom);
    Cx c1 = cx.with_var();
    return mk_sg(readback_type(cx, sg->dom), readback_type(c1, inst(c1, sg->cod, {x})), pick(sg->cod.hint, "", "x"));
  }
  if (const auto* eq = as<VEq>(v)) {
    Cx ci = cx.with_dim();
    Term line = readback_type(ci, inst_dim(ci, eq->line, Dim::variable(cx.ndims())));
    return mk_eq(line, readback(cx, eq->left, inst_dim(cx, eq->line, Dim::zero())),
                 readback(cx, eq->right, inst_dim(cx, eq->line, Dim::one())), pick(eq->line.hint, "", "i"));
  }
  if (as<VBool>(v)) return mk_bool();
  if (const auto* u = as<VUniv>(v)) return mk_univ(u->k);
  if (const auto* n = as<VNeutral>(v)) return readback_neutral(cx, *n->neu).first;
  throw KernelError("readback of a non-type as a type");
}

std::pair<Term, Val> readback_neutral(const Cx& cx, const Neutral& neu) {
  Term t;
  Val type;
  if (const auto* h = std::get_if<HVar>(&neu.head)) {
    if (h->level < 0 || h->level >= cx.nvars) throw KernelError("variable level out of scope");
    t = mk_var(cx.nvars - 1 - h->level);
    type = h->type;
  } else if (const auto* h = std::get_if<HCoe>(&neu.head)) {
    Cx ci = cx.with_dim();
    Term line = readback_type(ci, inst_dim(ci, h->line, Dim::variable(cx.ndims())));
    t = mk_coe(line, readback_dim(cx, h->r), readback_dim(cx, h->r2),
               readback(cx, h->arg, inst_dim(cx, h->line, h->r)));
    type = inst_dim(cx, h->line, h->r2);
  } else if (const auto* h = std::get_if<HHCom>(&neu.head)) {
    Term tubes[2];
    for (int eps = 0; eps < 2; ++eps) {
      Cx face = cx.restrict(h->s, Dim::constant(eps));
      if (!face.classes.consistent()) throw KernelError("stuck composite with a vacuous face");
      Cx cj = face.with_dim();
      tubes[eps] = readback(cj, inst_dim(cj, eps == 0 ? h->tube0 : h->tube1, Dim::variable(cx.ndims())), h->type);
    }
    t = mk_hcom(readback_type(cx, h->type), readback_dim(cx, h->r), readback_dim(cx, h->r2),
                readback(cx, h->cap, h->type), readback_dim(cx, h->s), tubes[0], tubes[1]);
    type = h->type;
  } else {
    const auto& tc = std::get<HTyCase>(neu.head);
    Val u = vuniv(tc.k);
    auto branch = [&](const Closure& c, const std::vector<Val>& types) {
      Cx ci = cx;
      std::vector<Val> args;
      for (const auto& ty : types) {
        args.push_back(fresh_var(ci, ty));
        ci = ci.with_var();
      }
      return readback(ci, inst(ci, c, args), tc.motive);
    };
    Term pi_branch, sg_branch, eq_branch;
    {
      Val x = fresh_var(cx, u);
      pi_branch = branch(tc.on_pi, {u, arrow_to_univ(x, tc.k)});
      sg_branch = branch(tc.on_sg, {u, arrow_to_univ(x, tc.k)});
      Val x1 = make_var(cx.nvars + 1, u);
      Val q = make_val(VEq{native_line([u](const Cx&, Dim) { return u; }), x, x1});
      eq_branch = branch(tc.on_eq, {u, u, q, x, x1});
    }
    t = mk_tycase(tc.k, readback(cx, tc.scrut, u), readback_type(cx, tc.motive), pi_branch, sg_branch, eq_branch,
                  branch(tc.on_bool, {}), branch(tc.on_univ, {}));
    type = tc.motive;
  }

  // Replay the spine, tracking the type of the prefix.
  auto prefix = std::make_shared<Neutral>();
  prefix->head = neu.head;
  prefix->stamp = neu.stamp;
  for (const auto& f : neu.spine) {
    Val ty = force(cx, type);
    Val prefix_val = make_val(VNeutral{prefix, ty});
    if (const auto* fa = std::get_if<FApp>(&f)) {
      const auto& pi = expect<VPi>(ty, "function type");
      Val x = fresh_var(cx, pi.dom);
      Cx c1 = cx.with_var();
      t = mk_app(t, readback(cx, fa->arg, pi.dom), readback_type(cx, pi.dom),
                 readback_type(c1, inst(c1, pi.cod, {x})));
      type = inst(cx, pi.cod, {fa->arg});
    } else if (std::holds_alternative<FFst>(f) || std::holds_alternative<FSnd>(f)) {
      const auto& sg = expect<VSg>(ty, "pair type");
      Val x = fresh_var(cx, sg.dom);
      Cx c1 = cx.with_var();
      Term dom = readback_type(cx, sg.dom), cod = readback_type(c1, inst(c1, sg.cod, {x}));
      if (std::holds_alternative<FFst>(f)) {
        t = mk_fst(t, dom, cod);
        type = sg.dom;
      } else {
        t = mk_snd(t, dom, cod);
        type = inst(cx, sg.cod, {do_fst(cx, prefix_val)});
      }
    } else if (const auto* fp = std::get_if<FPApp>(&f)) {
      const auto& eq = expect<VEq>(ty, "equality type");
      Cx ci = cx.with_dim();
      Term line = readback_type(ci, inst_dim(ci, eq.line, Dim::variable(cx.ndims())));
      t = mk_papp(t, readback_dim(cx, fp->r), line);
      type = inst_dim(cx, eq.line, fp->r);
    } else {
      const auto& fi = std::get<FIf>(f);
      Val x = fresh_var(cx, vbool());
      Cx c1 = cx.with_var();
      Term motive = readback_type(c1, inst(c1, fi.motive, {x}));
      t = mk_if(motive, t, readback(cx, fi.on_true, inst(cx, fi.motive, {vtrue()})),
                readback(cx, fi.on_false, inst(cx, fi.motive, {vfalse()})));
      type = inst(cx, fi.motive, {prefix_val});
    }
    prefix = std::make_shared<Neutral>(*prefix);
    prefix->spine.push_back(f);
  }
  return {t, type};
}

// --- entry points -----------------------------------------------------------

std::pair<Cx, Env> context_of(const Cube& cube, const Telescope& tele, const GlobalTable* globals,
                              const EvalConfig* cfg) {
  Cx cx = make_cx(cube, 0, globals, cfg);
  Env env;
  for (int d = 0; d < cube.dim_count(); ++d) env.dims.push_back(Dim::variable(d));
  for (const auto& ty : tele.types) {
    Val tv = eval(cx, ty, env);
    env.vals.push_back(make_var(cx.nvars, tv));
    cx = cx.with_var();
  }
  return {cx, env};
}

Term normalize(const Term& t, const Cube& cube, const Telescope& tele, const Term& type,
               const GlobalTable* globals, const EvalConfig* cfg) {
  auto [cx, env] = context_of(cube, tele, globals, cfg);
  // Every term is a normal form of every other under a false constraint.
  if (!cx.classes.consistent()) return t;
  return readback(cx, eval(cx, t, env), eval(cx, type, env));
}

}  // namespace xtt
