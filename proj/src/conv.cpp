#include "xtt/conv.hpp"

#include "xtt/eval.hpp"

namespace xtt {

namespace {

Val fresh_var(const Cx& cx, Val type) { return make_var(cx.nvars, std::move(type)); }

Val arrow_to_univ(const Val& dom, int k) { return make_val(VPi{dom, constant_closure(vuniv(k))}); }

// Boundary separation: two values agree if they agree on both faces of some
// dimension. Tried only after a direct comparison fails.
template <class F>
bool split(const Cx& cx, F retry) {
  if (cx.split_budget <= 0) return false;
  for (int level = 0; level < cx.ndims(); ++level) {
    Dim d = Dim::variable(level);
    if (!(cx.classes.canonical(d) == d)) continue;
    bool ok = true;
    for (int eps = 0; eps < 2 && ok; ++eps) {
      Cx face = cx.restrict(d, Dim::constant(eps));
      face.split_budget = cx.split_budget - 1;
      ok = retry(face);
    }
    if (ok) return true;
  }
  return false;
}

bool conv_ty_direct(const Cx& cx, const Val& a0, const Val& b0);

bool conv_tm_direct(const Cx& cx, const Val& m, const Val& n, const Val& type0) {
  Val type = force(cx, type0);
  if (const auto* pi = as<VPi>(type)) {
    Val x = fresh_var(cx, pi->dom);
    Cx c1 = cx.with_var();
    return conv_tm(c1, do_app(c1, m, x), do_app(c1, n, x), inst(c1, pi->cod, {x}));
  }
  if (const auto* sg = as<VSg>(type)) {
    Val a = do_fst(cx, m);
    if (!conv_tm(cx, a, do_fst(cx, n), sg->dom)) return false;
    return conv_tm(cx, do_snd(cx, m), do_snd(cx, n), inst(cx, sg->cod, {a}));
  }
  if (as<VEq>(type)) return true;
  if (as<VUniv>(type)) return conv_ty(cx, m, n);
  Val a = force(cx, m), b = force(cx, n);
  if (as<VTrue>(a) && as<VTrue>(b)) return true;
  if (as<VFalse>(a) && as<VFalse>(b)) return true;
  const auto* na = as<VNeutral>(a);
  const auto* nb = as<VNeutral>(b);
  if (na && nb) return conv_neutral(cx, *na->neu, *nb->neu).has_value();
  return false;
}

bool conv_ty_direct(const Cx& cx, const Val& a0, const Val& b0) {
  Val a = force(cx, a0), b = force(cx, b0);
  if (const auto* pa = as<VPi>(a)) {
    const auto* pb = as<VPi>(b);
    if (!pb || !conv_ty(cx, pa->dom, pb->dom)) return false;
    Val x = fresh_var(cx, pa->dom);
    Cx c1 = cx.with_var();
    return conv_ty(c1, inst(c1, pa->cod, {x}), inst(c1, pb->cod, {x}));
  }
  if (const auto* sa = as<VSg>(a)) {
    const auto* sb = as<VSg>(b);
    if (!sb || !conv_ty(cx, sa->dom, sb->dom)) return false;
    Val x = fresh_var(cx, sa->dom);
    Cx c1 = cx.with_var();
    return conv_ty(c1, inst(c1, sa->cod, {x}), inst(c1, sb->cod, {x}));
  }
  if (const auto* ea = as<VEq>(a)) {
    const auto* eb = as<VEq>(b);
    if (!eb) return false;
    Cx ci = cx.with_dim();
    Dim i = Dim::variable(cx.ndims());
    if (!conv_ty(ci, inst_dim(ci, ea->line, i), inst_dim(ci, eb->line, i))) return false;
    return conv_tm(cx, ea->left, eb->left, inst_dim(cx, ea->line, Dim::zero())) &&
           conv_tm(cx, ea->right, eb->right, inst_dim(cx, ea->line, Dim::one()));
  }
  if (as<VBool>(a)) return as<VBool>(b) != nullptr;
  if (const auto* ua = as<VUniv>(a)) {
    const auto* ub = as<VUniv>(b);
    return ub && ua->k == ub->k;
  }
  const auto* na = as<VNeutral>(a);
  const auto* nb = as<VNeutral>(b);
  if (na && nb) return conv_neutral(cx, *na->neu, *nb->neu).has_value();
  return false;
}

bool same_dim(const Cx& cx, Dim a, Dim b) { return cx.classes.equal(a, b); }

// Compares the heads of two neutrals, returning the type of the head.
std::optional<Val> conv_head(const Cx& cx, const Head& ha, const Head& hb) {
  if (ha.index() != hb.index()) return std::nullopt;
  if (const auto* a = std::get_if<HVar>(&ha)) {
    const auto& b = std::get<HVar>(hb);
    if (a->level != b.level) return std::nullopt;
    return a->type;
  }
  if (const auto* a = std::get_if<HCoe>(&ha)) {
    const auto& b = std::get<HCoe>(hb);
    if (!same_dim(cx, a->r, b.r) || !same_dim(cx, a->r2, b.r2)) return std::nullopt;
    Cx ci = cx.with_dim();
    Dim i = Dim::variable(cx.ndims());
    if (!conv_ty(ci, inst_dim(ci, a->line, i), inst_dim(ci, b.line, i))) return std::nullopt;
    if (!conv_tm(cx, a->arg, b.arg, inst_dim(cx, a->line, a->r))) return std::nullopt;
    return inst_dim(cx, a->line, a->r2);
  }
  if (const auto* a = std::get_if<HHCom>(&ha)) {
    const auto& b = std::get<HHCom>(hb);
    if (!same_dim(cx, a->r, b.r) || !same_dim(cx, a->r2, b.r2) || !same_dim(cx, a->s, b.s)) return std::nullopt;
    if (!conv_ty(cx, a->type, b.type)) return std::nullopt;
    if (!conv_tm(cx, a->cap, b.cap, a->type)) return std::nullopt;
    for (int eps = 0; eps < 2; ++eps) {
      Cx face = cx.restrict(a->s, Dim::constant(eps));
      if (!face.classes.consistent()) continue;
      Cx cj = face.with_dim();
      Dim j = Dim::variable(cx.ndims());
      const DimClosure& ta = eps == 0 ? a->tube0 : a->tube1;
      const DimClosure& tb = eps == 0 ? b.tube0 : b.tube1;
      if (!conv_tm(cj, inst_dim(cj, ta, j), inst_dim(cj, tb, j), a->type)) return std::nullopt;
    }
    return a->type;
  }
  const auto& a = std::get<HTyCase>(ha);
  const auto& b = std::get<HTyCase>(hb);
  if (a.k != b.k) return std::nullopt;
  Val u = vuniv(a.k);
  if (!conv_tm(cx, a.scrut, b.scrut, u) || !conv_ty(cx, a.motive, b.motive)) return std::nullopt;
  auto branch = [&](const Closure& ca, const Closure& cb, const std::vector<Val>& types) {
    Cx ci = cx;
    std::vector<Val> args;
    for (const auto& ty : types) {
      args.push_back(fresh_var(ci, ty));
      ci = ci.with_var();
    }
    return conv_tm(ci, inst(ci, ca, args), inst(ci, cb, args), a.motive);
  };
  Val x = fresh_var(cx, u);
  Val x1 = make_var(cx.nvars + 1, u);
  Val q = make_val(VEq{native_line([u](const Cx&, Dim) { return u; }), x, x1});
  bool ok = branch(a.on_pi, b.on_pi, {u, arrow_to_univ(x, a.k)}) &&
            branch(a.on_sg, b.on_sg, {u, arrow_to_univ(x, a.k)}) &&
            branch(a.on_eq, b.on_eq, {u, u, q, x, x1}) && branch(a.on_bool, b.on_bool, {}) &&
            branch(a.on_univ, b.on_univ, {});
  if (!ok) return std::nullopt;
  return a.motive;
}

}  // namespace

bool conv_tm(const Cx& cx, const Val& m, const Val& n, const Val& type) {
  if (!cx.classes.consistent()) return true;
  if (m == n) return true;
  if (conv_tm_direct(cx, m, n, type)) return true;
  return split(cx, [&](const Cx& face) { return conv_tm(face, m, n, type); });
}

bool conv_ty(const Cx& cx, const Val& a, const Val& b) {
  if (!cx.classes.consistent()) return true;
  if (a == b) return true;
  if (conv_ty_direct(cx, a, b)) return true;
  return split(cx, [&](const Cx& face) { return conv_ty(face, a, b); });
}

std::optional<Val> conv_neutral(const Cx& cx, const Neutral& a, const Neutral& b) {
  if (a.spine.size() != b.spine.size()) return std::nullopt;
  auto head_type = conv_head(cx, a.head, b.head);
  if (!head_type) return std::nullopt;
  Val type = *head_type;
  auto prefix = std::make_shared<Neutral>();
  prefix->head = a.head;
  prefix->stamp = a.stamp;
  for (std::size_t idx = 0; idx < a.spine.size(); ++idx) {
    const Frame& fa = a.spine[idx];
    const Frame& fb = b.spine[idx];
    if (fa.index() != fb.index()) return std::nullopt;
    Val ty = force(cx, type);
    Val prefix_val = make_val(VNeutral{prefix, ty});
    if (const auto* app = std::get_if<FApp>(&fa)) {
      const auto* pi = as<VPi>(ty);
      if (!pi) return std::nullopt;
      if (!conv_tm(cx, app->arg, std::get<FApp>(fb).arg, pi->dom)) return std::nullopt;
      type = inst(cx, pi->cod, {app->arg});
    } else if (std::holds_alternative<FFst>(fa)) {
      const auto* sg = as<VSg>(ty);
      if (!sg) return std::nullopt;
      type = sg->dom;
    } else if (std::holds_alternative<FSnd>(fa)) {
      const auto* sg = as<VSg>(ty);
      if (!sg) return std::nullopt;
      type = inst(cx, sg->cod, {do_fst(cx, prefix_val)});
    } else if (const auto* pa = std::get_if<FPApp>(&fa)) {
      const auto* eq = as<VEq>(ty);
      if (!eq || !same_dim(cx, pa->r, std::get<FPApp>(fb).r)) return std::nullopt;
      type = inst_dim(cx, eq->line, pa->r);
    } else {
      const auto& ia = std::get<FIf>(fa);
      const auto& ib = std::get<FIf>(fb);
      Val x = fresh_var(cx, vbool());
      Cx c1 = cx.with_var();
      if (!conv_ty(c1, inst(c1, ia.motive, {x}), inst(c1, ib.motive, {x}))) return std::nullopt;
      if (!conv_tm(cx, ia.on_true, ib.on_true, inst(cx, ia.motive, {vtrue()})) ||
          !conv_tm(cx, ia.on_false, ib.on_false, inst(cx, ia.motive, {vfalse()})))
        return std::nullopt;
      type = inst(cx, ia.motive, {prefix_val});
    }
    prefix = std::make_shared<Neutral>(*prefix);
    prefix->spine.push_back(fa);
  }
  return type;
}

}  // namespace xtt
