#include "xtt/check.hpp"

#include <set>

#include "xtt/conv.hpp"

namespace xtt {

// --- state ------------------------------------------------------------------

namespace {

std::string unique_name(const std::vector<std::string>& scope, std::string base, const char* fallback) {
  if (base.empty() || base == "_") base = fallback;
  auto taken = [&](const std::string& s) {
    for (const auto& x : scope)
      if (x == s) return true;
    return false;
  };
  if (!taken(base)) return base;
  for (int k = 1;; ++k)
    if (!taken(base + std::to_string(k))) return base + std::to_string(k);
}

}  // namespace

CheckState empty_state(const GlobalTable* globals, const EvalConfig* cfg) {
  CheckState st;
  st.cx = make_cx(st.cube, 0, globals, cfg);
  return st;
}

CheckState CheckState::with_var(std::string name, Term type, Val type_value) const {
  CheckState st = *this;
  st.names.push_back(unique_name(names, std::move(name), "x"));
  st.env.vals.push_back(make_var(cx.nvars, type_value));
  st.types.push_back(std::move(type_value));
  st.tele.types.push_back(std::move(type));
  st.cx = cx.with_var();
  return st;
}

CheckState CheckState::with_dim(std::string name) const {
  CheckState st = *this;
  st.dim_names.push_back(unique_name(dim_names, std::move(name), "i"));
  st.env.dims.push_back(Dim::variable(cx.ndims()));
  st.cube = cube.with_dim(st.dim_names.back());
  st.tele.over = st.cube;
  st.cx = cx.with_dim();
  return st;
}

CheckState CheckState::with_constraint(Dim a, Dim b) const {
  CheckState st = *this;
  st.cube = cube.with_constraint(a, b);
  st.tele.over = st.cube;
  st.cx = cx.restrict(a, b);
  return st;
}

Val CheckState::eval(const Term& t) const { return xtt::eval(cx, t, env); }

Term CheckState::quote_type(const Val& v) const { return readback_type(cx, v); }

std::string CheckState::show_type(const Val& v) const {
  try {
    return print(quote_type(v), PrintScope{names, dim_names}, PrintOptions{false});
  } catch (const std::exception&) {
    return "<type>";
  }
}

std::string CheckState::show(const Val& v, const Val& type) const {
  try {
    return print(readback(cx, v, type), PrintScope{names, dim_names}, PrintOptions{false});
  } catch (const std::exception&) {
    return "<term>";
  }
}

// --- helpers ----------------------------------------------------------------

namespace {

thread_local Span current_span;

struct SpanGuard {
  Span saved;
  explicit SpanGuard(const Term& t) : saved(current_span) {
    if (t && t->span.valid()) current_span = t->span;
  }
  ~SpanGuard() { current_span = saved; }
};

[[noreturn]] void error(std::string code, std::string message, std::string expected = {},
                        std::string actual = {}) {
  fail(current_span, std::move(code), std::move(message), std::move(expected), std::move(actual));
}

const char* describe(Tag tag) {
  switch (tag) {
    case Tag::Lam: return "a function";
    case Tag::Pair: return "a pair";
    case Tag::DLam: return "a dimension abstraction";
    case Tag::True:
    case Tag::False: return "a boolean";
    default: return "a type";
  }
}

// The defining expansion of heterogeneous composition:
//   hcom A[r'/i] r r' (coe i.A r r' M) [s=e => j. coe i.A j r' N_e]
Term expand_com(const Term& line, Dim r, Dim r2, const Term& cap, Dim s, const Term& t0, const Term& t1) {
  Term line_under_j = shift(line, 0, 1, 0, 1);
  Dim r2_under_j = shift_dim(r2, 1);
  auto tube = [&](const Term& n) { return mk_coe(line_under_j, Dim::variable(0), r2_under_j, n); };
  return mk_hcom(instantiate_dim(line, r2), r, r2, mk_coe(line, r, r2, cap), s, tube(t0), tube(t1));
}

// Elaboration under an inconsistent cube: every scope-correct term is accepted.
Term collapse(const Term& t) {
  if (!t) return mk_bool();
  switch (t->tag) {
    case Tag::Ann: return collapse(t->kids[0]);
    case Tag::Let: return collapse(subst_tm(t->kids[2], t->kids[0], 0));
    case Tag::Com:
      return collapse(expand_com(t->kids[0], t->dims[0], t->dims[1], t->kids[1], t->dims[2], t->kids[2], t->kids[3]));
    default: break;
  }
  std::vector<Term> kids;
  for (std::size_t slot = 0; slot < slot_count(t->tag); ++slot)
    kids.push_back(collapse(slot < t->kids.size() ? t->kids[slot] : nullptr));
  Term out = with_kids(t, std::move(kids), t->dims);
  if (t->tag == Tag::TyCase && t->k < 0) {
    auto n = std::make_shared<TermNode>(*out);
    n->k = 0;
    out = n;
  }
  return out;
}

std::string hint(const Term& t, std::size_t n, const char* fallback) {
  return n < t->hints.size() ? t->hints[n] : fallback;
}

Term subsume(const CheckState& st, const Term& core, const Val& inferred, const Val& expected) {
  Val a = force(st.cx, inferred), b = force(st.cx, expected);
  const auto* ua = as<VUniv>(a);
  const auto* ub = as<VUniv>(b);
  if (ua && ub) {
    if (ua->k == ub->k) return core;
    if (ua->k < ub->k) return mk_lift(ua->k, ub->k, core);
    error("E-LEVEL", "universe level too large", st.show_type(b), st.show_type(a));
  }
  if (conv_ty(st.cx, a, b)) return core;
  error("E-TYPE-MISMATCH", "type mismatch", st.show_type(b), st.show_type(a));
}

Dim dim_value(const CheckState& st, Dim d) { return eval_dim(st.env, d); }

// Checks the boundary of a composite's tube against its cap at j = r.
void check_faces(const CheckState& st, Dim s, Dim r, const Term tubes[2], const std::function<Val(const CheckState&, Dim)>& type_at,
                 const Val& cap, const Val& cap_type, Term out[2], const std::string& jname) {
  for (int eps = 0; eps < 2; ++eps) {
    CheckState face = st.with_constraint(s, Dim::constant(eps));
    CheckState ext = face.with_dim(jname);
    Dim j = Dim::variable(st.cx.ndims());
    out[eps] = check(ext, tubes[eps], type_at(ext, j));
    if (!ext.consistent()) continue;
    CheckState meet = ext.with_constraint(j, r);
    if (!meet.consistent()) continue;
    Val tube = meet.eval(out[eps]);
    if (!conv_tm(meet.cx, tube, cap, cap_type))
      error("E-FACE", "tube " + std::to_string(eps) + " does not agree with the cap at " + jname + " = r",
            meet.show(cap, cap_type), meet.show(tube, cap_type));
  }
}

Val univ_arrow(const Val& dom, int k) { return make_val(VPi{dom, constant_closure(vuniv(k))}); }

}  // namespace

// --- checking ---------------------------------------------------------------

Term check(const CheckState& st, const Term& raw, const Val& type) {
  SpanGuard guard(raw);
  if (!st.consistent()) return collapse(raw);
  Val ty = force(st.cx, type);
  const auto& k = raw->kids;
  switch (raw->tag) {
    case Tag::Lam: {
      const auto* pi = as<VPi>(ty);
      if (!pi) error("E-TYPE-MISMATCH", "expected " + st.show_type(ty) + " but found a function", st.show_type(ty), "function");
      CheckState ext = st.with_var(hint(raw, 0, "x"), st.quote_type(pi->dom), pi->dom);
      Val x = ext.env.vals.back();
      return mk_lam(check(ext, k[0], inst(ext.cx, pi->cod, {x})), ext.names.back());
    }
    case Tag::Pair: {
      const auto* sg = as<VSg>(ty);
      if (!sg) error("E-TYPE-MISMATCH", "expected " + st.show_type(ty) + " but found a pair", st.show_type(ty), "pair");
      Term a = check(st, k[0], sg->dom);
      Term b = check(st, k[1], inst(st.cx, sg->cod, {st.eval(a)}));
      return mk_pair(a, b);
    }
    case Tag::DLam: {
      const auto* eq = as<VEq>(ty);
      if (!eq)
        error("E-TYPE-MISMATCH", "expected " + st.show_type(ty) + " but found a dimension abstraction",
              st.show_type(ty), "dimension abstraction");
      CheckState ext = st.with_dim(hint(raw, 0, "i"));
      Dim i = Dim::variable(st.cx.ndims());
      Term body = check(ext, k[0], inst_dim(ext.cx, eq->line, i));
      for (int eps = 0; eps < 2; ++eps) {
        CheckState face = ext.with_constraint(i, Dim::constant(eps));
        if (!face.consistent()) continue;
        Val at = inst_dim(face.cx, eq->line, Dim::constant(eps));
        Val got = face.eval(body);
        const Val& want = eps == 0 ? eq->left : eq->right;
        if (!conv_tm(face.cx, got, want, at))
          error("E-BOUNDARY",
                "boundary mismatch at " + ext.dim_names.back() + "=" + std::to_string(eps), face.show(want, at),
                face.show(got, at));
      }
      return mk_dlam(body, ext.dim_names.back());
    }
    case Tag::Let: {
      Term m, a;
      if (k[1]) {
        a = check_type(st, k[1]).first;
        m = check(st, k[0], st.eval(a));
      } else {
        auto [mc, mty] = infer(st, k[0]);
        m = mc;
        a = st.quote_type(mty);
      }
      return check(st, subst_tm(k[2], mk_ann(m, a), 0), ty);
    }
    case Tag::If:
      if (!k[0]) {
        Term motive = shift(st.quote_type(ty), 1);
        return check(st, with_kids(raw, {motive, k[1], k[2], k[3]}, raw->dims), ty);
      }
      break;
    default: break;
  }
  if (const auto* u = as<VUniv>(ty); u && is_type_former(raw)) {
    auto [core, level] = check_type(st, raw);
    if (level > u->k)
      error("E-LEVEL", "type of level " + std::to_string(level) + " used at universe level " + std::to_string(u->k),
            st.show_type(ty), "U " + std::to_string(level));
    return core;
  }
  if (raw->tag == Tag::Lam || raw->tag == Tag::Pair || raw->tag == Tag::DLam)
    error("E-TYPE-MISMATCH", std::string("expected ") + st.show_type(ty) + " but found " + describe(raw->tag),
          st.show_type(ty), describe(raw->tag));
  auto [core, inferred] = infer(st, raw);
  return subsume(st, core, inferred, ty);
}

std::pair<Term, Val> infer(const CheckState& st, const Term& raw) {
  SpanGuard guard(raw);
  if (!st.consistent()) return {collapse(raw), vbool()};
  const auto& k = raw->kids;
  switch (raw->tag) {
    case Tag::Var: {
      const int n = static_cast<int>(st.types.size());
      if (raw->index < 0 || raw->index >= n) error("E-SCOPE", "variable out of scope");
      return {mk_var(raw->index), st.types[n - 1 - raw->index]};
    }
    case Tag::Global: {
      const GlobalTable* g = st.cx.globals;
      auto it = g ? g->find(raw->name) : GlobalTable::const_iterator{};
      if (!g || it == g->end()) error("E-SCOPE", "unknown definition '" + raw->name + "'");
      if (!it->second.referenceable)
        error("E-SCOPE", "definition '" + raw->name + "' is checked under its own dimension context and cannot be referenced");
      return {mk_global(raw->name), xtt::eval(st.cx, it->second.type, Env{})};
    }
    case Tag::Pi: case Tag::Sg: case Tag::Eq: case Tag::Lift: case Tag::Univ: case Tag::Bool: {
      auto [core, level] = check_type(st, raw);
      return {core, vuniv(level)};
    }
    case Tag::True: return {mk_true(), vbool()};
    case Tag::False: return {mk_false(), vbool()};
    case Tag::Ann: {
      Term a = check_type(st, k[1]).first;
      Val av = st.eval(a);
      return {check(st, k[0], av), av};
    }
    case Tag::Let: {
      Term m, a;
      if (k[1]) {
        a = check_type(st, k[1]).first;
        m = check(st, k[0], st.eval(a));
      } else {
        auto [mc, mty] = infer(st, k[0]);
        m = mc;
        a = st.quote_type(mty);
      }
      return infer(st, subst_tm(k[2], mk_ann(m, a), 0));
    }
    case Tag::App: {
      Term f;
      Val fty;
      if (k[2] && k[3]) {
        Term dom = check_type(st, k[2]).first;
        CheckState ext = st.with_var("x", dom, st.eval(dom));
        fty = st.eval(mk_pi(dom, check_type(ext, k[3]).first));
        f = check(st, k[0], fty);
      } else {
        std::tie(f, fty) = infer(st, k[0]);
      }
      Val ft = force(st.cx, fty);
      const auto* pi = as<VPi>(ft);
      if (!pi) error("E-TYPE-MISMATCH", "applying a non-function of type " + st.show_type(ft), "function type", st.show_type(ft));
      Term a = check(st, k[1], pi->dom);
      Term dom = st.quote_type(pi->dom);
      CheckState ext = st.with_var("x", dom, pi->dom);
      Term cod = ext.quote_type(inst(ext.cx, pi->cod, {ext.env.vals.back()}));
      return {mk_app(f, a, dom, cod), inst(st.cx, pi->cod, {st.eval(a)})};
    }
    case Tag::Fst:
    case Tag::Snd: {
      Term p;
      Val pty;
      if (k[1] && k[2]) {
        Term dom = check_type(st, k[1]).first;
        CheckState ext = st.with_var("x", dom, st.eval(dom));
        pty = st.eval(mk_sg(dom, check_type(ext, k[2]).first));
        p = check(st, k[0], pty);
      } else {
        std::tie(p, pty) = infer(st, k[0]);
      }
      Val pt = force(st.cx, pty);
      const auto* sg = as<VSg>(pt);
      if (!sg) error("E-TYPE-MISMATCH", "projection from a non-pair of type " + st.show_type(pt), "pair type", st.show_type(pt));
      Term dom = st.quote_type(sg->dom);
      CheckState ext = st.with_var("x", dom, sg->dom);
      Term cod = ext.quote_type(inst(ext.cx, sg->cod, {ext.env.vals.back()}));
      if (raw->tag == Tag::Fst) return {mk_fst(p, dom, cod), sg->dom};
      return {mk_snd(p, dom, cod), inst(st.cx, sg->cod, {do_fst(st.cx, st.eval(p))})};
    }
    case Tag::PApp: {
      auto [p, pty] = infer(st, k[0]);
      Val pt = force(st.cx, pty);
      const auto* eq = as<VEq>(pt);
      if (!eq)
        error("E-TYPE-MISMATCH", "dimension application of a non-equality of type " + st.show_type(pt),
              "equality type", st.show_type(pt));
      CheckState ext = st.with_dim("i");
      Dim i = Dim::variable(st.cx.ndims());
      if (k[1]) {
        Term given = check_type(ext, k[1]).first;
        if (!conv_ty(ext.cx, ext.eval(given), inst_dim(ext.cx, eq->line, i)))
          error("E-TYPE-MISMATCH", "dimension application annotation does not match the equality type",
                st.show_type(pt), "");
      }
      Term line = ext.quote_type(inst_dim(ext.cx, eq->line, i));
      Dim r = dim_value(st, raw->dims[0]);
      return {mk_papp(p, raw->dims[0], line), inst_dim(st.cx, eq->line, r)};
    }
    case Tag::If: {
      Term scrut = check(st, k[1], vbool());
      if (!k[0]) {
        auto [t, c] = infer(st, k[2]);
        Term f = check(st, k[3], c);
        return {mk_if(shift(st.quote_type(c), 1), scrut, t, f), c};
      }
      CheckState ext = st.with_var(hint(raw, 0, "x"), mk_bool(), vbool());
      Term motive = check_type(ext, k[0]).first;
      Closure mc{motive, st.env, {}, {}};
      Term t = check(st, k[2], inst(st.cx, mc, {vtrue()}));
      Term f = check(st, k[3], inst(st.cx, mc, {vfalse()}));
      return {mk_if(motive, scrut, t, f), inst(st.cx, mc, {st.eval(scrut)})};
    }
    case Tag::Coe: {
      CheckState ext = st.with_dim(hint(raw, 0, "i"));
      Term line = check_type(ext, k[0]).first;
      Dim r = dim_value(st, raw->dims[0]), r2 = dim_value(st, raw->dims[1]);
      Term m = check(st, k[1], xtt::eval(st.cx, line, st.env.push_dim(r)));
      return {mk_coe(line, raw->dims[0], raw->dims[1], m, ext.dim_names.back()),
              xtt::eval(st.cx, line, st.env.push_dim(r2))};
    }
    case Tag::HCom: {
      Term a = check_type(st, k[0]).first;
      Val av = st.eval(a);
      Term cap = check(st, k[1], av);
      Dim r = dim_value(st, raw->dims[0]), s = dim_value(st, raw->dims[2]);
      Term tubes[2] = {k[2], k[3]};
      Term out[2];
      check_faces(st, s, r, tubes, [av](const CheckState&, Dim) { return av; }, st.eval(cap), av, out,
                  hint(raw, 0, "j"));
      return {mk_hcom(a, raw->dims[0], raw->dims[1], cap, raw->dims[2], out[0], out[1]), av};
    }
    case Tag::Com: {
      CheckState ext = st.with_dim(hint(raw, 0, "i"));
      Term line = check_type(ext, k[0]).first;
      Dim r = dim_value(st, raw->dims[0]), r2 = dim_value(st, raw->dims[1]), s = dim_value(st, raw->dims[2]);
      Val cap_type = xtt::eval(st.cx, line, st.env.push_dim(r));
      Term cap = check(st, k[1], cap_type);
      Term tubes[2] = {k[2], k[3]};
      Term out[2];
      // Inside a tube the line is evaluated under the tube's own environment.
      auto type_at = [line](const CheckState& tube_st, Dim j) {
        Env e = tube_st.env;
        e.dims.pop_back();
        return xtt::eval(tube_st.cx, line, e.push_dim(j));
      };
      check_faces(st, s, r, tubes, type_at, st.eval(cap), cap_type, out, hint(raw, 1, "j"));
      return {expand_com(line, raw->dims[0], raw->dims[1], cap, raw->dims[2], out[0], out[1]),
              xtt::eval(st.cx, line, st.env.push_dim(r2))};
    }
    case Tag::TyCase: {
      int level = raw->k;
      Term scrut;
      if (level >= 0) {
        scrut = check(st, k[0], vuniv(level));
      } else {
        auto [sc, sty] = infer(st, k[0]);
        const auto* u = as<VUniv>(force(st.cx, sty));
        if (!u) error("E-TYPE-MISMATCH", "type-case scrutinee is not a type", "U k", st.show_type(sty));
        scrut = sc;
        level = u->k;
      }
      Term motive = check_type(st, k[1]).first;
      Val c = st.eval(motive);
      Val u = vuniv(level);
      Term ut = mk_univ(level);
      auto two = [&](const Term& body) {
        CheckState a = st.with_var("A", ut, u);
        Val av = a.env.vals.back();
        CheckState b = a.with_var("B", mk_pi(mk_var(0), mk_univ(level)), univ_arrow(av, level));
        return check(b, body, c);
      };
      Term on_pi = two(k[2]);
      Term on_sg = two(k[3]);
      CheckState e0 = st.with_var("A0", ut, u);
      CheckState e1 = e0.with_var("A1", ut, u);
      Val a0 = e1.env.vals[e1.env.vals.size() - 2], a1 = e1.env.vals.back();
      Val qty = make_val(VEq{native_line([u](const Cx&, Dim) { return u; }), a0, a1});
      CheckState e2 = e1.with_var("Q", mk_eq(mk_univ(level), mk_var(1), mk_var(0), "_"), qty);
      CheckState e3 = e2.with_var("y0", mk_var(2), a0);
      CheckState e4 = e3.with_var("y1", mk_var(2), a1);
      Term on_eq = check(e4, k[4], c);
      Term on_bool = check(st, k[5], c);
      Term on_univ = check(st, k[6], c);
      return {mk_tycase(level, scrut, motive, on_pi, on_sg, on_eq, on_bool, on_univ), c};
    }
    case Tag::Pair: {
      auto [a, av] = infer(st, k[0]);
      auto [b, bv] = infer(st, k[1]);
      return {mk_pair(a, b), make_val(VSg{av, constant_closure(bv)})};
    }
    case Tag::DLam: {
      // The endpoints of an unannotated path are its own faces.
      CheckState ext = st.with_dim(hint(raw, 0, "i"));
      auto [body, ty] = infer(ext, k[0]);
      Term line = ext.quote_type(ty);
      Term ann = mk_eq(line, instantiate_dim(body, Dim::zero()), instantiate_dim(body, Dim::one()), hint(raw, 0, "i"));
      return {mk_dlam(body, hint(raw, 0, "i")), st.eval(ann)};
    }
    case Tag::Lam:
      error("E-TYPE-MISMATCH", std::string("cannot infer the type of ") + describe(raw->tag) + "; add an annotation");
  }
  error("E-TYPE-MISMATCH", "cannot infer a type");
}

std::pair<Term, int> check_type(const CheckState& st, const Term& raw) {
  SpanGuard guard(raw);
  if (!st.consistent()) return {collapse(raw), 0};
  const auto& k = raw->kids;
  switch (raw->tag) {
    case Tag::Pi:
    case Tag::Sg: {
      auto [a, ka] = check_type(st, k[0]);
      CheckState ext = st.with_var(hint(raw, 0, "x"), a, st.eval(a));
      auto [b, kb] = check_type(ext, k[1]);
      Term out = raw->tag == Tag::Pi ? mk_pi(a, b, ext.names.back()) : mk_sg(a, b, ext.names.back());
      return {out, std::max(ka, kb)};
    }
    case Tag::Eq: {
      CheckState ext = st.with_dim(hint(raw, 0, "i"));
      auto [line, level] = check_type(ext, k[0]);
      Term n0 = check(st, k[1], xtt::eval(st.cx, line, st.env.push_dim(Dim::zero())));
      Term n1 = check(st, k[2], xtt::eval(st.cx, line, st.env.push_dim(Dim::one())));
      return {mk_eq(line, n0, n1, ext.dim_names.back()), level};
    }
    case Tag::Bool: return {mk_bool(), 0};
    case Tag::Univ:
      if (raw->k < 0) error("E-LEVEL", "negative universe level");
      return {mk_univ(raw->k), raw->k + 1};
    case Tag::Lift: {
      if (raw->k > raw->l)
        error("E-LEVEL", "lift must go up: " + std::to_string(raw->k) + " > " + std::to_string(raw->l));
      Term a = check(st, k[0], vuniv(raw->k));
      return {mk_lift(raw->k, raw->l, a), raw->l};
    }
    default: break;
  }
  auto [core, ty] = infer(st, raw);
  const auto* u = as<VUniv>(force(st.cx, ty));
  if (!u) error("E-TYPE-MISMATCH", "expected a type", "U k", st.show_type(ty));
  return {core, u->k};
}

// --- programs ---------------------------------------------------------------

CheckedProgram check_program(const std::vector<Definition>& defs, const EvalConfig* cfg) {
  CheckedProgram prog;
  std::set<std::string, std::less<>> defined;
  for (const auto& def : defs) {
    try {
      current_span = def.span;
      if (defined.count(def.name)) fail(def.span, "E-SCOPE", "duplicate definition '" + def.name + "'");
      Scope scope;
      scope.is_global = [&defined](std::string_view n) { return defined.count(n) > 0; };
      CheckState st = empty_state(&prog.globals, cfg);
      bool has_dims = false, seen_term = false;
      for (const auto& p : def.params) {
        current_span = p.span;
        switch (p.kind) {
          case Param::Kind::Dim:
          case Param::Kind::Constraint:
            if (seen_term) fail(p.span, "E-PARSE", "dimension parameters must precede term parameters");
            has_dims = true;
            if (p.kind == Param::Kind::Dim) {
              for (const auto& n : p.names) {
                scope.dims.push_back(n);
                st = st.with_dim(n);
              }
            } else {
              Dim a = eval_dim(st.env, resolve_dim(p.lhs, scope));
              Dim b = eval_dim(st.env, resolve_dim(p.rhs, scope));
              st = st.with_constraint(a, b);
            }
            break;
          case Param::Kind::Term: {
            seen_term = true;
            Term raw = resolve(p.type, scope);
            for (const auto& n : p.names) {
              Term ty = check_type(st, raw).first;
              st = st.with_var(n, ty, st.eval(ty));
              scope.terms.push_back(n);
              raw = shift(raw, 1);
            }
            break;
          }
        }
      }
      Term type, body;
      if (def.type) {
        type = check_type(st, resolve(def.type, scope)).first;
        body = check(st, resolve(def.body, scope), st.eval(type));
      } else {
        auto [b, ty] = infer(st, resolve(def.body, scope));
        body = b;
        type = st.consistent() ? st.quote_type(ty) : mk_bool();
      }
      CheckedDef out;
      out.name = def.name;
      out.span = def.span;
      if (!has_dims) {
        for (std::size_t i = st.tele.types.size(); i-- > 0;) {
          type = mk_pi(st.tele.types[i], type, st.names[i]);
          body = mk_lam(body, st.names[i]);
        }
        out.referenceable = true;
      } else {
        out.cube = st.cube;
        out.tele = st.tele;
        out.names = st.names;
        out.dim_names = st.dim_names;
        out.referenceable = false;
      }
      out.type = type;
      out.body = body;
      prog.globals[def.name] = GlobalDef{type, body, out.referenceable};
      defined.insert(def.name);
      prog.defs.push_back(std::move(out));
    } catch (const DiagnosticError& e) {
      Diagnostic d = e.diag;
      d.message = "in definition '" + def.name + "': " + d.message;
      prog.diagnostics.push_back(std::move(d));
    } catch (const KernelError& e) {
      prog.diagnostics.push_back(
          Diagnostic{def.span, "E-INTERNAL", "in definition '" + def.name + "': " + e.what(), {}, {}});
    }
  }
  return prog;
}

std::pair<Term, Term> elaborate(std::string_view term, std::string_view type, const CheckedProgram* prelude,
                                const EvalConfig* cfg) {
  Scope scope;
  if (prelude) scope.is_global = [prelude](std::string_view n) { return prelude->globals.count(n) > 0; };
  CheckState st = empty_state(prelude ? &prelude->globals : nullptr, cfg);
  if (type.empty()) {
    auto [tm, ty] = infer(st, resolve(parse_term(term), scope));
    return {tm, st.quote_type(ty)};
  }
  Term ty = check_type(st, resolve(parse_term(type), scope)).first;
  Term tm = check(st, resolve(parse_term(term), scope), st.eval(ty));
  return {tm, ty};
}

}  // namespace xtt
