#include "xtt/syntax.hpp"

#include <algorithm>
#include <set>

namespace xtt {

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::Var: return "var";
    case Tag::Global: return "global";
    case Tag::Pi: return "pi";
    case Tag::Sg: return "sigma";
    case Tag::Eq: return "Eq";
    case Tag::Lift: return "lift";
    case Tag::Univ: return "U";
    case Tag::Bool: return "bool";
    case Tag::Lam: return "fun";
    case Tag::App: return "app";
    case Tag::Pair: return "pair";
    case Tag::Fst: return "fst";
    case Tag::Snd: return "snd";
    case Tag::DLam: return "dim-lambda";
    case Tag::PApp: return "papp";
    case Tag::True: return "tt";
    case Tag::False: return "ff";
    case Tag::If: return "if";
    case Tag::Coe: return "coe";
    case Tag::HCom: return "hcom";
    case Tag::TyCase: return "tycase";
    case Tag::Ann: return "ascription";
    case Tag::Let: return "let";
    case Tag::Com: return "com";
  }
  return "?";
}

// --- Cube -------------------------------------------------------------------

int Cube::dim_count() const {
  int n = 0;
  for (const auto& e : entries) n += std::holds_alternative<DimBinder>(e) ? 1 : 0;
  return n;
}

std::vector<Constraint> Cube::constraints() const {
  std::vector<Constraint> out;
  for (const auto& e : entries)
    if (const auto* c = std::get_if<Constraint>(&e)) out.push_back(*c);
  return out;
}

Cube Cube::with_dim(std::string name) const {
  Cube c = *this;
  c.entries.emplace_back(DimBinder{std::move(name)});
  return c;
}

Cube Cube::with_constraint(Dim lhs, Dim rhs) const {
  Cube c = *this;
  c.entries.emplace_back(Constraint{lhs, rhs});
  return c;
}

void Cube::validate() const {
  int seen = 0;
  for (const auto& e : entries) {
    if (std::holds_alternative<DimBinder>(e)) {
      ++seen;
      continue;
    }
    const auto& c = std::get<Constraint>(e);
    for (Dim d : {c.lhs, c.rhs})
      if (d.is_var() && (d.var < 0 || d.var >= seen))
        throw ScopeError("constraint mentions an undeclared dimension");
  }
}

// --- construction -----------------------------------------------------------

Binders binders_of(Tag tag, std::size_t slot) {
  switch (tag) {
    case Tag::Pi:
    case Tag::Sg: return slot == 1 ? Binders{1, 0} : Binders{};
    case Tag::Eq: return slot == 0 ? Binders{0, 1} : Binders{};
    case Tag::Lam: return {1, 0};
    case Tag::App: return slot == 3 ? Binders{1, 0} : Binders{};
    case Tag::Fst:
    case Tag::Snd: return slot == 2 ? Binders{1, 0} : Binders{};
    case Tag::DLam: return {0, 1};
    case Tag::PApp: return slot == 1 ? Binders{0, 1} : Binders{};
    case Tag::If: return slot == 0 ? Binders{1, 0} : Binders{};
    case Tag::Coe: return slot == 0 ? Binders{0, 1} : Binders{};
    case Tag::HCom: return slot >= 2 ? Binders{0, 1} : Binders{};
    case Tag::TyCase:
      if (slot == 2 || slot == 3) return {2, 0};
      if (slot == 4) return {5, 0};
      return {};
    case Tag::Let: return slot == 2 ? Binders{1, 0} : Binders{};
    case Tag::Com: return (slot == 0 || slot >= 2) ? Binders{0, 1} : Binders{};
    default: return {};
  }
}

std::size_t slot_count(Tag tag) {
  switch (tag) {
    case Tag::Var: case Tag::Global: case Tag::Univ: case Tag::Bool: case Tag::True: case Tag::False: return 0;
    case Tag::Lift: case Tag::Lam: case Tag::DLam: return 1;
    case Tag::Pi: case Tag::Sg: case Tag::Pair: case Tag::PApp: case Tag::Coe: case Tag::Ann: return 2;
    case Tag::Eq: case Tag::Fst: case Tag::Snd: case Tag::Let: return 3;
    case Tag::App: case Tag::If: case Tag::HCom: case Tag::Com: return 4;
    case Tag::TyCase: return 7;
  }
  return 0;
}

namespace {

Term make(Tag tag, std::vector<Term> kids = {}, std::vector<Dim> dims = {},
          std::vector<std::string> hints = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = tag;
  n->kids = std::move(kids);
  n->dims = std::move(dims);
  n->hints = std::move(hints);
  return n;
}

}  // namespace

Term mk_var(int index) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tag::Var;
  n->index = index;
  return n;
}

Term mk_global(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tag::Global;
  n->name = std::move(name);
  return n;
}

Term mk_pi(Term a, Term b, std::string x) { return make(Tag::Pi, {std::move(a), std::move(b)}, {}, {std::move(x)}); }
Term mk_sg(Term a, Term b, std::string x) { return make(Tag::Sg, {std::move(a), std::move(b)}, {}, {std::move(x)}); }
Term mk_eq(Term line, Term n0, Term n1, std::string i) {
  return make(Tag::Eq, {std::move(line), std::move(n0), std::move(n1)}, {}, {std::move(i)});
}

Term mk_lift(int k, int l, Term a) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tag::Lift;
  n->k = k;
  n->l = l;
  n->kids = {std::move(a)};
  return n;
}

Term mk_univ(int k) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tag::Univ;
  n->k = k;
  return n;
}

Term mk_bool() { return make(Tag::Bool); }
Term mk_lam(Term body, std::string x) { return make(Tag::Lam, {std::move(body)}, {}, {std::move(x)}); }
Term mk_app(Term f, Term arg, Term dom, Term cod) {
  return make(Tag::App, {std::move(f), std::move(arg), std::move(dom), std::move(cod)}, {}, {"x"});
}
Term mk_pair(Term a, Term b) { return make(Tag::Pair, {std::move(a), std::move(b)}); }
Term mk_fst(Term m, Term dom, Term cod) { return make(Tag::Fst, {std::move(m), std::move(dom), std::move(cod)}, {}, {"x"}); }
Term mk_snd(Term m, Term dom, Term cod) { return make(Tag::Snd, {std::move(m), std::move(dom), std::move(cod)}, {}, {"x"}); }
Term mk_dlam(Term body, std::string i) { return make(Tag::DLam, {std::move(body)}, {}, {std::move(i)}); }
Term mk_papp(Term m, Dim r, Term line) { return make(Tag::PApp, {std::move(m), std::move(line)}, {r}, {"i"}); }
Term mk_true() { return make(Tag::True); }
Term mk_false() { return make(Tag::False); }
Term mk_if(Term motive, Term scrut, Term t, Term f) {
  return make(Tag::If, {std::move(motive), std::move(scrut), std::move(t), std::move(f)}, {}, {"x"});
}
Term mk_coe(Term line, Dim r, Dim r2, Term m, std::string i) {
  return make(Tag::Coe, {std::move(line), std::move(m)}, {r, r2}, {std::move(i)});
}
Term mk_hcom(Term ty, Dim r, Dim r2, Term cap, Dim s, Term tube0, Term tube1, std::string j) {
  return make(Tag::HCom, {std::move(ty), std::move(cap), std::move(tube0), std::move(tube1)}, {r, r2, s},
              {std::move(j)});
}

Term mk_tycase(int k, Term scrut, Term motive, Term on_pi, Term on_sg, Term on_eq, Term on_bool,
               Term on_univ) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tag::TyCase;
  n->k = k;
  n->kids = {std::move(scrut), std::move(motive), std::move(on_pi), std::move(on_sg),
             std::move(on_eq), std::move(on_bool), std::move(on_univ)};
  n->hints = {"A", "B", "A0", "A1", "Q", "y0", "y1"};
  return n;
}

Term mk_ann(Term m, Term a) { return make(Tag::Ann, {std::move(m), std::move(a)}); }
Term mk_let(Term m, Term a, Term body, std::string x) {
  return make(Tag::Let, {std::move(m), std::move(a), std::move(body)}, {}, {std::move(x)});
}
Term mk_com(Term line, Dim r, Dim r2, Term cap, Dim s, Term tube0, Term tube1, std::string i,
            std::string j) {
  return make(Tag::Com, {std::move(line), std::move(cap), std::move(tube0), std::move(tube1)}, {r, r2, s},
              {std::move(i), std::move(j)});
}

Term with_span(Term t, Span span) {
  auto n = std::make_shared<TermNode>(*t);
  n->span = span;
  return n;
}

Term with_kids(const Term& t, std::vector<Term> kids, std::vector<Dim> dims) {
  auto n = std::make_shared<TermNode>(*t);
  n->kids = std::move(kids);
  n->dims = std::move(dims);
  return n;
}

// --- traversal --------------------------------------------------------------

namespace {

Term map_rec(const Term& t, const VarMap& m, int td, int dd) {
  if (!t) return t;
  if (t->tag == Tag::Var) {
    if (!m.on_var) return t;
    Term r = m.on_var(t->index, td, dd);
    return r ? r : t;
  }
  bool changed = false;
  std::vector<Dim> dims = t->dims;
  if (m.on_dim) {
    for (auto& d : dims) {
      if (!d.is_var()) continue;
      Dim nd = m.on_dim(d.var, dd);
      if (!(nd == d)) {
        d = nd;
        changed = true;
      }
    }
  }
  std::vector<Term> kids;
  kids.reserve(t->kids.size());
  for (std::size_t s = 0; s < t->kids.size(); ++s) {
    Binders b = binders_of(t->tag, s);
    Term k = map_rec(t->kids[s], m, td + b.terms, dd + b.dims);
    changed = changed || k != t->kids[s];
    kids.push_back(std::move(k));
  }
  if (!changed) return t;
  return with_kids(t, std::move(kids), std::move(dims));
}

}  // namespace

Term map_vars(const Term& t, const VarMap& m) { return map_rec(t, m, 0, 0); }

Dim shift_dim(Dim d, int by, int cut) {
  if (d.is_var() && d.var >= cut) return Dim::variable(d.var + by);
  return d;
}

Term shift(const Term& t, int term_by, int dim_by, int term_cut, int dim_cut) {
  if (term_by == 0 && dim_by == 0) return t;
  VarMap m;
  if (term_by != 0)
    m.on_var = [=](int idx, int td, int) -> Term {
      return idx >= term_cut + td ? mk_var(idx + term_by) : nullptr;
    };
  if (dim_by != 0)
    m.on_dim = [=](int idx, int dd) { return shift_dim(Dim::variable(idx), dim_by, dim_cut + dd); };
  return map_vars(t, m);
}

Term subst_dim(const Term& t, Dim r, int target) {
  if (target < 0) throw ScopeError("negative dimension index");
  VarMap m;
  m.on_dim = [=](int idx, int dd) {
    if (idx == target + dd) return shift_dim(r, dd);
    return Dim::variable(idx);
  };
  return map_vars(t, m);
}

Term instantiate_dim(const Term& body, Dim r) {
  VarMap m;
  m.on_dim = [=](int idx, int dd) {
    if (idx == dd) return shift_dim(r, dd);
    if (idx > dd) return Dim::variable(idx - 1);
    return Dim::variable(idx);
  };
  return map_vars(body, m);
}

Term subst_tm(const Term& t, const Term& v, int target) {
  if (target < 0) throw ScopeError("negative variable index");
  VarMap m;
  m.on_var = [&](int idx, int td, int dd) -> Term {
    if (idx == target + td) return shift(v, td, dd);
    if (idx > target + td) return mk_var(idx - 1);
    return nullptr;
  };
  return map_vars(t, m);
}

Term instantiate(const Term& body, const std::vector<Term>& args) {
  const int n = static_cast<int>(args.size());
  if (n == 0) return body;
  VarMap m;
  m.on_var = [&](int idx, int td, int dd) -> Term {
    if (idx < td) return nullptr;
    int rel = idx - td;
    if (rel < n) return shift(args[n - 1 - rel], td, dd);
    return mk_var(idx - n);
  };
  return map_vars(body, m);
}

bool occurs_dim(const Term& t, int index) {
  bool found = false;
  VarMap m;
  m.on_dim = [&](int idx, int dd) {
    if (idx == index + dd) found = true;
    return Dim::variable(idx);
  };
  map_vars(t, m);
  return found;
}

bool occurs_var(const Term& t, int index) {
  bool found = false;
  VarMap m;
  m.on_var = [&](int idx, int td, int) -> Term {
    if (idx == index + td) found = true;
    return nullptr;
  };
  map_vars(t, m);
  return found;
}

std::vector<int> free_dims(const Term& t) {
  std::set<int> out;
  VarMap m;
  m.on_dim = [&](int idx, int dd) {
    if (idx >= dd) out.insert(idx - dd);
    return Dim::variable(idx);
  };
  map_vars(t, m);
  return {out.begin(), out.end()};
}

bool dim_eq_syntactic(Dim a, Dim b) { return a == b; }

bool alpha_eq(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tag::Var:
      return a->index == b->index;
    case Tag::Global:
      return a->name == b->name;
    case Tag::Univ:
      return a->k == b->k;
    case Tag::Lift:
      if (a->k != b->k || a->l != b->l) return false;
      break;
    case Tag::TyCase:
      if (a->k != b->k) return false;
      break;
    default:
      break;
  }
  if (a->dims != b->dims || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alpha_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

void check_scope(const Term& t, int term_scope, int dim_scope) {
  VarMap m;
  m.on_var = [&](int idx, int td, int) -> Term {
    if (idx < 0 || idx >= term_scope + td) throw ScopeError("term variable index out of scope");
    return nullptr;
  };
  m.on_dim = [&](int idx, int dd) {
    if (idx < 0 || idx >= dim_scope + dd) throw ScopeError("dimension index out of scope");
    return Dim::variable(idx);
  };
  map_vars(t, m);
}

bool is_type_former(const Term& t) {
  switch (t->tag) {
    case Tag::Pi:
    case Tag::Sg:
    case Tag::Eq:
    case Tag::Lift:
    case Tag::Univ:
    case Tag::Bool:
      return true;
    default:
      return false;
  }
}

}  // namespace xtt
