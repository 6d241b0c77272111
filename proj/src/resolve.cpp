#include <algorithm>

#include "xtt/surface.hpp"

namespace xtt {

namespace {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

[[noreturn]] void unbound(Span span, const std::string& what, const std::string& name,
                          const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::max<std::size_t>(2, name.size() / 2) + 1;
  for (const auto& c : candidates) {
    if (c == "_") continue;
    std::size_t d = edit_distance(name, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  std::string msg = "unbound " + what + " '" + name + "'";
  if (!best.empty()) msg += "; did you mean '" + best + "'?";
  fail(span, "E-SCOPE", msg);
}

}  // namespace

Dim resolve_dim(const SurfaceDim& d, const Scope& scope) {
  if (d.konst >= 0) return Dim::constant(d.konst);
  for (std::size_t k = scope.dims.size(); k-- > 0;)
    if (scope.dims[k] == d.name && d.name != "_") return Dim::variable(static_cast<int>(scope.dims.size() - 1 - k));
  unbound(d.span, "dimension", d.name, scope.dims);
}

Term resolve(const SurfaceTerm& t, const Scope& scope) {
  if (!t) return nullptr;
  if (t->tag == Tag::Var) {
    for (std::size_t k = scope.terms.size(); k-- > 0;)
      if (scope.terms[k] == t->name) return with_span(mk_var(static_cast<int>(scope.terms.size() - 1 - k)), t->span);
    if (scope.is_global && scope.is_global(t->name)) return with_span(mk_global(t->name), t->span);
    unbound(t->span, "variable", t->name, scope.terms);
  }
  auto n = std::make_shared<TermNode>();
  n->tag = t->tag;
  n->k = t->k;
  n->l = t->l;
  n->name = t->name;
  n->span = t->span;
  for (const auto& d : t->dims) n->dims.push_back(resolve_dim(d, scope));
  for (std::size_t slot = 0; slot < slot_count(t->tag); ++slot) {
    Binders b = binders_of(t->tag, slot);
    const std::vector<std::string> none;
    const auto& names = slot < t->binders.size() ? t->binders[slot] : none;
    if (slot >= t->kids.size() || !t->kids[slot]) {
      n->kids.push_back(nullptr);
      continue;
    }
    if (static_cast<int>(names.size()) != b.terms + b.dims)
      fail(t->kids[slot]->span, "E-PARSE", "wrong number of binders");
    Scope inner = scope;
    for (const auto& x : names) {
      if (b.dims > 0) inner.dims.push_back(x);
      else inner.terms.push_back(x);
      n->hints.push_back(x);
    }
    n->kids.push_back(resolve(t->kids[slot], inner));
  }
  return n;
}

}  // namespace xtt
