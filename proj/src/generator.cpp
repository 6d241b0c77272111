#include <memory>
#include <random>
#include <stdexcept>

#include "xtt/testkit.hpp"

namespace xtt {

namespace {

struct GTy;
using GTyPtr = std::shared_ptr<const GTy>;
struct GTy {
  enum Kind { Bool, Fun, Pair } kind = Bool;
  GTyPtr a, b;
};

GTyPtr g_bool() {
  static const GTyPtr t = std::make_shared<GTy>();
  return t;
}
GTyPtr g_fun(GTyPtr a, GTyPtr b) { return std::make_shared<GTy>(GTy{GTy::Fun, std::move(a), std::move(b)}); }
GTyPtr g_pair(GTyPtr a, GTyPtr b) { return std::make_shared<GTy>(GTy{GTy::Pair, std::move(a), std::move(b)}); }

Term type_term(const GTyPtr& t) {
  switch (t->kind) {
    case GTy::Bool: return mk_bool();
    case GTy::Fun: return mk_pi(type_term(t->a), type_term(t->b), "_");
    case GTy::Pair: return mk_sg(type_term(t->a), type_term(t->b), "_");
  }
  return mk_bool();
}

struct Ctx {
  std::vector<GTyPtr> vars;
  int ndims = 0;

  Ctx with_var(GTyPtr t) const {
    Ctx c = *this;
    c.vars.push_back(std::move(t));
    return c;
  }
  Ctx with_dim() const {
    Ctx c = *this;
    ++c.ndims;
    return c;
  }
};

const std::vector<std::string> kProductions = {
    "literal", "variable", "if", "dependent-if", "beta", "projection", "papp", "let",
    "coe-bool", "coe-typecase", "coe-universe-path", "coe-eq", "coe-pi", "coe-sigma",
    "hcom", "hcom-universe", "hcom-universe-pi", "j-composite"};

double default_weight(const std::string& p) {
  if (p == "j-composite") return 0.4;
  if (p == "literal") return 0.6;
  if (p == "variable") return 2.0;
  return 1.0;
}

class Generator {
 public:
  Generator(std::uint64_t seed, const std::map<std::string, double>& weights) : rng_(seed) {
    for (const auto& p : kProductions) {
      auto it = weights.find(p);
      weight_[p] = it == weights.end() ? default_weight(p) : it->second;
    }
  }

  Term boolean(const Ctx& cx, int depth) {
    std::vector<std::string> options;
    if (depth > 1) {
      for (const auto& p : kProductions)
        if (p != "literal" && p != "variable") options.push_back(p);
    }
    if (has_usable_var(cx)) options.push_back("variable");
    options.push_back("literal");
    double total = 0;
    for (const auto& o : options) total += weight_[o];
    if (total <= 0) return coin() ? mk_true() : mk_false();
    double x = std::uniform_real_distribution<double>(0, total)(rng_);
    std::string pick = options.back();
    for (const auto& o : options) {
      if (x < weight_[o]) {
        pick = o;
        break;
      }
      x -= weight_[o];
    }
    return produce(pick, cx, depth);
  }

 private:
  std::mt19937_64 rng_;
  std::map<std::string, double> weight_;

  int below(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_)); }
  bool coin() { return below(2) == 0; }

  Dim dim(const Ctx& cx) {
    int n = 2 + cx.ndims;
    int k = below(n);
    if (k < 2) return Dim::constant(k);
    return Dim::variable(k - 2);
  }

  GTyPtr small_type() {
    switch (below(4)) {
      case 0: return g_fun(g_bool(), g_bool());
      case 1: return g_pair(g_bool(), g_bool());
      default: return g_bool();
    }
  }

  static Term var(const Ctx& cx, std::size_t pos) { return mk_var(static_cast<int>(cx.vars.size() - 1 - pos)); }

  static bool has_usable_var(const Ctx& cx) {
    for (const auto& t : cx.vars)
      if (t->kind == GTy::Bool || (t->kind == GTy::Fun && t->b->kind == GTy::Bool) ||
          (t->kind == GTy::Pair && (t->a->kind == GTy::Bool || t->b->kind == GTy::Bool)))
        return true;
    return false;
  }

  Term of_type(const GTyPtr& t, const Ctx& cx, int depth) {
    switch (t->kind) {
      case GTy::Bool: return boolean(cx, depth);
      case GTy::Fun:
        if (depth > 2 && below(5) == 0)
          return mk_if(nullptr, boolean(cx, depth - 1), of_type(t, cx, depth - 1), of_type(t, cx, depth - 1));
        return mk_lam(of_type(t->b, cx.with_var(t->a), depth - 1), "x");
      case GTy::Pair: return mk_pair(of_type(t->a, cx, depth - 1), of_type(t->b, cx, depth - 1));
    }
    return mk_true();
  }

  // hcom (U 0) r r' A [s=0 => _. A | s=1 => _. A] for a closed code A.
  Term universe_composite(const Ctx& cx, const Term& code) {
    Term under_j = code;
    return mk_hcom(mk_univ(0), dim(cx), dim(cx), code, dim(cx), under_j, under_j);
  }

  Term produce(const std::string& p, const Ctx& cx, int depth) {
    const int d = depth - 1;
    if (p == "literal") return coin() ? mk_true() : mk_false();
    if (p == "variable") {
      std::vector<std::size_t> usable;
      for (std::size_t i = 0; i < cx.vars.size(); ++i) usable.push_back(i);
      for (;;) {
        std::size_t pos = usable[below(static_cast<int>(usable.size()))];
        const auto& t = cx.vars[pos];
        if (t->kind == GTy::Bool) return var(cx, pos);
        if (t->kind == GTy::Fun && t->b->kind == GTy::Bool)
          return mk_app(var(cx, pos), of_type(t->a, cx, std::max(1, d)));
        if (t->kind == GTy::Pair && t->a->kind == GTy::Bool) return mk_fst(var(cx, pos));
        if (t->kind == GTy::Pair && t->b->kind == GTy::Bool) return mk_snd(var(cx, pos));
      }
    }
    if (p == "if") {
      Term motive = coin() ? nullptr : mk_bool();
      return mk_if(motive, boolean(cx, d), boolean(cx, d), boolean(cx, d));
    }
    if (p == "dependent-if") {
      // if [x. if [_. U 0] x bool bool] M N0 N1
      Term motive = mk_if(mk_univ(0), mk_var(0), mk_bool(), mk_bool());
      return mk_if(motive, boolean(cx, d), boolean(cx, d), boolean(cx, d));
    }
    if (p == "beta") {
      GTyPtr t = small_type();
      Term f = mk_lam(boolean(cx.with_var(t), d), "x");
      return mk_app(mk_ann(f, type_term(g_fun(t, g_bool()))), of_type(t, cx, d));
    }
    if (p == "projection") {
      GTyPtr t = small_type();
      if (coin()) {
        Term pr = mk_pair(boolean(cx, d), of_type(t, cx, d));
        return mk_fst(mk_ann(pr, type_term(g_pair(g_bool(), t))));
      }
      Term pr = mk_pair(of_type(t, cx, d), boolean(cx, d));
      return mk_snd(mk_ann(pr, type_term(g_pair(t, g_bool()))));
    }
    if (p == "papp") {
      Term body = boolean(cx.with_dim(), d);
      Term eq = mk_eq(mk_bool(), instantiate_dim(body, Dim::zero()), instantiate_dim(body, Dim::one()), "_");
      return mk_papp(mk_ann(mk_dlam(body, "i"), eq), dim(cx));
    }
    if (p == "let") {
      Term m = boolean(cx, d);
      Term body = boolean(cx.with_var(g_bool()), d);
      return mk_let(m, coin() ? mk_bool() : nullptr, body, "x");
    }
    if (p == "coe-bool") return mk_coe(mk_bool(), dim(cx), dim(cx), boolean(cx, d), "_");
    if (p == "coe-typecase") return mk_coe(typecase_line(cx.with_dim(), d), dim(cx), dim(cx), boolean(cx, d));
    if (p == "coe-universe-path") {
      // (<k> hcom (U 0) 0 1 bool [k=0 => _. bool | k=1 => _. bool] : Eq (_. U 0) bool bool) @ i
      Term comp = mk_hcom(mk_univ(0), Dim::zero(), Dim::one(), mk_bool(), Dim::variable(0), mk_bool(), mk_bool());
      Term path = mk_ann(mk_dlam(comp, "k"), mk_eq(mk_univ(0), mk_bool(), mk_bool(), "_"));
      Term line = mk_papp(path, Dim::variable(0));
      return mk_coe(line, dim(cx), dim(cx), boolean(cx, d));
    }
    if (p == "coe-eq") {
      // coe i. Eq (_. bool) M(i) M(i) r r' (<k> M(r)) @ c
      Ctx ci = cx.with_dim();
      Term m = boolean(ci, std::max(1, d - 1));
      Term line = mk_eq(mk_bool(), m, m, "_");
      Dim r = dim(cx), r2 = dim(cx);
      Term cap = mk_dlam(shift(instantiate_dim(m, r), 0, 1), "k");
      return mk_papp(mk_coe(line, r, r2, cap), dim(cx));
    }
    if (p == "coe-pi") {
      Ctx ci = cx.with_dim();
      Term dom = coin() ? mk_bool() : universe_composite(ci, mk_bool());
      Term line = mk_pi(dom, mk_bool(), "_");
      Term f = mk_lam(boolean(cx.with_var(g_bool()), d), "x");
      return mk_app(mk_coe(line, dim(cx), dim(cx), f), boolean(cx, d));
    }
    if (p == "coe-sigma") {
      Term line = mk_sg(mk_bool(), mk_bool(), "_");
      Term pr = mk_pair(boolean(cx, d), boolean(cx, d));
      Term c = mk_coe(line, dim(cx), dim(cx), pr);
      return coin() ? mk_fst(c) : mk_snd(c);
    }
    if (p == "hcom") {
      Term cap = boolean(cx, d);
      Dim r = dim(cx), r2 = dim(cx), s = dim(cx);
      Term tubes[2];
      for (auto& tube : tubes) tube = hcom_tube(cx, cap, r, d);
      return mk_hcom(mk_bool(), r, r2, cap, s, tubes[0], tubes[1]);
    }
    if (p == "hcom-universe") return mk_ann(boolean(cx, d), universe_composite(cx, mk_bool()));
    if (p == "hcom-universe-pi") {
      Term code = mk_pi(mk_bool(), mk_bool(), "_");
      Term f = mk_lam(boolean(cx.with_var(g_bool()), d), "x");
      return mk_app(mk_ann(f, universe_composite(cx, code)), boolean(cx, d));
    }
    if (p == "j-composite") return j_composite(cx, d);
    throw std::logic_error("unknown production " + p);
  }

  // A tube over a fresh binder j that agrees with `cap` at j = r.
  Term hcom_tube(const Ctx& cx, const Term& cap, Dim r, int d) {
    Term cap_j = shift(cap, 0, 1);
    Dim r_j = shift_dim(r, 1);
    switch (below(3)) {
      case 0: return cap_j;
      case 1: return mk_coe(mk_bool(), r_j, Dim::variable(0), cap_j, "_");
      default: {
        Ctx cj = cx.with_dim();
        Dim s2 = dim(cj);
        Term inner_cap = shift(cap_j, 0, 1);
        (void)d;
        return mk_hcom(mk_bool(), r_j, Dim::variable(0), cap_j, s2, inner_cap, inner_cap);
      }
    }
  }

  // A type line built by type-case on a generated code; every branch that can
  // fire yields bool.
  Term typecase_line(const Ctx& ci, int d) {
    Term code;
    int head = below(5);
    switch (head) {
      case 0: code = mk_bool(); break;
      case 1: code = mk_pi(mk_bool(), mk_bool(), "_"); break;
      case 2: code = mk_sg(mk_bool(), mk_bool(), "_"); break;
      case 3: {
        Term m = boolean(ci, std::max(1, d - 1));
        code = mk_eq(mk_bool(), m, m, "_");
        break;
      }
      default: code = universe_composite(ci, mk_bool()); break;
    }
    auto filler = [&] { return coin() ? mk_bool() : mk_pi(mk_bool(), mk_bool(), "_"); };
    Term on_pi = head == 1 && coin() ? mk_var(1) : (head == 1 ? mk_bool() : filler());
    Term on_sg = head == 2 && coin() ? mk_var(1) : (head == 2 ? mk_bool() : filler());
    Term on_eq = head == 3 ? (coin() ? mk_var(4) : mk_var(3)) : filler();
    Term on_bool = (head == 0 || head == 4) ? mk_bool() : filler();
    Term on_univ = filler();
    return mk_tycase(0, code, mk_univ(0), on_pi, on_sg, on_eq, on_bool, on_univ);
  }

  // The identity-type eliminator of the Example, inlined:
  //   coe i. C (P@0) (P@i) (<j> hcom bool 0 j (P@0) [i=0 => _. P@0 | i=1 => k. P@k]) 0 1 (Q (P@0))
  Term j_composite(const Ctx& cx, int d) {
    Term body = boolean(cx.with_dim(), std::max(1, std::min(d, 2)));
    Term path = mk_ann(mk_dlam(body, "i"),
                       mk_eq(mk_bool(), instantiate_dim(body, Dim::zero()), instantiate_dim(body, Dim::one()), "_"));
    // (x y : bool) -> Eq (_. bool) x y -> U 0
    Term c_type = mk_pi(mk_bool(), mk_pi(mk_bool(), mk_pi(mk_eq(mk_bool(), mk_var(1), mk_var(0), "_"), mk_univ(0), "p"), "y"), "x");
    bool eq_motive = coin();
    Term c_body = eq_motive ? mk_eq(mk_bool(), mk_var(2), mk_var(1), "_") : mk_bool();
    Term c = mk_ann(mk_lam(mk_lam(mk_lam(c_body, "p"), "y"), "x"), c_type);
    auto c_at = [&](Term x, Term y, Term p) { return mk_app(mk_app(mk_app(c, x), y), p); };
    // Q : (x : bool) -> C x x (<_> x)
    Term q_type = mk_pi(mk_bool(), c_at(mk_var(0), mk_var(0), mk_dlam(mk_var(0), "_")), "x");
    Term q_body = eq_motive ? mk_dlam(mk_var(0), "_") : boolean(cx.with_var(g_bool()), d);
    Term q = mk_ann(mk_lam(q_body, "x"), q_type);

    auto p_at = [&](int dims_above, Dim r) { return mk_papp(shift(path, 0, dims_above), r); };
    // Under the line binder i (dims_above = 1) and the abstraction j (2), tube binder k (3).
    Term tilde = mk_dlam(
        mk_hcom(mk_bool(), Dim::zero(), Dim::variable(0), p_at(2, Dim::zero()), Dim::variable(1),
                p_at(3, Dim::zero()), p_at(3, Dim::variable(0)), "k"),
        "j");
    Term line = c_at(p_at(1, Dim::zero()), p_at(1, Dim::variable(0)), tilde);
    Term result = mk_coe(line, Dim::zero(), Dim::one(), mk_app(q, p_at(0, Dim::zero())));
    if (eq_motive) return mk_papp(result, dim(cx));
    return result;
  }
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + index + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

const std::vector<std::string>& generator_productions() { return kProductions; }

std::vector<GeneratedTerm> gen_closed_bool(const GenConfig& cfg) {
  double total = 0;
  for (const auto& [name, w] : cfg.weights) {
    if (w < 0) throw std::invalid_argument("negative weight for " + name);
  }
  for (const auto& p : kProductions) {
    auto it = cfg.weights.find(p);
    total += it == cfg.weights.end() ? default_weight(p) : it->second;
  }
  if (total <= 0) throw std::invalid_argument("all generator weights are zero");

  std::vector<GeneratedTerm> out;
  CheckState st = empty_state(nullptr, nullptr);
  for (int index = 0; index < cfg.count; ++index) {
    std::string last_error;
    bool done = false;
    for (int attempt = 0; attempt < 20 && !done; ++attempt) {
      Generator g(mix(cfg.seed, static_cast<std::uint64_t>(index) * 64 + attempt), cfg.weights);
      GeneratedTerm t;
      t.seed = cfg.seed;
      t.index = index;
      t.depth = cfg.max_depth <= 1 ? 1 : 1 + static_cast<int>(mix(cfg.seed ^ 0x5bd1e995, index) % cfg.max_depth);
      t.raw = g.boolean(Ctx{}, t.depth);
      try {
        t.core = check(st, t.raw, vbool());
        t.source = print(t.raw);
        out.push_back(std::move(t));
        done = true;
      } catch (const DiagnosticError& e) {
        last_error = e.diag.message;
      }
    }
    if (!done)
      throw std::runtime_error("generator produced no well-typed term for index " + std::to_string(index) + ": " +
                               last_error);
  }
  return out;
}

}  // namespace xtt
