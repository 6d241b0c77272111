#include <set>
#include <sstream>

#include "xtt/surface.hpp"

namespace xtt {

namespace {

enum Prec { kTerm = 0, kArrow = 1, kProd = 2, kApp = 3, kAtom = 4 };

bool reserved(const std::string& s) {
  static const std::set<std::string> kw = {"def", "fun", "let", "in", "fst", "snd", "app", "papp", "pair",
                                           "if", "coe", "com", "hcom", "Eq", "lift", "tycase", "at", "tt",
                                           "ff", "bool", "U", "pi", "sg", "eq", "univ"};
  return kw.count(s) > 0;
}

bool valid_name(const std::string& s) {
  if (s.empty() || s == "_") return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return !reserved(s);
}

void collect_globals(const Term& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->tag == Tag::Global) out.insert(t->name);
  for (const auto& k : t->kids) collect_globals(k, out);
}

class Printer {
 public:
  Printer(const PrintScope& scope, PrintOptions opts, std::set<std::string> globals)
      : terms_(scope.terms), dims_(scope.dims), opts_(opts), globals_(std::move(globals)) {}

  std::string run(const Term& t) {
    go(t, kTerm);
    return out_.str();
  }

  std::string dim(Dim d) const {
    if (d.is_const()) return d.eps() == 0 ? "0" : "1";
    const int n = static_cast<int>(dims_.size());
    if (d.var < 0 || d.var >= n) throw ScopeError("dimension index out of scope in printer");
    return dims_[n - 1 - d.var];
  }

 private:
  std::vector<std::string> terms_, dims_;
  PrintOptions opts_;
  std::set<std::string> globals_;
  std::ostringstream out_;

  static std::string hint(const Term& t, std::size_t n, const char* fallback) {
    if (n < t->hints.size() && valid_name(t->hints[n])) return t->hints[n];
    return fallback;
  }

  std::string fresh(const std::vector<std::string>& scope, std::string base) {
    while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
    if (!valid_name(base)) base = "x";
    auto taken = [&](const std::string& s) {
      if (globals_.count(s) || reserved(s)) return true;
      for (const auto& x : scope)
        if (x == s) return true;
      return false;
    };
    if (!taken(base)) return base;
    for (int k = 1;; ++k) {
      std::string cand = base + std::to_string(k);
      if (!taken(cand)) return cand;
    }
  }

  // Binds a term variable while printing `body`; unused binders print as `_`.
  std::string bind_term(const Term& owner, std::size_t h, const Term& body, int depth_from_top = 0) {
    if (body && !occurs_var(body, depth_from_top)) return "_";
    return fresh(terms_, hint(owner, h, "x"));
  }

  void go(const Term& t, int prec) {
    if (!t) throw ScopeError("missing subterm in printer");
    int own = level(t);
    bool paren = own < prec;
    if (paren) out_ << "(";
    body(t);
    if (paren) out_ << ")";
  }

  int level(const Term& t) const {
    switch (t->tag) {
      case Tag::Lam: case Tag::DLam: case Tag::Let: return kTerm;
      case Tag::Pi: return kArrow;
      case Tag::Sg: return kProd;
      case Tag::Var: case Tag::Global: case Tag::Bool: case Tag::True: case Tag::False: case Tag::Pair:
      case Tag::Ann: case Tag::Univ:
        return kAtom;
      default: return kApp;
    }
  }

  void with_term(const std::string& x, const std::function<void()>& f) {
    terms_.push_back(x);
    f();
    terms_.pop_back();
  }
  void with_dim(const std::string& i, const std::function<void()>& f) {
    dims_.push_back(i);
    f();
    dims_.pop_back();
  }

  // `(i . A)`
  void line(const Term& owner, std::size_t h, const Term& a) {
    std::string i = occurs_dim(a, 0) ? fresh(dims_, hint(owner, h, "i")) : "_";
    out_ << "(" << i << " . ";
    with_dim(i, [&] { go(a, kTerm); });
    out_ << ")";
  }

  void tubes(const Term& t, std::size_t slot0, Dim s) {
    out_ << " [ ";
    for (int eps = 0; eps < 2; ++eps) {
      if (eps) out_ << " | ";
      const Term& tube = t->kids[slot0 + eps];
      std::string j = occurs_dim(tube, 0) ? fresh(dims_, hint(t, (t->tag == Tag::Com ? 1 : 0) + eps, "j")) : "_";
      out_ << dim(s) << "=" << eps << " => " << j << ". ";
      with_dim(j, [&] { go(tube, kTerm); });
    }
    out_ << " ]";
  }

  // `[x : A . B]`
  void annotation(const Term& dom, const Term& cod) {
    std::string x = occurs_var(cod, 0) ? fresh(terms_, "x") : "_";
    out_ << "[" << x << " : ";
    go(dom, kTerm);
    out_ << " . ";
    with_term(x, [&] { go(cod, kTerm); });
    out_ << "] ";
  }

  bool annotated(const Term& t, std::size_t slot) const {
    return opts_.annotations && slot < t->kids.size() && t->kids[slot];
  }

  void domain(const Term& a, int prec) {
    if (a->tag == Tag::Ann) {
      out_ << "(";
      go(a, kTerm);
      out_ << ")";
    } else {
      go(a, prec);
    }
  }

  void body(const Term& t) {
    const auto& k = t->kids;
    switch (t->tag) {
      case Tag::Var: {
        const int n = static_cast<int>(terms_.size());
        if (t->index < 0 || t->index >= n) throw ScopeError("variable index out of scope in printer");
        out_ << terms_[n - 1 - t->index];
        return;
      }
      case Tag::Global: out_ << t->name; return;
      case Tag::Pi:
      case Tag::Sg: {
        bool pi = t->tag == Tag::Pi;
        if (!occurs_var(k[1], 0)) {
          domain(k[0], pi ? kProd : kApp);
          out_ << (pi ? " -> " : " * ");
          with_term("_", [&] { go(k[1], pi ? kArrow : kProd); });
          return;
        }
        std::string x = fresh(terms_, hint(t, 0, "x"));
        out_ << "(" << x << " : ";
        go(k[0], kTerm);
        out_ << (pi ? ") -> " : ") * ");
        with_term(x, [&] { go(k[1], pi ? kArrow : kProd); });
        return;
      }
      case Tag::Eq:
        out_ << "Eq ";
        line(t, 0, k[0]);
        out_ << " ";
        go(k[1], kAtom);
        out_ << " ";
        go(k[2], kAtom);
        return;
      case Tag::Lift:
        out_ << "lift " << t->k << " " << t->l << " ";
        go(k[0], kAtom);
        return;
      case Tag::Univ: out_ << "U " << t->k; return;
      case Tag::Bool: out_ << "bool"; return;
      case Tag::True: out_ << "tt"; return;
      case Tag::False: out_ << "ff"; return;
      case Tag::Lam: {
        out_ << "fun";
        Term cur = t;
        std::size_t pushed = 0;
        while (cur->tag == Tag::Lam) {
          std::string x = bind_term(cur, 0, cur->kids[0]);
          out_ << " " << x;
          terms_.push_back(x);
          ++pushed;
          cur = cur->kids[0];
        }
        out_ << " => ";
        go(cur, kTerm);
        terms_.resize(terms_.size() - pushed);
        return;
      }
      case Tag::App:
        if (annotated(t, 2) && annotated(t, 3)) {
          out_ << "app ";
          annotation(k[2], k[3]);
          go(k[0], kAtom);
          out_ << " ";
          go(k[1], kAtom);
          return;
        }
        go(k[0], kApp);
        out_ << " ";
        go(k[1], kAtom);
        return;
      case Tag::Pair:
        out_ << "(";
        go(k[0], kTerm);
        out_ << ", ";
        go(k[1], kTerm);
        out_ << ")";
        return;
      case Tag::Fst:
      case Tag::Snd:
        out_ << (t->tag == Tag::Fst ? "fst " : "snd ");
        if (annotated(t, 1) && annotated(t, 2)) annotation(k[1], k[2]);
        go(k[0], kAtom);
        return;
      case Tag::DLam: {
        out_ << "<";
        Term cur = t;
        std::size_t pushed = 0;
        while (cur->tag == Tag::DLam) {
          std::string i = occurs_dim(cur->kids[0], 0) ? fresh(dims_, hint(cur, 0, "i")) : "_";
          out_ << (pushed ? " " : "") << i;
          dims_.push_back(i);
          ++pushed;
          cur = cur->kids[0];
        }
        out_ << "> ";
        go(cur, kTerm);
        dims_.resize(dims_.size() - pushed);
        return;
      }
      case Tag::PApp:
        if (annotated(t, 1)) {
          out_ << "papp [";
          std::string i = occurs_dim(k[1], 0) ? fresh(dims_, "i") : "_";
          out_ << i << " . ";
          with_dim(i, [&] { go(k[1], kTerm); });
          out_ << "] ";
          go(k[0], kAtom);
          out_ << " " << dim(t->dims[0]);
          return;
        }
        go(k[0], kApp);
        out_ << " @ " << dim(t->dims[0]);
        return;
      case Tag::If:
        out_ << "if ";
        if (annotated(t, 0)) {
          std::string x = bind_term(t, 0, k[0]);
          out_ << "[" << x << " . ";
          with_term(x, [&] { go(k[0], kTerm); });
          out_ << "] ";
        }
        go(k[1], kAtom);
        out_ << " ";
        go(k[2], kAtom);
        out_ << " ";
        go(k[3], kAtom);
        return;
      case Tag::Coe:
      case Tag::Com:
        out_ << (t->tag == Tag::Coe ? "coe " : "com ");
        line(t, 0, k[0]);
        out_ << " " << dim(t->dims[0]) << " " << dim(t->dims[1]) << " ";
        go(k[1], kAtom);
        if (t->tag == Tag::Com) tubes(t, 2, t->dims[2]);
        return;
      case Tag::HCom:
        out_ << "hcom ";
        go(k[0], kAtom);
        out_ << " " << dim(t->dims[0]) << " " << dim(t->dims[1]) << " ";
        go(k[1], kAtom);
        tubes(t, 2, t->dims[2]);
        return;
      case Tag::TyCase: {
        out_ << "tycase ";
        if (t->k >= 0) out_ << "[" << t->k << "] ";
        go(k[0], kAtom);
        out_ << " at ";
        go(k[1], kTerm);
        out_ << " { ";
        static const char* keys[] = {"pi", "sg", "eq", "bool", "univ"};
        static const std::vector<std::vector<std::string>> defaults = {
            {"A", "B"}, {"A", "B"}, {"A0", "A1", "Q", "y0", "y1"}, {}, {}};
        for (int b = 0; b < 5; ++b) {
          if (b) out_ << " | ";
          out_ << keys[b];
          std::size_t pushed = 0;
          for (const auto& base : defaults[b]) {
            std::string x = fresh(terms_, base);
            out_ << " " << x;
            terms_.push_back(x);
            ++pushed;
          }
          out_ << " => ";
          go(k[2 + b], kTerm);
          terms_.resize(terms_.size() - pushed);
        }
        out_ << " }";
        return;
      }
      case Tag::Ann:
        out_ << "(";
        go(k[0], kTerm);
        out_ << " : ";
        go(k[1], kTerm);
        out_ << ")";
        return;
      case Tag::Let: {
        std::string x = bind_term(t, 0, k[2]);
        out_ << "let " << x;
        if (k[1]) {
          out_ << " : ";
          go(k[1], kTerm);
        }
        out_ << " = ";
        go(k[0], kTerm);
        out_ << " in ";
        with_term(x, [&] { go(k[2], kTerm); });
        return;
      }
    }
  }
};

}  // namespace

std::string print(const Term& t, const PrintScope& scope, PrintOptions opts) {
  std::set<std::string> globals;
  collect_globals(t, globals);
  return Printer(scope, opts, std::move(globals)).run(t);
}

std::string print_dim(Dim d, const PrintScope& scope) { return Printer(scope, {}, {}).dim(d); }

}  // namespace xtt
