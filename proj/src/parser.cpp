#include <cctype>
#include <set>

#include "xtt/surface.hpp"

namespace xtt {

namespace {

enum class Tok { Ident, Num, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Span span;
};

const std::set<std::string, std::less<>> kKeywords = {
    "def", "fun", "let", "in", "fst", "snd", "app", "papp", "pair", "if", "coe", "com",
    "hcom", "Eq", "lift", "tycase", "at", "tt", "ff", "bool", "U"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span.line = line;
    t.span.col = col;
    std::size_t len = 0;
    if (is_ident_start(c)) {
      while (i + len < src.size() && is_ident_char(src[i + len])) ++len;
      t.kind = Tok::Ident;
      if (len == 1 && c == '_') t.kind = Tok::Sym;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      t.kind = Tok::Num;
    } else {
      static const char* two[] = {"=>", "->"};
      for (const char* s : two)
        if (src.substr(i, 2) == s) len = 2;
      if (len == 0) {
        if (std::string_view("()[]{},:.*@|=<>").find(c) == std::string_view::npos)
          fail(Span{line, col, line, col + 1}, "E-PARSE", std::string("unexpected character '") + c + "'");
        len = 1;
      }
      t.kind = Tok::Sym;
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    t.span.end_line = line;
    t.span.end_col = col;
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.span = Span{line, col, line, col};
  out.push_back(end);
  return out;
}

Span join(Span a, Span b) { return Span{a.line, a.col, b.end_line, b.end_col}; }

using Node = std::shared_ptr<SurfaceNode>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<Definition> program() {
    std::vector<Definition> defs;
    while (!at_end()) defs.push_back(definition());
    return defs;
  }

  SurfaceTerm whole_term() {
    SurfaceTerm t = term();
    if (!at_end()) error("expected end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  Span last_span() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail(t.span, "E-PARSE", msg + ", found " + found);
  }

  bool is_sym(std::string_view s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Sym && t.text == s;
  }
  bool is_kw(std::string_view s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Ident && t.text == s;
  }
  bool is_name(std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Ident && !kKeywords.count(t.text);
  }
  bool is_binder(std::size_t ahead = 0) const { return is_name(ahead) || is_sym("_", ahead); }

  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect_sym(std::string_view s) {
    if (!is_sym(s)) error("expected '" + std::string(s) + "'");
    take();
  }
  void expect_kw(std::string_view s) {
    if (!is_kw(s)) error("expected '" + std::string(s) + "'");
    take();
  }
  std::string name() {
    if (!is_name()) error("expected a name");
    return take().text;
  }
  std::string binder() {
    if (!is_binder()) error("expected a binder name");
    return take().text;
  }
  int number() {
    if (peek().kind != Tok::Num) error("expected a number");
    const std::string text = take().text;
    if (text.size() > 6) fail(last_span(), "E-PARSE", "number too large");
    return std::stoi(text);
  }

  SurfaceDim dim() {
    const Token& t = peek();
    SurfaceDim d;
    d.span = t.span;
    if (t.kind == Tok::Num && (t.text == "0" || t.text == "1")) {
      d.konst = t.text == "0" ? 0 : 1;
      take();
      return d;
    }
    if (is_name()) {
      d.name = take().text;
      return d;
    }
    error("expected a dimension (0, 1 or a name)");
  }

  static Node node(Tag tag, Span span) {
    auto n = std::make_shared<SurfaceNode>();
    n->tag = tag;
    n->span = span;
    return n;
  }

  static void set_slot(const Node& n, std::size_t slot, SurfaceTerm t, std::vector<std::string> names = {}) {
    if (n->kids.size() <= slot) n->kids.resize(slot + 1);
    if (n->binders.size() <= slot) n->binders.resize(slot + 1);
    n->kids[slot] = std::move(t);
    n->binders[slot] = std::move(names);
  }

  Definition definition() {
    Definition d;
    Span start = peek().span;
    expect_kw("def");
    d.name = name();
    for (;;) {
      Span ps = peek().span;
      if (is_sym("(")) {
        take();
        Param p;
        p.kind = Param::Kind::Term;
        while (is_binder()) p.names.push_back(binder());
        if (p.names.empty()) error("expected parameter names");
        expect_sym(":");
        p.type = term();
        expect_sym(")");
        p.span = join(ps, last_span());
        d.params.push_back(std::move(p));
      } else if (is_sym("<")) {
        take();
        Param p;
        p.kind = Param::Kind::Dim;
        while (is_binder()) p.names.push_back(binder());
        if (p.names.empty()) error("expected dimension names");
        expect_sym(">");
        p.span = join(ps, last_span());
        d.params.push_back(std::move(p));
      } else if (is_sym("[")) {
        take();
        Param p;
        p.kind = Param::Kind::Constraint;
        p.lhs = dim();
        expect_sym("=");
        p.rhs = dim();
        expect_sym("]");
        p.span = join(ps, last_span());
        d.params.push_back(std::move(p));
      } else {
        break;
      }
    }
    if (is_sym(":")) {
      take();
      d.type = term();
    }
    expect_sym("=");
    d.body = term();
    d.span = join(start, last_span());
    return d;
  }

  // term ::= fun binders => term | <names> term | let x (: A)? = M in N | arrow
  SurfaceTerm term() {
    Span start = peek().span;
    if (is_kw("fun")) {
      take();
      std::vector<std::string> names;
      while (is_binder()) names.push_back(binder());
      if (names.empty()) error("expected binder names after 'fun'");
      expect_sym("=>");
      SurfaceTerm body = term();
      for (auto it = names.rbegin(); it != names.rend(); ++it) {
        Node n = node(Tag::Lam, join(start, last_span()));
        set_slot(n, 0, body, {*it});
        body = n;
      }
      return body;
    }
    if (is_sym("<")) {
      take();
      std::vector<std::string> names;
      while (is_binder()) names.push_back(binder());
      if (names.empty()) error("expected dimension names");
      expect_sym(">");
      SurfaceTerm body = term();
      for (auto it = names.rbegin(); it != names.rend(); ++it) {
        Node n = node(Tag::DLam, join(start, last_span()));
        set_slot(n, 0, body, {*it});
        body = n;
      }
      return body;
    }
    if (is_kw("let")) {
      take();
      std::string x = binder();
      SurfaceTerm ty;
      if (is_sym(":")) {
        take();
        ty = term();
      }
      expect_sym("=");
      SurfaceTerm m = term();
      expect_kw("in");
      SurfaceTerm body = term();
      Node n = node(Tag::Let, join(start, last_span()));
      set_slot(n, 0, m);
      set_slot(n, 1, ty);
      set_slot(n, 2, body, {x});
      return n;
    }
    return arrow();
  }

  // arrow ::= prod ('->' arrow)?
  SurfaceTerm arrow() {
    Span start = peek().span;
    SurfaceTerm a = prod();
    if (!is_sym("->")) return a;
    take();
    SurfaceTerm b = arrow();
    Node n = node(Tag::Pi, join(start, last_span()));
    set_slot(n, 0, a);
    set_slot(n, 1, b, {"_"});
    return n;
  }

  // Tries to read `( names : A )` followed by -> or *.
  bool binder_group(std::vector<std::string>& names, SurfaceTerm& ty) {
    if (!is_sym("(") || !is_binder(1)) return false;
    std::size_t k = 1;
    while (is_binder(k)) ++k;
    if (!is_sym(":", k)) return false;
    std::size_t save = pos_;
    take();
    while (is_binder()) names.push_back(binder());
    take();
    try {
      ty = term();
    } catch (const DiagnosticError&) {
      pos_ = save;
      names.clear();
      return false;
    }
    if (!is_sym(")") || !(is_sym("->", 1) || is_sym("*", 1))) {
      pos_ = save;
      names.clear();
      return false;
    }
    take();
    return true;
  }

  // prod ::= (names : A) -> arrow | (names : A) * prod | app ('*' prod)?
  SurfaceTerm prod() {
    Span start = peek().span;
    std::vector<std::string> names;
    SurfaceTerm dom;
    if (binder_group(names, dom)) {
      bool is_pi = is_sym("->");
      take();
      SurfaceTerm body = is_pi ? arrow() : prod();
      for (auto it = names.rbegin(); it != names.rend(); ++it) {
        Node n = node(is_pi ? Tag::Pi : Tag::Sg, join(start, last_span()));
        set_slot(n, 0, dom);
        set_slot(n, 1, body, {*it});
        body = n;
      }
      return body;
    }
    SurfaceTerm a = app();
    if (!is_sym("*")) return a;
    take();
    SurfaceTerm b = prod();
    Node n = node(Tag::Sg, join(start, last_span()));
    set_slot(n, 0, a);
    set_slot(n, 1, b, {"_"});
    return n;
  }

  bool atom_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident) return !kKeywords.count(t.text) || t.text == "tt" || t.text == "ff" ||
                                     t.text == "bool" || t.text == "U";
    return is_sym("(");
  }

  // app ::= head (atom | '@' dim)*
  SurfaceTerm app() {
    Span start = peek().span;
    SurfaceTerm f = head();
    for (;;) {
      if (is_sym("@")) {
        take();
        SurfaceDim r = dim();
        Node n = node(Tag::PApp, join(start, last_span()));
        set_slot(n, 0, f);
        set_slot(n, 1, nullptr);
        n->dims = {r};
        f = n;
      } else if (atom_start()) {
        SurfaceTerm arg = atom();
        Node n = node(Tag::App, join(start, last_span()));
        set_slot(n, 0, f);
        set_slot(n, 1, arg);
        f = n;
      } else {
        return f;
      }
    }
  }

  // A type line: `x . atom` or `(x . term)`.
  std::pair<std::string, SurfaceTerm> line() {
    if (is_sym("(") && is_binder(1) && is_sym(".", 2)) {
      take();
      std::string x = binder();
      take();
      SurfaceTerm a = term();
      expect_sym(")");
      return {x, a};
    }
    std::string x = binder();
    expect_sym(".");
    return {x, atom()};
  }

  // `[x : A . B]`
  void annotation(const Node& n, std::size_t dom_slot) {
    expect_sym("[");
    std::string x = binder();
    expect_sym(":");
    SurfaceTerm a = term();
    expect_sym(".");
    SurfaceTerm b = term();
    expect_sym("]");
    set_slot(n, dom_slot, a);
    set_slot(n, dom_slot + 1, b, {x});
  }

  // `[ s=0 => j. N0 | s=1 => j. N1 ]`, in either order.
  void tubes(const Node& n, std::size_t slot0) {
    expect_sym("[");
    SurfaceTerm tube[2];
    std::string names[2];
    std::optional<SurfaceDim> s;
    for (int k = 0; k < 2; ++k) {
      if (k == 1) expect_sym("|");
      SurfaceDim d = dim();
      expect_sym("=");
      SurfaceDim eps = dim();
      if (eps.konst < 0) fail(eps.span, "E-PARSE", "tube faces must be s=0 or s=1");
      if (s && (s->konst != d.konst || s->name != d.name))
        fail(d.span, "E-PARSE", "both tubes must constrain the same dimension");
      if (tube[eps.konst]) fail(eps.span, "E-PARSE", "duplicate tube face");
      s = d;
      expect_sym("=>");
      names[eps.konst] = binder();
      expect_sym(".");
      tube[eps.konst] = term();
    }
    expect_sym("]");
    set_slot(n, slot0, tube[0], {names[0]});
    set_slot(n, slot0 + 1, tube[1], {names[1]});
    n->dims.push_back(*s);
  }

  SurfaceTerm head() {
    Span start = peek().span;
    auto finish = [&](const Node& n) {
      n->span = join(start, last_span());
      return n;
    };
    if (is_kw("fst") || is_kw("snd")) {
      Node n = node(take().text == "fst" ? Tag::Fst : Tag::Snd, start);
      set_slot(n, 1, nullptr);
      set_slot(n, 2, nullptr);
      if (is_sym("[")) annotation(n, 1);
      set_slot(n, 0, atom());
      return finish(n);
    }
    if (is_kw("app")) {
      take();
      Node n = node(Tag::App, start);
      set_slot(n, 0, nullptr);
      set_slot(n, 1, nullptr);
      annotation(n, 2);
      set_slot(n, 0, atom());
      set_slot(n, 1, atom());
      return finish(n);
    }
    if (is_kw("papp")) {
      take();
      Node n = node(Tag::PApp, start);
      expect_sym("[");
      std::string i = binder();
      expect_sym(".");
      SurfaceTerm a = term();
      expect_sym("]");
      set_slot(n, 0, atom());
      set_slot(n, 1, a, {i});
      n->dims = {dim()};
      return finish(n);
    }
    if (is_kw("pair")) {
      take();
      Node n = node(Tag::Pair, start);
      set_slot(n, 0, atom());
      set_slot(n, 1, atom());
      return finish(n);
    }
    if (is_kw("if")) {
      take();
      Node n = node(Tag::If, start);
      set_slot(n, 0, nullptr);
      if (is_sym("[")) {
        take();
        std::string x = binder();
        expect_sym(".");
        SurfaceTerm c = term();
        expect_sym("]");
        set_slot(n, 0, c, {x});
      }
      set_slot(n, 1, atom());
      set_slot(n, 2, atom());
      set_slot(n, 3, atom());
      return finish(n);
    }
    if (is_kw("coe") || is_kw("com")) {
      bool is_com = take().text == "com";
      Node n = node(is_com ? Tag::Com : Tag::Coe, start);
      auto [i, a] = line();
      set_slot(n, 0, a, {i});
      n->dims.push_back(dim());
      n->dims.push_back(dim());
      set_slot(n, 1, atom());
      if (is_com) tubes(n, 2);
      return finish(n);
    }
    if (is_kw("hcom")) {
      take();
      Node n = node(Tag::HCom, start);
      set_slot(n, 0, atom());
      n->dims.push_back(dim());
      n->dims.push_back(dim());
      set_slot(n, 1, atom());
      tubes(n, 2);
      return finish(n);
    }
    if (is_kw("Eq")) {
      take();
      Node n = node(Tag::Eq, start);
      auto [i, a] = line();
      set_slot(n, 0, a, {i});
      set_slot(n, 1, atom());
      set_slot(n, 2, atom());
      return finish(n);
    }
    if (is_kw("lift")) {
      take();
      Node n = node(Tag::Lift, start);
      n->k = number();
      n->l = number();
      set_slot(n, 0, atom());
      return finish(n);
    }
    if (is_kw("tycase")) {
      take();
      Node n = node(Tag::TyCase, start);
      n->k = -1;
      if (is_sym("[")) {
        take();
        n->k = number();
        expect_sym("]");
      }
      set_slot(n, 0, atom());
      expect_kw("at");
      set_slot(n, 1, term());
      expect_sym("{");
      struct Branch {
        const char* key;
        std::size_t slot;
        int arity;
      };
      static const Branch branches[] = {
          {"pi", 2, 2}, {"sg", 3, 2}, {"eq", 4, 5}, {"bool", 5, 0}, {"univ", 6, 0}};
      std::vector<bool> seen(7, false);
      for (int k = 0; k < 5; ++k) {
        if (k > 0) expect_sym("|");
        const Branch* b = nullptr;
        for (const auto& cand : branches)
          if (peek().kind == Tok::Ident && peek().text == cand.key) b = &cand;
        if (!b) error("expected a type-case branch (pi, sg, eq, bool, univ)");
        if (seen[b->slot]) error("duplicate type-case branch");
        seen[b->slot] = true;
        take();
        std::vector<std::string> names;
        for (int a = 0; a < b->arity; ++a) names.push_back(binder());
        expect_sym("=>");
        set_slot(n, b->slot, term(), names);
      }
      expect_sym("}");
      return finish(n);
    }
    return atom();
  }

  SurfaceTerm atom() {
    Span start = peek().span;
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "tt" || t.text == "ff" || t.text == "bool") {
        Tag tag = t.text == "tt" ? Tag::True : t.text == "ff" ? Tag::False : Tag::Bool;
        take();
        return node(tag, start);
      }
      if (t.text == "U") {
        take();
        Node n = node(Tag::Univ, start);
        n->k = number();
        n->span = join(start, last_span());
        return n;
      }
      if (!kKeywords.count(t.text)) {
        Node n = node(Tag::Var, start);
        n->name = take().text;
        return n;
      }
    }
    if (is_sym("(")) {
      take();
      SurfaceTerm a = term();
      if (is_sym(",")) {
        take();
        SurfaceTerm b = term();
        expect_sym(")");
        Node n = node(Tag::Pair, join(start, last_span()));
        set_slot(n, 0, a);
        set_slot(n, 1, b);
        return n;
      }
      if (is_sym(":")) {
        take();
        SurfaceTerm ty = term();
        expect_sym(")");
        Node n = node(Tag::Ann, join(start, last_span()));
        set_slot(n, 0, a);
        set_slot(n, 1, ty);
        return n;
      }
      expect_sym(")");
      return a;
    }
    error("expected a term");
  }
};

}  // namespace

std::vector<Definition> parse(std::string_view src) { return Parser(lex(src)).program(); }

SurfaceTerm parse_term(std::string_view src) { return Parser(lex(src)).whole_term(); }

}  // namespace xtt
