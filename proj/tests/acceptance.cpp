#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "kan_cases.hpp"
#include "support.hpp"
#include "typecase_cases.hpp"
#include "uip_paths.hpp"

using namespace xtt;
using namespace xtt::test;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

constexpr std::uint64_t kCanonicitySeed = 20190815;
constexpr std::uint64_t kElaborationSeed = 7;

const std::vector<GeneratedTerm>& canonicity_corpus() {
  static const std::vector<GeneratedTerm> corpus = [] {
    GenConfig g;
    g.seed = kCanonicitySeed;
    g.count = 1000;
    g.max_depth = 6;
    return gen_closed_bool(g);
  }();
  return corpus;
}

const CanonicityReport& canonicity_report() {
  static const CanonicityReport rep = run_canonicity(canonicity_corpus(), 60.0);
  return rep;
}

Outcome canonicity() {
  auto t0 = Clock::now();
  const auto& corpus = canonicity_corpus();
  const auto& rep = canonicity_report();
  double total = since(t0);
  std::string d = std::to_string(rep.passed) + "/" + std::to_string(rep.count) + " canonical, " +
                  std::to_string(total) + " s including generation";
  if (!rep.failures.empty()) d += "; first failure: term " + std::to_string(rep.failures[0].index);
  bool depth_ok = true;
  for (const auto& t : corpus) depth_ok = depth_ok && t.depth <= 6;
  return {rep.ok() && depth_ok && corpus.size() == 1000 && total < 60.0, d};
}

Outcome prelude_corpus() {
  CheckedProgram prog = check_source(read_data("prelude.xtt"));
  if (!prog.ok()) return {false, describe(prog)};
  std::vector<std::string> want = {"funext", "sym", "trans", "Id", "refl", "J", "J_refl"};
  for (const auto& name : want)
    if (!prog.globals.count(name)) return {false, "missing definition " + name};
  // J on refl, stated as a conversion in an open context.
  Probe p = probe(read_data("prelude.xtt"));
  bool coe_reg = p.fired("coercion regularity"), hcom_reg = p.fired("composition regularity");
  const auto& jr = prog.globals.at("J_refl_bool");
  Term nf = normalize(jr.body, Cube{}, Telescope{}, jr.type, &prog.globals);
  bool branch = print(nf, {}, PrintOptions{false}) == "<_> tt";
  return {p.ok && coe_reg && hcom_reg && branch,
          std::to_string(prog.defs.size()) + " definitions checked; J on refl convertible to the branch" +
              (coe_reg && hcom_reg ? " via coe and hcom regularity" : " (regularity not exercised)")};
}

Outcome uip() {
  PathGen gen(2718);
  auto pairs = gen.pairs(100, 3);
  std::string src = read_data("prelude.xtt");
  for (std::size_t n = 0; n < pairs.size(); ++n)
    src += conv_def("uip_" + std::to_string(n), "(A : U 0) (a b : A) (p : Eq (_ . A) a b)", pairs[n].type,
                    pairs[n].lhs, pairs[n].rhs);
  CheckedProgram prog = check_source(src);
  int failures = static_cast<int>(prog.diagnostics.size());
  return {prog.ok() && pairs.size() == 100,
          std::to_string(pairs.size() - failures) + "/" + std::to_string(pairs.size()) + " pairs convertible" +
              (prog.ok() ? "" : "; " + describe(prog))};
}

Outcome kan_suite() {
  auto cases = kan_cases();
  int passed = 0;
  std::string bad;
  for (const auto& c : cases) {
    Probe p = probe(c.src);
    if (p.ok && (c.rule.empty() || p.fired(c.rule))) ++passed;
    else bad += " [" + c.name + "]";
  }
  return {passed == static_cast<int>(cases.size()),
          std::to_string(passed) + "/" + std::to_string(cases.size()) + " equations" + bad};
}

std::vector<Dim> nodes_for(int binders) {
  std::vector<Dim> nodes = {Dim::zero(), Dim::one()};
  for (int i = 0; i < binders; ++i) nodes.push_back(Dim::variable(i));
  return nodes;
}

Outcome dim_solver() {
  auto t0 = Clock::now();
  long cubes = 0, queries = 0, disagreements = 0;
  for (int binders = 0; binders <= 3; ++binders) {
    auto nodes = nodes_for(binders);
    std::vector<Constraint> pairs;
    for (Dim a : nodes)
      for (Dim b : nodes) pairs.push_back({a, b});
    const int np = static_cast<int>(pairs.size());
    // Multisets of at most four constraints.
    std::function<void(Cube, int, int)> go = [&](Cube cube, int from, int left) {
      ++cubes;
      DimClasses cls = build_classes(cube);
      auto rel = closure_oracle(cube);
      for (Dim a : nodes)
        for (Dim b : nodes) {
          ++queries;
          if (decide_eq(cls, a, b) != oracle_equal(rel, a, b)) ++disagreements;
        }
      if (left == 0) return;
      for (int k = from; k < np; ++k) go(cube.with_constraint(pairs[k].lhs, pairs[k].rhs), k, left - 1);
    };
    Cube base;
    for (int i = 0; i < binders; ++i) base = base.with_dim("i" + std::to_string(i));
    go(base, 0, 4);
  }
  double secs = since(t0);
  return {disagreements == 0 && secs < 10.0, std::to_string(cubes) + " cubes, " + std::to_string(queries) +
                                                  " queries, " + std::to_string(disagreements) + " disagreements, " +
                                                  std::to_string(secs) + " s"};
}

Outcome differential() {
  const auto& corpus = canonicity_corpus();
  const auto& rep = canonicity_report();
  int agree = 0, stuck = 0;
  int first_bad = -1;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto naive = naive_whnf(corpus[i].core);
    if (!naive) ++stuck;
    if (naive && rep.normal_forms[i] && alpha_eq(*naive, rep.normal_forms[i])) ++agree;
    else if (first_bad < 0) first_bad = static_cast<int>(i);
  }
  std::string d = std::to_string(agree) + "/" + std::to_string(corpus.size()) + " agree";
  if (stuck) d += ", " + std::to_string(stuck) + " stuck in the naive evaluator";
  if (first_bad >= 0) d += "; first disagreement: term " + std::to_string(first_bad);
  return {agree == static_cast<int>(corpus.size()), d};
}

Outcome type_case() {
  int passed = 0;
  std::string bad;
  auto cases = typecase_cases();
  for (const auto& c : cases) {
    CheckedProgram prog = check_source(c.src);
    bool ok = prog.ok();
    if (ok) {
      const CheckedDef& d = prog.defs.at(0);
      Term tc = d.body;
      for (int i = 0; i < c.params; ++i) tc = tc->kids[0];
      Term reduct = tc->tag == Tag::TyCase ? typecase_reduct(tc) : nullptr;
      if (!reduct) {
        ok = false;
      } else {
        Term expected = reduct;
        for (int i = 0; i < c.params; ++i) expected = mk_lam(expected);
        std::vector<std::string> rules;
        EvalConfig cfg;
        cfg.trace = [&rules](std::string_view r) { rules.emplace_back(r); };
        Term got = normalize(d.body, Cube{}, Telescope{}, d.type, nullptr, &cfg);
        Term want = normalize(expected, Cube{}, Telescope{}, d.type);
        bool fired = std::find(rules.begin(), rules.end(), "type-case computation") != rules.end();
        ok = fired && alpha_eq(got, want);
      }
    }
    if (ok) ++passed;
    else bad += " [" + c.branch + "]";
  }
  return {passed == static_cast<int>(cases.size()),
          std::to_string(passed) + "/" + std::to_string(cases.size()) + " branches" + bad};
}

Outcome elaboration() {
  GenConfig g;
  g.seed = kElaborationSeed;
  g.count = 500;
  g.max_depth = 6;
  auto corpus = gen_closed_bool(g);
  int sound = 0, idem = 0, norm_idem = 0;
  CheckState st = empty_state(nullptr, nullptr);
  Val bool_ty = vbool();
  for (const auto& t : corpus) {
    try {
      std::string printed = print(t.core);
      Term again = check(st, resolve(parse_term(printed), Scope{}), bool_ty);
      ++sound;
      if (alpha_eq(again, t.core)) ++idem;
      Term nf = normalize(t.core, Cube{}, Telescope{}, mk_bool());
      Term nf2 = normalize(nf, Cube{}, Telescope{}, mk_bool());
      check(st, nf, bool_ty);
      if (alpha_eq(nf, nf2)) ++norm_idem;
    } catch (const std::exception&) {
    }
  }
  // Open terms of higher type: the prelude's definitions.
  CheckedProgram prog = check_source(read_data("prelude.xtt"));
  int open_ok = 0;
  for (const auto& d : prog.defs) {
    Term nf = normalize(d.body, d.cube, d.tele, d.type, &prog.globals);
    Term nf2 = normalize(nf, d.cube, d.tele, d.type, &prog.globals);
    Term redo = check(empty_state(&prog.globals, nullptr), resolve(parse_term(print(nf)), Scope{}),
                      xtt::eval(make_cx(Cube{}, 0, &prog.globals, nullptr), d.type, Env{}));
    if (alpha_eq(nf, nf2) && alpha_eq(redo, nf)) ++open_ok;
  }
  const int n = static_cast<int>(corpus.size());
  const int m = static_cast<int>(prog.defs.size());
  return {sound == n && idem == n && norm_idem == n && open_ok == m && prog.ok(),
          "re-check " + std::to_string(sound) + "/" + std::to_string(n) + ", elaboration idempotent " +
              std::to_string(idem) + "/" + std::to_string(n) + ", normalize idempotent " + std::to_string(norm_idem) +
              "/" + std::to_string(n) + " closed and " + std::to_string(open_ok) + "/" + std::to_string(m) + " open"};
}

Outcome collapse() {
  CheckedProgram prog = check_source(read_data("collapse.xtt"));
  return {prog.ok() && !prog.defs.empty(),
          std::to_string(prog.defs.size()) + " ill-typed definitions under false constraints accepted" +
              (prog.ok() ? "" : "; " + describe(prog))};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"canonicity", canonicity},
      {"prelude corpus", prelude_corpus},
      {"UIP", uip},
      {"Kan equations", kan_suite},
      {"dimension solver oracle", dim_solver},
      {"differential normalization", differential},
      {"type-case computation", type_case},
      {"elaboration soundness and idempotence", elaboration},
      {"inconsistent-cube collapse", collapse},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
