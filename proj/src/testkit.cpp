#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "xtt/testkit.hpp"

namespace xtt {

// --- dimension closure oracle ----------------------------------------------

std::vector<std::vector<bool>> closure_oracle(const Cube& psi) {
  const int n = 2 + psi.dim_count();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  auto node = [](Dim d) { return d.is_const() ? d.eps() : 2 + d.var; };
  for (int a = 0; a < n; ++a) rel[a][a] = true;  // reflexivity
  for (const auto& c : psi.constraints()) rel[node(c.lhs)][node(c.rhs)] = true;  // hyp
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (!rel[a][b]) continue;
        if (!rel[b][a]) rel[b][a] = changed = true;  // symmetry
        for (int c = 0; c < n; ++c)
          if (rel[b][c] && !rel[a][c]) rel[a][c] = changed = true;  // transitivity
      }
  }
  return rel;
}

bool oracle_equal(const std::vector<std::vector<bool>>& rel, Dim a, Dim b) {
  auto node = [](Dim d) { return d.is_const() ? d.eps() : 2 + d.var; };
  // 0 = 1 makes every pair equal.
  if (rel[0][1]) return true;
  return rel[node(a)][node(b)];
}

// --- naive evaluator --------------------------------------------------------

namespace {

struct Stuck {};

Term whnf(const Term& t, const GlobalTable* g, int fuel);

// Under a dimension binder: a line body with its bound dimension at index 0.
Term line_at(const Term& line, Dim r) { return instantiate_dim(line, r); }

bool same_dim(Dim a, Dim b) { return a == b; }

Term coe_naive(const Term& line, Dim r, Dim r2, const Term& m, const GlobalTable* g, int fuel) {
  if (same_dim(r, r2)) return whnf(m, g, fuel);
  Term head = whnf(line, g, fuel);
  switch (head->tag) {
    case Tag::Bool:
    case Tag::Univ: return whnf(m, g, fuel);
    case Tag::Pi: {
      const Term& a = head->kids[0];
      const Term& b = head->kids[1];
      // fun x => coe i. B[coe i.A r' i x / x] r r' (M (coe i.A r' r x))
      Term a_x = shift(a, 1, 0);
      Term filler_line = shift(a, 1, 1, 0, 1);
      Term filler = mk_coe(filler_line, shift_dim(r2, 1), Dim::variable(0), mk_var(0));
      Term b_line = subst_tm(shift(b, 1, 0, 1, 0), filler, 0);
      Term arg = mk_coe(a_x, r2, r, mk_var(0));
      return mk_lam(mk_coe(b_line, r, r2, mk_app(shift(m, 1, 0), arg)));
    }
    case Tag::Sg: {
      const Term& a = head->kids[0];
      const Term& b = head->kids[1];
      Term fst = mk_fst(m);
      // filler(i) = coe i.A r i (fst M), under the line binder.
      Term filler = mk_coe(shift(a, 0, 1, 0, 1), shift_dim(r, 1), Dim::variable(0), shift(fst, 0, 1));
      Term b_line = subst_tm(b, filler, 0);
      return mk_pair(mk_coe(a, r, r2, fst), mk_coe(b_line, r, r2, mk_snd(m)));
    }
    case Tag::Eq: {
      // <k> com i. A(k) r r' (M @ k) [k=0 => i. N0 | k=1 => i. N1], com expanded.
      const Term& a = head->kids[0];  // binds the Eq line dimension over the coe line binder
      const Term& n0 = head->kids[1];
      const Term& n1 = head->kids[2];
      // Under <k> and the com line binder i the indices of k and i are swapped.
      VarMap swap;
      swap.on_var = [](int idx, int, int) { return mk_var(idx); };
      swap.on_dim = [](int idx, int depth) -> Dim {
        if (idx == depth) return Dim::variable(depth + 1);
        if (idx == depth + 1) return Dim::variable(depth);
        return Dim::variable(idx);
      };
      Term a_line = map_vars(a, swap);
      Term cap = mk_papp(shift(m, 0, 1), Dim::variable(0));
      Dim rk = shift_dim(r, 1), r2k = shift_dim(r2, 1);
      auto endpoint_line = [&](const Term& n) { return shift(n, 0, 1, 0, 1); };  // over i, k inserted
      // com i.A r r' cap [k=0 => i. N0 | k=1 => i. N1]
      Term com = mk_com(a_line, rk, r2k, cap, Dim::variable(0), endpoint_line(n0), endpoint_line(n1));
      return mk_dlam(com, "k");
    }
    default: break;
  }
  throw Stuck{};
}

Term hcom_universe(const Term& cap_head, const Term& t0, const Term& t1, const GlobalTable* g, int fuel) {
  auto face_tag = [&](const Term& tube) { return whnf(instantiate_dim(tube, Dim::one()), g, fuel)->tag; };
  if (cap_head->tag == Tag::Bool && face_tag(t0) == Tag::Bool && face_tag(t1) == Tag::Bool) return mk_bool();
  if (cap_head->tag == Tag::Univ) return cap_head;
  throw Stuck{};
}

Term whnf(const Term& t, const GlobalTable* g, int fuel) {
  if (--fuel < 0) throw Stuck{};
  const auto& k = t->kids;
  switch (t->tag) {
    case Tag::Var:
    case Tag::Pi:
    case Tag::Sg:
    case Tag::Eq:
    case Tag::Univ:
    case Tag::Bool:
    case Tag::Lam:
    case Tag::Pair:
    case Tag::DLam:
    case Tag::True:
    case Tag::False: return t;
    case Tag::Global: {
      if (!g) throw Stuck{};
      auto it = g->find(t->name);
      if (it == g->end()) throw Stuck{};
      return whnf(it->second.body, g, fuel);
    }
    case Tag::Lift:
    case Tag::Ann: return whnf(k[0], g, fuel);
    case Tag::Let: return whnf(subst_tm(k[2], k[0], 0), g, fuel);
    case Tag::App: {
      Term f = whnf(k[0], g, fuel);
      if (f->tag != Tag::Lam) throw Stuck{};
      return whnf(instantiate(f->kids[0], {k[1]}), g, fuel);
    }
    case Tag::Fst:
    case Tag::Snd: {
      Term p = whnf(k[0], g, fuel);
      if (p->tag != Tag::Pair) throw Stuck{};
      return whnf(p->kids[t->tag == Tag::Fst ? 0 : 1], g, fuel);
    }
    case Tag::PApp: {
      Term p = whnf(k[0], g, fuel);
      if (p->tag != Tag::DLam) throw Stuck{};
      return whnf(instantiate_dim(p->kids[0], t->dims[0]), g, fuel);
    }
    case Tag::If: {
      Term b = whnf(k[1], g, fuel);
      if (b->tag == Tag::True) return whnf(k[2], g, fuel);
      if (b->tag == Tag::False) return whnf(k[3], g, fuel);
      throw Stuck{};
    }
    case Tag::Coe: return coe_naive(k[0], t->dims[0], t->dims[1], k[1], g, fuel);
    case Tag::HCom: {
      Dim r = t->dims[0], r2 = t->dims[1], s = t->dims[2];
      if (same_dim(r, r2)) return whnf(k[1], g, fuel);
      if (s.is_const()) return whnf(instantiate_dim(k[2 + s.eps()], r2), g, fuel);
      Term ty = whnf(k[0], g, fuel);
      const Term &m = k[1], &t0 = k[2], &t1 = k[3];
      switch (ty->tag) {
        case Tag::Univ: return hcom_universe(whnf(m, g, fuel), t0, t1, g, fuel);
        case Tag::Bool: throw Stuck{};
        case Tag::Pi: {
          auto at = [](const Term& tube) { return mk_app(shift(tube, 1, 0), mk_var(0)); };
          return mk_lam(mk_hcom(ty->kids[1], r, r2, mk_app(shift(m, 1, 0), mk_var(0)), s, at(t0), at(t1)));
        }
        case Tag::Sg: {
          Term f0 = mk_fst(t0), f1 = mk_fst(t1);
          Term filler_k = mk_hcom(shift(ty->kids[0], 0, 1), shift_dim(r, 1), Dim::variable(0),
                                  shift(mk_fst(m), 0, 1), shift_dim(s, 1), shift(f0, 0, 1, 0, 1),
                                  shift(f1, 0, 1, 0, 1));
          Term b_line = subst_tm(shift(ty->kids[1], 0, 1), filler_k, 0);
          return mk_pair(mk_hcom(ty->kids[0], r, r2, mk_fst(m), s, f0, f1),
                         mk_com(b_line, r, r2, mk_snd(m), s, mk_snd(t0), mk_snd(t1)));
        }
        case Tag::Eq: {
          auto at = [](const Term& tube) { return mk_papp(shift(tube, 0, 1, 0, 1), Dim::variable(1)); };
          return mk_dlam(mk_hcom(ty->kids[0], shift_dim(r, 1), shift_dim(r2, 1),
                                 mk_papp(shift(m, 0, 1), Dim::variable(0)), shift_dim(s, 1), at(t0), at(t1)),
                         "k");
        }
        default: throw Stuck{};
      }
    }
    case Tag::Com: {
      // hcom A[r'/i] r r' (coe i.A r r' M) [s=e => j. coe i.A j r' N_e]
      const Term& line = k[0];
      Dim r = t->dims[0], r2 = t->dims[1], s = t->dims[2];
      Term line_j = shift(line, 0, 1, 0, 1);
      Dim r2_j = shift_dim(r2, 1);
      auto tube = [&](const Term& n) { return mk_coe(line_j, Dim::variable(0), r2_j, n); };
      return whnf(mk_hcom(line_at(line, r2), r, r2, mk_coe(line, r, r2, k[1]), s, tube(k[2]), tube(k[3])), g,
                  fuel);
    }
    case Tag::TyCase: {
      Term x = whnf(k[0], g, fuel);
      switch (x->tag) {
        case Tag::Pi: return whnf(instantiate(k[2], {x->kids[0], mk_lam(x->kids[1])}), g, fuel);
        case Tag::Sg: return whnf(instantiate(k[3], {x->kids[0], mk_lam(x->kids[1])}), g, fuel);
        case Tag::Eq:
          return whnf(instantiate(k[4], {line_at(x->kids[0], Dim::zero()), line_at(x->kids[0], Dim::one()),
                                         mk_dlam(x->kids[0]), x->kids[1], x->kids[2]}),
                      g, fuel);
        case Tag::Bool: return whnf(k[5], g, fuel);
        case Tag::Univ: return whnf(k[6], g, fuel);
        default: throw Stuck{};
      }
    }
  }
  throw Stuck{};
}

}  // namespace

std::optional<Term> naive_whnf(const Term& t, const GlobalTable* globals) {
  try {
    return whnf(t, globals, 1 << 22);
  } catch (const Stuck&) {
    return std::nullopt;
  }
}

// --- canonicity -------------------------------------------------------------

CanonicityReport run_canonicity(const std::vector<GeneratedTerm>& corpus, double budget_seconds,
                                const EvalConfig* cfg, unsigned threads) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const std::size_t n = corpus.size();
  std::vector<CanonicityResult> results(n);
  std::vector<Term> normals(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> out_of_time{false};
  Term bool_ty = mk_bool();

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      if (budget_seconds > 0 &&
          std::chrono::duration<double>(Clock::now() - start).count() > budget_seconds) {
        out_of_time = true;
        return;
      }
      CanonicityResult& r = results[i];
      r.index = corpus[i].index;
      r.source = corpus[i].source;
      try {
        Term nf = normalize(corpus[i].core, Cube{}, Telescope{}, bool_ty, nullptr, cfg);
        normals[i] = nf;
        r.normal_form = print(nf, {}, PrintOptions{false});
        r.canonical = nf->tag == Tag::True || nf->tag == Tag::False;
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, n)));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CanonicityReport rep;
  rep.count = static_cast<int>(n);
  rep.budget_exceeded = out_of_time;
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i].canonical) {
      ++rep.passed;
    } else if (!results[i].normal_form.empty() || !results[i].error.empty()) {
      rep.failures.push_back(results[i]);
    }
  }
  rep.normal_forms = std::move(normals);
  rep.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return rep;
}

std::string CanonicityReport::json() const {
  nlohmann::json j;
  j["v"] = 1;
  j["count"] = count;
  j["passed"] = passed;
  j["seconds"] = seconds;
  j["budget_exceeded"] = budget_exceeded;
  j["result"] = ok() ? "PASS" : "FAIL";
  j["failures"] = nlohmann::json::array();
  for (const auto& f : failures) {
    nlohmann::json e{{"index", f.index}, {"source", f.source}, {"normal_form", f.normal_form}};
    if (!f.error.empty()) e["error"] = f.error;
    j["failures"].push_back(std::move(e));
  }
  return j.dump();
}

std::string CanonicityReport::text() const {
  std::ostringstream os;
  os << (ok() ? "PASS" : "FAIL") << ": " << passed << "/" << count << " canonical in " << seconds << " s";
  if (budget_exceeded) os << " (budget exceeded; partial)";
  os << "\n";
  for (const auto& f : failures) {
    os << "  term " << f.index << ": " << f.source << "\n";
    if (!f.error.empty()) os << "    error: " << f.error << "\n";
    else os << "    normal form: " << f.normal_form << "\n";
  }
  return os.str();
}

void write_corpus(const std::vector<GeneratedTerm>& corpus, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream manifest(fs::path(dir) / "manifest.jsonl");
  for (const auto& t : corpus) {
    std::string file = "term_" + std::to_string(t.index) + ".xtt";
    std::ofstream(fs::path(dir) / file) << "def term_" << t.index << " : bool =\n  " << t.source << "\n";
    nlohmann::json j{{"seed", t.seed}, {"index", t.index}, {"depth", t.depth}, {"file", file}, {"expected_check", "ok"}};
    manifest << j.dump() << "\n";
  }
}

}  // namespace xtt
