#include <filesystem>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace xtt;
using namespace xtt::test;

TEST_CASE("generation is deterministic and well-typed") {
  GenConfig g;
  g.seed = 42;
  g.count = 50;
  auto a = gen_closed_bool(g), b = gen_closed_bool(g);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].source == b[i].source);
    CHECK(a[i].depth >= 1);
    CHECK(a[i].depth <= g.max_depth);
    CHECK_NOTHROW(check(empty_state(nullptr, nullptr), resolve(parse_term(a[i].source), Scope{}), vbool()));
  }
}

TEST_CASE("depth one yields literals") {
  GenConfig g;
  g.seed = 1;
  g.count = 1;
  g.max_depth = 1;
  auto t = gen_closed_bool(g);
  REQUIRE(t.size() == 1);
  CHECK((t[0].source == "tt" || t[0].source == "ff"));
}

TEST_CASE("weights select productions") {
  GenConfig g;
  g.seed = 3;
  g.count = 30;
  for (const auto& p : generator_productions()) g.weights[p] = 0;
  g.weights["literal"] = 1;
  g.weights["coe-bool"] = 1;
  for (const auto& t : gen_closed_bool(g)) {
    CHECK(t.source.find("hcom") == std::string::npos);
    CHECK(t.source.find("tycase") == std::string::npos);
  }
}

TEST_CASE("closure oracle") {
  Cube c = Cube{}.with_dim("i").with_dim("j").with_constraint(Dim::variable(0), Dim::variable(1));
  auto rel = closure_oracle(c);
  CHECK(oracle_equal(rel, Dim::variable(1), Dim::variable(0)));
  CHECK_FALSE(oracle_equal(rel, Dim::variable(0), Dim::zero()));
}

TEST_CASE("naive evaluator") {
  auto ev = [](const std::string& s) {
    auto r = naive_whnf(elaborate(s, "bool").first);
    return r ? print(*r) : std::string("stuck");
  };
  CHECK(ev("coe i. bool 0 1 tt") == "tt");
  CHECK(ev("fst ((ff, tt) : bool * bool)") == "ff");
  CHECK(ev("(coe (_ . bool -> bool) 0 1 (fun x => if x ff tt)) tt") == "ff");
  CHECK(ev("hcom bool 0 1 tt [ 1=0 => _. ff | 1=1 => j. tt ]") == "tt");
  CHECK(ev("(coe (_ . Eq (_ . bool) tt tt) 0 1 (<_> tt)) @ 0") == "tt");
  CHECK(ev("tycase [0] bool at bool { pi A B => ff | sg A B => ff | eq A0 A1 Q y0 y1 => ff | bool => tt | univ => ff }") ==
        "tt");
}

TEST_CASE("canonicity reports") {
  GenConfig g;
  g.seed = 5;
  g.count = 40;
  auto corpus = gen_closed_bool(g);
  auto rep = run_canonicity(corpus, 0, nullptr, 2);
  CHECK(rep.ok());
  CHECK(rep.passed == 40);
  auto j = nlohmann::json::parse(rep.json());
  CHECK(j["v"] == 1);
  CHECK(j["result"] == "PASS");
  CHECK(rep.text().rfind("PASS", 0) == 0);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    REQUIRE(rep.normal_forms[i]);
    CHECK((rep.normal_forms[i]->tag == Tag::True || rep.normal_forms[i]->tag == Tag::False));
  }
}

TEST_CASE("a kernel without regularity is caught") {
  GenConfig g;
  g.seed = 11;
  g.count = 200;
  EvalConfig broken;
  broken.fault = Fault::NoRegularity;
  auto rep = run_canonicity(gen_closed_bool(g), 0, &broken);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.failures.empty());
  CHECK_FALSE(rep.failures[0].source.empty());
  CHECK(rep.text().rfind("FAIL", 0) == 0);
}

TEST_CASE("a kernel without adjacency is caught on open lines") {
  EvalConfig broken;
  broken.fault = Fault::NoAdjacency;
  std::string src = conv_def("t", "<r> (P : Eq (_ . U 0) bool bool) (M : P @ r)", "P @ r", "coe (i . P @ i) r r M", "M");
  CHECK(check_source(src).ok());
  CHECK_FALSE(check_source(src, &broken).ok());
}

TEST_CASE("corpus files") {
  GenConfig g;
  g.seed = 8;
  g.count = 5;
  auto corpus = gen_closed_bool(g);
  auto dir = std::filesystem::temp_directory_path() / "xtt_corpus_test";
  std::filesystem::remove_all(dir);
  write_corpus(corpus, dir.string());
  CHECK(std::filesystem::exists(dir / "manifest.jsonl"));
  for (const auto& t : corpus) {
    auto file = dir / ("term_" + std::to_string(t.index) + ".xtt");
    REQUIRE(std::filesystem::exists(file));
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(check_source(ss.str()).ok());
  }
  std::filesystem::remove_all(dir);
}
