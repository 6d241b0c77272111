#ifndef XTT_TESTKIT_HPP
#define XTT_TESTKIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xtt/check.hpp"

namespace xtt {

struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 6;
  // Relative frequency of each production; missing entries default to 1.
  std::map<std::string, double> weights;
  int count = 1;
};

struct GeneratedTerm {
  std::uint64_t seed = 0;
  int index = 0;
  int depth = 0;
  Term raw;
  Term core;  // elaborated at bool in the empty context
  std::string source;
};

// Names of the productions of the boolean generator, for weight tables.
const std::vector<std::string>& generator_productions();

// Throws std::runtime_error if a term fails to check after bounded retries.
std::vector<GeneratedTerm> gen_closed_bool(const GenConfig& cfg);

// Least equivalence relation on {0, 1, binders} generated by the cube's
// constraints, by naive fixed-point iteration. Entry [a][b] for nodes
// 0 = const 0, 1 = const 1, 2 + level.
std::vector<std::vector<bool>> closure_oracle(const Cube& psi);
bool oracle_equal(const std::vector<std::vector<bool>>& rel, Dim a, Dim b);

// Substitution-based weak-head evaluator for closed core terms. Returns
// nullopt when it meets a configuration it has no rule for.
std::optional<Term> naive_whnf(const Term& t, const GlobalTable* globals = nullptr);

struct CanonicityResult {
  int index = 0;
  bool canonical = false;
  std::string normal_form;
  std::string source;
  std::string error;
};

struct CanonicityReport {
  int count = 0;
  int passed = 0;
  double seconds = 0;
  bool budget_exceeded = false;
  std::vector<CanonicityResult> failures;
  std::vector<Term> normal_forms;  // by corpus index; null on failure
  bool ok() const { return !budget_exceeded && passed == count; }
  std::string json() const;
  std::string text() const;
};

// Normalizes each term in parallel; the report is ordered by corpus index.
CanonicityReport run_canonicity(const std::vector<GeneratedTerm>& corpus, double budget_seconds = 0,
                                const EvalConfig* cfg = nullptr, unsigned threads = 0);

// One .xtt file per term plus manifest.jsonl.
void write_corpus(const std::vector<GeneratedTerm>& corpus, const std::string& dir);

}  // namespace xtt

#endif
