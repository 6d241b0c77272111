#ifndef XTT_TESTS_SUPPORT_HPP
#define XTT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xtt/check.hpp"
#include "xtt/testkit.hpp"

namespace xtt::test {

inline std::string data_path(const std::string& name) { return std::string(XTT_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CheckedProgram check_source(const std::string& src, const EvalConfig* cfg = nullptr) {
  return check_program(parse(src), cfg);
}

inline std::string describe(const CheckedProgram& p) {
  std::string out;
  for (const auto& d : p.diagnostics) {
    out += d.code + " " + std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + " " + d.message;
    if (!d.expected.empty()) out += " | expected " + d.expected + " | actual " + d.actual;
    out += "\n";
  }
  return out;
}

// Result of checking a program with the rule trace recorded.
struct Probe {
  bool ok = false;
  std::vector<std::string> rules;
  std::string message;

  bool fired(const std::string& rule) const { return std::find(rules.begin(), rules.end(), rule) != rules.end(); }
};

inline Probe probe(const std::string& src, EvalConfig cfg = {}) {
  Probe p;
  cfg.trace = [&p](std::string_view r) { p.rules.emplace_back(r); };
  try {
    CheckedProgram prog = check_source(src, &cfg);
    p.ok = prog.ok();
    p.message = describe(prog);
  } catch (const DiagnosticError& e) {
    p.message = e.diag.code + " " + e.diag.message;
  }
  return p;
}

// `def NAME PARAMS : Eq (_ . TYPE) LHS RHS = <_> LHS`: checks iff LHS and RHS
// are convertible at TYPE under the parameters.
inline std::string conv_def(const std::string& name, const std::string& params, const std::string& type,
                            const std::string& lhs, const std::string& rhs) {
  return "def " + name + " " + params + " : Eq (_ . " + type + ") (" + lhs + ") (" + rhs + ") = <_> (" + lhs + ")\n";
}

// Normal form of a closed expression, printed without annotations.
inline std::string norm(const std::string& term, const std::string& type = "", const CheckedProgram* prelude = nullptr,
                        const EvalConfig* cfg = nullptr) {
  auto [tm, ty] = elaborate(term, type, prelude, cfg);
  return print(normalize(tm, Cube{}, Telescope{}, ty, prelude ? &prelude->globals : nullptr, cfg), {},
               PrintOptions{false});
}

// Normal form of the named definition's body under its own parameters.
inline std::string norm_def(const CheckedProgram& prog, const std::string& name, const EvalConfig* cfg = nullptr) {
  for (const auto& d : prog.defs)
    if (d.name == name)
      return print(normalize(d.body, d.cube, d.tele, d.type, &prog.globals, cfg), PrintScope{d.names, d.dim_names},
                   PrintOptions{false});
  return "<missing>";
}

}  // namespace xtt::test

#endif
