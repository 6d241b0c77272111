#ifndef XTT_DIAGNOSTIC_HPP
#define XTT_DIAGNOSTIC_HPP

#include <stdexcept>
#include <string>

#include "xtt/syntax.hpp"

namespace xtt {

struct Diagnostic {
  Span span;
  std::string code;  // E-PARSE, E-SCOPE, E-TYPE-MISMATCH, E-BOUNDARY, E-FACE, E-LEVEL
  std::string message;
  std::string expected;
  std::string actual;
};

class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
  Diagnostic diag;
};

[[noreturn]] inline void fail(Span span, std::string code, std::string message, std::string expected = {},
                              std::string actual = {}) {
  throw DiagnosticError(
      Diagnostic{span, std::move(code), std::move(message), std::move(expected), std::move(actual)});
}

}  // namespace xtt

#endif
