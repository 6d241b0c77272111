#ifndef XTT_CONV_HPP
#define XTT_CONV_HPP

#include <optional>

#include "xtt/value.hpp"

namespace xtt {

// Typed definitional equality. Any query under an inconsistent cube succeeds.
bool conv_ty(const Cx& cx, const Val& a, const Val& b);
bool conv_tm(const Cx& cx, const Val& m, const Val& n, const Val& type);
// Returns the common type when the heads agree and the spines are pointwise convertible.
std::optional<Val> conv_neutral(const Cx& cx, const Neutral& a, const Neutral& b);

}  // namespace xtt

#endif
