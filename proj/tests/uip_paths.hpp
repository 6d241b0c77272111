#ifndef XTT_TESTS_UIP_PATHS_HPP
#define XTT_TESTS_UIP_PATHS_HPP

#include <random>
#include <string>
#include <vector>

namespace xtt::test {

// Random proofs of `Eq (_ . A) x y` for x, y in {a, b}, in a context with
// p : Eq (_ . A) a b and the prelude's sym, trans and refl.
class PathGen {
 public:
  explicit PathGen(unsigned seed) : rng_(seed) {}

  std::string path(const std::string& x, const std::string& y, int depth) {
    if (depth <= 0) return base(x, y);
    switch (pick(8)) {
      case 0: return base(x, y);
      case 1: return "sym A " + y + " " + x + " (" + path(y, x, depth - 1) + ")";
      case 2: return "trans A " + x + " " + y + " " + y + " (" + path(x, y, depth - 1) + ") (refl A " + y + ")";
      case 3: return "trans A " + x + " " + x + " " + y + " (refl A " + x + ") (" + path(x, y, depth - 1) + ")";
      case 4: return "<i> coe (_ . A) 0 1 ((" + path(x, y, depth - 1) + ") @ i)";
      case 5:
        return "<i> hcom A 0 1 ((" + path(x, y, depth - 1) + ") @ i) [ i=0 => _. " + x + " | i=1 => _. " + y + " ]";
      case 6: return "<i> (" + path(x, y, depth - 1) + ") @ i";
      default: {
        std::string loop = "trans A " + x + " " + y + " " + x + " (" + path(x, y, depth - 1) + ") (" +
                           path(y, x, depth - 1) + ")";
        return "trans A " + x + " " + x + " " + y + " (" + loop + ") (" + path(x, y, depth - 1) + ")";
      }
    }
  }

  struct Pair {
    std::string type, lhs, rhs;
  };

  // Distinct pairs of proofs of the same equality.
  std::vector<Pair> pairs(int n, int depth) {
    std::vector<Pair> out;
    while (static_cast<int>(out.size()) < n) {
      bool forward = pick(4) != 0;
      std::string x = forward ? "a" : "b", y = forward ? "b" : "a";
      std::string p = path(x, y, depth), q = path(x, y, depth);
      if (p != q) out.push_back({"Eq (_ . A) " + x + " " + y, p, q});
    }
    return out;
  }

 private:
  std::string base(const std::string& x, const std::string& y) {
    if (x == y) return "refl A " + x;
    return x == "a" ? "p" : "sym A a b p";
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937 rng_;
};

}  // namespace xtt::test

#endif
