#ifndef XTT_DIM_SOLVER_HPP
#define XTT_DIM_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "xtt/syntax.hpp"

namespace xtt {

// Frozen equivalence classes of {0, 1} and the dimension binders of a cube
// under its constraints. Dim variables are levels.
class DimClasses {
 public:
  DimClasses();

  int dim_count() const { return static_cast<int>(root_.size()) - 2; }
  bool consistent() const { return !inconsistent_; }
  bool equal(Dim a, Dim b) const;
  // The constant in a's class, if any (consistent classes only).
  std::optional<int> constant_of(Dim a) const;
  // Representative dimension: a constant when the class has one, else the least level.
  Dim canonical(Dim a) const;

  DimClasses with_dim() const;
  DimClasses with_constraint(Dim a, Dim b) const;

  // Identifies the constraint structure; unchanged by with_dim.
  std::uint64_t stamp() const { return stamp_; }

  friend DimClasses build_classes(const Cube& psi);

 private:
  int node(Dim d) const;
  void merge_frozen(int a, int b);

  std::vector<int> root_;  // node -> representative (0 = const 0, 1 = const 1, 2+l = level l)
  bool inconsistent_ = false;
  std::uint64_t stamp_ = 0;
};

DimClasses build_classes(const Cube& psi);
bool decide_eq(const DimClasses& classes, Dim r, Dim s);
bool consistent(const DimClasses& classes);

}  // namespace xtt

#endif
