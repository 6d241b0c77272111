#include "xtt/dim_solver.hpp"

#include <atomic>
#include <numeric>

namespace xtt {

namespace {

std::uint64_t next_stamp() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

DimClasses::DimClasses() : root_{0, 1} {}

int DimClasses::node(Dim d) const {
  switch (d.kind) {
    case Dim::Kind::Zero: return 0;
    case Dim::Kind::One: return 1;
    case Dim::Kind::Var: break;
  }
  if (d.var < 0 || d.var >= dim_count()) throw ScopeError("dimension level out of scope");
  return d.var + 2;
}

bool DimClasses::equal(Dim a, Dim b) const {
  if (inconsistent_) return true;
  return root_[node(a)] == root_[node(b)];
}

std::optional<int> DimClasses::constant_of(Dim a) const {
  int r = root_[node(a)];
  if (r <= 1) return r;
  return std::nullopt;
}

Dim DimClasses::canonical(Dim a) const {
  int r = root_[node(a)];
  if (r <= 1) return Dim::constant(r);
  return Dim::variable(r - 2);
}

DimClasses DimClasses::with_dim() const {
  DimClasses c = *this;
  c.root_.push_back(static_cast<int>(c.root_.size()));
  return c;
}

void DimClasses::merge_frozen(int a, int b) {
  int ra = root_[a], rb = root_[b];
  if (ra == rb) return;
  if ((ra == 0 && rb == 1) || (ra == 1 && rb == 0)) inconsistent_ = true;
  int keep = std::min(ra, rb), drop = std::max(ra, rb);
  if (inconsistent_) keep = 0;
  for (auto& r : root_)
    if (r == drop || (inconsistent_ && r == 1)) r = keep;
}

DimClasses DimClasses::with_constraint(Dim a, Dim b) const {
  DimClasses c = *this;
  int na = c.node(a), nb = c.node(b);
  if (c.root_[na] == c.root_[nb]) return c;
  c.merge_frozen(na, nb);
  c.stamp_ = next_stamp();
  return c;
}

DimClasses build_classes(const Cube& psi) {
  DimClasses c;
  const int n = psi.dim_count();
  std::vector<int> parent(n + 2);
  std::iota(parent.begin(), parent.end(), 0);
  int declared = 0;
  bool merged = false;
  for (const auto& e : psi.entries) {
    if (std::holds_alternative<DimBinder>(e)) {
      ++declared;
      continue;
    }
    const auto& k = std::get<Constraint>(e);
    auto node = [&](Dim d) {
      if (d.is_const()) return d.eps();
      if (d.var < 0 || d.var >= declared) throw ScopeError("constraint mentions an undeclared dimension");
      return d.var + 2;
    };
    int ra = find(parent, node(k.lhs)), rb = find(parent, node(k.rhs));
    if (ra == rb) continue;
    // keep the smaller node as root so constants represent their class
    if (ra < rb) parent[rb] = ra;
    else parent[ra] = rb;
    merged = true;
  }
  c.root_.resize(n + 2);
  for (int x = 0; x < n + 2; ++x) c.root_[x] = find(parent, x);
  if (c.root_[0] == c.root_[1]) {
    c.inconsistent_ = true;
    for (auto& r : c.root_)
      if (r == 1) r = 0;
  }
  if (merged) c.stamp_ = next_stamp();
  return c;
}

bool decide_eq(const DimClasses& classes, Dim r, Dim s) { return classes.equal(r, s); }

bool consistent(const DimClasses& classes) { return classes.consistent(); }

}  // namespace xtt
