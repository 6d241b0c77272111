#include "doctest.h"
#include "xtt/dim_solver.hpp"
#include "xtt/testkit.hpp"

using namespace xtt;

namespace {
Dim v(int l) { return Dim::variable(l); }
}

TEST_CASE("empty cube") {
  DimClasses c = build_classes(Cube{});
  CHECK(c.consistent());
  CHECK_FALSE(decide_eq(c, Dim::zero(), Dim::one()));
  CHECK(consistent(c));
}

TEST_CASE("hypothesis") {
  DimClasses c = build_classes(Cube{}.with_dim("i").with_constraint(v(0), Dim::zero()));
  CHECK(c.consistent());
  CHECK(decide_eq(c, v(0), Dim::zero()));
  CHECK_FALSE(decide_eq(c, v(0), Dim::one()));
  CHECK(c.constant_of(v(0)) == 0);
  CHECK(c.canonical(v(0)) == Dim::zero());
}

TEST_CASE("transitive merging reaches inconsistency") {
  Cube cube = Cube{}.with_dim("i").with_dim("j").with_constraint(v(0), v(1)).with_constraint(v(1), Dim::one())
                  .with_constraint(v(0), Dim::zero());
  DimClasses c = build_classes(cube);
  CHECK_FALSE(c.consistent());
  auto rel = closure_oracle(cube);
  CHECK(oracle_equal(rel, Dim::zero(), Dim::one()));
}

TEST_CASE("false constraint equates everything") {
  DimClasses c = build_classes(Cube{}.with_dim("i").with_dim("j").with_constraint(Dim::zero(), Dim::one()));
  CHECK(decide_eq(c, v(0), v(1)));
  CHECK_FALSE(consistent(c));
}

TEST_CASE("consistency examples") {
  CHECK(consistent(build_classes(Cube{}.with_dim("i").with_constraint(v(0), Dim::one()))));
  CHECK_FALSE(consistent(
      build_classes(Cube{}.with_dim("i").with_constraint(v(0), Dim::zero()).with_constraint(v(0), Dim::one()))));
}

TEST_CASE("variables merge without constants") {
  DimClasses c = build_classes(Cube{}.with_dim("i").with_dim("j").with_dim("k").with_constraint(v(2), v(1)));
  CHECK(decide_eq(c, v(1), v(2)));
  CHECK_FALSE(decide_eq(c, v(0), v(1)));
  CHECK(c.canonical(v(2)) == v(1));
  CHECK_FALSE(c.constant_of(v(2)).has_value());
}

TEST_CASE("incremental extension") {
  DimClasses c = DimClasses{}.with_dim().with_dim();
  CHECK(c.dim_count() == 2);
  DimClasses d = c.with_constraint(v(0), v(1));
  CHECK(d.equal(v(0), v(1)));
  CHECK_FALSE(c.equal(v(0), v(1)));
  CHECK(d.stamp() != c.stamp());
  CHECK(d.with_dim().stamp() == d.stamp());
}
