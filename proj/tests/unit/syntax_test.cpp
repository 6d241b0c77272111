#include "doctest.h"
#include "xtt/syntax.hpp"

using namespace xtt;

TEST_CASE("dimension substitution") {
  // A dimension variable at the root, index 0.
  Term p = mk_papp(mk_var(0), Dim::variable(0));
  CHECK(subst_dim(p, Dim::zero(), 0)->dims[0] == Dim::zero());
  CHECK(alpha_eq(subst_dim(mk_true(), Dim::one(), 0), mk_true()));

  // The line binder of Eq is not the target; its body sees the target at index 1.
  Term line = mk_papp(mk_var(0), Dim::variable(1));
  Term eq = mk_eq(line, mk_papp(mk_var(0), Dim::variable(0)), mk_true());
  Term out = subst_dim(eq, Dim::one(), 0);
  CHECK(out->kids[0]->dims[0] == Dim::one());
  CHECK(out->kids[1]->dims[0] == Dim::one());

  Term bound = mk_eq(mk_papp(mk_var(0), Dim::variable(0)), mk_true(), mk_true());
  CHECK(subst_dim(bound, Dim::one(), 0)->kids[0]->dims[0] == Dim::variable(0));
}

TEST_CASE("term substitution") {
  Term n = mk_global("n");
  CHECK(alpha_eq(subst_tm(mk_var(0), n, 0), n));
  CHECK(alpha_eq(subst_tm(mk_lam(mk_var(1)), mk_var(3), 0), mk_lam(mk_var(4))));
  CHECK(alpha_eq(subst_tm(mk_bool(), n, 0), mk_bool()));
  CHECK(alpha_eq(subst_tm(mk_var(2), n, 0), mk_var(1)));
  CHECK(alpha_eq(instantiate(mk_pair(mk_var(1), mk_var(0)), {mk_true(), mk_false()}), mk_pair(mk_true(), mk_false())));
}

TEST_CASE("shifting respects cutoffs") {
  Term t = mk_lam(mk_app(mk_var(0), mk_var(1)));
  CHECK(alpha_eq(shift(t, 2), mk_lam(mk_app(mk_var(0), mk_var(3)))));
  CHECK(shift_dim(Dim::variable(0), 1, 1) == Dim::variable(0));
  CHECK(shift_dim(Dim::variable(1), 1, 1) == Dim::variable(2));
  CHECK(shift_dim(Dim::one(), 5) == Dim::one());
}

TEST_CASE("occurrence checks") {
  CHECK(occurs_dim(mk_papp(mk_var(0), Dim::variable(0)), 0));
  CHECK_FALSE(occurs_dim(mk_bool(), 0));
  CHECK_FALSE(occurs_dim(mk_dlam(mk_papp(mk_var(0), Dim::variable(0))), 0));
  CHECK(occurs_dim(mk_dlam(mk_papp(mk_var(0), Dim::variable(1))), 0));
  CHECK(occurs_var(mk_lam(mk_var(1)), 0));
  CHECK_FALSE(occurs_var(mk_lam(mk_var(0)), 0));
}

TEST_CASE("alpha equivalence ignores binder names") {
  CHECK(alpha_eq(mk_lam(mk_var(0), "x"), mk_lam(mk_var(0), "y")));
  CHECK_FALSE(alpha_eq(mk_true(), mk_false()));
  CHECK(alpha_eq(mk_coe(mk_bool(), Dim::zero(), Dim::one(), mk_true(), "i"),
                 mk_coe(mk_bool(), Dim::zero(), Dim::one(), mk_true(), "j")));
  CHECK_FALSE(alpha_eq(mk_univ(0), mk_univ(1)));
}

TEST_CASE("scope checking") {
  CHECK_NOTHROW(check_scope(mk_lam(mk_var(0)), 0, 0));
  CHECK_THROWS_AS(check_scope(mk_var(0), 0, 0), ScopeError);
  CHECK_THROWS_AS(check_scope(mk_papp(mk_var(0), Dim::variable(0)), 1, 0), ScopeError);
  Cube ok = Cube{}.with_dim("i").with_constraint(Dim::variable(0), Dim::zero());
  CHECK_NOTHROW(ok.validate());
  Cube bad = Cube{}.with_constraint(Dim::variable(0), Dim::zero());
  CHECK_THROWS_AS(bad.validate(), ScopeError);
}

TEST_CASE("cube bookkeeping") {
  Cube c = Cube{}.with_dim("i").with_dim("j").with_constraint(Dim::variable(0), Dim::variable(1));
  CHECK(c.dim_count() == 2);
  REQUIRE(c.constraints().size() == 1);
  CHECK(c.constraints()[0].rhs == Dim::variable(1));
}
