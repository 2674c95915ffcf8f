#include <gtest/gtest.h>

#include "gradweil/catalog.hpp"
#include "gradweil/errors.hpp"
#include "gradweil/random.hpp"
#include "oracles.hpp"

using namespace gradweil;

namespace {

// sl2 with the [e,f] bracket replaced by h + e
Algebroid broken_sl2() {
  return Algebroid::lie_algebra(3, {{0, 1, {Poly(0), Poly(2), Poly(0)}},
                                    {0, 2, {Poly(0), Poly(0), Poly(-2)}},
                                    {1, 2, {Poly(1), Poly(1), Poly(0)}}});
}

ScalarForm eps(int i) { return ScalarForm::basis(Mask{1} << i); }

}  // namespace

TEST(Algebroid, AxiomChecks) {
  EXPECT_TRUE(check_axioms(*catalog::sl2()).ok());
  EXPECT_TRUE(check_axioms(*catalog::tangent(2)).ok());
  EXPECT_TRUE(check_axioms(*catalog::aff1_action()).ok());
  EXPECT_TRUE(check_axioms(*catalog::five_dim()).ok());
  const AxiomReport bad = check_axioms(broken_sl2());
  EXPECT_TRUE(bad.antisymmetric);
  EXPECT_FALSE(bad.jacobi);
  ASSERT_FALSE(bad.failures.empty());
  EXPECT_NE(bad.failures.front().find("Jacobi"), std::string::npos);
  EXPECT_THROW(broken_sl2().validated(), PreconditionError);
}

TEST(Algebroid, AnchorIncompatibilityDetected) {
  // aff(1) acting on ℝ with the bracket of the wrong orientation
  const VarSpace x = VarSpace::intern({"x"});
  Algebroid a = Algebroid::from_brackets(x, 2, {{Poly::constant(x, 1)}, {Poly::variable(x, 0)}},
                                         {{0, 1, {Poly::constant(x, 0), Poly::constant(x, 1)}}});
  EXPECT_FALSE(check_axioms(a).anchor_compatible);
}

TEST(Algebroid, DifferentialSmallCases) {
  const auto aff = catalog::aff1();
  EXPECT_EQ(d_A(*aff, eps(1)), -ScalarForm::basis(0b11));
  EXPECT_TRUE(d_A(*aff, eps(0)).is_zero());
  EXPECT_TRUE(d_A(*aff, ScalarForm::constant(Poly(1))).is_zero());
  const auto t1 = catalog::tangent(1);
  EXPECT_EQ(d_A(*t1, ScalarForm::constant(Poly::variable(t1->chart(), 0))), ScalarForm::basis(0b1, t1->one()));
}

TEST(Algebroid, DifferentialMatchesKoszulFormula) {
  RandomSource rnd(17);
  const std::vector<AlgebroidPtr> algs{catalog::sl2(), catalog::aff1_action(), catalog::h3(), catalog::tangent(2),
                                       catalog::five_dim()};
  for (const auto& a : algs) {
    for (int k = 0; k < a->rank(); ++k) {
      const ScalarForm w = rnd.scalar_form(a->chart(), a->rank(), k, 2, 0.6);
      const ScalarForm dw = d_A(*a, w);
      for (const auto& args : oracle::subsets(a->rank(), k + 1)) {
        EXPECT_EQ(dw.evaluate(args), oracle::koszul_d(*a, w, args));
      }
    }
  }
}

TEST(Algebroid, SquareZeroTracksJacobi) {
  EXPECT_TRUE(d_A_squared_check(*catalog::sl2()));
  EXPECT_TRUE(d_A_squared_check(*catalog::abelian(4)));
  EXPECT_FALSE(d_A_squared_check(broken_sl2()));
}

TEST(Algebroid, DerivationRule) {
  RandomSource rnd(23);
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 20; ++trial) {
    const int p = rnd.uniform(0, 1);
    const ScalarForm w = rnd.scalar_form(a->chart(), 2, p, 2), e = rnd.scalar_form(a->chart(), 2, 1, 2);
    ScalarForm rhs = wedge(d_A(*a, w), e);
    ScalarForm tail = wedge(w, d_A(*a, e));
    rhs = p % 2 ? rhs - tail : rhs + tail;
    EXPECT_EQ(d_A(*a, wedge(w, e)), rhs);
  }
}

TEST(Algebroid, AnchorPullback) {
  const auto a = catalog::aff1_action();
  const VarSpace x = a->chart();
  const ScalarForm dx = ScalarForm::basis(0b1, Poly::constant(x, 1));
  EXPECT_EQ(rho_pullback(*a, dx), ScalarForm::basis(0b01, Poly::constant(x, 1)) + ScalarForm::basis(0b10, Poly::variable(x, 0)));
  const auto t = catalog::tangent(2);
  RandomSource rnd(2);
  const ScalarForm w = rnd.scalar_form(t->chart(), 2, 1, 2);
  EXPECT_EQ(rho_pullback(*t, w), w);
  // cochain map
  const Algebroid tm = Algebroid::tangent(x);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarForm f = rnd.scalar_form(x, 1, 0, 3, 1.0);
    EXPECT_EQ(rho_pullback(*a, d_A(tm, f)), d_A(*a, rho_pullback(*a, f)));
  }
}

TEST(Algebroid, SubframesAndRestriction) {
  const auto sl2 = catalog::sl2();
  const Subframe borel(3, {0, 1});
  EXPECT_TRUE(is_bracket_closed(*sl2, borel));
  EXPECT_FALSE(is_bracket_closed(*sl2, Subframe(3, {1, 2})));
  const Algebroid b = restrict_to(*sl2, borel);
  EXPECT_EQ(b.rank(), 2);
  EXPECT_EQ(b.c(1, 0, 1), Poly(2));
  RandomSource rnd(8);
  for (int k = 0; k <= 2; ++k) {
    const ScalarForm w = rnd.scalar_form({}, 2, k, 0, 0.8);
    EXPECT_EQ(restrict_form(extend_form(w, borel), borel), w);
  }
}
