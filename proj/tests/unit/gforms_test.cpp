#include <gtest/gtest.h>

#include "gradweil/catalog.hpp"
#include "gradweil/errors.hpp"
#include "gradweil/random.hpp"

using namespace gradweil;

namespace {

ScalarForm eps(int i) { return ScalarForm::basis(Mask{1} << i); }

GradedBundle two_term() { return GradedBundle({{0, 1}, {1, 1}}); }
GradedBundle three_term() { return GradedBundle({{-1, 1}, {0, 2}, {1, 1}}); }

MatForm unit_block() {
  MatForm m(0, 1, 1);
  m.add(0, 0, ScalarForm::constant(Poly(1)));
  return m;
}

}  // namespace

TEST(GForms, BundleValidation) {
  EXPECT_THROW(GradedBundle({{0, 1}, {0, 2}}), StructuralError);
  EXPECT_THROW(GradedBundle({{0, 0}}), StructuralError);
  const GradedBundle e({{1, 3}, {0, 2}});
  EXPECT_EQ(e.degree(0), 0);
  EXPECT_EQ(e.total_rank(), 5);
}

TEST(GForms, WedgeApplyOneFormOnOneForm) {
  MatForm k(1, 1, 1);
  k.add(0, 0, eps(0));
  Form w(1, 1);
  w.add(0, eps(1));
  const Form out = wedge_apply(k, w);
  EXPECT_EQ(out.degree(), 2);
  EXPECT_EQ(out[0], ScalarForm::basis(0b11));
}

TEST(GForms, DegreeZeroBlockIsPointwise) {
  RandomSource rnd(1);
  const MatForm k = rnd.mat_form({}, 3, 0, 2, 2);
  const Form w = [&] {
    Form f(2, 2);
    for (int a = 0; a < 2; ++a) f.add(a, rnd.scalar_form({}, 3, 2));
    return f;
  }();
  const Form out = wedge_apply(k, w);
  for (int r = 0; r < 2; ++r) {
    ScalarForm expect(2);
    for (int c = 0; c < 2; ++c) expect += k(r, c).coeff(0) * w[c];
    EXPECT_EQ(out[r], expect);
  }
}

TEST(GForms, HatRoundTrip) {
  RandomSource rnd(7);
  const GradedBundle e = two_term();
  for (int s = -1; s <= 3; ++s) {
    const TotalForm k = rnd.total_form(e, 2, s);
    EXPECT_EQ(hat_roundtrip(k), k);
  }
  EXPECT_EQ(hat_roundtrip(TotalForm(e, 1)), TotalForm(e, 1));
}

TEST(GForms, CommutatorOfUnitHoms) {
  const GradedBundle e = two_term();
  TotalForm k1(e, 1), k2(e, -1);
  k1.add_block(0, 1, unit_block());
  k2.add_block(1, 0, unit_block());
  const TotalForm c = graded_commutator(k1, k2);
  EXPECT_EQ(c, TotalForm::identity(e));
  EXPECT_TRUE(gtr(c).is_zero());
}

TEST(GForms, GradedTraceOfIdentity) {
  const ScalarForm t = gtr(TotalForm::identity(GradedBundle({{0, 2}, {1, 3}})));
  EXPECT_EQ(t, ScalarForm::constant(Poly(-1)));
  TotalForm off(two_term(), 1);
  off.add_block(0, 1, unit_block());
  EXPECT_TRUE(gtr(off).is_zero());
}

TEST(GForms, SelfCommutator) {
  RandomSource rnd(9);
  const GradedBundle e = three_term();
  const TotalForm odd = rnd.total_form(e, 2, 1);
  EXPECT_EQ(graded_commutator(odd, odd), Rational(2) * compose(odd, odd));
  const TotalForm even = rnd.total_form(e, 2, 2);
  EXPECT_TRUE(graded_commutator(even, even).is_zero());
}

TEST(GForms, GradedLinearity) {
  RandomSource rnd(13);
  const GradedBundle e = three_term();
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 20; ++trial) {
    const int s = rnd.uniform(-1, 2);
    const int p = rnd.uniform(0, 2);
    const TotalForm k = rnd.total_form(e, 2, s, a->chart(), 1);
    const ScalarForm w = rnd.scalar_form(a->chart(), 2, p, 1, 0.8);
    const GradedForm g = rnd.graded_form(e, 2, rnd.uniform(-1, 2), a->chart(), 1);
    GradedForm rhs = wedge(w, wedge_apply(k, g));
    if ((s * p) % 2) rhs *= Rational(-1);
    EXPECT_EQ(wedge_apply(k, wedge(w, g)), rhs);
  }
}

TEST(GForms, ComposeMatchesOperatorComposition) {
  RandomSource rnd(21);
  const GradedBundle e = three_term();
  for (int trial = 0; trial < 20; ++trial) {
    const TotalForm k1 = rnd.total_form(e, 3, rnd.uniform(-1, 2));
    const TotalForm k2 = rnd.total_form(e, 3, rnd.uniform(-1, 2));
    const TotalForm op = unhat(e, k1.degree() + k2.degree(),
                               [&](const GradedForm& w) { return wedge_apply(k1, wedge_apply(k2, w)); });
    EXPECT_EQ(compose(k1, k2), op);
  }
}

TEST(GForms, GradedTraceKillsCommutators) {
  RandomSource rnd(31);
  const GradedBundle e = three_term();
  for (int trial = 0; trial < 30; ++trial) {
    const TotalForm k1 = rnd.total_form(e, 2, rnd.uniform(-1, 2));
    const TotalForm k2 = rnd.total_form(e, 2, rnd.uniform(-1, 2));
    EXPECT_TRUE(gtr(graded_commutator(k1, k2)).is_zero());
  }
}

TEST(GForms, IdealMembership) {
  const Subframe b(2, {1});
  const ScalarForm w = ScalarForm::basis(0b11);
  EXPECT_TRUE(ideal_membership(b, w, 1));
  EXPECT_FALSE(ideal_membership(b, w, 2));
  EXPECT_FALSE(ideal_membership(b, eps(1), 1));
  EXPECT_TRUE(ideal_membership(b, ScalarForm(3), 5));
  // codim q: the (q+1)-st power only contains zero
  RandomSource rnd(4);
  const Subframe b5(5, {0, 2, 3, 4});
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarForm f = rnd.scalar_form({}, 5, rnd.uniform(0, 5));
    if (ideal_membership(b5, f, 2)) EXPECT_TRUE(f.is_zero());
  }
}
