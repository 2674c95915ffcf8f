#include <gtest/gtest.h>

#include "gradweil/catalog.hpp"
#include "gradweil/constructions.hpp"
#include "gradweil/errors.hpp"
#include "gradweil/random.hpp"

using namespace gradweil;

namespace {

using Mats = std::vector<std::vector<std::vector<Rational>>>;

Section unit_section(int rank, int k) {
  Section s(rank, Poly(0));
  s[k] = Poly(1);
  return s;
}

AlgebroidPtr borel_of_sl2() { return catalog::share(restrict_to(*catalog::sl2(), Subframe(3, {0, 1}))); }

// B = span(e0,e2,e3,e4) in the five-dimensional algebra, relabelled 0..3
const Subframe kFiveB(5, {0, 2, 3, 4});

LinearConnection five_module(AlgebroidPtr b, Rational a, Rational c) {
  const Mats mats{{{a, 0}, {0, a}}, {{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{c, 0}, {0, c}}};
  return catalog::constant_connection(std::move(b), mats);
}

}  // namespace

TEST(Constructions, DoubleRepIsSquareZero) {
  const LinearConnection n = catalog::constant_connection(catalog::aff1(), {{{2}}, {{3}}});
  const ConnectionUpToHomotopy d = double_rep(n);
  EXPECT_EQ(d.form().block_or_zero(1, 0)(0, 0), ScalarForm::basis(0b11, Poly(3)));
  const Report r = square_zero_check(d);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checks.size(), 5u);

  RandomSource rnd(31);
  for (int trial = 0; trial < 4; ++trial) {
    EXPECT_TRUE(square_zero_check(double_rep(rnd.connection(catalog::aff1_action(), 2, 2))).ok());
  }
}

TEST(Constructions, SquareZeroFlagsRandomData) {
  RandomSource rnd(32);
  const auto a = catalog::aff1_action();
  const ConnectionUpToHomotopy c = rnd.cuth(a, GradedBundle({{0, 1}, {1, 1}}), 1);
  const Report r = square_zero_check(c);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.checks.front().pass);
}

TEST(Constructions, SectionBracketLeibniz) {
  const auto a = catalog::aff1_action();
  const Poly x = Poly::variable(a->chart(), 0);
  // [e0, x e1] = ρ(e0)(x) e1 + x [e0,e1] = e1 + x e0
  const Section s = section_bracket(*a, unit_section(2, 0), {Poly(0), x});
  EXPECT_EQ(s[0], x);
  EXPECT_EQ(s[1], Poly(1));
}

TEST(Constructions, BasicConnectionOnAffineAction) {
  const auto a = catalog::aff1_action();
  const LinearConnection flat = LinearConnection::trivial(catalog::share(Algebroid::tangent(a->chart())), 2);
  const BasicConnections bas = basic_connections(a, flat);
  // ∇bas_{e1} ∂x = [x∂x, ∂x] = −∂x
  EXPECT_EQ(bas.on_tm.gamma(1, 0, 0), Poly(-1));
  EXPECT_EQ(bas.on_tm.gamma(0, 0, 0), Poly(0));
  // ∇bas_{e_i} e_j = [e_i, e_j] for the trivial connection, [e0,e1] = e0
  EXPECT_EQ(bas.on_a.gamma(0, 1, 0), Poly(1));
  EXPECT_EQ(bas.on_a.gamma(1, 0, 0), Poly(-1));
}

TEST(Constructions, BasicCurvatureIsTensorial) {
  RandomSource rnd(33);
  const auto a = catalog::aff1_action();
  const auto tm = catalog::share(Algebroid::tangent(a->chart()));
  for (int trial = 0; trial < 4; ++trial) {
    const LinearConnection n = rnd.connection(tm, 2, 2);
    const MatForm r = basic_curvature(a, n);
    const Poly f = rnd.poly(a->chart(), 2, 2);
    const Section v = basic_curvature_apply(a, n, {f, Poly(0)}, unit_section(2, 1), {Poly(1)});
    const Section w = basic_curvature_apply(a, n, unit_section(2, 0), unit_section(2, 1), {f});
    for (int l = 0; l < 2; ++l) {
      EXPECT_EQ(v[l], f * r(l, 0).coeff(0b11));
      EXPECT_EQ(w[l], f * r(l, 0).coeff(0b11));
    }
  }
}

TEST(Constructions, AdjointRepresentation) {
  RandomSource rnd(34);
  const auto a = catalog::aff1_action();
  const auto tm = catalog::share(Algebroid::tangent(a->chart()));
  for (int trial = 0; trial < 4; ++trial) {
    const ConnectionUpToHomotopy ad = adjoint_rep(a, rnd.connection(tm, 2, 2));
    EXPECT_EQ(ad.bundle(), GradedBundle({{0, 2}, {1, 1}}));
    EXPECT_TRUE(square_zero_check(ad).ok());
  }
  // over a point only A[0] survives; it is the adjoint representation
  const auto g = catalog::sl2();
  const auto pt = catalog::share(Algebroid::tangent(VarSpace{}));
  const ConnectionUpToHomotopy ad = adjoint_rep(g, LinearConnection(pt, 3, {}));
  EXPECT_EQ(ad.bundle(), GradedBundle::ordinary(3));
  EXPECT_TRUE(cuth_curvature(ad).is_zero());
  EXPECT_EQ(ad.nabla(0).gamma(0, 1, 1), Poly(2));
}

TEST(Constructions, MorphismRepresentations) {
  RandomSource rnd(35);
  const auto a = catalog::aff1_action();
  const AlgebroidMorphism id{a, a, {{Poly(1), Poly(0)}, {Poly(0), Poly(1)}}};
  EXPECT_EQ(morphism_failure(id), "");
  for (int trial = 0; trial < 3; ++trial) {
    EXPECT_TRUE(square_zero_check(morphism_rep(id, rnd.connection(a, 2, 2))).ok());
  }
  // ideal inclusion span(e1) → aff(1)
  const auto line = catalog::abelian(1);
  const auto aff = catalog::aff1();
  const AlgebroidMorphism inc{line, aff, {{Poly(0)}, {Poly(1)}}};
  for (int trial = 0; trial < 3; ++trial) {
    EXPECT_TRUE(square_zero_check(morphism_rep(inc, rnd.connection(aff, 1, 0))).ok());
  }
  // the identity matrix from the abelian plane does not respect brackets
  const AlgebroidMorphism bad{catalog::abelian(2), aff, {{Poly(1), Poly(0)}, {Poly(0), Poly(1)}}};
  EXPECT_EQ(morphism_failure(bad), "bracket (e1,e2)");
  EXPECT_THROW(morphism_rep(bad, rnd.connection(aff, 2, 0)), PreconditionError);
}

TEST(Constructions, AlternatingCharacterSumIsExact) {
  RandomSource rnd(36);
  const auto a = catalog::aff1_action();
  const auto tm = catalog::share(Algebroid::tangent(a->chart()));
  const ConnectionUpToHomotopy ad = adjoint_rep(a, rnd.connection(tm, 2, 1));
  const std::vector<LinearConnection> ord{rnd.connection(a, 2, 1), rnd.connection(a, 1, 1)};
  const Report r = nrep_obstruction(ad, ord, 1, 6);
  EXPECT_TRUE(r.ok());
}

TEST(Constructions, BottOnFiveDimensional) {
  const auto a = catalog::five_dim();
  const auto b = catalog::share(restrict_to(*a, kFiveB));
  const LinearConnection m = five_module(b, 1, 1);
  ASSERT_TRUE(curvature(m).is_zero());
  const Report r = bott_report(a, kFiveB, m);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.thresholds.q, 1);
  EXPECT_EQ(r.thresholds.vanish_above, 2);
  bool saw_l2 = false;
  for (const auto& c : r.checks) saw_l2 |= c.name == "tr(R^2) = 0";
  EXPECT_TRUE(saw_l2);
  // arbitrary extension along e1
  const Report r2 = bott_report(a, kFiveB, m, {{1, {{Poly(3), Poly(1)}, {Poly(0), Poly(-2)}}}});
  EXPECT_TRUE(r2.ok());
}

TEST(Constructions, BottRejectsCurvedInput) {
  const auto a = catalog::five_dim();
  const auto b = catalog::share(restrict_to(*a, kFiveB));
  const Mats mats{{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}};
  EXPECT_THROW(bott_report(a, kFiveB, catalog::constant_connection(b, mats)), PreconditionError);
  // span(e, f) in sl(2) is not a subalgebra
  EXPECT_THROW(bott_report(catalog::sl2(), Subframe(3, {1, 2}), LinearConnection::trivial(borel_of_sl2(), 1)),
               PreconditionError);
}

TEST(Constructions, AtiyahOnBorel) {
  const auto g = catalog::sl2();
  const Subframe borel(3, {0, 1});
  const auto b = borel_of_sl2();
  const LinearConnection lambda = catalog::constant_connection(b, {{{1}}, {{0}}});
  for (const ComplementChristoffel& ext : {ComplementChristoffel{}, ComplementChristoffel{{2, {{Poly(5)}}}}}) {
    const AtiyahResult at = atiyah_form(g, borel, lambda, ext);
    EXPECT_TRUE(at.report.ok());
    // the h-component moves with the extension, the e-component does not
    EXPECT_EQ(at.form(0, 0).coeff(0b10), Poly(-1));
    EXPECT_EQ(at.report.thresholds.vanish_above, 2);
  }
  const AtiyahResult triv = atiyah_form(g, borel, LinearConnection::trivial(b, 1));
  EXPECT_TRUE(triv.form.is_zero());
  EXPECT_EQ(triv.report.thresholds.vanish_above, 1);
  EXPECT_TRUE(triv.report.ok());
}

TEST(Constructions, AtiyahClosedOnRandomExtensions) {
  RandomSource rnd(37);
  const auto a = catalog::five_dim();
  const auto b = catalog::share(restrict_to(*a, kFiveB));
  for (int trial = 0; trial < 3; ++trial) {
    ComplementChristoffel ext{{1, {{rnd.coefficient(), rnd.coefficient()}, {rnd.coefficient(), rnd.coefficient()}}}};
    const AtiyahResult at = atiyah_form(a, kFiveB, five_module(b, 1, 2), ext);
    EXPECT_TRUE(at.report.ok());
    EXPECT_EQ(at.form.rows(), 4);
    EXPECT_EQ(at.form.cols(), 1);
  }
}

TEST(Constructions, GradedBott) {
  RandomSource rnd(38);
  const auto a = catalog::five_dim();
  const auto b = catalog::share(restrict_to(*a, kFiveB));
  for (int trial = 0; trial < 3; ++trial) {
    const Report r = graded_bott_report(a, kFiveB, double_rep(rnd.connection(b, 1, 0)));
    EXPECT_TRUE(r.ok()) << trial;
    EXPECT_EQ(r.thresholds.vanish_above, 2);
  }
  // a non-normalized input gets normalized with a note
  const ConnectionUpToHomotopy d = double_rep(five_module(b, 1, 1));
  TotalForm extra = d.form();
  const MatForm shift = MatForm::scalar(ScalarForm::basis(0b1, Poly(1)), 2);
  extra.add_block(0, 0, shift);
  extra.add_block(1, 1, shift);
  const ConnectionUpToHomotopy shifted(d.bundle(), d.nablas(), extra);
  if (cuth_curvature(shifted).is_zero()) {
    const Report r = graded_bott_report(a, kFiveB, shifted);
    EXPECT_TRUE(r.ok());
    EXPECT_FALSE(r.notes.empty());
  }
  EXPECT_THROW(graded_bott_report(a, kFiveB, rnd.cuth(b, GradedBundle({{0, 1}, {1, 1}}), 0)), PreconditionError);
}

TEST(Constructions, IdealSystems) {
  // regular foliation of the plane by horizontal lines
  const auto tm = catalog::tangent(2);
  const IISSpec fol{tm, Subframe(2, {0}), Subframe(2, {0}), LinearConnection::trivial(tm, 2)};
  EXPECT_TRUE(iis_check(fol).ok());
  EXPECT_TRUE(iis_obstruction(fol, 2).ok());

  // the ideal span(e1) in aff(1) over a point
  const auto aff = catalog::aff1();
  const auto pt = catalog::share(Algebroid::tangent(VarSpace{}));
  const IISSpec naive{aff, Subframe(2, {1}), Subframe(0, {}), LinearConnection(pt, 2, {})};
  EXPECT_TRUE(iis_check(naive).ok());
  // span(e0) is a subalgebra but not an ideal
  const IISSpec unstable{aff, Subframe(2, {0}), Subframe(0, {}), LinearConnection(pt, 2, {})};
  const Report r = iis_check(unstable);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.checks[0].pass);
  EXPECT_FALSE(r.checks[1].pass);

  // extension moving J along F_M is rejected
  std::vector<std::vector<std::vector<Poly>>> g(2, std::vector<std::vector<Poly>>(2, std::vector<Poly>(2, Poly(0))));
  g[0][0][1] = Poly(1);
  const IISSpec moved{tm, Subframe(2, {0}), Subframe(2, {0}), LinearConnection(tm, 2, g)};
  EXPECT_THROW(iis_check(moved), PreconditionError);
}
