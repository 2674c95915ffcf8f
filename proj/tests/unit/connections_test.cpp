#include <gtest/gtest.h>

#include "gradweil/catalog.hpp"
#include "gradweil/errors.hpp"
#include "gradweil/random.hpp"

using namespace gradweil;

namespace {

ScalarForm eps(int i) { return ScalarForm::basis(Mask{1} << i); }

// rank-1 connection on aff(1) with ∇_{e0} = 2, ∇_{e1} = 3
LinearConnection scalar23() { return catalog::constant_connection(catalog::aff1(), {{{2}}, {{3}}}); }

GradedBundle three_term() { return GradedBundle({{0, 1}, {1, 2}, {2, 1}}); }

}  // namespace

TEST(Connections, ScalarExample) {
  const LinearConnection n = scalar23();
  const Form d = d_nabla(n, Form::section(1, 0));
  EXPECT_EQ(d[0], Rational(2) * eps(0) + Rational(3) * eps(1));
  EXPECT_EQ(curvature(n)(0, 0), ScalarForm::basis(0b11, Poly(-3)));
  EXPECT_TRUE(curvature(LinearConnection::trivial(catalog::tangent(2), 2)).is_zero());
}

TEST(Connections, LeibnizForFunctions) {
  RandomSource rnd(5);
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 10; ++trial) {
    const LinearConnection n = rnd.connection(a, 2, 2);
    const Poly f = rnd.poly(a->chart(), 2, 2);
    Form w(1, 2);
    for (int k = 0; k < 2; ++k) w.add(k, rnd.scalar_form(a->chart(), 2, 1, 1));
    Form fw(1, 2);
    for (int k = 0; k < 2; ++k) fw.add(k, f * w[k]);
    const Form expect = wedge(d_A(*a, ScalarForm::constant(f)), w) + [&] {
      Form g = d_nabla(n, w);
      Form out(2, 2);
      for (int k = 0; k < 2; ++k) out.add(k, f * g[k]);
      return out;
    }();
    EXPECT_EQ(d_nabla(n, fw), expect);
  }
}

TEST(Connections, CurvatureRoutesAgreeOnRandomData) {
  RandomSource rnd(6);
  const std::vector<AlgebroidPtr> algs{catalog::sl2(), catalog::aff1_action(), catalog::tangent(2)};
  for (const auto& a : algs) {
    for (int trial = 0; trial < 5; ++trial) {
      const LinearConnection n = rnd.connection(a, 2, 2);
      const MatForm r = curvature(n);  // throws on disagreement
      // d_∇² = R̂ on a random 1-form
      Form w(1, 2);
      for (int k = 0; k < 2; ++k) w.add(k, rnd.scalar_form(a->chart(), a->rank(), 1, 1));
      EXPECT_EQ(d_nabla(n, d_nabla(n, w)), wedge_apply(r, w));
    }
  }
}

TEST(Connections, HomConnection) {
  RandomSource rnd(8);
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 8; ++trial) {
    const LinearConnection n1 = rnd.connection(a, 2, 1), n2 = rnd.connection(a, 3, 1);
    const LinearConnection hom = induced_hom_connection(n1, n2);
    const MatForm k = rnd.mat_form(a->chart(), 2, rnd.uniform(0, 1), 3, 2, 1);
    EXPECT_EQ(d_nabla(hom, flatten(k)), flatten(d_nabla_hom(n1, n2, k)));
    // operator identity: d_∇'(K̂ω) = (d K)̂ω + (−1)^k K̂(d_∇ ω)
    Form w(1, 2);
    for (int c = 0; c < 2; ++c) w.add(c, rnd.scalar_form(a->chart(), 2, 1, 1));
    Form rhs = wedge_apply(d_nabla_hom(n1, n2, k), w);
    Form tail = wedge_apply(k, d_nabla(n1, w));
    rhs = k.degree() % 2 ? rhs - tail : rhs + tail;
    EXPECT_EQ(d_nabla(n2, wedge_apply(k, w)), rhs);
  }
  // scalar data on a line: End connection is flat zero
  const LinearConnection e = induced_hom_connection(scalar23(), scalar23());
  EXPECT_TRUE(e.connection_form().is_zero());
  // trace is parallel: ∇^Hom(E, trivial line) applied to tr vanishes for End(E)
  const LinearConnection n = rnd.connection(a, 2, 1);
  const LinearConnection end = induced_hom_connection(n, n);
  const LinearConnection line = LinearConnection::trivial(a, 1);
  const LinearConnection dual = induced_hom_connection(end, line);
  MatForm tr(0, 1, 4);
  tr.add(0, 0, ScalarForm::constant(a->one()));
  tr.add(0, 3, ScalarForm::constant(a->one()));
  EXPECT_TRUE(d_nabla(dual, flatten(tr)).is_zero());
}

TEST(Connections, TraceExchangeOrdinary) {
  RandomSource rnd(12);
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 10; ++trial) {
    const LinearConnection n = rnd.connection(a, 2, 2);
    const MatForm k = rnd.mat_form(a->chart(), 2, 1, 2, 2, 2);
    EXPECT_EQ(d_A(*a, trace(k)), trace(d_nabla_hom(n, n, k)));
  }
}

TEST(Connections, CuthBasics) {
  const auto a = catalog::aff1();
  const GradedBundle e({{0, 1}, {1, 1}});
  RandomSource rnd(3);
  const LinearConnection n0 = rnd.connection(a, 1), n1 = rnd.connection(a, 1);
  TotalForm d(e, 1);
  MatForm del(0, 1, 1);
  del.add(0, 0, ScalarForm::constant(Poly(5)));
  d.add_block(0, 1, del);
  const ConnectionUpToHomotopy c(e, {n0, n1}, d);
  const GradedForm out = cuth_apply(c, GradedForm::section(e, 0, 0));
  EXPECT_EQ(out.component(0), d_nabla(n0, Form::section(1, 0)));
  EXPECT_EQ(out.component(1)[0], ScalarForm::constant(Poly(5)));
  const ConnectionUpToHomotopy plain = ConnectionUpToHomotopy::degree_preserving(e, {n0, n1});
  const TotalForm r = cuth_curvature(plain);
  EXPECT_EQ(r.block_or_zero(0, 0), curvature(n0));
  EXPECT_EQ(r.block_or_zero(1, 1), curvature(n1));
  EXPECT_THROW(ConnectionUpToHomotopy(e, {n0}, d), StructuralError);
}

TEST(Connections, CurvatureFormulaAndPowers) {
  RandomSource rnd(14);
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 5; ++trial) {
    const ConnectionUpToHomotopy c = rnd.cuth(a, three_term(), 1);
    EXPECT_EQ(cuth_curvature(c), cuth_curvature_formula(c));
    EXPECT_EQ(curvature_power(c, 2), curvature_power_operator(c, 2));
  }
}

TEST(Connections, DEndAndBianchi) {
  RandomSource rnd(15);
  const auto sl2 = catalog::sl2();
  for (int trial = 0; trial < 5; ++trial) {
    const ConnectionUpToHomotopy c = rnd.cuth(sl2, three_term());
    const TotalForm k = rnd.total_form(c.bundle(), 3, rnd.uniform(-1, 2));
    EXPECT_EQ(d_end(c, k), d_end_formula(c, k));
    EXPECT_EQ(d_A(*sl2, gtr(k)), gtr(d_end(c, k)));
    for (int i = 1; i <= 3; ++i) EXPECT_TRUE(d_end(c, curvature_power(c, i)).is_zero());
    EXPECT_TRUE(d_end(c, TotalForm::identity(c.bundle())).is_zero());
  }
}

TEST(Connections, Normalization) {
  RandomSource rnd(16);
  const auto a = catalog::aff1_action();
  for (int trial = 0; trial < 6; ++trial) {
    const ConnectionUpToHomotopy c = rnd.cuth(a, three_term(), 1);
    const ConnectionUpToHomotopy n = normalize_cuth(c);
    EXPECT_TRUE(n.is_normalized());
    for (int l = 0; l < 3; ++l) {
      for (int al = 0; al < c.bundle().rank(l); ++al) {
        const GradedForm s = GradedForm::section(c.bundle(), l, al, Poly::variable(a->chart(), 0));
        EXPECT_EQ(cuth_apply(c, s), cuth_apply(n, s));
      }
    }
    EXPECT_EQ(normalize_cuth(n).nablas(), n.nablas());
  }
}

TEST(Connections, Extension) {
  const auto sl2 = catalog::sl2();
  const Subframe borel(3, {0, 1});
  const auto b = catalog::share(restrict_to(*sl2, borel));
  const LinearConnection lam = catalog::constant_connection(b, {{{1}}, {{0}}});
  const LinearConnection ext = extend_connection(lam, borel, sl2);
  EXPECT_EQ(ext.gamma(0, 0, 0), Poly(1));
  EXPECT_TRUE(ext.gamma(1, 0, 0).is_zero());
  EXPECT_TRUE(ext.gamma(2, 0, 0).is_zero());
  const LinearConnection ext2 = extend_connection(lam, borel, sl2, {{2, {{Poly(4)}}}});
  EXPECT_EQ(ext2.gamma(2, 0, 0), Poly(4));
  EXPECT_THROW(extend_connection(lam, borel, sl2, {{1, {{Poly(4)}}}}), StructuralError);
  const Subframe all(3, {0, 1, 2});
  const LinearConnection full = catalog::constant_connection(sl2, {{{1}}, {{2}}, {{3}}});
  const auto same = catalog::share(restrict_to(*sl2, all));
  EXPECT_EQ(extend_connection(LinearConnection(same, 1, full.christoffel()), all, sl2), full);
}
