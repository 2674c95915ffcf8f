#include <gtest/gtest.h>

#include "gradweil/errors.hpp"
#include "gradweil/poly.hpp"
#include "gradweil/random.hpp"

using namespace gradweil;

namespace {

VarSpace xy() { return VarSpace::intern({"x", "y"}); }
Poly P(const char* s) { return Poly::parse(s, xy()); }

}  // namespace

TEST(Rational, ReducesAndParses) {
  EXPECT_EQ(Rational(6, 4).to_string(), "3/2");
  EXPECT_EQ(Rational(-6, -3).to_string(), "2");
  EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
  EXPECT_EQ(Rational::parse("-4/6"), Rational(-2, 3));
  EXPECT_THROW(Rational::parse("1/0"), ParseError);
  EXPECT_THROW(Rational::parse("abc"), ParseError);
}

TEST(Poly, SmallArithmetic) {
  EXPECT_EQ(P("x+1") + P("x-1"), P("2*x"));
  EXPECT_EQ(P("x") * P("x"), P("x^2"));
  const Poly p = P("3*x*y - 1/2*y^2 + 7");
  EXPECT_TRUE((p - p).is_zero());
}

TEST(Poly, Partials) {
  EXPECT_EQ(partial(P("x^2"), 0), P("2*x"));
  EXPECT_TRUE(partial(P("5"), 0).is_zero());
  EXPECT_EQ(partial(P("x*y + y^2"), 1), P("x + 2*y"));
  EXPECT_THROW(partial(P("x"), 2), StructuralError);
}

TEST(Poly, MismatchedSpacesRejected) {
  const Poly a = Poly::variable(VarSpace::intern({"x"}), 0);
  const Poly b = Poly::variable(VarSpace::intern({"u"}), 0);
  EXPECT_THROW(a + b, StructuralError);
  // constants from the empty space promote
  EXPECT_EQ(a + Poly(1), Poly::parse("x + 1", VarSpace::intern({"x"})));
}

TEST(Poly, CanonicalStringRoundTrip) {
  const Poly p = P("  -x^2*y + 2/3 * y - 4 ");
  EXPECT_EQ(Poly::parse(p.to_string(), xy()), p);
  EXPECT_EQ(Poly(0).to_string(), "0");
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("z"), ParseError);
}

TEST(Poly, RingAxiomsAndLeibnizOnRandomInputs) {
  RandomSource rnd(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Poly a = rnd.poly(xy(), 3, 3), b = rnd.poly(xy(), 3, 3), c = rnd.poly(xy(), 3, 3);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    for (int v = 0; v < 2; ++v) EXPECT_EQ(partial(a * b, v), partial(a, v) * b + a * partial(b, v));
  }
}
