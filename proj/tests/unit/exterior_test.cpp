#include <gtest/gtest.h>

#include "gradweil/exterior.hpp"
#include "gradweil/random.hpp"
#include "oracles.hpp"

using namespace gradweil;

TEST(Exterior, WedgeSignsAndCanonicalIndices) {
  EXPECT_EQ(wedge_sign(0b10, 0b01), -1);
  EXPECT_EQ(wedge_sign(0b01, 0b10), 1);
  EXPECT_EQ(wedge_sign(0b01, 0b01), 0);
  const std::vector<int> idx{2, 0, 1};
  const ScalarForm f = ScalarForm::from_indices(idx);
  EXPECT_EQ(f.coeff(0b111), Poly(1));  // (2,0,1) is an even permutation
  const std::vector<int> rep{1, 1};
  EXPECT_TRUE(ScalarForm::from_indices(rep).is_zero());
}

TEST(Exterior, WedgeMatchesShuffleEvaluation) {
  RandomSource rnd(3);
  const VarSpace x = VarSpace::intern({"x"});
  for (int trial = 0; trial < 40; ++trial) {
    const int rank = rnd.uniform(2, 5);
    const int p = rnd.uniform(0, rank);
    const int q = rnd.uniform(0, rank - p);
    const ScalarForm a = rnd.scalar_form(x, rank, p, 1, 0.7);
    const ScalarForm b = rnd.scalar_form(x, rank, q, 1, 0.7);
    const ScalarForm w = wedge(a, b);
    for (const auto& args : oracle::subsets(rank, p + q)) {
      EXPECT_EQ(w.evaluate(args), oracle::wedge_value(a, b, args));
    }
  }
}

TEST(Exterior, GradedCommutativityAndAssociativity) {
  RandomSource rnd(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int p = rnd.uniform(0, 2), q = rnd.uniform(0, 2), r = rnd.uniform(0, 2);
    const ScalarForm a = rnd.scalar_form({}, 6, p), b = rnd.scalar_form({}, 6, q), c = rnd.scalar_form({}, 6, r);
    ScalarForm ba = wedge(b, a);
    if ((p * q) % 2) ba = -ba;
    EXPECT_EQ(wedge(a, b), ba);
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(Exterior, EvaluateIsAlternating) {
  const ScalarForm f = ScalarForm::basis(0b011, Poly(3));
  const std::vector<int> fwd{0, 1}, back{1, 0}, rep{0, 0};
  EXPECT_EQ(f.evaluate(fwd), Poly(3));
  EXPECT_EQ(f.evaluate(back), Poly(-3));
  EXPECT_TRUE(f.evaluate(rep).is_zero());
}
