#include "gradweil/random.hpp"

namespace gradweil {

int RandomSource::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool RandomSource::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

Rational RandomSource::coefficient() {
  int n = 0;
  while (n == 0) n = uniform(-3, 3);
  return coin(0.2) ? Rational(n, 2) : Rational(n);
}

Poly RandomSource::poly(VarSpace space, int max_degree, int terms) {
  Poly p = Poly::constant(space, 0);
  const std::size_t nv = space.size();
  for (int t = 0; t < terms; ++t) {
    Exponents e(nv, 0);
    if (nv > 0) {
      const int deg = uniform(0, max_degree);
      for (int d = 0; d < deg; ++d) ++e[uniform(0, static_cast<int>(nv) - 1)];
    }
    p += Poly::monomial(space, e, coefficient());
  }
  return p;
}

ScalarForm RandomSource::scalar_form(VarSpace space, int rank, int degree, int max_poly_degree, double density) {
  ScalarForm f(degree);
  if (degree < 0 || degree > rank) return f;
  for (Mask m = 0; m < (Mask{1} << rank); ++m) {
    if (mask_degree(m) != degree || !coin(density)) continue;
    f.add_term(m, poly(space, max_poly_degree, 1 + (max_poly_degree > 0 ? 1 : 0)));
  }
  return f;
}

MatForm RandomSource::mat_form(VarSpace space, int rank, int degree, int rows, int cols, int max_poly_degree,
                               double density) {
  MatForm m(degree, rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m.add(r, c, scalar_form(space, rank, degree, max_poly_degree, density));
  }
  return m;
}

TotalForm RandomSource::total_form(const GradedBundle& bundle, int frame_rank, int degree, VarSpace space,
                                   int max_poly_degree, double block_density) {
  TotalForm k(bundle, degree);
  for (int l = 0; l < bundle.size(); ++l) {
    for (int j = 0; j < bundle.size(); ++j) {
      const int i = k.form_degree(l, j);
      if (i < 0 || i > frame_rank || !coin(block_density)) continue;
      k.add_block(l, j, mat_form(space, frame_rank, i, bundle.rank(j), bundle.rank(l), max_poly_degree));
    }
  }
  return k;
}

GradedForm RandomSource::graded_form(const GradedBundle& bundle, int frame_rank, int total_degree, VarSpace space,
                                     int max_poly_degree) {
  GradedForm g(bundle, total_degree);
  for (int l = 0; l < bundle.size(); ++l) {
    const int p = g.form_degree(l);
    if (p < 0 || p > frame_rank) continue;
    Form f(p, bundle.rank(l));
    for (int a = 0; a < bundle.rank(l); ++a) f.add(a, scalar_form(space, frame_rank, p, max_poly_degree));
    g.add(l, f);
  }
  return g;
}

LinearConnection RandomSource::connection(AlgebroidPtr algebroid, int rank, int max_poly_degree, double density) {
  const VarSpace space = algebroid->chart();
  std::vector<std::vector<std::vector<Poly>>> g(
      algebroid->rank(), std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, algebroid->zero())));
  for (auto& slice : g) {
    for (auto& row : slice) {
      for (auto& entry : row) {
        if (coin(density)) entry = poly(space, max_poly_degree, 1);
      }
    }
  }
  return LinearConnection(std::move(algebroid), rank, std::move(g));
}

ConnectionUpToHomotopy RandomSource::cuth(AlgebroidPtr algebroid, const GradedBundle& bundle, int max_poly_degree) {
  std::vector<LinearConnection> nablas;
  for (int l = 0; l < bundle.size(); ++l) nablas.push_back(connection(algebroid, bundle.rank(l), max_poly_degree));
  TotalForm d = total_form(bundle, algebroid->rank(), 1, algebroid->chart(), max_poly_degree);
  return ConnectionUpToHomotopy(bundle, std::move(nablas), std::move(d));
}

}  // namespace gradweil
