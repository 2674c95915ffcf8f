#include "gradweil/catalog.hpp"

#include <string>

namespace gradweil::catalog {

namespace {

std::vector<Poly> unit(int rank, int k, const Rational& c = Rational(1)) {
  std::vector<Poly> v(rank, Poly(0));
  v[k] = Poly(c);
  return v;
}

}  // namespace

AlgebroidPtr share(Algebroid a) { return std::make_shared<const Algebroid>(std::move(a)); }

AlgebroidPtr sl2() {
  return share(Algebroid::lie_algebra(3, {{0, 1, unit(3, 1, Rational(2))},
                                          {0, 2, unit(3, 2, Rational(-2))},
                                          {1, 2, unit(3, 0)}}));
}

AlgebroidPtr aff1() { return share(Algebroid::lie_algebra(2, {{0, 1, unit(2, 1)}})); }

AlgebroidPtr h3() { return share(Algebroid::lie_algebra(3, {{0, 1, unit(3, 2)}})); }

AlgebroidPtr abelian(int n) { return share(Algebroid::lie_algebra(n, {})); }

AlgebroidPtr aff1_action() {
  const VarSpace x = VarSpace::intern({"x"});
  std::vector<std::vector<Poly>> anchor = {{Poly::constant(x, 1)}, {Poly::variable(x, 0)}};
  return share(Algebroid::from_brackets(x, 2, std::move(anchor),
                                        {{0, 1, {Poly::constant(x, 1), Poly::constant(x, 0)}}}));
}

AlgebroidPtr sl2_plane() {
  const VarSpace v = VarSpace::intern({"x", "y"});
  const Poly x = Poly::variable(v, 0), y = Poly::variable(v, 1), z = Poly::constant(v, 0);
  std::vector<std::vector<Poly>> anchor = {{x, -y}, {z, x}, {y, z}};
  auto c = [&](long h, long e, long f) {
    return std::vector<Poly>{Poly::constant(v, h), Poly::constant(v, e), Poly::constant(v, f)};
  };
  return share(Algebroid::from_brackets(v, 3, std::move(anchor), {{0, 1, c(0, 2, 0)}, {0, 2, c(0, 0, -2)}, {1, 2, c(1, 0, 0)}}));
}

AlgebroidPtr five_dim() {
  return share(Algebroid::lie_algebra(5, {{0, 1, unit(5, 1)}, {2, 3, unit(5, 3)}}));
}

AlgebroidPtr tangent(int n) {
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k) names.push_back("x" + std::to_string(k));
  return share(Algebroid::tangent(VarSpace::intern(names)));
}

LinearConnection pull_back_connection(const LinearConnection& tm_connection, AlgebroidPtr algebroid) {
  const int n = tm_connection.rank();
  std::vector<std::vector<std::vector<Poly>>> g(
      algebroid->rank(), std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, algebroid->zero())));
  for (int i = 0; i < algebroid->rank(); ++i) {
    for (int x = 0; x < algebroid->chart_dim(); ++x) {
      if (algebroid->anchor(i, x).is_zero()) continue;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) g[i][a][b] = g[i][a][b] + algebroid->anchor(i, x) * tm_connection.gamma(x, a, b);
      }
    }
  }
  return LinearConnection(std::move(algebroid), n, std::move(g));
}

LinearConnection constant_connection(AlgebroidPtr algebroid,
                                     const std::vector<std::vector<std::vector<Rational>>>& mats) {
  const int rank = mats.empty() ? 0 : static_cast<int>(mats.front().size());
  std::vector<std::vector<std::vector<Poly>>> g(
      algebroid->rank(), std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, algebroid->zero())));
  for (int i = 0; i < static_cast<int>(mats.size()) && i < algebroid->rank(); ++i) {
    for (int r = 0; r < rank; ++r) {
      for (int c = 0; c < rank; ++c) g[i][c][r] = Poly::constant(algebroid->chart(), mats[i][r][c]);
    }
  }
  return LinearConnection(std::move(algebroid), rank, std::move(g));
}

}  // namespace gradweil::catalog
