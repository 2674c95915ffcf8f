#include "gradweil/chernweil.hpp"

#include <map>
#include <utility>

#include "gradweil/errors.hpp"

namespace gradweil {

CharacterForm sigma_character(const ConnectionUpToHomotopy& conn, int i) {
  if (i < 1) throw StructuralError("sigma_character: index must be positive");
  CharacterForm out{i, gtr(curvature_power(conn, i)), false};
  out.closed = d_A(conn.algebroid(), out.representative).is_zero();
  if (!out.closed) throw InternalError("character form is not closed");
  return out;
}

CharacterForm sigma_character(const LinearConnection& nabla, int i) {
  if (i < 1) throw StructuralError("sigma_character: index must be positive");
  CharacterForm out{i, trace(matrix_power(curvature(nabla), i)), false};
  out.closed = d_A(nabla.algebroid(), out.representative).is_zero();
  if (!out.closed) throw InternalError("character form is not closed");
  return out;
}

MatForm matrix_power(const MatForm& m, int n) {
  if (n < 1) throw StructuralError("matrix_power: exponent must be positive");
  MatForm acc = m;
  for (int k = 1; k < n; ++k) acc = wedge(acc, m);
  return acc;
}

std::vector<ScalarForm> power_traces(const MatForm& r, int n) {
  std::vector<ScalarForm> out;
  if (n < 1) return out;
  MatForm acc = r;
  out.push_back(trace(acc));
  for (int j = 2; j <= n; ++j) {
    acc = wedge(acc, r);
    out.push_back(trace(acc));
  }
  return out;
}

ScalarForm invariant_poly_f(const MatForm& r, int i) {
  if (r.degree() % 2 != 0) throw StructuralError("invariant_poly_f: entries must have even degree");
  if (r.rows() != r.cols()) throw StructuralError("invariant_poly_f: square matrix required");
  if (i < 0) throw StructuralError("invariant_poly_f: negative index");
  if (i == 0) return ScalarForm::constant(Poly(1));
  if (i > r.rows()) return ScalarForm(i * r.degree());
  const std::vector<ScalarForm> p = power_traces(r, i);
  std::vector<ScalarForm> e{ScalarForm::constant(Poly(1))};
  for (int k = 1; k <= i; ++k) {
    ScalarForm acc(k * r.degree());
    for (int j = 1; j <= k; ++j) {
      ScalarForm t = wedge(e[k - j], p[j - 1]);
      if (j % 2 == 0) t = -t;
      acc += t;
    }
    acc *= Rational(1, k);
    e.push_back(std::move(acc));
  }
  return e[i];
}

std::string ScaledClass::to_text() const {
  std::string s = "(" + prefactor.to_string() + ")";
  if (two_pi_exponent != 0) s += "*(2π)^" + std::to_string(two_pi_exponent);
  return s + "*[" + gradweil::to_text(representative) + "]";
}

ScaledClass pontryagin_class(const LinearConnection& nabla, int i) {
  if (i < 0) throw StructuralError("pontryagin_class: negative index");
  ScaledClass c;
  c.index = i;
  c.representative = invariant_poly_f(curvature(nabla), 2 * i);
  c.prefactor = (i % 2) ? Rational(-1) : Rational(1);
  c.two_pi_exponent = -2 * i;
  return c;
}

std::vector<ScaledClass> total_pontryagin_class(const LinearConnection& nabla) {
  std::vector<ScaledClass> out;
  for (int i = 0; 4 * i <= nabla.algebroid().rank() && 2 * i <= nabla.rank(); ++i) {
    out.push_back(pontryagin_class(nabla, i));
  }
  return out;
}

// ---- linear algebra on forms --------------------------------------------

namespace {

using Coord = std::pair<Mask, Exponents>;

Exponents padded(const Exponents& e, std::size_t n) {
  Exponents out = e;
  out.resize(n, 0);
  return out;
}

// Solves Σ c_j gens[j] = target over ℚ.
std::optional<std::vector<Rational>> solve_forms(const std::vector<ScalarForm>& gens, const ScalarForm& target,
                                                 std::size_t nvars) {
  std::map<Coord, int> rows;
  auto index = [&](Mask m, const Exponents& e) {
    auto [it, inserted] = rows.try_emplace({m, padded(e, nvars)}, static_cast<int>(rows.size()));
    return it->second;
  };
  for (const auto& g : gens) {
    for (const auto& [m, p] : g.terms()) {
      for (const auto& [e, c] : p.terms()) index(m, e);
    }
  }
  for (const auto& [m, p] : target.terms()) {
    for (const auto& [e, c] : p.terms()) index(m, e);
  }
  RationalMatrix a(static_cast<int>(rows.size()), static_cast<int>(gens.size()));
  std::vector<Rational> b(rows.size(), Rational(0));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (const auto& [m, p] : gens[j].terms()) {
      for (const auto& [e, c] : p.terms()) a.at(index(m, e), static_cast<int>(j)) += c;
    }
  }
  for (const auto& [m, p] : target.terms()) {
    for (const auto& [e, c] : p.terms()) b[index(m, e)] += c;
  }
  return solve(a, b);
}

std::vector<Mask> masks_of_degree(int rank, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > rank) return out;
  for (Mask m = 0; m < (Mask{1} << rank); ++m) {
    if (mask_degree(m) == k) out.push_back(m);
  }
  return out;
}

std::vector<Rational> coords(const ScalarForm& f, const std::vector<Mask>& masks) {
  std::vector<Rational> v;
  v.reserve(masks.size());
  for (Mask m : masks) v.push_back(f.coeff(m).constant_term());
  return v;
}

ScalarForm form_of(const std::vector<Rational>& v, const std::vector<Mask>& masks, int degree) {
  ScalarForm f(degree);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if (!v[k].is_zero()) f.add_term(masks[k], Poly(v[k]));
  }
  return f;
}

// All exponent vectors in n variables of total degree ≤ b.
std::vector<Exponents> monomials(std::size_t n, int b) {
  std::vector<Exponents> out;
  Exponents cur(n, 0);
  auto rec = [&](auto&& self, std::size_t var, int left) -> void {
    if (var == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[var] = static_cast<std::uint16_t>(e);
      self(self, var + 1, left - e);
    }
    cur[var] = 0;
  };
  rec(rec, 0, b);
  return out;
}

}  // namespace

std::vector<int> CohomologyBasis::dims() const {
  std::vector<int> out;
  for (const auto& r : reps_) out.push_back(static_cast<int>(r.size()));
  return out;
}

std::vector<Rational> CohomologyBasis::decompose(const ScalarForm& closed_form) const {
  const int k = closed_form.degree();
  if (k < 0 || k > rank_) throw StructuralError("decompose: degree out of range");
  const auto& span = span_[k];
  const std::vector<Rational> target = coords(closed_form, masks_[k]);
  RationalMatrix a(static_cast<int>(masks_[k].size()), static_cast<int>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) {
    for (std::size_t r = 0; r < masks_[k].size(); ++r) a.at(static_cast<int>(r), static_cast<int>(j)) = span[j][r];
  }
  const auto sol = solve(a, target);
  if (!sol) throw PreconditionError("decompose: form is not closed");
  return {sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(reps_[k].size())};
}

bool CohomologyBasis::is_zero_class(const ScalarForm& closed_form) const {
  for (const auto& c : decompose(closed_form)) {
    if (!c.is_zero()) return false;
  }
  return true;
}

CohomologyBasis ce_cohomology(const Algebroid& algebroid) {
  if (algebroid.chart_dim() != 0) throw PreconditionError("ce_cohomology needs a point base; use is_exact");
  const int r = algebroid.rank();
  CohomologyBasis h;
  h.rank_ = r;
  for (int k = 0; k <= r; ++k) h.masks_.push_back(masks_of_degree(r, k));
  // d_k as a matrix Λ^k → Λ^{k+1}
  std::vector<RationalMatrix> d;
  for (int k = 0; k <= r; ++k) {
    const auto& src = h.masks_[k];
    const std::vector<Mask> dst = k < r ? h.masks_[k + 1] : std::vector<Mask>{};
    RationalMatrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      const std::vector<Rational> col = coords(d_A(algebroid, ScalarForm::basis(src[j])), dst);
      for (std::size_t i = 0; i < dst.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = col[i];
    }
    d.push_back(std::move(m));
  }
  for (int k = 0; k <= r; ++k) {
    const std::size_t dim = h.masks_[k].size();
    // exact forms: column space of d_{k-1}
    std::vector<std::vector<Rational>> exact;
    if (k > 0) {
      const RationalMatrix& prev = d[k - 1];
      RationalMatrix t(prev.cols(), prev.rows());
      for (int i = 0; i < prev.rows(); ++i) {
        for (int j = 0; j < prev.cols(); ++j) t.at(j, i) = prev.at(i, j);
      }
      const std::vector<int> piv = t.rref();
      for (std::size_t row = 0; row < piv.size(); ++row) {
        std::vector<Rational> v(dim);
        for (std::size_t c = 0; c < dim; ++c) v[c] = t.at(static_cast<int>(row), static_cast<int>(c));
        exact.push_back(std::move(v));
      }
    }
    // extend the exact basis by cocycles
    std::vector<std::vector<Rational>> chosen = exact;
    std::vector<std::vector<Rational>> reps;
    for (const auto& z : nullspace(d[k])) {
      std::vector<std::vector<Rational>> trial = chosen;
      trial.push_back(z);
      RationalMatrix m(static_cast<int>(trial.size()), static_cast<int>(dim));
      for (std::size_t i = 0; i < trial.size(); ++i) {
        for (std::size_t c = 0; c < dim; ++c) m.at(static_cast<int>(i), static_cast<int>(c)) = trial[i][c];
      }
      if (rank(m) == static_cast<int>(trial.size())) {
        chosen = std::move(trial);
        reps.push_back(z);
      }
    }
    std::vector<ScalarForm> rep_forms;
    for (const auto& v : reps) rep_forms.push_back(form_of(v, h.masks_[k], k));
    h.reps_.push_back(std::move(rep_forms));
    std::vector<std::vector<Rational>> span = reps;
    span.insert(span.end(), exact.begin(), exact.end());
    h.span_.push_back(std::move(span));
  }
  return h;
}

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::not_exact: return "not_exact";
    case Exactness::undecided: return "undecided";
  }
  return "undecided";
}

ExactResult is_exact(const Algebroid& algebroid, const ScalarForm& w, int degree_bound) {
  if (!d_A(algebroid, w).is_zero()) throw PreconditionError("is_exact: form is not closed");
  const int k = w.degree();
  if (w.is_zero()) return {Exactness::exact, ScalarForm(k > 0 ? k - 1 : 0)};
  const bool point = algebroid.chart_dim() == 0;
  if (k == 0) return {point ? Exactness::not_exact : Exactness::undecided, std::nullopt};
  const std::size_t n = algebroid.chart().size();
  std::vector<ScalarForm> gens, prims;
  for (Mask m : masks_of_degree(algebroid.rank(), k - 1)) {
    for (const Exponents& e : monomials(n, point ? 0 : std::max(degree_bound, 0))) {
      ScalarForm p = ScalarForm::basis(m, Poly::monomial(algebroid.chart(), e, Rational(1)));
      gens.push_back(d_A(algebroid, p));
      prims.push_back(std::move(p));
    }
  }
  const auto sol = solve_forms(gens, w, n);
  if (!sol) return {point ? Exactness::not_exact : Exactness::undecided, std::nullopt};
  ScalarForm prim(k - 1);
  for (std::size_t j = 0; j < prims.size(); ++j) {
    if (!(*sol)[j].is_zero()) prim += prims[j] * (*sol)[j];
  }
  if (!(d_A(algebroid, prim) == w)) throw InternalError("is_exact: primitive check failed");
  return {Exactness::exact, std::move(prim)};
}

ScalarForm transgression(const ConnectionUpToHomotopy& from, const ConnectionUpToHomotopy& to, int i) {
  if (i < 1) throw StructuralError("transgression: index must be positive");
  if (!(from.bundle() == to.bundle())) throw StructuralError("transgression: different graded bundles");
  if (from.algebroid_ptr() != to.algebroid_ptr()) throw StructuralError("transgression: different algebroids");
  const GradedBundle& e = from.bundle();
  const TotalForm d =
      unhat(e, 1, [&](const GradedForm& w) { return cuth_apply(to, w) - cuth_apply(from, w); });
  // R_t = r0 + t·r1 + t²·r2
  const TotalForm r0 = cuth_curvature(from);
  const TotalForm r1 = d_end(from, d);
  const TotalForm r2 = compose(d, d);
  // coefficients of R_t^{i-1} in t
  std::vector<TotalForm> poly{TotalForm::identity(e)};
  for (int step = 1; step < i; ++step) {
    std::vector<TotalForm> next(poly.size() + 2, TotalForm(e, 2 * step));
    for (std::size_t a = 0; a < poly.size(); ++a) {
      if (poly[a].is_zero()) continue;
      next[a] += compose(poly[a], r0);
      next[a + 1] += compose(poly[a], r1);
      next[a + 2] += compose(poly[a], r2);
    }
    poly = std::move(next);
  }
  ScalarForm t(2 * i - 1);
  for (std::size_t a = 0; a < poly.size(); ++a) {
    if (poly[a].is_zero()) continue;
    t += gtr(compose(poly[a], d)) * Rational(i, static_cast<long>(a) + 1);
  }
  return t;
}

MasseyResult massey_triple(const Algebroid& algebroid, const ScalarForm& alpha, const ScalarForm& beta,
                           const ScalarForm& gamma, int degree_bound) {
  for (const ScalarForm* f : {&alpha, &beta, &gamma}) {
    if (!d_A(algebroid, *f).is_zero()) throw PreconditionError("massey_triple: inputs must be closed");
  }
  const int a = alpha.degree(), b = beta.degree(), c = gamma.degree();
  const ExactResult first = is_exact(algebroid, wedge(alpha, beta), degree_bound);
  ScalarForm bg = wedge(beta, gamma);
  if (a % 2) bg = -bg;
  const ExactResult second = is_exact(algebroid, bg, degree_bound);
  for (const ExactResult* r : {&first, &second}) {
    if (r->status == Exactness::not_exact) throw PreconditionError("massey_triple: a cup product is not exact");
    if (r->status == Exactness::undecided) {
      throw PreconditionError("massey_triple: no primitive found within the degree bound");
    }
  }
  MasseyResult out;
  out.omega = *first.primitive;
  out.eta = *second.primitive;
  out.representative = wedge(out.omega, gamma) - wedge(alpha, out.eta);
  const int deg = a + b + c - 1;
  if (out.representative.is_zero()) out.representative = ScalarForm(deg);
  if (!d_A(algebroid, out.representative).is_zero()) throw InternalError("massey representative not closed");
  if (algebroid.chart_dim() != 0) return out;
  out.point_base = true;
  const CohomologyBasis h = ce_cohomology(algebroid);
  const int r = algebroid.rank();
  if (deg > r) {
    out.vanishes = true;
    out.representative_exact = true;
    return out;
  }
  auto degree_ok = [&](int k) { return k >= 0 && k <= r; };
  if (degree_ok(b + c - 1)) {
    for (const auto& x : h.representatives(b + c - 1)) out.indeterminacy.push_back(wedge(alpha, x));
  }
  if (degree_ok(a + b - 1)) {
    for (const auto& x : h.representatives(a + b - 1)) out.indeterminacy.push_back(wedge(x, gamma));
  }
  // class coordinates of the indeterminacy, then membership of the product
  std::vector<std::vector<Rational>> cls;
  for (const auto& f : out.indeterminacy) cls.push_back(h.decompose(f.is_zero() ? ScalarForm(deg) : f));
  const std::vector<Rational> target = h.decompose(out.representative);
  const int hd = h.dim(deg);
  out.representative_exact = h.is_zero_class(out.representative);
  RationalMatrix m(hd, static_cast<int>(cls.size()));
  for (std::size_t j = 0; j < cls.size(); ++j) {
    for (int i = 0; i < hd; ++i) m.at(i, static_cast<int>(j)) = cls[j][i];
  }
  out.indeterminacy_rank = rank(m);
  out.vanishes = solve(m, target).has_value();
  return out;
}

}  // namespace gradweil
