#include "gradweil/constructions.hpp"

#include <string>
#include <utility>

#include "gradweil/errors.hpp"

namespace gradweil {

bool Report::ok() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void Report::add(std::string name, bool pass, std::string detail, Witness witness) {
  checks.push_back({std::move(name), pass, std::move(detail), std::move(witness)});
}

namespace {

using Christoffel = std::vector<std::vector<std::vector<Poly>>>;

Christoffel zero_christoffel(int frame, int rank) {
  return Christoffel(frame, std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, Poly(0))));
}

Section unit(int rank, int k) {
  Section s(rank, Poly(0));
  s[k] = Poly(1);
  return s;
}

Section add(Section a, const Section& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

Section sub(Section a, const Section& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

bool is_zero(const Section& s) {
  for (const auto& p : s) {
    if (!p.is_zero()) return false;
  }
  return true;
}

Section mat_apply(const std::vector<std::vector<Poly>>& m, const Section& b) {
  Section out(m.size(), Poly(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (!m[i][k].is_zero() && !b[k].is_zero()) out[i] += m[i][k] * b[k];
    }
  }
  return out;
}

std::string frame_pair(int i, int j) { return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")"; }

Poly apply_field(const Algebroid& a, const Section& a_sec, const Poly& f) {
  Poly out = a.zero();
  for (int i = 0; i < a.rank(); ++i) {
    if (!a_sec[i].is_zero()) out += a_sec[i] * a.anchor_apply(i, f);
  }
  return out;
}

struct MorphismOps {
  const AlgebroidMorphism& m;
  const LinearConnection& nabla;  // A-connection on B

  const Algebroid& b() const { return *m.source; }
  const Algebroid& a() const { return *m.target; }
  Section del(const Section& s) const { return mat_apply(m.matrix, s); }
  Section nab(const Section& a_sec, const Section& b_sec) const { return nabla.covariant(a_sec, b_sec); }
  // ∇^∂_{b1} b2
  Section on_b(const Section& b1, const Section& b2) const {
    return add(section_bracket(b(), b1, b2), nab(del(b2), b1));
  }
  // ∇^∂_b a
  Section on_a(const Section& b_sec, const Section& a_sec) const {
    return add(section_bracket(a(), del(b_sec), a_sec), del(nab(a_sec, b_sec)));
  }
  Section curvature(const Section& b1, const Section& b2, const Section& a_sec) const {
    Section r = sub(Section(b().rank(), Poly(0)), nab(a_sec, section_bracket(b(), b1, b2)));
    r = add(r, section_bracket(b(), nab(a_sec, b1), b2));
    r = add(r, section_bracket(b(), b1, nab(a_sec, b2)));
    r = add(r, nab(on_a(b2, a_sec), b1));
    r = sub(r, nab(on_a(b1, a_sec), b2));
    return r;
  }
};

void check_morphism_shapes(const AlgebroidMorphism& m, const LinearConnection& nabla) {
  if (!m.source || !m.target) throw StructuralError("morphism: missing algebroid");
  if (!(m.source->chart() == m.target->chart())) throw StructuralError("morphism: algebroids over different charts");
  if (static_cast<int>(m.matrix.size()) != m.target->rank()) throw StructuralError("morphism: matrix row count");
  for (const auto& row : m.matrix) {
    if (static_cast<int>(row.size()) != m.source->rank()) throw StructuralError("morphism: matrix column count");
  }
  if (nabla.rank() != m.source->rank() || nabla.algebroid().rank() != m.target->rank()) {
    throw StructuralError("morphism: connection must be a target-connection on the source bundle");
  }
}

MatForm as_matrix(const std::vector<std::vector<Poly>>& m, int rows, int cols) {
  MatForm out(0, rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!m[r][c].is_zero()) out.add(r, c, ScalarForm::constant(m[r][c]));
    }
  }
  return out;
}

}  // namespace

Section section_bracket(const Algebroid& algebroid, const Section& a, const Section& b) {
  const int r = algebroid.rank();
  if (static_cast<int>(a.size()) != r || static_cast<int>(b.size()) != r) {
    throw StructuralError("section_bracket: wrong section length");
  }
  Section out(r, algebroid.zero());
  for (int i = 0; i < r; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < r; ++j) {
      if (b[j].is_zero() || i == j) continue;
      const Poly ab = a[i] * b[j];
      for (int k = 0; k < r; ++k) {
        if (!algebroid.c(k, i, j).is_zero()) out[k] += ab * algebroid.c(k, i, j);
      }
    }
  }
  for (int k = 0; k < r; ++k) {
    out[k] += apply_field(algebroid, a, b[k]) - apply_field(algebroid, b, a[k]);
  }
  return out;
}

Section section_anchor(const Algebroid& algebroid, const Section& a) {
  Section out(algebroid.chart_dim(), algebroid.zero());
  for (int i = 0; i < algebroid.rank(); ++i) {
    if (a[i].is_zero()) continue;
    for (int x = 0; x < algebroid.chart_dim(); ++x) out[x] += a[i] * algebroid.anchor(i, x);
  }
  return out;
}

Report square_zero_check(const ConnectionUpToHomotopy& conn) {
  Report rep;
  rep.construction = "square_zero";
  const TotalForm r = cuth_curvature(conn);
  rep.add("curvature vanishes", r.is_zero(), "", r.is_zero() ? Witness{} : Witness{r});
  const GradedBundle& e = conn.bundle();
  if (e.size() != 2 || e.degree(1) != e.degree(0) + 1) return rep;
  const ConnectionUpToHomotopy n = normalize_cuth(conn);
  if (!conn.is_normalized()) rep.notes.push_back("degree-preserving 1-form part absorbed into the connections");
  const int r0 = e.rank(0), r1 = e.rank(1);
  const MatForm del = n.form().block_or_zero(0, 1);
  const MatForm omega = n.form().block_or_zero(1, 0);
  const MatForm eq1 = curvature(n.nabla(0)) + wedge(omega, del);
  const MatForm eq2 = curvature(n.nabla(1)) + wedge(del, omega);
  const MatForm eq3 = del.is_zero() ? MatForm(1, r1, r0) : d_nabla_hom(n.nabla(0), n.nabla(1), del);
  const MatForm eq4 = omega.is_zero() ? MatForm(3, r0, r1) : d_nabla_hom(n.nabla(1), n.nabla(0), omega);
  auto put = [&](const char* name, const MatForm& m) {
    rep.add(name, m.is_zero(), "", m.is_zero() ? Witness{} : Witness{m});
  };
  put("R0 + omega*del = 0", eq1);
  put("R1 + del*omega = 0", eq2);
  put("del is parallel", eq3);
  put("omega is closed", eq4);
  // both routes must agree
  const bool formula_zero = eq1.is_zero() && eq2.is_zero() && eq3.is_zero() && eq4.is_zero();
  if (formula_zero != r.is_zero()) throw InternalError("square_zero_check: block equations disagree with R");
  return rep;
}

ConnectionUpToHomotopy double_rep(const LinearConnection& nabla) {
  const int n = nabla.rank();
  const GradedBundle e({{0, n}, {1, n}});
  TotalForm d(e, 1);
  MatForm id(0, n, n);
  for (int k = 0; k < n; ++k) id.add(k, k, ScalarForm::constant(nabla.algebroid().one()));
  d.add_block(0, 1, id);
  d.add_block(1, 0, -curvature(nabla));
  return ConnectionUpToHomotopy(e, {nabla, nabla}, d);
}

std::string morphism_failure(const AlgebroidMorphism& m) {
  const Algebroid& b = *m.source;
  const Algebroid& a = *m.target;
  for (int k = 0; k < b.rank(); ++k) {
    const Section lhs = section_anchor(a, mat_apply(m.matrix, unit(b.rank(), k)));
    const Section rhs = section_anchor(b, unit(b.rank(), k));
    if (!is_zero(sub(lhs, rhs))) return "anchor (e" + std::to_string(k + 1) + ")";
  }
  for (int k1 = 0; k1 < b.rank(); ++k1) {
    for (int k2 = k1 + 1; k2 < b.rank(); ++k2) {
      const Section u1 = unit(b.rank(), k1), u2 = unit(b.rank(), k2);
      const Section lhs = mat_apply(m.matrix, section_bracket(b, u1, u2));
      const Section rhs = section_bracket(a, mat_apply(m.matrix, u1), mat_apply(m.matrix, u2));
      if (!is_zero(sub(lhs, rhs))) return "bracket " + frame_pair(k1, k2);
    }
  }
  return {};
}

MorphismConnections morphism_connections(const AlgebroidMorphism& m, const LinearConnection& nabla) {
  check_morphism_shapes(m, nabla);
  const MorphismOps ops{m, nabla};
  const int rb = m.source->rank(), ra = m.target->rank();
  Christoffel gb = zero_christoffel(rb, rb), ga = zero_christoffel(rb, ra);
  for (int k = 0; k < rb; ++k) {
    for (int k2 = 0; k2 < rb; ++k2) gb[k][k2] = ops.on_b(unit(rb, k), unit(rb, k2));
    for (int i = 0; i < ra; ++i) ga[k][i] = ops.on_a(unit(rb, k), unit(ra, i));
  }
  MatForm r(2, rb, ra);
  for (int k1 = 0; k1 < rb; ++k1) {
    for (int k2 = k1 + 1; k2 < rb; ++k2) {
      const Mask mask = (Mask{1} << k1) | (Mask{1} << k2);
      for (int i = 0; i < ra; ++i) {
        const Section v = ops.curvature(unit(rb, k1), unit(rb, k2), unit(ra, i));
        for (int l = 0; l < rb; ++l) {
          if (!v[l].is_zero()) r.add(l, i, ScalarForm::basis(mask, v[l]));
        }
      }
    }
  }
  return {LinearConnection(m.source, rb, std::move(gb)), LinearConnection(m.source, ra, std::move(ga)), std::move(r)};
}

Section morphism_curvature_apply(const AlgebroidMorphism& m, const LinearConnection& nabla, const Section& b1,
                                 const Section& b2, const Section& a) {
  check_morphism_shapes(m, nabla);
  return MorphismOps{m, nabla}.curvature(b1, b2, a);
}

ConnectionUpToHomotopy morphism_rep(const AlgebroidMorphism& m, const LinearConnection& nabla) {
  check_morphism_shapes(m, nabla);
  const std::string failure = morphism_failure(m);
  if (!failure.empty()) throw PreconditionError("not a Lie algebroid morphism: " + failure);
  MorphismConnections mc = morphism_connections(m, nabla);
  const int rb = m.source->rank(), ra = m.target->rank();
  if (ra == 0) {
    return ConnectionUpToHomotopy::degree_preserving(GradedBundle::ordinary(rb), {std::move(mc.on_source)});
  }
  const GradedBundle e({{0, rb}, {1, ra}});
  TotalForm d(e, 1);
  d.add_block(0, 1, as_matrix(m.matrix, ra, rb));
  d.add_block(1, 0, -mc.curvature);
  return ConnectionUpToHomotopy(e, {std::move(mc.on_source), std::move(mc.on_target)}, std::move(d));
}

AlgebroidMorphism anchor_morphism(AlgebroidPtr algebroid) {
  const int n = algebroid->chart_dim(), r = algebroid->rank();
  std::vector<std::vector<Poly>> rho(n, std::vector<Poly>(r, algebroid->zero()));
  for (int i = 0; i < r; ++i) {
    for (int x = 0; x < n; ++x) rho[x][i] = algebroid->anchor(i, x);
  }
  auto tm = std::make_shared<const Algebroid>(Algebroid::tangent(algebroid->chart()));
  return {std::move(algebroid), std::move(tm), std::move(rho)};
}

namespace {

// The TM-connection must live on a tangent algebroid of the same chart;
// rebuild it over the morphism's own target so shapes line up.
LinearConnection rebase(const LinearConnection& tm_connection, const AlgebroidMorphism& m) {
  if (!(tm_connection.algebroid().chart() == m.target->chart()) ||
      tm_connection.algebroid().rank() != m.target->rank()) {
    throw StructuralError("basic connections need a TM-connection on the chart of A");
  }
  if (tm_connection.rank() != m.source->rank()) throw StructuralError("TM-connection must act on A");
  return LinearConnection(m.target, tm_connection.rank(), tm_connection.christoffel());
}

}  // namespace

BasicConnections basic_connections(AlgebroidPtr algebroid, const LinearConnection& tm_connection) {
  const AlgebroidMorphism m = anchor_morphism(std::move(algebroid));
  MorphismConnections mc = morphism_connections(m, rebase(tm_connection, m));
  return {std::move(mc.on_target), std::move(mc.on_source)};
}

MatForm basic_curvature(AlgebroidPtr algebroid, const LinearConnection& tm_connection) {
  const AlgebroidMorphism m = anchor_morphism(std::move(algebroid));
  return morphism_connections(m, rebase(tm_connection, m)).curvature;
}

Section basic_curvature_apply(AlgebroidPtr algebroid, const LinearConnection& tm_connection, const Section& a,
                              const Section& b, const Section& x) {
  const AlgebroidMorphism m = anchor_morphism(std::move(algebroid));
  return morphism_curvature_apply(m, rebase(tm_connection, m), a, b, x);
}

ConnectionUpToHomotopy adjoint_rep(AlgebroidPtr algebroid, const LinearConnection& tm_connection) {
  const AlgebroidMorphism m = anchor_morphism(std::move(algebroid));
  return morphism_rep(m, rebase(tm_connection, m));
}

Report nrep_obstruction(const ConnectionUpToHomotopy& rep, const std::vector<LinearConnection>& ordinary, int max_l,
                        int degree_bound) {
  Report out;
  out.construction = "nrep_obstruction";
  const TotalForm r = cuth_curvature(rep);
  out.add("representation up to homotopy", r.is_zero(), "", r.is_zero() ? Witness{} : Witness{r});
  if (!r.is_zero()) return out;
  const ConnectionUpToHomotopy plain = ConnectionUpToHomotopy::degree_preserving(rep.bundle(), ordinary);
  const Algebroid& a = rep.algebroid();
  for (int l = 1; l <= max_l; ++l) {
    ScalarForm alt(2 * l);
    for (int z = 0; z < rep.bundle().size(); ++z) {
      ScalarForm s = sigma_character(ordinary[z], l).representative;
      alt += (rep.bundle().degree(z) % 2) ? -s : s;
    }
    const ScalarForm t = transgression(rep, plain, l);
    const std::string tag = "l=" + std::to_string(l);
    out.add("transgression primitive " + tag, d_A(a, t) == alt, "", alt.is_zero() ? Witness{} : Witness{alt});
    const ExactResult ex = is_exact(a, alt, degree_bound);
    out.add("alternating sum exact " + tag, ex.status == Exactness::exact, to_string(ex.status),
            ex.primitive ? Witness{*ex.primitive} : Witness{});
  }
  return out;
}

// ---- Bott vanishing ------------------------------------------------------------

LinearConnection bott_connection(const Algebroid& algebroid, AlgebroidPtr restricted, const Subframe& b) {
  const std::vector<int> comp = b.complement();
  const int q = static_cast<int>(comp.size());
  Christoffel g = zero_christoffel(b.size(), q);
  for (int bl = 0; bl < b.size(); ++bl) {
    const int bi = b.members()[bl];
    for (int k = 0; k < q; ++k) {
      for (int k2 = 0; k2 < q; ++k2) g[bl][k][k2] = algebroid.c(comp[k2], bi, comp[k]);
    }
  }
  return LinearConnection(std::move(restricted), q, std::move(g));
}

namespace {

struct Extended {
  LinearConnection tilde;
  MatForm curvature;
};

Extended extend_flat(const AlgebroidPtr& algebroid, const Subframe& b, const LinearConnection& nabla_b,
                     const ComplementChristoffel& complement) {
  if (b.parent_rank() != algebroid->rank()) throw StructuralError("subframe does not match the algebroid");
  if (!is_bracket_closed(*algebroid, b)) throw PreconditionError("B is not closed under the bracket");
  if (!curvature(nabla_b).is_zero()) throw PreconditionError("the B-connection is not flat");
  LinearConnection tilde = extend_connection(nabla_b, b, algebroid, complement);
  MatForm r = curvature(tilde);
  return {std::move(tilde), std::move(r)};
}

void trace_vanishing(Report& rep, const Subframe& b, const MatForm& r, int rank_a, int above) {
  for (int l = 1; 2 * l <= rank_a; ++l) {
    if (2 * l <= above) continue;
    const MatForm rl = matrix_power(r, l);
    rep.add("R^" + std::to_string(l) + " in I(B)^" + std::to_string(l), ideal_membership(b, rl, l));
    const ScalarForm t = trace(rl);
    rep.add("tr(R^" + std::to_string(l) + ") = 0", t.is_zero(), "form degree " + std::to_string(2 * l),
            t.is_zero() ? Witness{} : Witness{t});
  }
}

}  // namespace

Report bott_report(AlgebroidPtr algebroid, const Subframe& b, const LinearConnection& nabla_b,
                   const ComplementChristoffel& complement) {
  const Extended ext = extend_flat(algebroid, b, nabla_b, complement);
  const int q = b.codim();
  Report rep;
  rep.construction = "bott";
  rep.thresholds = {q, 2 * q};
  rep.add("B-connection flat", true);
  rep.add("R in I(B) (x) End(E)", ideal_membership(b, ext.curvature, 1), "",
          ext.curvature.is_zero() ? Witness{} : Witness{ext.curvature});
  trace_vanishing(rep, b, ext.curvature, algebroid->rank(), 2 * q);
  return rep;
}

AtiyahResult atiyah_form(AlgebroidPtr algebroid, const Subframe& b, const LinearConnection& nabla_b,
                         const ComplementChristoffel& complement) {
  const Extended ext = extend_flat(algebroid, b, nabla_b, complement);
  const std::vector<int> comp = b.complement();
  const int q = static_cast<int>(comp.size());
  const int n = nabla_b.rank();
  MatForm w(1, n * n, q);
  for (int bl = 0; bl < b.size(); ++bl) {
    const int bi = b.members()[bl];
    for (int k = 0; k < q; ++k) {
      const std::vector<int> args{bi, comp[k]};
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          const Poly v = ext.curvature(r, c).evaluate(args);
          if (!v.is_zero()) w.add(r * n + c, k, ScalarForm::basis(Mask{1} << bl, v));
        }
      }
    }
  }
  AtiyahResult out{Report{}, w};
  Report& rep = out.report;
  rep.construction = "atiyah";
  rep.add("B-connection flat", true);
  const MatForm on_b = restrict_form(ext.curvature, b);
  rep.add("well defined on A/B", on_b.is_zero(), "R(b,b') = 0", on_b.is_zero() ? Witness{} : Witness{on_b});
  const LinearConnection bott = bott_connection(*algebroid, nabla_b.algebroid_ptr(), b);
  const LinearConnection end = induced_hom_connection(nabla_b, nabla_b);
  const MatForm dw = d_nabla_hom(bott, end, w);
  rep.add("omega closed", dw.is_zero(), "", dw.is_zero() ? Witness{} : Witness{dw});
  const bool refined = w.is_zero();
  rep.thresholds = {q, refined ? q : 2 * q};
  rep.notes.push_back(refined ? "omega vanishes for this extension: refined threshold active"
                              : "omega nonzero for this extension: threshold 2q");
  if (refined) {
    rep.add("R in I(B)^2 (x) End(E)", ideal_membership(b, ext.curvature, 2), "",
            ext.curvature.is_zero() ? Witness{} : Witness{ext.curvature});
  }
  trace_vanishing(rep, b, ext.curvature, algebroid->rank(), refined ? q : 2 * q);
  return out;
}

Report graded_bott_report(AlgebroidPtr algebroid, const Subframe& b, const ConnectionUpToHomotopy& rep_b) {
  if (b.parent_rank() != algebroid->rank()) throw StructuralError("subframe does not match the algebroid");
  if (!is_bracket_closed(*algebroid, b)) throw PreconditionError("B is not closed under the bracket");
  if (rep_b.algebroid().rank() != b.size()) throw StructuralError("representation does not live on B");
  if (!cuth_curvature(rep_b).is_zero()) throw PreconditionError("the B-representation is not square-zero");
  Report rep;
  rep.construction = "graded_bott";
  const int q = b.codim();
  rep.thresholds = {q, 2 * q};
  const ConnectionUpToHomotopy n = normalize_cuth(rep_b);
  if (!rep_b.is_normalized()) rep.notes.push_back("B-representation normalized before extension");
  std::vector<LinearConnection> nablas;
  for (const auto& nb : n.nablas()) nablas.push_back(extend_connection(nb, b, algebroid));
  const ConnectionUpToHomotopy tilde(n.bundle(), std::move(nablas), extend_form(n.form(), b));
  rep.add("B-representation square-zero", true);
  // ι*∘𝒟̃ = 𝒟∘ι* on frame sections
  bool intertwines = true;
  for (int l = 0; l < n.bundle().size() && intertwines; ++l) {
    for (int al = 0; al < n.bundle().rank(l); ++al) {
      const GradedForm s = GradedForm::section(n.bundle(), l, al);
      if (!(restrict_form(cuth_apply(tilde, s), b) == cuth_apply(n, s))) {
        intertwines = false;
        break;
      }
    }
  }
  rep.add("restriction intertwines", intertwines);
  const TotalForm r = cuth_curvature(tilde);
  const TotalForm rb = restrict_form(r, b);
  rep.add("restricted curvature vanishes", rb.is_zero(), "", rb.is_zero() ? Witness{} : Witness{rb});
  for (int l = 1; 2 * l <= algebroid->rank(); ++l) {
    if (2 * l <= 2 * q) continue;
    const ScalarForm t = gtr(power(r, l));
    rep.add("gtr(R^" + std::to_string(l) + ") = 0", t.is_zero(), "form degree " + std::to_string(2 * l),
            t.is_zero() ? Witness{} : Witness{t});
  }
  return rep;
}

// ---- infinitesimal ideal systems --------------------------------------------------

namespace {

LinearConnection restrict_connection(const LinearConnection& c, const Subframe& sub) {
  Christoffel g = zero_christoffel(c.algebroid().rank(), sub.size());
  for (int i = 0; i < c.algebroid().rank(); ++i) {
    for (int a = 0; a < sub.size(); ++a) {
      for (int b = 0; b < sub.size(); ++b) g[i][a][b] = c.gamma(i, sub.members()[a], sub.members()[b]);
    }
  }
  return LinearConnection(c.algebroid_ptr(), sub.size(), std::move(g));
}

void validate_iis(const IISSpec& s) {
  const Algebroid& a = *s.algebroid;
  if (s.j.parent_rank() != a.rank()) throw StructuralError("J is not a subframe of A");
  if (s.fm.parent_rank() != a.chart_dim()) throw StructuralError("F_M is not a subframe of the coordinate frame");
  if (s.extension.algebroid().rank() != a.chart_dim() || s.extension.rank() != a.rank()) {
    throw StructuralError("extension must be a TM-connection on A");
  }
  for (int m : s.fm.members()) {
    for (int j : s.j.members()) {
      for (int l = 0; l < a.rank(); ++l) {
        if (!s.j.contains(l) && !s.extension.gamma(m, j, l).is_zero()) {
          throw PreconditionError("extension does not preserve J along F_M");
        }
      }
    }
  }
}

}  // namespace

Report iis_check(const IISSpec& s) {
  validate_iis(s);
  const Algebroid& a = *s.algebroid;
  const BasicConnections bas = basic_connections(s.algebroid, s.extension);
  const MatForm rbas = basic_curvature(s.algebroid, s.extension);
  Report rep;
  rep.construction = "iis";
  rep.notes.push_back("checks the four component conditions for the given extension only");
  std::string bad;
  for (int j : s.j.members()) {
    for (int x = 0; x < a.chart_dim() && bad.empty(); ++x) {
      if (!s.fm.contains(x) && !a.anchor(j, x).is_zero()) bad = "rho(e" + std::to_string(j + 1) + ") leaves F_M";
    }
  }
  rep.add("(1) rho(J) in F_M", bad.empty(), bad);
  bad.clear();
  for (int i = 0; i < a.rank() && bad.empty(); ++i) {
    for (int j : s.j.members()) {
      for (int l = 0; l < a.rank(); ++l) {
        if (!s.j.contains(l) && !bas.on_a.gamma(i, j, l).is_zero()) {
          bad = "basic connection along e" + std::to_string(i + 1) + " moves e" + std::to_string(j + 1) + " out of J";
          break;
        }
      }
      if (!bad.empty()) break;
    }
  }
  rep.add("(2) basic connection on A preserves J", bad.empty(), bad);
  bad.clear();
  for (int i = 0; i < a.rank() && bad.empty(); ++i) {
    for (int m : s.fm.members()) {
      for (int x = 0; x < a.chart_dim(); ++x) {
        if (!s.fm.contains(x) && !bas.on_tm.gamma(i, m, x).is_zero()) {
          bad = "basic connection along e" + std::to_string(i + 1) + " moves d/dx" + std::to_string(m + 1) +
                " out of F_M";
          break;
        }
      }
      if (!bad.empty()) break;
    }
  }
  rep.add("(3) basic connection on TM preserves F_M", bad.empty(), bad);
  MatForm leak(2, a.rank(), a.chart_dim());
  for (int m : s.fm.members()) {
    for (int l = 0; l < a.rank(); ++l) {
      if (!s.j.contains(l)) leak.add(l, m, rbas(l, m));
    }
  }
  rep.add("(4) basic curvature maps F_M into J", leak.is_zero(), "", leak.is_zero() ? Witness{} : Witness{leak});
  return rep;
}

Report iis_obstruction(const IISSpec& s, int degree_bound, const std::optional<LinearConnection>& user_j,
                       const std::optional<LinearConnection>& user_fm) {
  validate_iis(s);
  Report rep;
  rep.construction = "iis_obstruction";
  const Report conditions = iis_check(s);
  rep.add("ideal system conditions", conditions.ok());
  if (!conditions.ok()) return rep;
  const Algebroid& a = *s.algebroid;
  const BasicConnections bas = basic_connections(s.algebroid, s.extension);
  const LinearConnection on_j = user_j ? *user_j : restrict_connection(bas.on_a, s.j);
  const LinearConnection on_f = user_fm ? *user_fm : restrict_connection(bas.on_tm, s.fm);
  for (const auto* c : {&on_j, &on_f}) {
    if (c->algebroid_ptr() != s.algebroid && !(c->algebroid().rank() == a.rank() && c->algebroid().chart() == a.chart())) {
      throw StructuralError("iis_obstruction: connection is not an A-connection");
    }
  }
  if (on_j.rank() != s.j.size() || on_f.rank() != s.fm.size()) throw StructuralError("iis_obstruction: connection rank");
  if (!user_j || !user_fm) rep.notes.push_back("default connections: restricted basic connections");
  auto compare = [&](const std::string& name, const ScalarForm& x, const ScalarForm& y) {
    const ScalarForm diff = x - y;
    const ExactResult ex = is_exact(a, diff.is_zero() ? ScalarForm(x.degree()) : diff, degree_bound);
    rep.add(name, ex.status == Exactness::exact, to_string(ex.status),
            ex.primitive ? Witness{*ex.primitive} : Witness{});
  };
  for (int i = 1; 2 * i <= a.rank(); ++i) {
    const auto rj = s.j.size() ? sigma_character(on_j, i).representative : ScalarForm(2 * i);
    const auto rf = s.fm.size() ? sigma_character(on_f, i).representative : ScalarForm(2 * i);
    compare("sigma^" + std::to_string(i) + "(J) = sigma^" + std::to_string(i) + "(F_M)", rj, rf);
  }
  for (int l = 1; 4 * l <= a.rank(); ++l) {
    const auto pj = s.j.size() ? pontryagin_class(on_j, l).representative : ScalarForm(4 * l);
    const auto pf = s.fm.size() ? pontryagin_class(on_f, l).representative : ScalarForm(4 * l);
    compare("p^" + std::to_string(l) + "(J) = p^" + std::to_string(l) + "(F_M)", pj, pf);
  }
  return rep;
}

}  // namespace gradweil
