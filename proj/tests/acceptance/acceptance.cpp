// Acceptance suite: one line per criterion, exact checks only.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "gradweil/catalog.hpp"
#include "gradweil/constructions.hpp"
#include "gradweil/errors.hpp"
#include "gradweil/io.hpp"
#include "gradweil/random.hpp"
#include "gradweil/runner.hpp"

#ifndef GRADWEIL_CORPUS_DIR
#error "GRADWEIL_CORPUS_DIR must point at the shipped corpus"
#endif

using namespace gradweil;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Result()> run;
};

Result fail(std::string why) { return {false, std::move(why)}; }

AlgebroidPtr perturbed(RandomSource& rnd, const Algebroid& base) {
  const int r = base.rank();
  std::vector<BracketEntry> br;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      BracketEntry e{i, j, {}};
      for (int k = 0; k < r; ++k) {
        Poly c = base.c(k, i, j);
        if (rnd.coin(0.15)) c += Poly(rnd.coefficient());
        e.coeffs.push_back(c);
      }
      br.push_back(std::move(e));
    }
  }
  return catalog::share(Algebroid::lie_algebra(r, br));
}

// 1
Result duality() {
  RandomSource rnd(101);
  int valid = 0;
  for (int t = 0; t < 200; ++t) {
    const AlgebroidPtr a = perturbed(rnd, t % 2 ? *catalog::sl2() : *catalog::aff1());
    const bool ax = check_axioms(*a).ok();
    if (ax != d_A_squared_check(*a)) return fail("mismatch at trial " + std::to_string(t));
    valid += ax;
  }
  return {true, "200 trials, " + std::to_string(valid) + " valid / " + std::to_string(200 - valid) + " broken"};
}

GradedBundle three_summands() { return GradedBundle({{0, 1}, {1, 2}, {2, 1}}); }

// 2
Result trace_commutator() {
  RandomSource rnd(102);
  const auto a = catalog::aff1();
  const GradedBundle b = three_summands();
  int nonzero = 0;
  for (int t = 0; t < 100; ++t) {
    const TotalForm k1 = rnd.total_form(b, 2, rnd.uniform(-1, 2));
    const TotalForm k2 = rnd.total_form(b, 2, rnd.uniform(-1, 2));
    const TotalForm c = graded_commutator(k1, k2);
    nonzero += !c.is_zero();
    if (!gtr(c).is_zero()) return fail("gtr of commutator nonzero at trial " + std::to_string(t));
  }
  return {true, "100 pairs, " + std::to_string(nonzero) + " nonzero commutators"};
}

// 3
Result trace_exchange() {
  RandomSource rnd(103);
  const std::vector<AlgebroidPtr> algs{catalog::aff1(), catalog::sl2(), catalog::aff1_action()};
  for (int t = 0; t < 50; ++t) {
    const AlgebroidPtr a = algs[t % algs.size()];
    const ConnectionUpToHomotopy c = rnd.cuth(a, three_summands(), 1);
    const TotalForm k = rnd.total_form(c.bundle(), a->rank(), rnd.uniform(0, 1), a->chart(), 1);
    const TotalForm dk = d_end(c, k);
    if (!(dk == d_end_formula(c, k))) return fail("operator and formula routes differ");
    if (!(d_A(*a, gtr(k)) == gtr(dk))) return fail("graded trace exchange fails at trial " + std::to_string(t));
    const LinearConnection n = rnd.connection(a, 2, 1);
    const MatForm m = rnd.mat_form(a->chart(), a->rank(), rnd.uniform(0, 1), 2, 2, 1);
    if (!(d_A(*a, trace(m)) == trace(d_nabla_hom(n, n, m)))) return fail("ordinary trace exchange fails");
  }
  return {true, "50 random connections up to homotopy"};
}

// 4
Result bianchi() {
  RandomSource rnd(104);
  const std::vector<AlgebroidPtr> algs{catalog::sl2(), catalog::aff1_action(), catalog::abelian(4)};
  for (int t = 0; t < 50; ++t) {
    const AlgebroidPtr a = algs[t % algs.size()];
    const ConnectionUpToHomotopy c = rnd.cuth(a, GradedBundle({{0, 1}, {1, 1}}), 1);
    for (int i = 1; i <= 3; ++i) {
      if (!d_end(c, curvature_power(c, i)).is_zero()) return fail("trial " + std::to_string(t) + ", i=" + std::to_string(i));
    }
  }
  return {true, "50 random D, i = 1,2,3"};
}

// 5
Result independence() {
  RandomSource rnd(105);
  const std::vector<AlgebroidPtr> algs{catalog::aff1(), catalog::sl2(), catalog::h3()};
  int nonzero = 0;
  for (int t = 0; t < 20; ++t) {
    const AlgebroidPtr a = algs[t % algs.size()];
    const GradedBundle b({{0, 1}, {1, 2}});
    const ConnectionUpToHomotopy c0 = rnd.cuth(a, b), c1 = rnd.cuth(a, b);
    const ScalarForm t1 = transgression(c0, c1, 1);
    const ScalarForm diff = sigma_character(c1, 1).representative - sigma_character(c0, 1).representative;
    if (!(d_A(*a, t1) == diff)) return fail("d_A T differs from the character difference");
    nonzero += !diff.is_zero();
    if (is_exact(*a, diff.is_zero() ? ScalarForm(2) : diff, 0).status != Exactness::exact) return fail("not exact");
  }
  return {true, "20 pairs over aff(1), sl(2), h3; " + std::to_string(nonzero) + " nonzero differences"};
}

// 6
Result alternating_sum() {
  RandomSource rnd(106);
  const std::vector<AlgebroidPtr> algs{catalog::aff1(), catalog::sl2(), catalog::h3(), catalog::abelian(4)};
  for (int t = 0; t < 20; ++t) {
    const AlgebroidPtr a = algs[t % algs.size()];
    const ConnectionUpToHomotopy c = rnd.cuth(a, GradedBundle({{0, 2}, {1, 1}, {2, 1}}));
    for (int i = 1; 2 * i <= a->rank(); ++i) {
      ScalarForm alt(2 * i);
      for (int z = 0; z < c.bundle().size(); ++z) {
        const ScalarForm s = sigma_character(c.nabla(z), i).representative;
        alt += c.bundle().degree(z) % 2 ? -s : s;
      }
      const ScalarForm diff = sigma_character(c, i).representative - alt;
      if (is_exact(*a, diff.is_zero() ? ScalarForm(2 * i) : diff, 0).status != Exactness::exact) {
        return fail("trial " + std::to_string(t) + ", i=" + std::to_string(i));
      }
    }
  }
  return {true, "20 random D over a point"};
}

// 7
Result square_zero() {
  RandomSource rnd(107);
  const auto act = catalog::aff1_action();
  const auto tm = catalog::share(Algebroid::tangent(act->chart()));
  for (int t = 0; t < 10; ++t) {
    if (!square_zero_check(adjoint_rep(act, rnd.connection(tm, 2, 2))).ok()) return fail("adjoint, trial " + std::to_string(t));
    if (!square_zero_check(double_rep(rnd.connection(act, 2, 2))).ok()) return fail("double, trial " + std::to_string(t));
  }
  const AlgebroidMorphism inc{catalog::abelian(1), catalog::aff1(), {{Poly(0)}, {Poly(1)}}};
  const AlgebroidMorphism id{act, act, {{Poly(1), Poly(0)}, {Poly(0), Poly(1)}}};
  for (int t = 0; t < 5; ++t) {
    if (!square_zero_check(morphism_rep(inc, rnd.connection(catalog::aff1(), 1))).ok()) return fail("ideal inclusion");
    if (!square_zero_check(morphism_rep(id, rnd.connection(act, 2, 1))).ok()) return fail("identity of the action");
  }
  return {true, "10 adjoint + 10 double on the aff(1) action, 10 morphism"};
}

// 8
Result obstruction() {
  RandomSource rnd(108);
  const auto five = catalog::five_dim();
  const Subframe bsub(5, {0, 2, 3, 4});
  const auto b = catalog::share(restrict_to(*five, bsub));
  std::vector<ConnectionUpToHomotopy> reps;
  for (int t = 0; t < 3; ++t) reps.push_back(double_rep(rnd.connection(five, 1)));
  const AlgebroidMorphism inc{b, five, [] {
                                std::vector<std::vector<Poly>> m(5, std::vector<Poly>(4, Poly(0)));
                                m[0][0] = m[2][1] = m[3][2] = m[4][3] = Poly(1);
                                return m;
                              }()};
  for (int t = 0; t < 3; ++t) reps.push_back(morphism_rep(inc, rnd.connection(five, 4)));
  const auto act = catalog::aff1_action();
  const auto tm = catalog::share(Algebroid::tangent(act->chart()));
  reps.push_back(adjoint_rep(act, rnd.connection(tm, 2, 1)));
  int checks = 0;
  for (const auto& rep : reps) {
    if (!cuth_curvature(rep).is_zero()) return fail("constructed representation is not square zero");
    std::vector<LinearConnection> ord;
    for (int z = 0; z < rep.bundle().size(); ++z) {
      ord.push_back(rnd.connection(rep.algebroid_ptr(), rep.bundle().rank(z), rep.algebroid().chart_dim() ? 1 : 0));
    }
    const Report r = nrep_obstruction(rep, ord, 2, 4);
    if (!r.ok()) return fail("alternating sum not exact for a " + std::to_string(rep.algebroid().rank()) + "-rank base");
    checks += static_cast<int>(r.checks.size());
  }
  return {true, std::to_string(reps.size()) + " 2-reps, l = 1,2, " + std::to_string(checks) + " checks"};
}

// 9
Result bott() {
  const auto a = catalog::five_dim();
  const Subframe bsub(5, {0, 2, 3, 4});
  const auto b = catalog::share(restrict_to(*a, bsub));
  const LinearConnection m = catalog::constant_connection(
      b, {{{1, 0}, {0, 1}}, {{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{1, 0}, {0, 1}}});
  const ComplementChristoffel ext{{1, {{Poly(3), Poly(1)}, {Poly(0), Poly(-2)}}}};
  const LinearConnection tilde = extend_connection(m, bsub, a, ext);
  const MatForm r = curvature(tilde);
  if (r.is_zero()) return fail("curvature is zero; the example is degenerate");
  if (!ideal_membership(bsub, r, 1)) return fail("R not in I(B)");
  // codimension one: R^2 lies in I(B)^2, which is zero, so tr(R^2) vanishes
  const MatForm r2 = matrix_power(r, 2);
  if (!ideal_membership(bsub, r2, 2)) return fail("R^2 not in I(B)^2");
  if (!trace(r2).is_zero()) return fail("tr(R^2) nonzero");
  if (!bott_report(a, bsub, m, ext).ok()) return fail("bott report failed");
  RandomSource rnd(109);
  for (int t = 0; t < 3; ++t) {
    if (!graded_bott_report(a, bsub, double_rep(rnd.connection(b, 2))).ok()) return fail("graded variant failed");
  }
  return {true, "R != 0, R in I(B), tr(R^2) = 0; graded variant on 3 doubled 2-reps"};
}

// 10
Result atiyah() {
  const auto g = catalog::sl2();
  const Subframe borel(3, {0, 1});
  const auto b = catalog::share(restrict_to(*g, borel));
  const AtiyahResult at = atiyah_form(g, borel, catalog::constant_connection(b, {{{1}}, {{0}}}));
  if (!at.report.ok()) return fail("closedness report failed");
  if (at.form.is_zero() || at.report.thresholds.vanish_above != 2) return fail("expected omega != 0 with threshold 2q");
  const AtiyahResult triv = atiyah_form(g, borel, LinearConnection::trivial(b, 1));
  if (!triv.report.ok() || !triv.form.is_zero() || triv.report.thresholds.vanish_above != 1) {
    return fail("refined threshold not activated");
  }
  return {true, "omega(e,fbar) = -1 closed; omega = 0 extension gives vanish_above = q = 1"};
}

// 11
Result massey() {
  const auto h = catalog::h3();
  const auto e = [](int i) { return ScalarForm::basis(Mask{1} << i); };
  const MasseyResult m = massey_triple(*h, e(0), e(0), e(1), 0);
  const CohomologyBasis hb = ce_cohomology(*h);
  if (hb.is_zero_class(m.representative)) return fail("representative is exact");
  if (m.vanishes || m.indeterminacy_rank != 0) return fail("indeterminacy not zero");
  return {true, "class of " + to_text(m.representative) + ", indeterminacy 0"};
}

// 12
Result iis() {
  const auto tm = catalog::tangent(2);
  const IISSpec fol{tm, Subframe(2, {0}), Subframe(2, {0}), LinearConnection::trivial(tm, 2)};
  if (!iis_check(fol).ok()) return fail("foliation example");
  if (!iis_obstruction(fol, 2).ok()) return fail("obstruction on the Bott case");
  const auto aff = catalog::aff1();
  const auto pt = catalog::share(Algebroid::tangent(VarSpace{}));
  if (!iis_check({aff, Subframe(2, {1}), Subframe(0, {}), LinearConnection(pt, 2, {})}).ok()) return fail("naive ideal");
  const Report bad = iis_check({aff, Subframe(2, {0}), Subframe(0, {}), LinearConnection(pt, 2, {})});
  if (bad.ok() || bad.checks.at(1).pass) return fail("unstable J not caught by condition (2)");
  return {true, "foliation and naive ideal pass; unstable J fails (2)"};
}

// 13
Result determinism() {
  const std::filesystem::path dir(GRADWEIL_CORPUS_DIR);
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir)) {
    const std::string n = f.path().filename().string();
    if (f.path().extension() == ".json" && n.find(".expected.") == std::string::npos) files.push_back(f.path());
  }
  if (files.empty()) return fail("empty corpus");
  for (const auto& f : files) {
    const std::string a = io::canonical(cli::run_file(f).report);
    const std::string b = io::canonical(cli::run_file(f).report);
    if (a != b) return fail("non-deterministic output for " + f.filename().string());
  }
  const cli::CorpusSummary s = cli::run_corpus(dir);
  if (!s.ok()) return fail("corpus differs from golden files");
  for (const auto& e : s.entries) {
    if (e.status != "pass") return fail(e.name + ": " + e.status);
  }
  return {true, std::to_string(files.size()) + " entries identical on two runs and equal to goldens"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "axiom/differential duality", 5, duality},
      {2, "graded trace kills commutators", 10, trace_commutator},
      {3, "trace/differential exchange", 20, trace_exchange},
      {4, "Bianchi identity", 30, bianchi},
      {5, "connection independence", 30, independence},
      {6, "alternating-sum formula", 20, alternating_sum},
      {7, "square-zero constructions", 20, square_zero},
      {8, "obstruction theorem instance", 20, obstruction},
      {9, "Bott vanishing", 10, bott},
      {10, "Atiyah refinement", 5, atiyah},
      {11, "Massey product on h3", 5, massey},
      {12, "infinitesimal ideal systems", 10, iis},
      {13, "CLI determinism", 60, determinism},
  };
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--only") == 0 && k + 1 < argc) only = std::atoi(argv[++k]);
  }
  int failed = 0;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.pass && s > c.limit_s) r = fail("took " + std::to_string(s) + " s, limit " + std::to_string(c.limit_s));
    std::printf("%s %2d %-32s %7.3fs  %s\n", r.pass ? "PASS" : "FAIL", c.id, c.title, s, r.detail.c_str());
    failed += !r.pass;
  }
  return failed ? 1 : 0;
}
