#include "gradweil/runner.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "gradweil/catalog.hpp"
#include "gradweil/errors.hpp"
#include "gradweil/io.hpp"
#include "gradweil/random.hpp"

namespace gradweil::cli {

using json = nlohmann::json;

namespace {

struct Value {
  json enc;
  std::string text;
  std::function<json(const json&)> normalize;
};

json identity(const json& j) { return j; }

std::string indented(const std::string& block);

std::string status_word(Exactness e) {
  switch (e) {
    case Exactness::exact:
      return "zero";
    case Exactness::not_exact:
      return "nonzero";
    default:
      return "undecided";
  }
}

class Run;
const std::map<std::string, void (Run::*)()>& handlers();

class Run {
 public:
  Run(const json& problem, const Options& opt) : p_(problem), opt_(opt), rnd_(0) {}

  Outcome execute();

 private:
  friend const std::map<std::string, void (Run::*)()>& handlers();

  // setup
  void load_algebroid();
  int bound() const { return bound_; }
  LinearConnection connection(const json& j, AlgebroidPtr a, int rank, const std::string& where);
  ConnectionUpToHomotopy cuth(const json& j, AlgebroidPtr a, const GradedBundle& b, const std::string& where);
  const json& need(const char* key) const;
  int integer(const char* key, int fallback) const;
  Subframe subframe(const char* key, int parent) const { return io::subframe(need(key), parent, key); }
  ComplementChristoffel extension(const char* key, int rank);

  // values
  void put(const std::string& name, const ScalarForm& f);
  void put(const std::string& name, const Form& f);
  void put(const std::string& name, const MatForm& m);
  void put(const std::string& name, const TotalForm& k);
  void put(const std::string& name, const LinearConnection& c);
  void put(const std::string& name, const json& j, const std::string& text);
  void report(Report r) { reports_.push_back(std::move(r)); }
  json class_entry(int i, const ScalarForm& rep, bool closed, const std::string& prefix);
  void expectations(const json& expect, const std::string& where);

  // tasks
  void check_algebroid();
  void pontryagin();
  void obstruct_nrep();
  void bott();
  void graded_bott();
  void atiyah();
  void massey();
  void iis();
  void adjoint();
  void double_();
  void morphism();
  void transgression();
  void compute();
  void compute_op(const json& op, const std::string& name, const std::string& where);

  json p_;
  Options opt_;
  RandomSource rnd_;
  std::string task_;
  AlgebroidPtr a_;
  int bound_ = 2;
  int random_degree_ = 1;
  std::vector<Report> reports_;
  std::map<std::string, Value> values_;
  std::vector<std::string> value_order_;
  json classes_ = json::object();
  std::string class_text_;
};

const std::map<std::string, void (Run::*)()>& handlers() {
  static const std::map<std::string, void (Run::*)()> h{
      {"check-algebroid", &Run::check_algebroid}, {"pontryagin", &Run::pontryagin},
      {"obstruct-nrep", &Run::obstruct_nrep},     {"bott", &Run::bott},
      {"graded-bott", &Run::graded_bott},         {"atiyah", &Run::atiyah},
      {"massey", &Run::massey},                   {"iis", &Run::iis},
      {"adjoint", &Run::adjoint},                 {"double", &Run::double_},
      {"morphism", &Run::morphism},               {"transgression", &Run::transgression},
      {"compute", &Run::compute}};
  return h;
}

const json& Run::need(const char* key) const {
  auto it = p_.find(key);
  if (it == p_.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

int Run::integer(const char* key, int fallback) const {
  auto it = p_.find(key);
  if (it == p_.end()) return fallback;
  if (!it->is_number_integer()) throw ParseError(std::string(key) + ": expected an integer");
  return it->get<int>();
}

void Run::load_algebroid() {
  a_ = catalog::share(io::algebroid(need("algebroid")));
  random_degree_ = integer("random_degree", 1);
  int deg = io::max_poly_degree(p_, a_->chart());
  if (p_.dump().find("\"random\"") != std::string::npos) deg = std::max(deg, random_degree_);
  bound_ = opt_.bound ? *opt_.bound : integer("bound", 2 * deg + 2);
  std::uint64_t seed = 0;
  if (opt_.seed) {
    seed = *opt_.seed;
  } else if (p_.contains("seed")) {
    if (!p_["seed"].is_number_unsigned()) throw ParseError("seed: expected a non-negative integer");
    seed = p_["seed"].get<std::uint64_t>();
  }
  rnd_ = RandomSource(seed);
}

LinearConnection Run::connection(const json& j, AlgebroidPtr a, int rank, const std::string& where) {
  if (j.is_string()) {
    if (j == "random") return rnd_.connection(std::move(a), rank, random_degree_);
    if (j == "trivial") return LinearConnection::trivial(std::move(a), rank);
    throw ParseError(where + ": expected a connection, \"random\" or \"trivial\"");
  }
  return io::connection(j, std::move(a), rank, where);
}

ConnectionUpToHomotopy Run::cuth(const json& j, AlgebroidPtr a, const GradedBundle& b, const std::string& where) {
  if (j.is_string() && j == "random") return rnd_.cuth(std::move(a), b, random_degree_);
  return io::cuth(j, std::move(a), b, where);
}

ComplementChristoffel Run::extension(const char* key, int rank) {
  ComplementChristoffel out;
  if (!p_.contains(key)) return out;
  const LinearConnection c = io::connection(p_[key], a_, rank, key);
  for (const auto& e : p_[key]["christoffel"]) {
    const int i = e["frame"].get<int>();
    out[i] = c.christoffel()[i];
  }
  return out;
}

// ---- values ------------------------------------------------------------------

void Run::put(const std::string& name, const json& j, const std::string& text) {
  if (!values_.count(name)) value_order_.push_back(name);
  values_[name] = {j, text, identity};
}

void Run::put(const std::string& name, const ScalarForm& f) {
  put(name, io::to_json(f), to_text(f));
  const VarSpace s = a_->chart();
  const int r = a_->rank();
  values_[name].normalize = [s, r, name](const json& e) { return io::to_json(io::scalar_form(e, s, r, name)); };
}

void Run::put(const std::string& name, const Form& f) {
  std::string text;
  for (int k = 0; k < f.rank(); ++k) {
    if (!f[k].is_zero()) text += (text.empty() ? "" : " ; ") + ("f" + std::to_string(k + 1) + ": " + to_text(f[k]));
  }
  put(name, io::to_json(f), text.empty() ? "0" : text);
  const VarSpace s = a_->chart();
  const int r = a_->rank(), n = f.rank();
  values_[name].normalize = [s, r, n, name](const json& e) { return io::to_json(io::form(e, s, r, n, name)); };
}

std::string indented(const std::string& block) {
  if (block.empty()) return "0";
  std::string out;
  std::istringstream lines(block);
  for (std::string line; std::getline(lines, line);) out += "\n    " + line;
  return out;
}

void Run::put(const std::string& name, const MatForm& m) {
  put(name, io::to_json(m), indented(io::to_text(Witness{m})));
  const VarSpace s = a_->chart();
  const int r = a_->rank(), rows = m.rows(), cols = m.cols();
  values_[name].normalize = [s, r, rows, cols, name](const json& e) {
    return io::to_json(io::mat_form(e, s, r, rows, cols, name));
  };
}

void Run::put(const std::string& name, const TotalForm& k) {
  put(name, io::to_json(k), indented(io::to_text(Witness{k})));
  const VarSpace s = a_->chart();
  const int r = a_->rank();
  const GradedBundle b = k.bundle();
  values_[name].normalize = [s, r, b, name](const json& e) { return io::to_json(io::total_form(e, s, r, b, name)); };
}

void Run::put(const std::string& name, const LinearConnection& c) {
  std::ostringstream text;
  for (int i = 0; i < c.algebroid().rank(); ++i) {
    for (int al = 0; al < c.rank(); ++al) {
      for (int be = 0; be < c.rank(); ++be) {
        if (!c.gamma(i, al, be).is_zero()) {
          text << "\n    " << "Γ[e" << i + 1 << "][" << al + 1 << "][" << be + 1 << "] = " << c.gamma(i, al, be);
        }
      }
    }
  }
  put(name, io::to_json(c), text.str().empty() ? "0" : text.str());
  const AlgebroidPtr a = c.algebroid_ptr();
  const int n = c.rank();
  values_[name].normalize = [a, n, name](const json& e) { return io::to_json(io::connection(e, a, n, name)); };
}

json Run::class_entry(int i, const ScalarForm& rep, bool closed, const std::string& prefix) {
  json e = {{"i", i}, {"representative", io::to_json(rep)}, {"closed", closed}};
  if (!closed) {
    e["class_status"] = "undecided";
    return e;
  }
  const ExactResult ex = is_exact(*a_, rep.is_zero() ? ScalarForm(rep.degree()) : rep, bound_);
  e["class_status"] = status_word(ex.status);
  if (ex.primitive) e["primitive"] = io::to_json(*ex.primitive);
  class_text_ += "  " + prefix + std::to_string(i) + " = " + to_text(rep) + "  [" + status_word(ex.status) + "]";
  if (ex.primitive) class_text_ += "  primitive " + to_text(*ex.primitive);
  class_text_ += "\n";
  return e;
}

void Run::expectations(const json& expect, const std::string& where) {
  if (!expect.is_object()) throw ParseError(where + ": expected an object");
  Report r;
  r.construction = "expectations";
  for (const auto& [key, want] : expect.items()) {
    auto it = values_.find(key);
    if (it == values_.end()) {
      r.add(key, false, "no such value");
      continue;
    }
    const json norm = it->second.normalize(want);
    const bool ok = norm == it->second.enc;
    r.add(key, ok, ok ? "" : "got " + it->second.enc.dump());
  }
  report(std::move(r));
}

// ---- tasks -------------------------------------------------------------------

void Run::check_algebroid() {
  const AxiomReport ax = check_axioms(*a_);
  const bool dsq = d_A_squared_check(*a_);
  if (ax.ok() != dsq) throw InternalError("axiom check and d_A^2 disagree");
  Report r;
  r.construction = "algebroid";
  auto first = [&](const std::string& tag) {
    for (const auto& f : ax.failures) {
      if (f.rfind(tag, 0) == 0) return f;
    }
    return std::string{};
  };
  r.add("antisymmetry", ax.antisymmetric, first("antisymmetry"));
  r.add("anchor compatibility", ax.anchor_compatible, first("anchor"));
  r.add("Jacobi identity", ax.jacobi, first("Jacobi"));
  r.add("d_A^2 = 0 on generators", dsq);
  r.notes = ax.failures;
  report(std::move(r));
  for (int k = 0; k < a_->rank(); ++k) put("d_eps" + std::to_string(k + 1), a_->d_coframe(k));
  for (int x = 0; x < a_->chart_dim(); ++x) {
    const Mask m = Mask{1} << x;
    put("rho_pullback_d" + a_->chart().names()[x], rho_pullback(*a_, ScalarForm::basis(m)));
  }
  if (a_->chart_dim() == 0 && ax.ok()) {
    const auto dims = ce_cohomology(*a_).dims();
    std::string text;
    for (int d : dims) text += (text.empty() ? "" : " ") + std::to_string(d);
    put("cohomology_dims", json(dims), text);
  }
}

void Run::pontryagin() {
  const int n = integer("rank", 1);
  const LinearConnection c = connection(need("connection"), a_, n, "connection");
  put("curvature", curvature(c));
  Report chars;
  chars.construction = "characters";
  json sig = json::array();
  for (int i = 1; 2 * i <= a_->rank(); ++i) {
    const CharacterForm ch = sigma_character(c, i);
    chars.add("sigma^" + std::to_string(i) + " closed", ch.closed);
    sig.push_back(class_entry(i, ch.representative, ch.closed, "sigma^"));
  }
  report(std::move(chars));
  json pont = json::array();
  for (const auto& pc : total_pontryagin_class(c)) {
    if (pc.index == 0) continue;
    json e = class_entry(pc.index, pc.representative, true, "p^");
    e["prefactor"] = pc.to_text();
    pont.push_back(std::move(e));
  }
  classes_["sigma"] = sig;
  classes_["pontryagin"] = pont;
  if (p_.contains("compare")) {
    const LinearConnection c2 = connection(p_["compare"], a_, n, "compare");
    Report r;
    r.construction = "class_equality";
    for (int i = 1; 2 * i <= a_->rank(); ++i) {
      const ScalarForm diff = sigma_character(c, i).representative - sigma_character(c2, i).representative;
      const ExactResult ex = is_exact(*a_, diff.is_zero() ? ScalarForm(2 * i) : diff, bound_);
      r.add("sigma^" + std::to_string(i) + " classes agree", ex.status == Exactness::exact, to_string(ex.status),
            ex.primitive ? Witness{*ex.primitive} : Witness{});
    }
    report(std::move(r));
  }
}

void Run::obstruct_nrep() {
  const GradedBundle b = io::bundle(need("bundle"));
  const ConnectionUpToHomotopy rep = cuth(need("rep"), a_, b, "rep");
  std::vector<LinearConnection> ord;
  const json& o = p_.contains("ordinary") ? p_["ordinary"] : json("random");
  for (int z = 0; z < b.size(); ++z) {
    const json& cz = o.is_array() ? o.at(z) : o;
    ord.push_back(connection(cz, a_, b.rank(z), "ordinary[" + std::to_string(z) + "]"));
  }
  const int max_l = integer("max_l", a_->rank() / 2);
  report(nrep_obstruction(rep, ord, max_l, bound_));
}

void Run::bott() {
  const Subframe sub = subframe("subframe", a_->rank());
  const AlgebroidPtr b = catalog::share(restrict_to(*a_, sub));
  const int n = integer("rank", 1);
  report(bott_report(a_, sub, connection(need("connection"), b, n, "connection"), extension("extension", n)));
}

void Run::graded_bott() {
  const Subframe sub = subframe("subframe", a_->rank());
  const AlgebroidPtr b = catalog::share(restrict_to(*a_, sub));
  report(graded_bott_report(a_, sub, cuth(need("rep"), b, io::bundle(need("bundle")), "rep")));
}

void Run::atiyah() {
  const Subframe sub = subframe("subframe", a_->rank());
  const AlgebroidPtr b = catalog::share(restrict_to(*a_, sub));
  const int n = integer("rank", 1);
  AtiyahResult at = atiyah_form(a_, sub, connection(need("connection"), b, n, "connection"), extension("extension", n));
  // ω lives over B
  const AlgebroidPtr keep = a_;
  a_ = b;
  put("omega", at.form);
  a_ = keep;
  report(std::move(at.report));
}

void Run::massey() {
  const json& fs = need("forms");
  if (!fs.is_array() || fs.size() != 3) throw ParseError("forms: expected three forms");
  std::vector<ScalarForm> f;
  for (int k = 0; k < 3; ++k) f.push_back(io::scalar_form(fs[k], a_->chart(), a_->rank(), "forms[" + std::to_string(k) + "]"));
  const MasseyResult m = massey_triple(*a_, f[0], f[1], f[2], bound_);
  put("omega", m.omega);
  put("eta", m.eta);
  put("representative", m.representative);
  put("representative_exact", json(m.representative_exact), m.representative_exact ? "true" : "false");
  if (m.point_base) {
    put("indeterminacy_rank", json(m.indeterminacy_rank), std::to_string(m.indeterminacy_rank));
    put("vanishes", json(m.vanishes), m.vanishes ? "true" : "false");
  }
  Report r;
  r.construction = "massey";
  r.add("defining system found", true);
  r.add("representative closed", d_A(*a_, m.representative).is_zero());
  report(std::move(r));
}

void Run::iis() {
  const AlgebroidPtr tm = catalog::share(Algebroid::tangent(a_->chart()));
  const json& ext = p_.contains("extension") ? p_["extension"] : json("trivial");
  IISSpec s{a_, subframe("j", a_->rank()), subframe("fm", a_->chart_dim()), connection(ext, tm, a_->rank(), "extension")};
  report(iis_check(s));
  if (p_.value("obstruction", false)) {
    std::optional<LinearConnection> cj, cf;
    if (p_.contains("connection_j")) cj = connection(p_["connection_j"], a_, s.j.size(), "connection_j");
    if (p_.contains("connection_fm")) cf = connection(p_["connection_fm"], a_, s.fm.size(), "connection_fm");
    report(iis_obstruction(s, bound_, cj, cf));
  }
}

void Run::adjoint() {
  const AlgebroidPtr tm = catalog::share(Algebroid::tangent(a_->chart()));
  const json& cj = p_.contains("tm_connection") ? p_["tm_connection"] : json("trivial");
  const LinearConnection c = connection(cj, tm, a_->rank(), "tm_connection");
  const ConnectionUpToHomotopy ad = adjoint_rep(a_, c);
  const BasicConnections bas = basic_connections(a_, c);
  put("basic_on_a", bas.on_a);
  put("basic_on_tm", bas.on_tm);
  put("basic_curvature", basic_curvature(a_, c));
  put("D", ad.form());
  Report sq = square_zero_check(ad);
  sq.construction = "adjoint";
  report(std::move(sq));
  if (a_->chart_dim() == 0) return;
  // C∞-linearity of R^bas in all three slots
  Report t;
  t.construction = "basic_curvature_tensoriality";
  const MatForm r = basic_curvature(a_, c);
  bool ok = true;
  const Poly f = rnd_.poly(a_->chart(), 2, 2);
  const int ra = a_->rank(), n = a_->chart_dim();
  for (int i = 0; i < ra && ok; ++i) {
    for (int j = i + 1; j < ra && ok; ++j) {
      for (int x = 0; x < n && ok; ++x) {
        Section ai(ra, Poly(0)), bj(ra, Poly(0)), vx(n, Poly(0));
        ai[i] = Poly(1);
        bj[j] = Poly(1);
        vx[x] = Poly(1);
        Section fa = ai, fb = bj, fv = vx;
        fa[i] = f;
        fb[j] = f;
        fv[x] = f;
        const Mask m = (Mask{1} << i) | (Mask{1} << j);
        for (const auto& out : {basic_curvature_apply(a_, c, fa, bj, vx), basic_curvature_apply(a_, c, ai, fb, vx),
                                basic_curvature_apply(a_, c, ai, bj, fv)}) {
          for (int l = 0; l < ra; ++l) ok &= out[l] == f * r(l, x).coeff(m);
        }
      }
    }
  }
  t.add("scaling each slot by f scales R^bas", ok, "f = " + f.to_string());
  report(std::move(t));
}

void Run::double_() {
  const LinearConnection c = connection(need("connection"), a_, integer("rank", 1), "connection");
  const ConnectionUpToHomotopy d = double_rep(c);
  put("omega", d.form().block_or_zero(1, 0));
  Report sq = square_zero_check(d);
  sq.construction = "double";
  if (p_.value("perturb", false)) {
    TotalForm k = d.form();
    k.add_block(1, 0, rnd_.mat_form(a_->chart(), a_->rank(), 2, c.rank(), c.rank(), random_degree_, 0.8));
    const Report bad = square_zero_check(ConnectionUpToHomotopy(d.bundle(), d.nablas(), k));
    const bool changed = !(k == d.form());
    sq.add("perturbed omega detected", !changed || !bad.ok(), changed ? "" : "perturbation was zero");
  }
  report(std::move(sq));
}

void Run::morphism() {
  const AlgebroidPtr src = catalog::share(io::algebroid(need("source"), "source"));
  const json& mj = need("matrix");
  std::vector<std::vector<Poly>> m;
  if (!mj.is_array() || static_cast<int>(mj.size()) != a_->rank()) throw ParseError("matrix: one row per frame of A");
  for (std::size_t i = 0; i < mj.size(); ++i) {
    if (!mj[i].is_array() || static_cast<int>(mj[i].size()) != src->rank()) {
      throw ParseError("matrix[" + std::to_string(i) + "]: one entry per frame of the source");
    }
    std::vector<Poly> row;
    for (std::size_t k = 0; k < mj[i].size(); ++k) {
      row.push_back(io::poly(mj[i][k], a_->chart(), "matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    m.push_back(std::move(row));
  }
  if (!(src->chart() == a_->chart())) throw ParseError("source: must use the same chart as algebroid");
  const AlgebroidMorphism mor{src, a_, std::move(m)};
  const LinearConnection c = connection(need("connection"), a_, src->rank(), "connection");
  const ConnectionUpToHomotopy rep = morphism_rep(mor, c);
  const AlgebroidPtr keep = a_;
  a_ = src;
  put("D", rep.form());
  a_ = keep;
  Report sq = square_zero_check(rep);
  sq.construction = "morphism";
  report(std::move(sq));
}

void Run::transgression() {
  const GradedBundle b = io::bundle(need("bundle"));
  const ConnectionUpToHomotopy from = cuth(need("from"), a_, b, "from");
  const ConnectionUpToHomotopy to = cuth(need("to"), a_, b, "to");
  const int i = integer("i", 1);
  const ScalarForm t = gradweil::transgression(from, to, i);
  const ScalarForm s0 = sigma_character(from, i).representative, s1 = sigma_character(to, i).representative;
  put("T", t);
  put("sigma_from", s0);
  put("sigma_to", s1);
  Report r;
  r.construction = "transgression";
  const ScalarForm gap = d_A(*a_, t) - (s1 - s0);
  r.add("d_A T = sigma(to) - sigma(from)", gap.is_zero(), "", gap.is_zero() ? Witness{} : Witness{gap});
  report(std::move(r));
}

void Run::compute() {
  const json& ops = need("ops");
  if (!ops.is_array()) throw ParseError("ops: expected an array");
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const std::string where = "ops[" + std::to_string(k) + "]";
    const json& op = ops[k];
    if (!op.is_object() || !op.contains("op") || !op["op"].is_string()) throw ParseError(where + ": missing \"op\"");
    const std::string name = op.value("name", op["op"].get<std::string>() + "_" + std::to_string(k + 1));
    compute_op(op, name, where);
    if (op.contains("expect")) expectations(json{{name, op["expect"]}}, where + ".expect");
  }
}

void Run::compute_op(const json& op, const std::string& name, const std::string& where) {
  const std::string kind = op["op"];
  const VarSpace s = a_->chart();
  const int r = a_->rank();
  auto arg = [&](const char* key) -> const json& {
    if (!op.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    return op[key];
  };
  auto num = [&](const char* key, int fallback) {
    if (!op.contains(key)) return fallback;
    if (!op[key].is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
    return op[key].get<int>();
  };
  const std::string w = where + ".";
  if (kind == "d") {
    put(name, d_A(*a_, io::scalar_form(arg("form"), s, r, w + "form")));
  } else if (kind == "wedge_apply") {
    const MatForm k = io::mat_form(arg("K"), s, r, num("rows", 1), num("cols", 1), w + "K");
    put(name, wedge_apply(k, io::form(arg("w"), s, r, k.cols(), w + "w")));
  } else if (kind == "hat_roundtrip") {
    const GradedBundle b = io::bundle(arg("bundle"), w + "bundle");
    bool ok = true;
    for (int t = 0; t < num("count", 5); ++t) {
      const TotalForm k = rnd_.total_form(b, r, rnd_.uniform(-1, 2), s, random_degree_);
      ok &= hat_roundtrip(k) == k;
    }
    put(name, json(ok), ok ? "true" : "false");
  } else if (kind == "graded_commutator" || kind == "compose") {
    const GradedBundle b = io::bundle(arg("bundle"), w + "bundle");
    const TotalForm k1 = io::total_form(arg("K1"), s, r, b, w + "K1");
    const TotalForm k2 = io::total_form(arg("K2"), s, r, b, w + "K2");
    put(name, kind == "compose" ? gradweil::compose(k1, k2) : graded_commutator(k1, k2));
  } else if (kind == "gtr") {
    const GradedBundle b = io::bundle(arg("bundle"), w + "bundle");
    put(name, gtr(io::total_form(arg("K"), s, r, b, w + "K")));
  } else if (kind == "ideal_membership") {
    const bool in = ideal_membership(io::subframe(arg("subframe"), r, w + "subframe"),
                                     io::scalar_form(arg("form"), s, r, w + "form"), num("p", 1));
    put(name, json(in), in ? "true" : "false");
  } else if (kind == "d_nabla") {
    const int n = num("rank", 1);
    const LinearConnection c = connection(arg("connection"), a_, n, w + "connection");
    put(name, d_nabla(c, io::form(arg("form"), s, r, n, w + "form")));
  } else if (kind == "curvature" || kind == "curvature_power") {
    const LinearConnection c = connection(arg("connection"), a_, num("rank", 1), w + "connection");
    put(name, kind == "curvature" ? curvature(c) : matrix_power(curvature(c), num("power", 2)));
  } else if (kind == "hom_connection") {
    const LinearConnection c1 = connection(arg("source"), a_, num("source_rank", 1), w + "source");
    const LinearConnection c2 = connection(arg("target"), a_, num("target_rank", 1), w + "target");
    put(name, induced_hom_connection(c1, c2));
  } else if (kind == "normalize") {
    const GradedBundle b = io::bundle(arg("bundle"), w + "bundle");
    bool ok = true;
    for (int t = 0; t < num("count", 3); ++t) {
      const ConnectionUpToHomotopy c = cuth(op.value("rep", json("random")), a_, b, w + "rep");
      const ConnectionUpToHomotopy nc = normalize_cuth(c);
      ok &= nc.is_normalized();
      for (int z = 0; z < b.size(); ++z) {
        for (int al = 0; al < b.rank(z); ++al) {
          const GradedForm sec = GradedForm::section(b, z, al);
          ok &= cuth_apply(c, sec) == cuth_apply(nc, sec);
        }
      }
    }
    put(name, json(ok), ok ? "true" : "false");
  } else if (kind == "extend_connection") {
    const Subframe sub = io::subframe(arg("subframe"), r, w + "subframe");
    const AlgebroidPtr b = catalog::share(restrict_to(*a_, sub));
    const int n = num("rank", 1);
    const LinearConnection c = connection(arg("connection"), b, n, w + "connection");
    ComplementChristoffel comp;
    if (op.contains("extension")) {
      const LinearConnection e = io::connection(op["extension"], a_, n, w + "extension");
      for (const auto& t : op["extension"]["christoffel"]) comp[t["frame"].get<int>()] = e.christoffel()[t["frame"].get<int>()];
    }
    put(name, extend_connection(c, sub, a_, comp));
  } else if (kind == "is_exact") {
    const ScalarForm f = io::scalar_form(arg("form"), s, r, w + "form");
    const ExactResult ex = is_exact(*a_, f, num("bound", bound_));
    json e = {{"status", to_string(ex.status)}};
    std::string text = to_string(ex.status);
    if (ex.primitive) {
      e["primitive"] = io::to_json(*ex.primitive);
      text += ", primitive " + to_text(*ex.primitive);
    }
    put(name, e, text);
    values_[name].normalize = [s, r, name](const json& want) {
      json out = {{"status", want.at("status")}};
      if (want.contains("primitive")) out["primitive"] = io::to_json(io::scalar_form(want["primitive"], s, r, name));
      return out;
    };
  } else {
    throw ParseError(where + ".op: unknown operation \"" + kind + "\"");
  }
}

Outcome Run::execute() {
  Outcome out;
  json result;
  try {
    if (!p_.is_object()) throw ParseError("problem file must be a JSON object");
    if (opt_.task) {
      task_ = *opt_.task;
    } else {
      if (!p_.contains("task") || !p_["task"].is_string()) throw ParseError("missing field \"task\"");
      task_ = p_["task"].get<std::string>();
    }
    auto h = handlers().find(task_);
    if (h == handlers().end()) throw ParseError("unknown task \"" + task_ + "\"");
    load_algebroid();
    try {
      (this->*(h->second))();
    } catch (const PreconditionError& e) {
      Report r;
      r.construction = task_;
      r.add("precondition", false, e.what());
      report(std::move(r));
    }
    if (p_.contains("expect")) expectations(p_["expect"], "expect");
  } catch (const ParseError& e) {
    out.exit_code = kInputError;
    out.report = {{"task", task_}, {"exit_code", kInputError}, {"error", std::string("input error: ") + e.what()}};
    out.text = std::string("input error: ") + e.what() + "\n";
    return out;
  } catch (const StructuralError& e) {
    out.exit_code = kInputError;
    out.report = {{"task", task_}, {"exit_code", kInputError}, {"error", std::string("input error: ") + e.what()}};
    out.text = std::string("input error: ") + e.what() + "\n";
    return out;
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = kInputError;
    out.report = {{"task", task_}, {"exit_code", kInputError}, {"error", std::string("input error: ") + e.what()}};
    out.text = std::string("input error: ") + e.what() + "\n";
    return out;
  } catch (const InternalError& e) {
    out.exit_code = kInternalError;
    out.report = {{"task", task_}, {"exit_code", kInternalError}, {"error", std::string("internal error: ") + e.what()}};
    out.text = std::string("internal error: ") + e.what() + "\n";
    return out;
  }
  bool ok = true;
  json reps = json::array();
  std::ostringstream text;
  text << "task: " << task_ << "\n";
  for (const auto& r : reports_) {
    ok &= r.ok();
    reps.push_back(io::to_json(r));
    text << io::to_text(r);
  }
  if (!class_text_.empty()) text << "classes:\n" << class_text_;
  json vals = json::object();
  if (!value_order_.empty()) text << "values:\n";
  for (const auto& name : value_order_) {
    vals[name] = values_[name].enc;
    const std::string& t = values_[name].text;
    text << "  " << name << ":" << (t.rfind("\n", 0) == 0 ? "" : " ") << t << "\n";
  }
  out.exit_code = ok ? kPass : kCheckFailed;
  result = {{"task", task_}, {"exit_code", out.exit_code}, {"reports", reps}};
  if (!vals.empty()) result["values"] = vals;
  if (!classes_.empty()) result["classes"] = classes_;
  text << (ok ? "result: pass\n" : "result: FAILED\n");
  out.report = std::move(result);
  out.text = text.str();
  return out;
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : handlers()) n.push_back(k);
    return n;
  }();
  return names;
}

Outcome run_problem(const json& problem, const Options& options) { return Run(problem, options).execute(); }

Outcome run_file(const std::filesystem::path& path, const Options& options) {
  std::ifstream in(path);
  if (!in) {
    Outcome o;
    o.exit_code = kInputError;
    o.text = "input error: cannot open " + path.string() + "\n";
    o.report = {{"exit_code", kInputError}, {"error", "cannot open file"}};
    return o;
  }
  json problem;
  try {
    problem = json::parse(in);
  } catch (const json::parse_error& e) {
    Outcome o;
    o.exit_code = kInputError;
    o.text = "input error: " + path.filename().string() + ": " + e.what() + "\n";
    o.report = {{"exit_code", kInputError}, {"error", std::string("malformed JSON: ") + e.what()}};
    return o;
  }
  return run_problem(problem, options);
}

// ---- corpus -------------------------------------------------------------------

bool CorpusSummary::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const CorpusEntry& e) { return e.status != "fail" && e.status != "new"; });
}

std::string CorpusSummary::to_text() const {
  std::ostringstream os;
  std::size_t width = 4;
  for (const auto& e : entries) width = std::max(width, e.name.size());
  std::map<std::string, int> counts;
  for (const auto& e : entries) {
    os << e.name << std::string(width + 2 - e.name.size(), ' ') << e.status << "\n";
    if (!e.diff.empty()) os << e.diff;
    ++counts[e.status];
  }
  os << entries.size() << " entries";
  for (const auto& [k, v] : counts) os << ", " << v << " " << k;
  os << "\n";
  return os.str();
}

namespace {

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string line_diff(const std::string& want, const std::string& got) {
  std::istringstream a(want), b(got);
  std::string la, lb;
  int line = 0;
  std::ostringstream os;
  int shown = 0;
  while (shown < 6) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    ++line;
    if (!ha && !hb) break;
    if (ha && hb && la == lb) continue;
    os << "    line " << line << ":\n";
    os << "      - " << (ha ? la : "<eof>") << "\n";
    os << "      + " << (hb ? lb : "<eof>") << "\n";
    ++shown;
  }
  return os.str();
}

}  // namespace

CorpusSummary run_corpus(const std::filesystem::path& dir, bool update) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && e.path().extension() == ".json" && name.find(".expected.") == std::string::npos) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::future<CorpusEntry>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, update] {
      CorpusEntry e;
      e.name = f.stem().string();
      const std::string got = io::canonical(run_file(f).report);
      const auto golden = f.parent_path() / (e.name + ".expected.json");
      if (!std::filesystem::exists(golden)) {
        e.status = "new";
      } else {
        const std::string want = read_all(golden);
        e.status = want == got ? "pass" : "fail";
        if (e.status == "fail") e.diff = line_diff(want, got);
      }
      if (update && e.status != "pass") {
        std::ofstream(golden, std::ios::binary) << got;
        e.status = "updated";
        e.diff.clear();
      }
      return e;
    }));
  }
  CorpusSummary s;
  for (auto& j : jobs) s.entries.push_back(j.get());
  return s;
}

}  // namespace gradweil::cli
