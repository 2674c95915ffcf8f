#include "gradweil/io.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>

#include "gradweil/errors.hpp"

namespace gradweil::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& why) { throw ParseError(where + ": " + why); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

int index_in(const json& j, int bound, const std::string& where) {
  const int v = integer(j, where);
  if (v < 0 || v >= bound) fail(where, "index " + std::to_string(v) + " out of range [0," + std::to_string(bound) + ")");
  return v;
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t k) { return where + "[" + std::to_string(k) + "]"; }

std::vector<int> indices(const json& j, int frame_rank, int degree, const std::string& where) {
  std::vector<int> out;
  for (std::size_t k = 0; k < array(j, where).size(); ++k) out.push_back(index_in(j[k], frame_rank, at(where, k)));
  if (static_cast<int>(out.size()) != degree) fail(where, "expected " + std::to_string(degree) + " indices");
  return out;
}

// coeff · ε^{indices}; unsorted input is allowed and signed accordingly
ScalarForm term(const json& t, VarSpace space, int frame_rank, int degree, const std::string& where) {
  const auto idx = indices(field(t, "index", where), frame_rank, degree, where + ".index");
  const Poly c = poly(field(t, "coeff", where), space, where + ".coeff");
  if (permutation_sign(idx) == 0) fail(where, "repeated index");
  return ScalarForm::from_indices(idx, c);
}

json index_json(Mask m) { return json(mask_indices(m)); }

void walk_degrees(const json& j, VarSpace space, bool inside, int& best) {
  if (j.is_string() && inside) {
    try {
      best = std::max(best, Poly::parse(j.get<std::string>(), space).total_degree());
    } catch (const ParseError&) {
    }
  } else if (j.is_array()) {
    for (const auto& v : j) walk_degrees(v, space, inside, best);
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      walk_degrees(v, space, inside || k == "anchor" || k == "coeffs" || k == "coeff" || k == "matrix", best);
    }
  }
}

}  // namespace

Poly poly(const json& j, VarSpace space, const std::string& where) {
  if (j.is_number_integer()) return Poly::constant(space, Rational(j.get<long>()));
  if (!j.is_string()) fail(where, "expected a polynomial string");
  try {
    return Poly::parse(j.get<std::string>(), space);
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

Algebroid algebroid(const json& j, const std::string& where) {
  std::vector<std::string> vars;
  if (j.is_object() && j.contains("chart")) {
    const json& v = field(field(j, "chart", where), "vars", where + ".chart");
    for (std::size_t k = 0; k < array(v, where + ".chart.vars").size(); ++k) {
      if (!v[k].is_string()) fail(at(where + ".chart.vars", k), "expected a variable name");
      vars.push_back(v[k].get<std::string>());
    }
  }
  const VarSpace space = vars.empty() ? VarSpace{} : VarSpace::intern(vars);
  const int rank = integer(field(j, "rank", where), where + ".rank");
  if (rank < 0 || rank > kMaxFrameRank) fail(where + ".rank", "rank out of range");
  const json& an = array(field(j, "anchor", where), where + ".anchor");
  if (static_cast<int>(an.size()) != rank) fail(where + ".anchor", "expected one row per frame section");
  std::vector<std::vector<Poly>> anchor;
  for (int i = 0; i < rank; ++i) {
    const std::string w = at(where + ".anchor", i);
    if (array(an[i], w).size() != vars.size()) fail(w, "expected one entry per chart variable");
    std::vector<Poly> row;
    for (std::size_t x = 0; x < vars.size(); ++x) row.push_back(poly(an[i][x], space, at(w, x)));
    anchor.push_back(std::move(row));
  }
  std::vector<BracketEntry> brackets;
  if (j.contains("brackets")) {
    const json& br = array(j["brackets"], where + ".brackets");
    for (std::size_t k = 0; k < br.size(); ++k) {
      const std::string w = at(where + ".brackets", k);
      BracketEntry e;
      e.i = index_in(field(br[k], "i", w), rank, w + ".i");
      e.j = index_in(field(br[k], "j", w), rank, w + ".j");
      const json& cs = array(field(br[k], "coeffs", w), w + ".coeffs");
      if (static_cast<int>(cs.size()) != rank) fail(w + ".coeffs", "expected " + std::to_string(rank) + " entries");
      for (std::size_t c = 0; c < cs.size(); ++c) e.coeffs.push_back(poly(cs[c], space, at(w + ".coeffs", c)));
      brackets.push_back(std::move(e));
    }
  }
  try {
    return Algebroid::from_brackets(space, rank, std::move(anchor), brackets);
  } catch (const StructuralError& e) {
    fail(where, e.what());
  }
}

GradedBundle bundle(const json& j, const std::string& where) {
  std::vector<Summand> s;
  for (std::size_t k = 0; k < array(j, where).size(); ++k) {
    const std::string w = at(where, k);
    s.push_back({integer(field(j[k], "degree", w), w + ".degree"), integer(field(j[k], "rank", w), w + ".rank")});
  }
  try {
    return GradedBundle(std::move(s));
  } catch (const StructuralError& e) {
    fail(where, e.what());
  }
}

Subframe subframe(const json& j, int parent_rank, const std::string& where) {
  std::vector<int> m;
  for (std::size_t k = 0; k < array(j, where).size(); ++k) m.push_back(index_in(j[k], parent_rank, at(where, k)));
  try {
    return Subframe(parent_rank, std::move(m));
  } catch (const StructuralError& e) {
    fail(where, e.what());
  }
}

ScalarForm scalar_form(const json& j, VarSpace space, int frame_rank, const std::string& where) {
  const int degree = integer(field(j, "degree", where), where + ".degree");
  ScalarForm out(degree);
  const json& ts = array(field(j, "terms", where), where + ".terms");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const std::string w = at(where + ".terms", k);
    if (ts[k].contains("fiber") && integer(ts[k]["fiber"], w + ".fiber") != 0) fail(w + ".fiber", "scalar form");
    out += term(ts[k], space, frame_rank, degree, w);
  }
  return out;
}

Form form(const json& j, VarSpace space, int frame_rank, int fiber_rank, const std::string& where) {
  const int degree = integer(field(j, "degree", where), where + ".degree");
  Form out(degree, fiber_rank);
  const json& ts = array(field(j, "terms", where), where + ".terms");
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const std::string w = at(where + ".terms", k);
    out.add(index_in(field(ts[k], "fiber", w), fiber_rank, w + ".fiber"), term(ts[k], space, frame_rank, degree, w));
  }
  return out;
}

namespace {

void add_mat_terms(MatForm& out, const json& ts, VarSpace space, int frame_rank, const std::string& where,
                   const std::function<bool(const json&)>& keep) {
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (!keep(ts[k])) continue;
    const std::string w = at(where, k);
    const json& f = array(field(ts[k], "fiber", w), w + ".fiber");
    if (f.size() != 2) fail(w + ".fiber", "expected [row, col]");
    const int r = index_in(f[0], out.rows(), w + ".fiber[0]");
    const int c = index_in(f[1], out.cols(), w + ".fiber[1]");
    out.add(r, c, term(ts[k], space, frame_rank, out.degree(), w));
  }
}

}  // namespace

MatForm mat_form(const json& j, VarSpace space, int frame_rank, int rows, int cols, const std::string& where) {
  MatForm out(integer(field(j, "degree", where), where + ".degree"), rows, cols);
  add_mat_terms(out, array(field(j, "terms", where), where + ".terms"), space, frame_rank, where + ".terms",
                [](const json&) { return true; });
  return out;
}

TotalForm total_form(const json& j, VarSpace space, int frame_rank, const GradedBundle& b, const std::string& where) {
  const int degree = integer(field(j, "degree", where), where + ".degree");
  TotalForm out(b, degree);
  const json& ts = array(field(j, "terms", where), where + ".terms");
  std::map<std::pair<int, int>, bool> seen;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const std::string w = at(where + ".terms", k);
    const json& bl = array(field(ts[k], "block", w), w + ".block");
    if (bl.size() != 3) fail(w + ".block", "expected [form degree, source degree, target degree]");
    const int fd = integer(bl[0], w + ".block[0]");
    const int src = b.index_of_degree(integer(bl[1], w + ".block[1]"));
    const int tgt = b.index_of_degree(integer(bl[2], w + ".block[2]"));
    if (src < 0 || tgt < 0) fail(w + ".block", "no summand of that degree");
    if (fd != out.form_degree(src, tgt)) fail(w + ".block", "form degree does not match total degree");
    if (seen[{src, tgt}]) continue;
    seen[{src, tgt}] = true;
    MatForm m(fd, b.rank(tgt), b.rank(src));
    add_mat_terms(m, ts, space, frame_rank, where + ".terms", [&](const json& t) {
      const json& tb = t["block"];
      return tb.is_array() && tb.size() == 3 && tb[1] == bl[1] && tb[2] == bl[2];
    });
    out.add_block(src, tgt, m);
  }
  return out;
}

LinearConnection connection(const json& j, AlgebroidPtr a, int rank, const std::string& where) {
  const VarSpace space = a->chart();
  std::vector<std::vector<std::vector<Poly>>> g(
      a->rank(), std::vector<std::vector<Poly>>(rank, std::vector<Poly>(rank, Poly(0))));
  const json& cs = array(field(j, "christoffel", where), where + ".christoffel");
  std::vector<bool> seen(a->rank(), false);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const std::string w = at(where + ".christoffel", k);
    const int i = index_in(field(cs[k], "frame", w), a->rank(), w + ".frame");
    if (seen[i]) fail(w + ".frame", "frame listed twice");
    seen[i] = true;
    const json& m = array(field(cs[k], "matrix", w), w + ".matrix");
    if (static_cast<int>(m.size()) != rank) fail(w + ".matrix", "expected " + std::to_string(rank) + " rows");
    for (int beta = 0; beta < rank; ++beta) {
      const std::string wr = at(w + ".matrix", beta);
      if (static_cast<int>(array(m[beta], wr).size()) != rank) fail(wr, "expected " + std::to_string(rank) + " columns");
      for (int alpha = 0; alpha < rank; ++alpha) g[i][alpha][beta] = poly(m[beta][alpha], space, at(wr, alpha));
    }
  }
  return LinearConnection(std::move(a), rank, std::move(g));
}

ConnectionUpToHomotopy cuth(const json& j, AlgebroidPtr a, const GradedBundle& b, const std::string& where) {
  const json& cs = array(field(j, "connections", where), where + ".connections");
  if (static_cast<int>(cs.size()) != b.size()) fail(where + ".connections", "expected one connection per summand");
  std::vector<LinearConnection> ns;
  for (int z = 0; z < b.size(); ++z) {
    const std::string w = at(where + ".connections", z);
    if (cs[z].contains("bundle_degree") && integer(cs[z]["bundle_degree"], w) != b.degree(z)) {
      fail(w + ".bundle_degree", "does not match the bundle");
    }
    ns.push_back(connection(cs[z], a, b.rank(z), w));
  }
  if (!j.contains("D")) return ConnectionUpToHomotopy::degree_preserving(b, std::move(ns));
  TotalForm d = total_form(j["D"], a->chart(), a->rank(), b, where + ".D");
  if (d.degree() != 1) fail(where + ".D", "total degree must be 1");
  try {
    return ConnectionUpToHomotopy(b, std::move(ns), std::move(d));
  } catch (const StructuralError& e) {
    fail(where, e.what());
  }
}

// ---- encoding ---------------------------------------------------------------

json to_json(const Algebroid& a) {
  json out;
  out["chart"] = {{"vars", a.chart().empty() ? std::vector<std::string>{} : a.chart().names()}};
  out["rank"] = a.rank();
  json an = json::array();
  for (int i = 0; i < a.rank(); ++i) {
    json row = json::array();
    for (int x = 0; x < a.chart_dim(); ++x) row.push_back(a.anchor(i, x).to_string());
    an.push_back(row);
  }
  out["anchor"] = an;
  json br = json::array();
  for (int i = 0; i < a.rank(); ++i) {
    for (int j = i + 1; j < a.rank(); ++j) {
      json cs = json::array();
      bool any = false;
      for (int k = 0; k < a.rank(); ++k) {
        cs.push_back(a.c(k, i, j).to_string());
        any |= !a.c(k, i, j).is_zero();
      }
      if (any) br.push_back({{"i", i}, {"j", j}, {"coeffs", cs}});
    }
  }
  out["brackets"] = br;
  return out;
}

json to_json(const GradedBundle& b) {
  json out = json::array();
  for (const auto& s : b.summands()) out.push_back({{"degree", s.degree}, {"rank", s.rank}});
  return out;
}

json to_json(const ScalarForm& f) {
  json ts = json::array();
  for (const auto& [m, c] : f.terms()) ts.push_back({{"index", index_json(m)}, {"fiber", 0}, {"coeff", c.to_string()}});
  return {{"degree", f.degree()}, {"terms", ts}};
}

json to_json(const Form& f) {
  json ts = json::array();
  for (int a = 0; a < f.rank(); ++a) {
    for (const auto& [m, c] : f[a].terms()) {
      ts.push_back({{"index", index_json(m)}, {"fiber", a}, {"coeff", c.to_string()}});
    }
  }
  return {{"degree", f.degree()}, {"terms", ts}};
}

namespace {

void push_mat_terms(json& ts, const MatForm& m, const json& block) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      for (const auto& [mask, p] : m(r, c).terms()) {
        json t = {{"index", index_json(mask)}, {"fiber", {r, c}}, {"coeff", p.to_string()}};
        if (!block.is_null()) t["block"] = block;
        ts.push_back(std::move(t));
      }
    }
  }
}

}  // namespace

json to_json(const MatForm& m) {
  json ts = json::array();
  push_mat_terms(ts, m, nullptr);
  return {{"degree", m.degree()}, {"rows", m.rows()}, {"cols", m.cols()}, {"terms", ts}};
}

json to_json(const TotalForm& k) {
  // blocks ordered by (form degree, source degree, target degree)
  std::vector<std::pair<std::array<int, 3>, const MatForm*>> order;
  for (const auto& [key, m] : k.blocks()) {
    const auto& b = k.bundle();
    order.push_back({{m.degree(), b.degree(key.first), b.degree(key.second)}, &m});
  }
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  json ts = json::array();
  for (const auto& [blk, m] : order) push_mat_terms(ts, *m, json(blk));
  return {{"degree", k.degree()}, {"terms", ts}};
}

json to_json(const LinearConnection& c, int bundle_degree) {
  json cs = json::array();
  for (int i = 0; i < c.algebroid().rank(); ++i) {
    bool any = false;
    json m = json::array();
    for (int beta = 0; beta < c.rank(); ++beta) {
      json row = json::array();
      for (int alpha = 0; alpha < c.rank(); ++alpha) {
        row.push_back(c.gamma(i, alpha, beta).to_string());
        any |= !c.gamma(i, alpha, beta).is_zero();
      }
      m.push_back(row);
    }
    if (any) cs.push_back({{"frame", i}, {"matrix", m}});
  }
  return {{"bundle_degree", bundle_degree}, {"christoffel", cs}};
}

json to_json(const ConnectionUpToHomotopy& c) {
  json ns = json::array();
  for (int z = 0; z < c.bundle().size(); ++z) ns.push_back(to_json(c.nabla(z), c.bundle().degree(z)));
  return {{"bundle", to_json(c.bundle())}, {"connections", ns}, {"D", to_json(c.form())}};
}

json to_json(const Witness& w) {
  return std::visit(
      [](const auto& v) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) {
          return nullptr;
        } else {
          return to_json(v);
        }
      },
      w);
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (!std::holds_alternative<std::monostate>(c.witness)) e["witness"] = to_json(c.witness);
    checks.push_back(std::move(e));
  }
  json th = {{"q", nullptr}, {"vanish_above", nullptr}};
  if (r.thresholds.q) th["q"] = *r.thresholds.q;
  if (r.thresholds.vanish_above) th["vanish_above"] = *r.thresholds.vanish_above;
  json out = {{"construction", r.construction}, {"checks", checks}, {"thresholds", th}};
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

namespace {

std::string mat_text(const MatForm& m, const std::string& prefix) {
  std::ostringstream os;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_zero()) os << prefix << "[" << r + 1 << "," << c + 1 << "] " << gradweil::to_text(m(r, c)) << "\n";
    }
  }
  return os.str();
}

}  // namespace

std::string to_text(const Witness& w) {
  if (const auto* f = std::get_if<ScalarForm>(&w)) return gradweil::to_text(*f) + "\n";
  if (const auto* m = std::get_if<MatForm>(&w)) return mat_text(*m, "");
  if (const auto* k = std::get_if<TotalForm>(&w)) {
    std::string out;
    for (const auto& [key, m] : k->blocks()) {
      out += mat_text(m, "E" + std::to_string(k->bundle().degree(key.first)) + "->E" +
                             std::to_string(k->bundle().degree(key.second)) + " ");
    }
    return out;
  }
  return {};
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.construction << ": " << (r.ok() ? "all checks pass" : "FAILED") << "\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
    std::istringstream lines(to_text(c.witness));
    for (std::string line; std::getline(lines, line);) os << "      " << line << "\n";
  }
  if (r.thresholds.q || r.thresholds.vanish_above) {
    os << "  thresholds:";
    if (r.thresholds.q) os << " q=" << *r.thresholds.q;
    if (r.thresholds.vanish_above) os << " vanish_above=" << *r.thresholds.vanish_above;
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

int max_poly_degree(const json& j, VarSpace space) {
  int best = 0;
  walk_degrees(j, space, false, best);
  return best;
}

}  // namespace gradweil::io
