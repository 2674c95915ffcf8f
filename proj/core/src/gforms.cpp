#include "gradweil/gforms.hpp"

#include <algorithm>
#include <string>

#include "gradweil/errors.hpp"

namespace gradweil {

namespace {

int parity_sign(int exponent) { return (exponent & 1) ? -1 : 1; }

}  // namespace

// ---- GradedBundle -------------------------------------------------------

GradedBundle::GradedBundle(std::vector<Summand> summands) : summands_(std::move(summands)) {
  std::sort(summands_.begin(), summands_.end(),
            [](const Summand& a, const Summand& b) { return a.degree < b.degree; });
  if (summands_.empty()) throw StructuralError("GradedBundle: at least one summand required");
  for (std::size_t k = 0; k < summands_.size(); ++k) {
    if (summands_[k].rank < 1) throw StructuralError("GradedBundle: summand ranks must be positive");
    if (k > 0 && summands_[k].degree == summands_[k - 1].degree) {
      throw StructuralError("GradedBundle: summand degrees must be distinct");
    }
  }
}

int GradedBundle::total_rank() const {
  int n = 0;
  for (const auto& s : summands_) n += s.rank;
  return n;
}

int GradedBundle::index_of_degree(int z) const {
  for (int k = 0; k < size(); ++k) {
    if (summands_[k].degree == z) return k;
  }
  return -1;
}

// ---- Form ---------------------------------------------------------------

Form::Form(int degree, int rank) : degree_(degree), comps_(rank, ScalarForm(degree)) {}

Form Form::section(int rank, int alpha, const Poly& coeff) {
  Form f(0, rank);
  f.add(alpha, ScalarForm::constant(coeff));
  return f;
}

void Form::add(int alpha, const ScalarForm& f) {
  if (f.is_zero()) return;
  if (f.degree() != degree_) throw StructuralError("Form: component degree mismatch");
  comps_.at(alpha) += f;
}

bool Form::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ScalarForm& c) { return c.is_zero(); });
}

Form& Form::operator+=(const Form& o) {
  if (o.rank() != rank()) throw StructuralError("Form: rank mismatch");
  for (int a = 0; a < rank(); ++a) add(a, o.comps_[a]);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (o.rank() != rank()) throw StructuralError("Form: rank mismatch");
  for (int a = 0; a < rank(); ++a) add(a, -o.comps_[a]);
  return *this;
}

Form& Form::operator*=(const Rational& c) {
  for (auto& f : comps_) f *= c;
  return *this;
}

bool operator==(const Form& a, const Form& b) {
  if (a.rank() != b.rank()) return false;
  for (int k = 0; k < a.rank(); ++k) {
    if (!(a.comps_[k] == b.comps_[k])) return false;
  }
  return true;
}

// ---- MatForm ------------------------------------------------------------

MatForm::MatForm(int degree, int rows, int cols)
    : degree_(degree), rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols, ScalarForm(degree)) {}

MatForm MatForm::identity(int n) {
  MatForm m(0, n, n);
  for (int k = 0; k < n; ++k) m.add(k, k, ScalarForm::constant(Poly(1)));
  return m;
}

MatForm MatForm::scalar(const ScalarForm& f, int n) {
  MatForm m(f.degree(), n, n);
  for (int k = 0; k < n; ++k) m.add(k, k, f);
  return m;
}

void MatForm::add(int r, int c, const ScalarForm& f) {
  if (f.is_zero()) return;
  if (f.degree() != degree_) throw StructuralError("MatForm: entry degree mismatch");
  if (r < 0 || c < 0 || r >= rows_ || c >= cols_) throw StructuralError("MatForm: entry out of range");
  entries_[r * cols_ + c] += f;
}

void MatForm::set(int r, int c, const ScalarForm& f) {
  if (r < 0 || c < 0 || r >= rows_ || c >= cols_) throw StructuralError("MatForm: entry out of range");
  if (!f.is_zero() && f.degree() != degree_) throw StructuralError("MatForm: entry degree mismatch");
  entries_[r * cols_ + c] = f.is_zero() ? ScalarForm(degree_) : f;
}

bool MatForm::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ScalarForm& c) { return c.is_zero(); });
}

void MatForm::check_shape(const MatForm& o) const {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw StructuralError("MatForm: shape mismatch");
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw StructuralError("MatForm: degree mismatch");
}

MatForm& MatForm::operator+=(const MatForm& o) {
  check_shape(o);
  if (is_zero() && o.degree_ != degree_) *this = MatForm(o.degree_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatForm& MatForm::operator-=(const MatForm& o) {
  check_shape(o);
  if (is_zero() && o.degree_ != degree_) *this = MatForm(o.degree_, rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatForm& MatForm::operator*=(const Rational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

MatForm& MatForm::operator*=(const Poly& f) {
  for (auto& e : entries_) e *= f;
  return *this;
}

bool operator==(const MatForm& a, const MatForm& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    if (!(a.entries_[k] == b.entries_[k])) return false;
  }
  return true;
}

MatForm wedge(const MatForm& a, const MatForm& b) {
  if (a.cols() != b.rows()) throw StructuralError("wedge(MatForm, MatForm): inner dimension mismatch");
  MatForm out(a.degree() + b.degree(), a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int k = 0; k < a.cols(); ++k) {
      const ScalarForm& x = a(r, k);
      if (x.is_zero()) continue;
      for (int c = 0; c < b.cols(); ++c) {
        if (b(k, c).is_zero()) continue;
        out.add(r, c, wedge(x, b(k, c)));
      }
    }
  }
  return out;
}

Form wedge(const MatForm& m, const Form& w) {
  if (m.cols() != w.rank()) throw StructuralError("wedge(MatForm, Form): rank mismatch");
  Form out(m.degree() + w.degree(), m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c).is_zero() || w[c].is_zero()) continue;
      out.add(r, wedge(m(r, c), w[c]));
    }
  }
  return out;
}

Form wedge(const ScalarForm& f, const Form& w) {
  Form out(f.degree() + w.degree(), w.rank());
  for (int a = 0; a < w.rank(); ++a) out.add(a, wedge(f, w[a]));
  return out;
}

MatForm wedge(const ScalarForm& f, const MatForm& m) {
  MatForm out(f.degree() + m.degree(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out.add(r, c, wedge(f, m(r, c)));
  }
  return out;
}

ScalarForm trace(const MatForm& m) {
  if (m.rows() != m.cols()) throw StructuralError("trace: matrix is not square");
  ScalarForm out(m.degree());
  for (int k = 0; k < m.rows(); ++k) out += m(k, k);
  return out;
}

// ---- TotalForm ----------------------------------------------------------

TotalForm::TotalForm(GradedBundle bundle, int total_degree) : bundle_(std::move(bundle)), degree_(total_degree) {}

TotalForm TotalForm::identity(const GradedBundle& bundle) {
  TotalForm out(bundle, 0);
  for (int l = 0; l < bundle.size(); ++l) out.add_block(l, l, MatForm::identity(bundle.rank(l)));
  return out;
}

const MatForm* TotalForm::block(int source, int target) const {
  auto it = blocks_.find({source, target});
  return it == blocks_.end() ? nullptr : &it->second;
}

MatForm TotalForm::block_or_zero(int source, int target) const {
  if (const MatForm* m = block(source, target)) return *m;
  return MatForm(std::max(0, form_degree(source, target)), bundle_.rank(target), bundle_.rank(source));
}

void TotalForm::add_block(int source, int target, const MatForm& m) {
  if (m.is_zero()) return;
  if (source < 0 || target < 0 || source >= bundle_.size() || target >= bundle_.size()) {
    throw StructuralError("TotalForm: summand index out of range");
  }
  if (m.rows() != bundle_.rank(target) || m.cols() != bundle_.rank(source)) {
    throw StructuralError("TotalForm: block shape does not match summand ranks");
  }
  if (m.degree() != form_degree(source, target)) {
    throw StructuralError("TotalForm: block (" + std::to_string(source) + "->" + std::to_string(target) +
                          ") has form degree " + std::to_string(m.degree()) + ", expected " +
                          std::to_string(form_degree(source, target)));
  }
  auto [it, inserted] = blocks_.try_emplace({source, target}, m);
  if (!inserted) {
    it->second += m;
    if (it->second.is_zero()) blocks_.erase(it);
  }
}

void TotalForm::check_compatible(const TotalForm& o) const {
  if (!(o.bundle_ == bundle_)) throw StructuralError("TotalForm: bundle mismatch");
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw StructuralError("TotalForm: total degree mismatch");
}

TotalForm& TotalForm::operator+=(const TotalForm& o) {
  check_compatible(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [key, m] : o.blocks_) add_block(key.first, key.second, m);
  return *this;
}

TotalForm& TotalForm::operator-=(const TotalForm& o) {
  check_compatible(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [key, m] : o.blocks_) add_block(key.first, key.second, -m);
  return *this;
}

TotalForm& TotalForm::operator*=(const Rational& c) {
  if (c.is_zero()) {
    blocks_.clear();
    return *this;
  }
  for (auto& [key, m] : blocks_) m *= c;
  return *this;
}

bool operator==(const TotalForm& a, const TotalForm& b) {
  if (!(a.bundle_ == b.bundle_)) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.blocks_ == b.blocks_;
}

// ---- GradedForm ---------------------------------------------------------

GradedForm::GradedForm(GradedBundle bundle, int total_degree)
    : bundle_(std::move(bundle)), total_degree_(total_degree) {}

GradedForm GradedForm::section(const GradedBundle& bundle, int summand, int alpha, const Poly& coeff) {
  GradedForm g(bundle, bundle.degree(summand));
  g.add(summand, Form::section(bundle.rank(summand), alpha, coeff));
  return g;
}

Form GradedForm::component(int summand) const {
  auto it = comps_.find(summand);
  if (it != comps_.end()) return it->second;
  return Form(std::max(0, form_degree(summand)), bundle_.rank(summand));
}

void GradedForm::add(int summand, const Form& f) {
  if (f.is_zero()) return;
  if (f.rank() != bundle_.rank(summand)) throw StructuralError("GradedForm: component rank mismatch");
  if (f.degree() != form_degree(summand)) throw StructuralError("GradedForm: component has wrong form degree");
  auto [it, inserted] = comps_.try_emplace(summand, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

GradedForm& GradedForm::operator+=(const GradedForm& o) {
  if (!(o.bundle_ == bundle_)) throw StructuralError("GradedForm: bundle mismatch");
  if (is_zero()) total_degree_ = o.total_degree_;
  if (o.total_degree_ != total_degree_ && !o.is_zero()) throw StructuralError("GradedForm: total degree mismatch");
  for (const auto& [l, f] : o.comps_) add(l, f);
  return *this;
}

GradedForm& GradedForm::operator-=(const GradedForm& o) {
  GradedForm neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

GradedForm& GradedForm::operator*=(const Rational& c) {
  if (c.is_zero()) {
    comps_.clear();
    return *this;
  }
  for (auto& [l, f] : comps_) f *= c;
  return *this;
}

bool operator==(const GradedForm& a, const GradedForm& b) {
  if (!(a.bundle_ == b.bundle_)) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.total_degree_ == b.total_degree_ && a.comps_ == b.comps_;
}

GradedForm wedge(const ScalarForm& f, const GradedForm& g) {
  GradedForm out(g.bundle(), g.total_degree() + f.degree());
  for (const auto& [l, w] : g.components()) out.add(l, wedge(f, w));
  return out;
}

// ---- hat calculus -------------------------------------------------------

GradedForm wedge_apply(const TotalForm& k, const GradedForm& w) {
  if (!(k.bundle() == w.bundle())) throw StructuralError("wedge_apply: bundle mismatch");
  GradedForm out(w.bundle(), w.total_degree() + k.degree());
  for (const auto& [key, m] : k.blocks()) {
    const auto [source, target] = key;
    auto it = w.components().find(source);
    if (it == w.components().end()) continue;
    const Form& comp = it->second;
    Form image = wedge(m, comp);
    if (parity_sign(k.hom_degree(source, target) * comp.degree()) < 0) image *= Rational(-1);
    out.add(target, image);
  }
  return out;
}

Form wedge_apply(const MatForm& k, const Form& w) { return wedge(k, w); }

TotalForm unhat(const GradedBundle& bundle, int degree, const GradedOperator& op) {
  TotalForm out(bundle, degree);
  for (int l = 0; l < bundle.size(); ++l) {
    std::map<int, MatForm> columns;
    for (int alpha = 0; alpha < bundle.rank(l); ++alpha) {
      const GradedForm image = op(GradedForm::section(bundle, l, alpha));
      if (image.is_zero()) continue;
      if (image.total_degree() != bundle.degree(l) + degree) throw StructuralError("unhat: operator has the wrong degree");
      for (const auto& [j, f] : image.components()) {
        auto [it, inserted] = columns.try_emplace(j, f.degree(), bundle.rank(j), bundle.rank(l));
        for (int r = 0; r < f.rank(); ++r) it->second.add(r, alpha, f[r]);
      }
    }
    for (const auto& [j, m] : columns) out.add_block(l, j, m);
  }
  return out;
}

TotalForm hat_roundtrip(const TotalForm& k) {
  return unhat(k.bundle(), k.degree(), [&k](const GradedForm& w) { return wedge_apply(k, w); });
}

TotalForm compose(const TotalForm& k1, const TotalForm& k2) {
  if (!(k1.bundle() == k2.bundle())) throw StructuralError("compose: bundle mismatch");
  TotalForm out(k1.bundle(), k1.degree() + k2.degree());
  for (const auto& [key2, m2] : k2.blocks()) {
    const auto [source, middle] = key2;
    for (const auto& [key1, m1] : k1.blocks()) {
      if (key1.first != middle) continue;
      const int target = key1.second;
      MatForm prod = wedge(m1, m2);
      if (parity_sign(k1.hom_degree(middle, target) * m2.degree()) < 0) prod *= Rational(-1);
      out.add_block(source, target, prod);
    }
  }
  return out;
}

TotalForm power(const TotalForm& k, int n) {
  if (n < 1) throw std::domain_error("power: exponent must be positive");
  TotalForm out = k;
  for (int p = 1; p < n; ++p) out = compose(out, k);
  return out;
}

TotalForm graded_commutator(const TotalForm& k1, const TotalForm& k2) {
  TotalForm out = compose(k1, k2);
  TotalForm back = compose(k2, k1);
  if (parity_sign(k1.degree() * k2.degree()) < 0) {
    out += back;
  } else {
    out -= back;
  }
  return out;
}

ScalarForm gtr(const TotalForm& k) {
  ScalarForm out(k.degree());
  for (const auto& [key, m] : k.blocks()) {
    if (key.first != key.second) continue;
    ScalarForm t = trace(m);
    if (parity_sign(k.bundle().degree(key.first)) < 0) t *= Rational(-1);
    out += t;
  }
  return out;
}

TotalForm as_total(const MatForm& m) {
  if (m.rows() != m.cols()) throw StructuralError("as_total: block must be square");
  TotalForm out(GradedBundle::ordinary(m.rows()), m.degree());
  out.add_block(0, 0, m);
  return out;
}

bool ideal_membership(const Subframe& b, const ScalarForm& form, int p) {
  if (p <= 0) return true;
  for (const auto& [m, c] : form.terms()) {
    if (m >> b.parent_rank()) throw StructuralError("ideal_membership: form index exceeds frame rank");
    if (mask_degree(m & ~b.mask()) < p) return false;
  }
  return true;
}

bool ideal_membership(const Subframe& b, const MatForm& form, int p) {
  for (int r = 0; r < form.rows(); ++r) {
    for (int c = 0; c < form.cols(); ++c) {
      if (!ideal_membership(b, form(r, c), p)) return false;
    }
  }
  return true;
}

bool ideal_membership(const Subframe& b, const TotalForm& form, int p) {
  for (const auto& [key, m] : form.blocks()) {
    if (!ideal_membership(b, m, p)) return false;
  }
  return true;
}

namespace {

template <typename Map>
MatForm map_entries(const MatForm& m, Map&& fn) {
  MatForm out(m.degree(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out.add(r, c, fn(m(r, c)));
  }
  return out;
}

}  // namespace

MatForm restrict_form(const MatForm& m, const Subframe& sub) {
  return map_entries(m, [&](const ScalarForm& f) { return restrict_form(f, sub); });
}

MatForm extend_form(const MatForm& m, const Subframe& sub) {
  return map_entries(m, [&](const ScalarForm& f) { return extend_form(f, sub); });
}

TotalForm restrict_form(const TotalForm& k, const Subframe& sub) {
  TotalForm out(k.bundle(), k.degree());
  for (const auto& [key, m] : k.blocks()) out.add_block(key.first, key.second, restrict_form(m, sub));
  return out;
}

TotalForm extend_form(const TotalForm& k, const Subframe& sub) {
  TotalForm out(k.bundle(), k.degree());
  for (const auto& [key, m] : k.blocks()) out.add_block(key.first, key.second, extend_form(m, sub));
  return out;
}

Form restrict_form(const Form& f, const Subframe& sub) {
  Form out(f.degree(), f.rank());
  for (int a = 0; a < f.rank(); ++a) out.add(a, restrict_form(f[a], sub));
  return out;
}

GradedForm restrict_form(const GradedForm& g, const Subframe& sub) {
  GradedForm out(g.bundle(), g.total_degree());
  for (const auto& [l, f] : g.components()) out.add(l, restrict_form(f, sub));
  return out;
}

}  // namespace gradweil
