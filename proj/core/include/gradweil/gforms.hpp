#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gradweil/algebroid.hpp"
#include "gradweil/exterior.hpp"

namespace gradweil {

struct Summand {
  int degree = 0;
  int rank = 1;
  friend bool operator==(const Summand&, const Summand&) = default;
};

/// E = ⊕_z E_z[z], finitely many summands, sorted by degree.
class GradedBundle {
 public:
  explicit GradedBundle(std::vector<Summand> summands);
  static GradedBundle ordinary(int rank) { return GradedBundle({{0, rank}}); }

  const std::vector<Summand>& summands() const { return summands_; }
  int size() const { return static_cast<int>(summands_.size()); }
  int degree(int idx) const { return summands_[idx].degree; }
  int rank(int idx) const { return summands_[idx].rank; }
  int total_rank() const;
  /// Summand index carrying degree z, or -1.
  int index_of_degree(int z) const;

  friend bool operator==(const GradedBundle&, const GradedBundle&) = default;

 private:
  std::vector<Summand> summands_;
};

/// Element of Ω^k(A, E) for a bundle E of the given rank: one scalar
/// form per fiber index.
class Form {
 public:
  Form(int degree, int rank);
  /// coeff · f_α as a 0-form.
  static Form section(int rank, int alpha, const Poly& coeff = Poly(1));

  int degree() const { return degree_; }
  int rank() const { return static_cast<int>(comps_.size()); }
  const ScalarForm& operator[](int alpha) const { return comps_[alpha]; }
  void add(int alpha, const ScalarForm& f);
  bool is_zero() const;

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Rational& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(const Rational& c, Form a) { return a *= c; }
  friend bool operator==(const Form& a, const Form& b);

 private:
  int degree_;
  std::vector<ScalarForm> comps_;
};

/// Element of Ω^k(A, Hom(E, E')): a rows×cols matrix of k-forms,
/// rows = rank E', cols = rank E.
class MatForm {
 public:
  MatForm(int degree, int rows, int cols);
  static MatForm identity(int n);
  static MatForm scalar(const ScalarForm& f, int n);  // f · id

  int degree() const { return degree_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const ScalarForm& operator()(int r, int c) const { return entries_[r * cols_ + c]; }
  void add(int r, int c, const ScalarForm& f);
  void set(int r, int c, const ScalarForm& f);
  bool is_zero() const;

  MatForm& operator+=(const MatForm& o);
  MatForm& operator-=(const MatForm& o);
  MatForm& operator*=(const Rational& c);
  MatForm& operator*=(const Poly& f);
  friend MatForm operator+(MatForm a, const MatForm& b) { return a += b; }
  friend MatForm operator-(MatForm a, const MatForm& b) { return a -= b; }
  friend MatForm operator-(MatForm a) { return a *= Rational(-1); }
  friend MatForm operator*(const Rational& c, MatForm a) { return a *= c; }
  friend bool operator==(const MatForm& a, const MatForm& b);

 private:
  void check_shape(const MatForm& o) const;

  int degree_;
  int rows_;
  int cols_;
  std::vector<ScalarForm> entries_;
};

/// Matrix product with ∧ on entries (no Koszul sign; ungraded).
MatForm wedge(const MatForm& a, const MatForm& b);
/// (M∧ω)^r = Σ_c M_{rc}∧ω^c.
Form wedge(const MatForm& m, const Form& w);
Form wedge(const ScalarForm& f, const Form& w);
MatForm wedge(const ScalarForm& f, const MatForm& m);
ScalarForm trace(const MatForm& m);

/// Element of Ω(A, End(E))_s, decomposed into blocks K^{i,l,j} ∈
/// Ω^i(A, Hom(E_l, E_j)) with j − l = s − i. Blocks are keyed by
/// (source summand index, target summand index); the form degree is
/// determined by s.
class TotalForm {
 public:
  using Key = std::pair<int, int>;

  TotalForm(GradedBundle bundle, int total_degree);
  static TotalForm identity(const GradedBundle& bundle);

  const GradedBundle& bundle() const { return bundle_; }
  int degree() const { return degree_; }
  /// Form degree of block (l → j).
  int form_degree(int source, int target) const {
    return degree_ - (bundle_.degree(target) - bundle_.degree(source));
  }
  int hom_degree(int source, int target) const { return bundle_.degree(target) - bundle_.degree(source); }

  const std::map<Key, MatForm>& blocks() const { return blocks_; }
  const MatForm* block(int source, int target) const;
  MatForm block_or_zero(int source, int target) const;
  void add_block(int source, int target, const MatForm& m);
  bool is_zero() const { return blocks_.empty(); }

  TotalForm& operator+=(const TotalForm& o);
  TotalForm& operator-=(const TotalForm& o);
  TotalForm& operator*=(const Rational& c);
  friend TotalForm operator+(TotalForm a, const TotalForm& b) { return a += b; }
  friend TotalForm operator-(TotalForm a, const TotalForm& b) { return a -= b; }
  friend TotalForm operator*(const Rational& c, TotalForm a) { return a *= c; }
  friend bool operator==(const TotalForm& a, const TotalForm& b);

 private:
  void check_compatible(const TotalForm& o) const;

  GradedBundle bundle_;
  int degree_;
  std::map<Key, MatForm> blocks_;
};

/// Element of Ω(A, E)_n, homogeneous in total degree n: one Form per
/// summand, of form degree n − deg(E_l).
class GradedForm {
 public:
  GradedForm(GradedBundle bundle, int total_degree);
  /// coeff · f_α for the α-th frame section of summand l.
  static GradedForm section(const GradedBundle& bundle, int summand, int alpha, const Poly& coeff = Poly(1));

  const GradedBundle& bundle() const { return bundle_; }
  int total_degree() const { return total_degree_; }
  int form_degree(int summand) const { return total_degree_ - bundle_.degree(summand); }
  const std::map<int, Form>& components() const { return comps_; }
  Form component(int summand) const;
  void add(int summand, const Form& f);
  bool is_zero() const { return comps_.empty(); }

  GradedForm& operator+=(const GradedForm& o);
  GradedForm& operator-=(const GradedForm& o);
  GradedForm& operator*=(const Rational& c);
  friend GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
  friend GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
  friend bool operator==(const GradedForm& a, const GradedForm& b);

 private:
  GradedBundle bundle_;
  int total_degree_;
  std::map<int, Form> comps_;
};

/// ω ∧ η for scalar ω.
GradedForm wedge(const ScalarForm& f, const GradedForm& g);

/// The operator K̂: the shuffle wedge of each block, with the Koszul sign
/// (−1)^{(j−l)·p} for a block of hom degree j−l acting on a p-form, so
/// that K̂(ω∧η) = (−1)^{|K||ω|} ω∧K̂(η).
GradedForm wedge_apply(const TotalForm& k, const GradedForm& w);

/// Ungraded special case: K ∈ Ω^s(A, Hom(E,E')) acting on Ω(A, E).
Form wedge_apply(const MatForm& k, const Form& w);

/// Recovers K from a graded Ω(A)-linear operator of degree s by
/// evaluating it on every frame section of every summand.
using GradedOperator = std::function<GradedForm(const GradedForm&)>;
TotalForm unhat(const GradedBundle& bundle, int degree, const GradedOperator& op);

/// unhat(hat(K)).
TotalForm hat_roundtrip(const TotalForm& k);

/// K1∧K2 with hat(K1)∘hat(K2) = hat(K1∧K2).
TotalForm compose(const TotalForm& k1, const TotalForm& k2);
/// K^n under compose (n ≥ 1).
TotalForm power(const TotalForm& k, int n);

/// [K1,K2] = K1∧K2 − (−1)^{|K1||K2|} K2∧K1.
TotalForm graded_commutator(const TotalForm& k1, const TotalForm& k2);

/// Σ_l (−1)^{deg E_l} tr(K^{s,l,l}).
ScalarForm gtr(const TotalForm& k);

/// TotalForm over the ordinary bundle E[0] holding a single block.
TotalForm as_total(const MatForm& m);

/// True iff `form` lies in (I(B))^p: every coefficient whose multi-index
/// has fewer than p indices outside B vanishes. p = 0 is the whole algebra.
bool ideal_membership(const Subframe& b, const ScalarForm& form, int p);
bool ideal_membership(const Subframe& b, const MatForm& form, int p);
bool ideal_membership(const Subframe& b, const TotalForm& form, int p);

/// ι* and i_C applied entrywise (see restrict_form / extend_form).
MatForm restrict_form(const MatForm& m, const Subframe& sub);
MatForm extend_form(const MatForm& m, const Subframe& sub);
TotalForm restrict_form(const TotalForm& k, const Subframe& sub);
TotalForm extend_form(const TotalForm& k, const Subframe& sub);
Form restrict_form(const Form& f, const Subframe& sub);
GradedForm restrict_form(const GradedForm& g, const Subframe& sub);

}  // namespace gradweil
