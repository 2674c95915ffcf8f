#pragma once

#include <ostream>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gradweil/rational.hpp"

namespace gradweil {

/// Interned, ordered list of chart variable names. Two polynomials can be
/// combined only when they live in the same space (or one of them is a
/// constant of the empty space, which promotes).
class VarSpace {
 public:
  VarSpace() = default;  // the empty space (base = point)

  static VarSpace intern(const std::vector<std::string>& names);

  std::size_t size() const;
  const std::vector<std::string>& names() const;
  bool empty() const { return id_ == 0; }

  friend bool operator==(VarSpace a, VarSpace b) { return a.id_ == b.id_; }

 private:
  explicit VarSpace(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

using Exponents = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial with rational coefficients.
/// Zero coefficients are never stored; every exponent vector has length
/// space().size(), so equality is structural.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly constant(VarSpace space, const Rational& c);
  static Poly variable(VarSpace space, std::size_t index);
  static Poly monomial(VarSpace space, Exponents exps, const Rational& c);

  /// Parses the canonical grammar ("2*x^2-1/3*x^1*y^1", whitespace and
  /// omitted unit exponents accepted). Throws ParseError.
  static Poly parse(std::string_view text, VarSpace space);

  VarSpace space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;  // -1 for the zero polynomial

  /// Same polynomial viewed in `target`; only legal from the empty space.
  Poly promoted(VarSpace target) const;

  std::string to_string() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator-(Poly a);

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  Poly(VarSpace space, TermMap terms) : space_(space), terms_(std::move(terms)) {}
  static VarSpace common_space(const Poly& a, const Poly& b);

  VarSpace space_{};
  TermMap terms_;

  friend Poly partial(const Poly& p, std::size_t var_index);
};

/// Formal partial derivative with respect to variable `var_index`.
Poly partial(const Poly& p, std::size_t var_index);

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

}  // namespace gradweil
