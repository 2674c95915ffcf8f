#pragma once

#include <ostream>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gradweil/poly.hpp"

namespace gradweil {

/// Strictly ascending multi-index over an algebroid frame, one bit per
/// frame index. Frames are limited to 32 sections.
using Mask = std::uint32_t;
inline constexpr int kMaxFrameRank = 32;

inline int mask_degree(Mask m) { return std::popcount(m); }

std::vector<int> mask_indices(Mask m);

/// Mask of a list of distinct indices (order irrelevant).
Mask mask_of(std::span<const int> indices);

/// Sign of e^a ∧ e^b relative to e^(a|b); 0 when the index sets overlap.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // count pairs (x in a, y in b) with x > y
  int inversions = 0;
  while (b) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign of the permutation sorting `indices`; 0 if an index repeats.
int permutation_sign(std::span<const int> indices);

/// Element of Ω^k(A) with polynomial coefficients, stored on ascending
/// multi-indices. Zero coefficients are never stored.
class ScalarForm {
 public:
  using TermMap = std::map<Mask, Poly>;

  explicit ScalarForm(int degree = 0) : degree_(degree) {}

  static ScalarForm constant(const Poly& f);
  static ScalarForm basis(Mask m, const Poly& coeff = Poly(1));
  /// coeff · ε^{i1}∧…∧ε^{ik} for an arbitrary (unsorted) index list.
  static ScalarForm from_indices(std::span<const int> indices, const Poly& coeff = Poly(1));

  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(Mask m) const;

  /// Value on frame sections (e_{i1},…,e_{ik}) in the given order.
  Poly evaluate(std::span<const int> frame_indices) const;

  void add_term(Mask m, const Poly& c);

  ScalarForm& operator+=(const ScalarForm& o);
  ScalarForm& operator-=(const ScalarForm& o);
  ScalarForm& operator*=(const Poly& f);
  ScalarForm& operator*=(const Rational& c);

  friend ScalarForm operator+(ScalarForm a, const ScalarForm& b) { return a += b; }
  friend ScalarForm operator-(ScalarForm a, const ScalarForm& b) { return a -= b; }
  friend ScalarForm operator-(ScalarForm a) { return a *= Rational(-1); }
  friend ScalarForm operator*(ScalarForm a, const Poly& f) { return a *= f; }
  friend ScalarForm operator*(const Poly& f, ScalarForm a) { return a *= f; }
  friend ScalarForm operator*(ScalarForm a, const Rational& c) { return a *= c; }
  friend ScalarForm operator*(const Rational& c, ScalarForm a) { return a *= c; }

  /// Structural equality; zero forms compare equal regardless of degree.
  friend bool operator==(const ScalarForm& a, const ScalarForm& b);

 private:
  void check_degree(const ScalarForm& o) const;

  int degree_;
  TermMap terms_;
};

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b);

/// Human-readable rendering in the ε-coframe notation, 1-based indices:
/// "(2)*ε1∧ε2 + (x^1)*ε3".
std::string to_text(const ScalarForm& f);

inline std::ostream& operator<<(std::ostream& os, const ScalarForm& f) { return os << to_text(f); }

}  // namespace gradweil
