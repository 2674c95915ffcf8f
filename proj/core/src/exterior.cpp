#include "gradweil/exterior.hpp"

#include <algorithm>

#include "gradweil/errors.hpp"

namespace gradweil {

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  out.reserve(std::popcount(m));
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(std::span<const int> indices) {
  Mask m = 0;
  for (int i : indices) {
    if (i < 0 || i >= kMaxFrameRank) throw StructuralError("frame index out of range");
    m |= Mask{1} << i;
  }
  return m;
}

int permutation_sign(std::span<const int> indices) {
  int sign = 1;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a + 1; b < indices.size(); ++b) {
      if (indices[a] == indices[b]) return 0;
      if (indices[a] > indices[b]) sign = -sign;
    }
  }
  return sign;
}

ScalarForm ScalarForm::constant(const Poly& f) {
  ScalarForm out(0);
  out.add_term(0, f);
  return out;
}

ScalarForm ScalarForm::basis(Mask m, const Poly& coeff) {
  ScalarForm out(mask_degree(m));
  out.add_term(m, coeff);
  return out;
}

ScalarForm ScalarForm::from_indices(std::span<const int> indices, const Poly& coeff) {
  ScalarForm out(static_cast<int>(indices.size()));
  const int s = permutation_sign(indices);
  if (s != 0) out.add_term(mask_of(indices), s > 0 ? coeff : -coeff);
  return out;
}

Poly ScalarForm::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Poly() : it->second;
}

Poly ScalarForm::evaluate(std::span<const int> frame_indices) const {
  if (static_cast<int>(frame_indices.size()) != degree_) {
    throw StructuralError("ScalarForm::evaluate: wrong number of arguments");
  }
  const int s = permutation_sign(frame_indices);
  if (s == 0) return Poly();
  Poly c = coeff(mask_of(frame_indices));
  return s > 0 ? c : -c;
}

void ScalarForm::add_term(Mask m, const Poly& c) {
  if (mask_degree(m) != degree_) throw StructuralError("ScalarForm: term degree mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ScalarForm::check_degree(const ScalarForm& o) const {
  if (degree_ != o.degree_ && !o.is_zero() && !is_zero()) {
    throw StructuralError("ScalarForm: degree mismatch (" + std::to_string(degree_) + " vs " +
                          std::to_string(o.degree_) + ")");
  }
}

ScalarForm& ScalarForm::operator+=(const ScalarForm& o) {
  check_degree(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ScalarForm& ScalarForm::operator-=(const ScalarForm& o) {
  check_degree(o);
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ScalarForm& ScalarForm::operator*=(const Poly& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= f;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

ScalarForm& ScalarForm::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool operator==(const ScalarForm& a, const ScalarForm& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

ScalarForm wedge(const ScalarForm& a, const ScalarForm& b) {
  ScalarForm out(a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Poly c = ca * cb;
      out.add_term(ma | mb, s > 0 ? c : -c);
    }
  }
  return out;
}

std::string to_text(const ScalarForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    const auto idx = mask_indices(m);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out += (k == 0 ? "*" : "∧");
      out += "ε" + std::to_string(idx[k] + 1);
    }
  }
  return out;
}

}  // namespace gradweil
