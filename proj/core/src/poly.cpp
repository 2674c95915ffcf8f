#include "gradweil/poly.hpp"

#include <cctype>
#include <deque>
#include <mutex>

#include "gradweil/errors.hpp"

namespace gradweil {

namespace {

struct SpaceRegistry {
  std::mutex mutex;
  std::deque<std::vector<std::string>> lists{std::vector<std::string>{}};
  std::map<std::vector<std::string>, std::uint32_t> ids{{std::vector<std::string>{}, 0}};
};

SpaceRegistry& registry() {
  static SpaceRegistry r;
  return r;
}

}  // namespace

VarSpace VarSpace::intern(const std::vector<std::string>& names) {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  if (auto it = r.ids.find(names); it != r.ids.end()) return VarSpace(it->second);
  const auto id = static_cast<std::uint32_t>(r.lists.size());
  r.lists.push_back(names);
  r.ids.emplace(names, id);
  return VarSpace(id);
}

const std::vector<std::string>& VarSpace::names() const {
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  return r.lists[id_];
}

std::size_t VarSpace::size() const { return names().size(); }

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

Poly Poly::constant(VarSpace space, const Rational& c) {
  TermMap t;
  if (!c.is_zero()) t.emplace(Exponents(space.size(), 0), c);
  return Poly(space, std::move(t));
}

Poly Poly::variable(VarSpace space, std::size_t index) {
  if (index >= space.size()) throw StructuralError("Poly::variable: index out of range");
  Exponents e(space.size(), 0);
  e[index] = 1;
  return monomial(space, std::move(e), Rational(1));
}

Poly Poly::monomial(VarSpace space, Exponents exps, const Rational& c) {
  if (exps.size() != space.size()) throw StructuralError("Poly::monomial: exponent length mismatch");
  TermMap t;
  if (!c.is_zero()) t.emplace(std::move(exps), c);
  return Poly(space, std::move(t));
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.begin()->first) {
    if (e != 0) return false;
  }
  return true;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponents(space_.size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    best = std::max(best, d);
  }
  return best;
}

Poly Poly::promoted(VarSpace target) const {
  if (space_ == target) return *this;
  if (!space_.empty()) throw StructuralError("Poly: variable-list mismatch");
  TermMap t;
  for (const auto& [e, c] : terms_) t.emplace(Exponents(target.size(), 0), c);
  return Poly(target, std::move(t));
}

VarSpace Poly::common_space(const Poly& a, const Poly& b) {
  if (a.space_ == b.space_) return a.space_;
  if (a.space_.empty()) return b.space_;
  if (b.space_.empty()) return a.space_;
  throw StructuralError("Poly: variable-list mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  const VarSpace s = common_space(*this, o);
  if (!(space_ == s)) *this = promoted(s);
  const Poly& rhs = (o.space_ == s) ? o : o.promoted(s);
  for (const auto& [e, c] : rhs.terms_) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly operator*(const Poly& a, const Poly& b) {
  const VarSpace s = Poly::common_space(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(s, {});
  const Poly& pa = (a.space_ == s) ? a : a.promoted(s);
  const Poly& pb = (b.space_ == s) ? b : b.promoted(s);
  Poly::TermMap out;
  const std::size_t n = s.size();
  Exponents e(n);
  for (const auto& [ea, ca] : pa.terms_) {
    for (const auto& [eb, cb] : pb.terms_) {
      for (std::size_t k = 0; k < n; ++k) e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
      auto [it, inserted] = out.try_emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return Poly(s, std::move(out));
}

Poly operator-(Poly a) {
  for (auto& [e, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.space_ == b.space_) return a.terms_ == b.terms_;
  // constants of the empty space compare by value
  if (a.space_.empty() || b.space_.empty()) {
    if (!a.is_constant() || !b.is_constant()) return false;
    return a.constant_term() == b.constant_term();
  }
  return false;
}

Poly partial(const Poly& p, std::size_t var_index) {
  if (var_index >= p.space_.size()) throw StructuralError("partial: variable index out of range");
  Poly::TermMap out;
  for (const auto& [e, c] : p.terms_) {
    if (e[var_index] == 0) continue;
    Exponents d = e;
    d[var_index] = static_cast<std::uint16_t>(d[var_index] - 1);
    out.emplace(std::move(d), c * Rational(static_cast<long>(e[var_index])));
  }
  return Poly(p.space_, std::move(out));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = space_.names();
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (c.sign() < 0) {
      out += "-";
    } else if (!first) {
      out += "+";
    }
    out += (c.sign() < 0 ? -c : c).to_string();
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      out += "*" + names[k] + "^" + std::to_string(e[k]);
    }
    first = false;
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, VarSpace space) : space_(space), names_(space.names()) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
    }
  }

  Poly parse() {
    if (src_.empty()) fail("empty polynomial");
    Poly acc = Poly::constant(space_, 0);
    bool first = true;
    while (pos_ < src_.size()) {
      Rational sign(1);
      if (src_[pos_] == '+' || src_[pos_] == '-') {
        if (src_[pos_] == '-') sign = Rational(-1);
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      acc += term() * sign;
      first = false;
    }
    return acc;
  }

 private:
  Poly term() {
    Poly t = factor();
    while (pos_ < src_.size() && src_[pos_] == '*') {
      ++pos_;
      t *= factor();
    }
    return t;
  }

  Poly factor() {
    if (pos_ >= src_.size()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      std::string lit = digits();
      if (pos_ < src_.size() && src_[pos_] == '/') {
        ++pos_;
        lit += "/" + digits();
      }
      return Poly::constant(space_, Rational::parse(lit));
    }
    std::string name;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      name.push_back(src_[pos_++]);
    }
    if (name.empty()) fail("expected number or variable");
    std::size_t index = names_.size();
    for (std::size_t k = 0; k < names_.size(); ++k) {
      if (names_[k] == name) index = k;
    }
    if (index == names_.size()) fail("unknown variable '" + name + "'");
    long power = 1;
    if (pos_ < src_.size() && src_[pos_] == '^') {
      ++pos_;
      power = std::stol(digits());
    }
    Exponents e(names_.size(), 0);
    e[index] = static_cast<std::uint16_t>(power);
    return Poly::monomial(space_, std::move(e), Rational(1));
  }

  std::string digits() {
    std::string d;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      d.push_back(src_[pos_++]);
    }
    if (d.empty()) fail("expected digits");
    return d;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial '" + src_ + "': " + why + " at position " + std::to_string(pos_));
  }

  VarSpace space_;
  const std::vector<std::string>& names_;
  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text, VarSpace space) { return PolyParser(text, space).parse(); }

}  // namespace gradweil
