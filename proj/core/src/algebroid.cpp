#include "gradweil/algebroid.hpp"

#include <algorithm>

#include "gradweil/errors.hpp"

namespace gradweil {

Algebroid::Algebroid(VarSpace chart, int rank, std::vector<std::vector<Poly>> anchor,
                     std::vector<Poly> structure)
    : chart_(chart), rank_(rank), anchor_(std::move(anchor)), structure_(std::move(structure)) {
  if (rank < 0 || rank > kMaxFrameRank) throw StructuralError("Algebroid: rank out of range");
  if (static_cast<int>(anchor_.size()) != rank) throw StructuralError("Algebroid: anchor needs one row per frame section");
  for (auto& row : anchor_) {
    if (row.size() != chart.size()) throw StructuralError("Algebroid: anchor row length must equal chart dimension");
    for (auto& p : row) p = p.promoted(chart);
  }
  if (structure_.size() != static_cast<std::size_t>(rank) * rank * rank) {
    throw StructuralError("Algebroid: structure array must have rank^3 entries");
  }
  for (auto& p : structure_) p = p.promoted(chart);
  d_coframe_.reserve(rank);
  for (int k = 0; k < rank; ++k) {
    ScalarForm dk(2);
    for (int i = 0; i < rank; ++i) {
      for (int j = i + 1; j < rank; ++j) {
        dk.add_term((Mask{1} << i) | (Mask{1} << j), -c(k, i, j));
      }
    }
    d_coframe_.push_back(std::move(dk));
  }
}

Algebroid Algebroid::from_brackets(VarSpace chart, int rank, std::vector<std::vector<Poly>> anchor,
                                   const std::vector<BracketEntry>& brackets) {
  std::vector<Poly> structure(static_cast<std::size_t>(rank) * rank * rank, Poly::constant(chart, 0));
  auto at = [&](int k, int i, int j) -> Poly& { return structure[(k * rank + i) * rank + j]; };
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.i >= rank || b.j >= rank) throw StructuralError("bracket index out of range");
    if (static_cast<int>(b.coeffs.size()) != rank) throw StructuralError("bracket needs one coefficient per frame section");
    if (b.i == b.j) {
      bool zero = std::all_of(b.coeffs.begin(), b.coeffs.end(), [](const Poly& p) { return p.is_zero(); });
      if (!zero) throw StructuralError("bracket [e_i,e_i] must vanish");
      continue;
    }
    for (int k = 0; k < rank; ++k) {
      at(k, b.i, b.j) = b.coeffs[k].promoted(chart);
      at(k, b.j, b.i) = -b.coeffs[k].promoted(chart);
    }
  }
  return Algebroid(chart, rank, std::move(anchor), std::move(structure));
}

Algebroid Algebroid::lie_algebra(int rank, const std::vector<BracketEntry>& brackets) {
  return from_brackets(VarSpace(), rank, std::vector<std::vector<Poly>>(rank), brackets);
}

Algebroid Algebroid::tangent(VarSpace chart) {
  const int n = static_cast<int>(chart.size());
  std::vector<std::vector<Poly>> anchor(n, std::vector<Poly>(n, Poly::constant(chart, 0)));
  for (int i = 0; i < n; ++i) anchor[i][i] = Poly::constant(chart, 1);
  return Algebroid(chart, n, std::move(anchor),
                   std::vector<Poly>(static_cast<std::size_t>(n) * n * n, Poly::constant(chart, 0)));
}

Algebroid Algebroid::validated() const {
  const auto report = check_axioms(*this);
  if (!report.ok()) {
    std::string msg = "Lie algebroid axioms fail:";
    for (const auto& f : report.failures) msg += " " + f + ";";
    throw PreconditionError(msg);
  }
  Algebroid copy = *this;
  copy.validated_ = true;
  return copy;
}

Poly Algebroid::anchor_apply(int i, const Poly& f) const {
  return vector_field_apply(anchor_[i], f);
}

Poly Algebroid::vector_field_apply(std::span<const Poly> field, const Poly& f) const {
  Poly out = zero();
  if (f.is_constant()) return out;
  for (std::size_t x = 0; x < field.size(); ++x) {
    if (field[x].is_zero()) continue;
    out += field[x] * partial(f.promoted(chart_), x);
  }
  return out;
}

AxiomReport check_axioms(const Algebroid& a) {
  AxiomReport report;
  const int r = a.rank();
  const int n = a.chart_dim();
  auto name = [](std::initializer_list<int> idx) {
    std::string s = "(";
    bool first = true;
    for (int i : idx) {
      s += (first ? "" : ",") + std::string("e") + std::to_string(i + 1);
      first = false;
    }
    return s + ")";
  };
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < r; ++i) {
      for (int j = i; j < r; ++j) {
        if (!(a.c(k, i, j) == -a.c(k, j, i))) {
          if (report.antisymmetric) report.failures.push_back("antisymmetry " + name({i, j}));
          report.antisymmetric = false;
        }
      }
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      for (int x = 0; x < n; ++x) {
        Poly lhs = a.anchor_apply(i, a.anchor(j, x)) - a.anchor_apply(j, a.anchor(i, x));
        for (int k = 0; k < r; ++k) lhs -= a.c(k, i, j) * a.anchor(k, x);
        if (!lhs.is_zero()) {
          if (report.anchor_compatible) report.failures.push_back("anchor compatibility " + name({i, j}));
          report.anchor_compatible = false;
        }
      }
    }
  }
  // Σ_cyc [[e_i,e_j],e_l] = 0, including anchor-derivative terms
  auto jac_term = [&](int i, int j, int l, int m) {
    Poly t = -a.anchor_apply(l, a.c(m, i, j));
    for (int k = 0; k < r; ++k) t += a.c(k, i, j) * a.c(m, k, l);
    return t;
  };
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      for (int l = j + 1; l < r; ++l) {
        for (int m = 0; m < r; ++m) {
          Poly s = jac_term(i, j, l, m) + jac_term(j, l, i, m) + jac_term(l, i, j, m);
          if (!s.is_zero()) {
            report.failures.push_back("Jacobi " + name({i, j, l}));
            report.jacobi = false;
            break;
          }
        }
      }
    }
  }
  return report;
}

ScalarForm d_A(const Algebroid& a, const ScalarForm& form) {
  ScalarForm out(form.degree() + 1);
  const int r = a.rank();
  const bool has_chart = a.chart_dim() > 0;
  for (const auto& [m, f] : form.terms()) {
    if (has_chart && !f.is_constant()) {
      for (int i = 0; i < r; ++i) {
        const Mask bit = Mask{1} << i;
        const int s = wedge_sign(bit, m);
        if (s == 0) continue;
        Poly df = a.anchor_apply(i, f);
        if (df.is_zero()) continue;
        out.add_term(bit | m, s > 0 ? df : -df);
      }
    }
    // f · d(ε^{i_0}∧…) = f Σ_p (−1)^p dε^{i_p} ∧ ε^{mask∖i_p}
    int position = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++position) {
      const int ip = std::countr_zero(rest);
      const Mask others = m & ~(Mask{1} << ip);
      for (const auto& [m2, c2] : a.d_coframe(ip).terms()) {
        const int s = wedge_sign(m2, others);
        if (s == 0) continue;
        Poly c = c2 * f;
        out.add_term(m2 | others, (s * ((position & 1) ? -1 : 1)) > 0 ? c : -c);
      }
    }
  }
  return out;
}

bool d_A_squared_check(const Algebroid& a) {
  for (int k = 0; k < a.rank(); ++k) {
    if (!d_A(a, d_A(a, ScalarForm::basis(Mask{1} << k, a.one()))).is_zero()) return false;
  }
  for (int x = 0; x < a.chart_dim(); ++x) {
    const auto fx = ScalarForm::constant(Poly::variable(a.chart(), x));
    if (!d_A(a, d_A(a, fx)).is_zero()) return false;
  }
  return true;
}

ScalarForm rho_pullback(const Algebroid& a, const ScalarForm& chart_form) {
  const int n = a.chart_dim();
  std::vector<ScalarForm> pulled_dx;
  pulled_dx.reserve(n);
  for (int x = 0; x < n; ++x) {
    ScalarForm p(1);
    for (int i = 0; i < a.rank(); ++i) p.add_term(Mask{1} << i, a.anchor(i, x));
    pulled_dx.push_back(std::move(p));
  }
  ScalarForm out(chart_form.degree());
  for (const auto& [m, f] : chart_form.terms()) {
    if (m >> n) throw StructuralError("rho_pullback: form index exceeds chart dimension");
    ScalarForm term = ScalarForm::constant(f.promoted(a.chart()));
    for (int x : mask_indices(m)) term = wedge(term, pulled_dx[x]);
    out += term;
  }
  return out;
}

Subframe::Subframe(int parent_rank, std::vector<int> members)
    : parent_rank_(parent_rank), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (members_[k] < 0 || members_[k] >= parent_rank) throw StructuralError("Subframe: index out of range");
    if (k > 0 && members_[k] == members_[k - 1]) throw StructuralError("Subframe: repeated index");
    mask_ |= Mask{1} << members_[k];
  }
}

std::vector<int> Subframe::complement() const {
  std::vector<int> out;
  for (int i = 0; i < parent_rank_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

int Subframe::local_index(int index) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), index);
  return (it != members_.end() && *it == index) ? static_cast<int>(it - members_.begin()) : -1;
}

bool is_bracket_closed(const Algebroid& a, const Subframe& sub) {
  for (int i : sub.members()) {
    for (int j : sub.members()) {
      for (int k = 0; k < a.rank(); ++k) {
        if (!sub.contains(k) && !a.c(k, i, j).is_zero()) return false;
      }
    }
  }
  return true;
}

Algebroid restrict_to(const Algebroid& a, const Subframe& sub) {
  if (sub.parent_rank() != a.rank()) throw StructuralError("restrict_to: subframe/algebroid rank mismatch");
  if (!is_bracket_closed(a, sub)) throw PreconditionError("restrict_to: subframe is not closed under the bracket");
  const int q = sub.size();
  std::vector<std::vector<Poly>> anchor;
  for (int i : sub.members()) anchor.push_back(a.anchor_row(i));
  std::vector<Poly> structure(static_cast<std::size_t>(q) * q * q);
  for (int k = 0; k < q; ++k) {
    for (int i = 0; i < q; ++i) {
      for (int j = 0; j < q; ++j) {
        structure[(k * q + i) * q + j] = a.c(sub.members()[k], sub.members()[i], sub.members()[j]);
      }
    }
  }
  return Algebroid(a.chart(), q, std::move(anchor), std::move(structure));
}

ScalarForm restrict_form(const ScalarForm& form, const Subframe& sub) {
  ScalarForm out(form.degree());
  for (const auto& [m, c] : form.terms()) {
    if (m & ~sub.mask()) continue;
    Mask local = 0;
    for (int i : mask_indices(m)) local |= Mask{1} << sub.local_index(i);
    out.add_term(local, c);
  }
  return out;
}

ScalarForm extend_form(const ScalarForm& form, const Subframe& sub) {
  ScalarForm out(form.degree());
  for (const auto& [m, c] : form.terms()) {
    Mask global = 0;
    for (int i : mask_indices(m)) {
      if (i >= sub.size()) throw StructuralError("extend_form: index exceeds subframe size");
      global |= Mask{1} << sub.members()[i];
    }
    out.add_term(global, c);
  }
  return out;
}

}  // namespace gradweil
