#pragma once

#include <span>
#include <string>
#include <vector>

#include "gradweil/exterior.hpp"
#include "gradweil/poly.hpp"

namespace gradweil {

/// One bracket [e_i, e_j] = Σ_k coeffs[k] e_k of a frame pair.
struct BracketEntry {
  int i = 0;
  int j = 0;
  std::vector<Poly> coeffs;
};

/// Lie algebroid over a single chart, presented in a global frame
/// (e_0,…,e_{r-1}). The anchor is stored row-wise: anchor(i, x) is the
/// ∂/∂x-component of ρ(e_i). Structure functions c(k,i,j) satisfy
/// [e_i,e_j] = Σ_k c(k,i,j) e_k.
///
/// A presentation is not required to satisfy the algebroid axioms; use
/// check_axioms() or validated() for that.
class Algebroid {
 public:
  Algebroid(VarSpace chart, int rank, std::vector<std::vector<Poly>> anchor,
            std::vector<Poly> structure);

  /// Brackets not listed are zero; [e_j,e_i] is filled in by antisymmetry.
  static Algebroid from_brackets(VarSpace chart, int rank, std::vector<std::vector<Poly>> anchor,
                                 const std::vector<BracketEntry>& brackets);
  /// Lie algebra over a point: brackets with constant coefficients.
  static Algebroid lie_algebra(int rank, const std::vector<BracketEntry>& brackets);
  /// Tangent algebroid of the chart: coordinate frame, anchor = identity.
  static Algebroid tangent(VarSpace chart);

  VarSpace chart() const { return chart_; }
  int chart_dim() const { return static_cast<int>(chart_.size()); }
  int rank() const { return rank_; }
  Mask full_mask() const { return rank_ == 32 ? ~Mask{0} : ((Mask{1} << rank_) - 1); }

  const Poly& anchor(int i, int x) const { return anchor_[i][x]; }
  const std::vector<Poly>& anchor_row(int i) const { return anchor_[i]; }
  const Poly& c(int k, int i, int j) const { return structure_[(k * rank_ + i) * rank_ + j]; }

  /// The validation flag is set only by validated().
  bool is_validated() const { return validated_; }
  /// Copy carrying the validation flag; throws PreconditionError listing
  /// the failing axioms otherwise.
  Algebroid validated() const;

  /// ρ(e_i)(f).
  Poly anchor_apply(int i, const Poly& f) const;
  /// X(f) for a vector field given by coordinate components.
  Poly vector_field_apply(std::span<const Poly> field, const Poly& f) const;

  /// d_A ε^k = −Σ_{i<j} c(k,i,j) ε^i∧ε^j.
  const ScalarForm& d_coframe(int k) const { return d_coframe_[k]; }

  /// Zero polynomial in the chart space.
  Poly zero() const { return Poly::constant(chart_, 0); }
  Poly one() const { return Poly::constant(chart_, 1); }

 private:
  VarSpace chart_;
  int rank_;
  std::vector<std::vector<Poly>> anchor_;
  std::vector<Poly> structure_;
  std::vector<ScalarForm> d_coframe_;
  bool validated_ = false;
};

/// Outcome of the Lie algebroid axiom check; `failures` names the first
/// offending frame pairs / triples.
struct AxiomReport {
  bool antisymmetric = true;
  bool anchor_compatible = true;
  bool jacobi = true;
  std::vector<std::string> failures;

  bool ok() const { return antisymmetric && anchor_compatible && jacobi; }
};

AxiomReport check_axioms(const Algebroid& algebroid);

/// The Lie algebroid differential on Ω^•(A).
ScalarForm d_A(const Algebroid& algebroid, const ScalarForm& form);

/// True iff d_A² vanishes on every frame 1-form ε^k and every chart
/// variable.
bool d_A_squared_check(const Algebroid& algebroid);

/// ρ*ω for ω ∈ Ω^s(M) written in the coordinate coframe (dx^0,…).
ScalarForm rho_pullback(const Algebroid& algebroid, const ScalarForm& chart_form);

/// Sorted subset of frame indices spanning a subbundle B of a frame of
/// rank `parent_rank` (adapted frame).
class Subframe {
 public:
  Subframe(int parent_rank, std::vector<int> members);

  int parent_rank() const { return parent_rank_; }
  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  int codim() const { return parent_rank_ - size(); }
  Mask mask() const { return mask_; }
  bool contains(int index) const { return (mask_ >> index) & 1U; }
  std::vector<int> complement() const;
  /// Position of `index` among the members, or -1.
  int local_index(int index) const;

 private:
  int parent_rank_;
  std::vector<int> members_;
  Mask mask_ = 0;
};

/// True iff [e_i,e_j] stays in B for all i,j in B (structure functions
/// vanish outside B).
bool is_bracket_closed(const Algebroid& algebroid, const Subframe& sub);

/// The subalgebroid on B's frame (members relabelled 0..|B|-1).
/// Throws PreconditionError when B is not bracket-closed.
Algebroid restrict_to(const Algebroid& algebroid, const Subframe& sub);

/// ι*: restriction of a form on A to the members of B (relabelled).
ScalarForm restrict_form(const ScalarForm& form, const Subframe& sub);
/// i_C: extension of a form on B to A, vanishing on the complement frame.
ScalarForm extend_form(const ScalarForm& form, const Subframe& sub);

}  // namespace gradweil
