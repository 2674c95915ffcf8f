#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradweil/connections.hpp"
#include "gradweil/linalg.hpp"

namespace gradweil {

/// Representative of the i-th Pontryagin character.
struct CharacterForm {
  int index = 0;
  ScalarForm representative;
  bool closed = false;
};

/// gtr(R_𝒟^i); throws InternalError if the result is not d_A-closed.
CharacterForm sigma_character(const ConnectionUpToHomotopy& conn, int i);
/// tr(R_∇^i) for an ordinary connection.
CharacterForm sigma_character(const LinearConnection& nabla, int i);

/// M∧…∧M (n factors), n ≥ 1.
MatForm matrix_power(const MatForm& m, int n);
/// p_j = tr(R^j) for j = 1..n.
std::vector<ScalarForm> power_traces(const MatForm& r, int n);
/// Coefficient of λ^{k−i} in det(λ·I + R) via Newton's identities; R
/// must have even form degree. f_0 = 1.
ScalarForm invariant_poly_f(const MatForm& r, int i);

/// prefactor · (2π)^{two_pi_exponent} · [representative].
struct ScaledClass {
  int index = 0;
  ScalarForm representative;
  Rational prefactor{1};
  int two_pi_exponent = 0;

  std::string to_text() const;
};

/// p^i = (−1)^i (2π)^{−2i} f_{2i}(R_∇).
ScaledClass pontryagin_class(const LinearConnection& nabla, int i);
/// 1 + p^1 + p^2 + …, up to the last index that can be nonzero.
std::vector<ScaledClass> total_pontryagin_class(const LinearConnection& nabla);

/// Chevalley–Eilenberg cohomology of an algebroid over a point.
class CohomologyBasis {
 public:
  int rank() const { return rank_; }
  int dim(int k) const { return static_cast<int>(reps_.at(k).size()); }
  std::vector<int> dims() const;
  /// Closed forms representing a basis of H^k.
  const std::vector<ScalarForm>& representatives(int k) const { return reps_.at(k); }
  /// Coordinates of the class of a closed k-form in the basis above.
  std::vector<Rational> decompose(const ScalarForm& closed_form) const;
  bool is_zero_class(const ScalarForm& closed_form) const;

 private:
  friend CohomologyBasis ce_cohomology(const Algebroid& algebroid);

  int rank_ = 0;
  std::vector<std::vector<Mask>> masks_;                  // per degree
  std::vector<std::vector<ScalarForm>> reps_;             // per degree
  std::vector<std::vector<std::vector<Rational>>> span_;  // reps then exact basis, as coordinate vectors
};

/// Throws PreconditionError when the base is not a point.
CohomologyBasis ce_cohomology(const Algebroid& algebroid);

enum class Exactness { exact, not_exact, undecided };
std::string to_string(Exactness e);

struct ExactResult {
  Exactness status = Exactness::undecided;
  std::optional<ScalarForm> primitive;
};

/// Searches for η with d_A η = ω. Over a point the answer is decisive;
/// over a chart η is sought with coefficients of total degree ≤ bound and
/// failure reports `undecided`. Throws PreconditionError if ω is not closed.
ExactResult is_exact(const Algebroid& algebroid, const ScalarForm& w, int degree_bound);

/// T with d_A T = gtr(R_{𝒟'}^i) − gtr(R_𝒟^i), integrating
/// i·gtr(R_t^{i−1}∧D) over the segment 𝒟 + t·D̂.
ScalarForm transgression(const ConnectionUpToHomotopy& from, const ConnectionUpToHomotopy& to, int i);

struct MasseyResult {
  ScalarForm omega;  // d_A ω = α∧β
  ScalarForm eta;    // d_A η = (−1)^{|α|} β∧γ
  ScalarForm representative;
  /// Over a point: forms spanning [α]∧H + H∧[γ] in the product degree,
  /// and whether the product class lies in that span.
  bool point_base = false;
  std::vector<ScalarForm> indeterminacy;
  int indeterminacy_rank = 0;
  bool vanishes = false;
  bool representative_exact = false;
};

/// Throws PreconditionError if an input is not closed or a hypothesis
/// product is not exact; undecided primitives at chart base also throw.
MasseyResult massey_triple(const Algebroid& algebroid, const ScalarForm& alpha, const ScalarForm& beta,
                           const ScalarForm& gamma, int degree_bound);

}  // namespace gradweil
