#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gradweil/algebroid.hpp"
#include "gradweil/gforms.hpp"

namespace gradweil {

using AlgebroidPtr = std::shared_ptr<const Algebroid>;

/// Linear A-connection on a bundle of rank k given by Christoffel data:
/// ∇_{e_i} f_α = Σ_β Γ(i, α, β) f_β.
class LinearConnection {
 public:
  /// `christoffel` is indexed [i][α][β].
  LinearConnection(AlgebroidPtr algebroid, int rank, std::vector<std::vector<std::vector<Poly>>> christoffel);
  static LinearConnection trivial(AlgebroidPtr algebroid, int rank);

  const Algebroid& algebroid() const { return *algebroid_; }
  const AlgebroidPtr& algebroid_ptr() const { return algebroid_; }
  int rank() const { return rank_; }
  const Poly& gamma(int i, int alpha, int beta) const { return christoffel_[i][alpha][beta]; }
  const std::vector<std::vector<std::vector<Poly>>>& christoffel() const { return christoffel_; }

  /// θ with θ(β, α) = Σ_i Γ(i, α, β) ε^i, so d_∇ = d_A + θ∧.
  const MatForm& connection_form() const { return theta_; }

  /// ∇_a s for a section a = Σ a_i e_i and s = Σ s_α f_α.
  std::vector<Poly> covariant(std::span<const Poly> a, std::span<const Poly> s) const;

  friend bool operator==(const LinearConnection& a, const LinearConnection& b) {
    return a.rank_ == b.rank_ && a.christoffel_ == b.christoffel_;
  }

 private:
  AlgebroidPtr algebroid_;
  int rank_;
  std::vector<std::vector<std::vector<Poly>>> christoffel_;
  MatForm theta_;
};

Form d_nabla(const LinearConnection& nabla, const Form& w);

/// R_∇ as the unhat of d_∇²; cross-validated against the frame formula
/// R(a,b) = ∇_a∇_b − ∇_b∇_a − ∇_[a,b]. Throws InternalError on mismatch.
MatForm curvature(const LinearConnection& nabla);
MatForm curvature_frame_formula(const LinearConnection& nabla);

/// ∇^Hom on Hom(E, E'), fiber index (a, b) ↦ a·rank(E) + b.
LinearConnection induced_hom_connection(const LinearConnection& source, const LinearConnection& target);

/// d_{∇^Hom} K = dK + θ'∧K − (−1)^k K∧θ for K ∈ Ω^k(A, Hom(E, E')).
MatForm d_nabla_hom(const LinearConnection& source, const LinearConnection& target, const MatForm& k);

/// Row-major flattening of a Hom-valued form into a Form on Hom(E, E').
Form flatten(const MatForm& m);
MatForm unflatten(const Form& f, int rows, int cols);

/// 𝒟 = d_∇ + D̂ on a graded bundle: one connection per summand plus a
/// form D of total degree 1.
class ConnectionUpToHomotopy {
 public:
  ConnectionUpToHomotopy(GradedBundle bundle, std::vector<LinearConnection> nablas, TotalForm d);
  static ConnectionUpToHomotopy degree_preserving(GradedBundle bundle, std::vector<LinearConnection> nablas);

  const GradedBundle& bundle() const { return bundle_; }
  const Algebroid& algebroid() const { return nablas_.front().algebroid(); }
  const AlgebroidPtr& algebroid_ptr() const { return nablas_.front().algebroid_ptr(); }
  const LinearConnection& nabla(int summand) const { return nablas_[summand]; }
  const std::vector<LinearConnection>& nablas() const { return nablas_; }
  const TotalForm& form() const { return d_; }
  /// True iff D has no degree-preserving 1-form block.
  bool is_normalized() const;

 private:
  GradedBundle bundle_;
  std::vector<LinearConnection> nablas_;
  TotalForm d_;
};

GradedForm cuth_apply(const ConnectionUpToHomotopy& conn, const GradedForm& w);

/// Absorbs the Ω¹(End₀) part of D into the connections.
ConnectionUpToHomotopy normalize_cuth(const ConnectionUpToHomotopy& conn);

/// R_𝒟 with hat(R_𝒟) = 𝒟², computed by unhatting the operator square.
TotalForm cuth_curvature(const ConnectionUpToHomotopy& conn);
/// ⊕R_{∇^z} + d_{∇^End}D + D∧D.
TotalForm cuth_curvature_formula(const ConnectionUpToHomotopy& conn);

/// R_𝒟^i as an i-fold wedge of R_𝒟.
TotalForm curvature_power(const ConnectionUpToHomotopy& conn, int i);
/// unhat(𝒟^{2i}); the operator-side counterpart of curvature_power.
TotalForm curvature_power_operator(const ConnectionUpToHomotopy& conn, int i);

/// 𝒟_End K = unhat([𝒟, K̂]).
TotalForm d_end(const ConnectionUpToHomotopy& conn, const TotalForm& k);
/// d_{∇^End}K + [D, K].
TotalForm d_end_formula(const ConnectionUpToHomotopy& conn, const TotalForm& k);
/// Blockwise d_{∇^Hom} with respect to the summand connections.
TotalForm d_nabla_end(const ConnectionUpToHomotopy& conn, const TotalForm& k);

/// Complement Christoffel data, keyed by frame index of A (not in B),
/// each a rank×rank matrix [α][β].
using ComplementChristoffel = std::map<int, std::vector<std::vector<Poly>>>;

/// ∇̃ on A with ∇̃_b = ∇_b for b in B. `nabla_b` lives on the restricted
/// algebroid restrict_to(A, B); unspecified complement data is zero.
LinearConnection extend_connection(const LinearConnection& nabla_b, const Subframe& b, AlgebroidPtr algebroid,
                                   const ComplementChristoffel& complement = {});

}  // namespace gradweil
