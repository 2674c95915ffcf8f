#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gradweil/chernweil.hpp"
#include "gradweil/connections.hpp"

namespace gradweil {

using Witness = std::variant<std::monostate, ScalarForm, MatForm, TotalForm>;

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  Witness witness;
};

struct Thresholds {
  std::optional<int> q;
  /// Characters / classes of form degree above this value vanish.
  std::optional<int> vanish_above;
};

struct Report {
  std::string construction;
  std::vector<Check> checks;
  Thresholds thresholds;
  std::vector<std::string> notes;

  bool ok() const;
  void add(std::string name, bool pass, std::string detail = {}, Witness witness = {});
};

// ---- sections --------------------------------------------------------------

using Section = std::vector<Poly>;

/// [a,b] for sections given by frame coefficients (Leibniz expansion).
Section section_bracket(const Algebroid& algebroid, const Section& a, const Section& b);
/// ρ(a) as coordinate components of a vector field.
Section section_anchor(const Algebroid& algebroid, const Section& a);

// ---- 2-term representations -----------------------------------------------

/// R_𝒟 and, for a two-summand bundle in consecutive degrees, the four
/// component equations R⁰ + ω∘∂, R¹ + ∂∘ω, d_{∇^Hom}∂, d_{∇^End}ω.
Report square_zero_check(const ConnectionUpToHomotopy& conn);

/// E[0] ⊕ E[1] with ∂ = id and ω = −R_∇.
ConnectionUpToHomotopy double_rep(const LinearConnection& nabla);

/// Lie algebroid morphism ∂: B → A over the identity, as the matrix of
/// ∂(e^B_k) = Σ_i matrix[i][k] e^A_i.
struct AlgebroidMorphism {
  AlgebroidPtr source;  // B
  AlgebroidPtr target;  // A
  std::vector<std::vector<Poly>> matrix;
};

/// Empty string when ∂ intertwines anchors and brackets; otherwise the
/// first failing frame pair.
std::string morphism_failure(const AlgebroidMorphism& morphism);

/// ∇^∂ on B and on A, and R^∂ ∈ Ω²(B, Hom(A, B)), all over B, induced by
/// an A-connection ∇ on B.
struct MorphismConnections {
  LinearConnection on_source;
  LinearConnection on_target;
  MatForm curvature;  // rows rank B, cols rank A
};
MorphismConnections morphism_connections(const AlgebroidMorphism& morphism, const LinearConnection& nabla);
/// R^∂(b1,b2)a on arbitrary polynomial sections.
Section morphism_curvature_apply(const AlgebroidMorphism& morphism, const LinearConnection& nabla, const Section& b1,
                                 const Section& b2, const Section& a);

/// B[0] ⊕ A[1] over B with ∂ and −R^∂. Throws PreconditionError naming
/// the failing pair when ∂ is not a morphism.
ConnectionUpToHomotopy morphism_rep(const AlgebroidMorphism& morphism, const LinearConnection& nabla);

/// ρ viewed as a morphism A → TM of the chart.
AlgebroidMorphism anchor_morphism(AlgebroidPtr algebroid);

/// The basic A-connections induced by a TM-connection ∇ on A (∇ lives
/// on the chart's tangent algebroid, rank = rank A).
struct BasicConnections {
  LinearConnection on_tm;
  LinearConnection on_a;
};
BasicConnections basic_connections(AlgebroidPtr algebroid, const LinearConnection& tm_connection);
/// R^bas ∈ Ω²(A, Hom(TM, A)).
MatForm basic_curvature(AlgebroidPtr algebroid, const LinearConnection& tm_connection);
Section basic_curvature_apply(AlgebroidPtr algebroid, const LinearConnection& tm_connection, const Section& a,
                              const Section& b, const Section& x);

/// A[0] ⊕ TM[1] with ∂ = ρ and ω = −R^bas. Over a point TM = 0 and the
/// bundle is A[0] alone.
ConnectionUpToHomotopy adjoint_rep(AlgebroidPtr algebroid, const LinearConnection& tm_connection);

/// For a representation up to homotopy and ordinary connections on its
/// summands: Σ(−1)^z σ^l(∇^z) is exact for l = 1..max_l, certified by a
/// transgression primitive and independently by is_exact.
Report nrep_obstruction(const ConnectionUpToHomotopy& rep, const std::vector<LinearConnection>& ordinary, int max_l,
                        int degree_bound);

// ---- Bott vanishing ----------------------------------------------------------

/// Bott connection of B on A/B (complement indices, in order).
LinearConnection bott_connection(const Algebroid& algebroid, AlgebroidPtr restricted, const Subframe& b);

/// `nabla_b` lives on restrict_to(A, B). Throws PreconditionError when it
/// is not flat.
Report bott_report(AlgebroidPtr algebroid, const Subframe& b, const LinearConnection& nabla_b,
                   const ComplementChristoffel& complement = {});

struct AtiyahResult {
  Report report;
  /// ω ∈ Ω¹(B, Hom(A/B, End E)); rows index End E row-major, columns the
  /// complement indices.
  MatForm form;
};
AtiyahResult atiyah_form(AlgebroidPtr algebroid, const Subframe& b, const LinearConnection& nabla_b,
                         const ComplementChristoffel& complement = {});

/// `rep` lives on restrict_to(A, B); it is normalized if needed. Throws
/// PreconditionError when it is not square-zero.
Report graded_bott_report(AlgebroidPtr algebroid, const Subframe& b, const ConnectionUpToHomotopy& rep);

// ---- infinitesimal ideal systems ------------------------------------------------

struct IISSpec {
  AlgebroidPtr algebroid;
  Subframe j;           // in the frame of A
  Subframe fm;          // in the coordinate frame of the chart
  LinearConnection extension;  // TM-connection on A
};

/// The four component conditions. Throws PreconditionError when the
/// extension does not preserve J along F_M.
Report iis_check(const IISSpec& spec);

/// Compares characters and Pontryagin classes of J and F_M. Missing
/// connections default to the restricted basic connections.
Report iis_obstruction(const IISSpec& spec, int degree_bound, const std::optional<LinearConnection>& on_j = {},
                       const std::optional<LinearConnection>& on_fm = {});

}  // namespace gradweil
