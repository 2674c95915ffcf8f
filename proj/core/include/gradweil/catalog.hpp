#pragma once

#include "gradweil/connections.hpp"

namespace gradweil::catalog {

// Frames are 0-based; comments use the same indexing.

/// sl2 with e0 = h, e1 = e, e2 = f: [h,e] = 2e, [h,f] = −2f, [e,f] = h.
AlgebroidPtr sl2();
/// aff(1): [e0,e1] = e1.
AlgebroidPtr aff1();
/// Heisenberg: [e0,e1] = e2.
AlgebroidPtr h3();
/// Abelian Lie algebra of dimension n.
AlgebroidPtr abelian(int n);
/// aff(1) acting on ℝ: ρ(e0) = ∂x, ρ(e1) = x∂x, hence [e0,e1] = e0.
AlgebroidPtr aff1_action();
/// sl2 acting linearly on ℝ² (x, y): ρ(h) = x∂x − y∂y, ρ(e) = x∂y, ρ(f) = y∂x.
AlgebroidPtr sl2_plane();
/// aff(1) ⊕ aff(1) ⊕ ℝ: [e0,e1] = e1, [e2,e3] = e3, e4 central.
AlgebroidPtr five_dim();
/// Tangent algebroid of ℝⁿ with coordinates x0..x{n-1}.
AlgebroidPtr tangent(int n);

/// A-connection ∇∘ρ induced by a TM-connection given on the chart's
/// tangent algebroid.
LinearConnection pull_back_connection(const LinearConnection& tm_connection, AlgebroidPtr algebroid);

/// Shared pointer wrapper for ad-hoc presentations.
AlgebroidPtr share(Algebroid a);

/// Connection with constant Christoffel matrices: ∇_{e_i} acts on the
/// fiber by mats[i] (column α holds the image of f_α).
LinearConnection constant_connection(AlgebroidPtr algebroid, const std::vector<std::vector<std::vector<Rational>>>& mats);

}  // namespace gradweil::catalog
