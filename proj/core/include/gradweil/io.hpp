#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gradweil/constructions.hpp"

// JSON encoding of presentations, forms, connections and reports.
// Decoders throw ParseError naming the offending field; encoders are
// canonical (sorted keys, ascending indices, canonical polynomial strings).
namespace gradweil::io {

using json = nlohmann::json;

Poly poly(const json& j, VarSpace space, const std::string& where);
Algebroid algebroid(const json& j, const std::string& where = "algebroid");
GradedBundle bundle(const json& j, const std::string& where = "bundle");
Subframe subframe(const json& j, int parent_rank, const std::string& where);

ScalarForm scalar_form(const json& j, VarSpace space, int frame_rank, const std::string& where);
Form form(const json& j, VarSpace space, int frame_rank, int fiber_rank, const std::string& where);
MatForm mat_form(const json& j, VarSpace space, int frame_rank, int rows, int cols, const std::string& where);
TotalForm total_form(const json& j, VarSpace space, int frame_rank, const GradedBundle& bundle,
                     const std::string& where);

/// {"bundle_degree": z, "christoffel": [{"frame": i, "matrix": M}]} where
/// column α of M is ∇_{e_i} f_α, i.e. M[β][α] = Γ[i][α][β]. Frames not
/// listed have zero Christoffel symbols.
LinearConnection connection(const json& j, AlgebroidPtr algebroid, int rank, const std::string& where);
/// {"connections": [...one per summand...], "D": TotalForm}; "D" may be
/// omitted for a degree-preserving connection.
ConnectionUpToHomotopy cuth(const json& j, AlgebroidPtr algebroid, const GradedBundle& bundle,
                            const std::string& where);

json to_json(const Algebroid& a);
json to_json(const GradedBundle& b);
json to_json(const ScalarForm& f);
json to_json(const Form& f);
json to_json(const MatForm& m);
json to_json(const TotalForm& k);
json to_json(const LinearConnection& c, int bundle_degree = 0);
json to_json(const ConnectionUpToHomotopy& c);
json to_json(const Witness& w);
json to_json(const Report& r);

/// Human-readable rendering in ε-coframe notation.
std::string to_text(const Witness& w);
std::string to_text(const Report& r);

/// Byte-stable serialization: two-space indentation, trailing newline.
std::string canonical(const json& j);

/// Largest total degree of any polynomial string found in `j`
/// (keys "anchor", "coeffs", "coeff", "matrix"); 0 if none.
int max_poly_degree(const json& j, VarSpace space);

}  // namespace gradweil::io
