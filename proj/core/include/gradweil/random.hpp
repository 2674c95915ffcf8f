#pragma once

#include <cstdint>
#include <random>

#include "gradweil/connections.hpp"

namespace gradweil {

/// Seeded generators for property checks. Coefficients are small
/// integers (occasionally halves) so expression swell stays bounded.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);  // inclusive
  bool coin(double p = 0.5);
  Rational coefficient();

  /// Sparse polynomial with at most `terms` terms of total degree ≤ max_degree.
  Poly poly(VarSpace space, int max_degree, int terms = 2);
  /// Random k-form on a frame of the given rank; density in [0,1].
  ScalarForm scalar_form(VarSpace space, int rank, int degree, int max_poly_degree = 0, double density = 0.5);
  MatForm mat_form(VarSpace space, int rank, int degree, int rows, int cols, int max_poly_degree = 0,
                   double density = 0.5);
  /// Every admissible block filled with the given probability.
  TotalForm total_form(const GradedBundle& bundle, int frame_rank, int degree, VarSpace space = {},
                       int max_poly_degree = 0, double block_density = 0.6);
  GradedForm graded_form(const GradedBundle& bundle, int frame_rank, int total_degree, VarSpace space = {},
                         int max_poly_degree = 0);

  LinearConnection connection(AlgebroidPtr algebroid, int rank, int max_poly_degree = 0, double density = 0.5);
  ConnectionUpToHomotopy cuth(AlgebroidPtr algebroid, const GradedBundle& bundle, int max_poly_degree = 0);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gradweil
