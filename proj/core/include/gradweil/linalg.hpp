#pragma once

#include <optional>
#include <vector>

#include "gradweil/rational.hpp"

namespace gradweil {

/// Dense row-major matrix over ℚ. Used for cohomology and exactness
/// solves, which stay small at desk scale.
class RationalMatrix {
 public:
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref();

 private:
  int rows_;
  int cols_;
  std::vector<Rational> data_;
};

int rank(RationalMatrix m);

/// Some x with M x = b, or nothing.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b);

/// Basis of {x : M x = 0}.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

}  // namespace gradweil
