#include "gradweil/linalg.hpp"

#include <utility>

#include "gradweil/errors.hpp"

namespace gradweil {

std::vector<int> RationalMatrix::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int piv = -1;
    for (int r = row; r < rows_; ++r) {
      if (!at(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int c = 0; c < cols_; ++c) std::swap(at(piv, c), at(row, c));
    }
    const Rational inv = Rational(1) / at(row, col);
    for (int c = col; c < cols_; ++c) at(row, c) = at(row, c) * inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == row || at(r, col).is_zero()) continue;
      const Rational f = at(r, col);
      for (int c = col; c < cols_; ++c) {
        if (!at(row, c).is_zero()) at(r, c) = at(r, c) - f * at(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RationalMatrix m) { return static_cast<int>(m.rref().size()); }

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw StructuralError("solve: right-hand side has wrong length");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  const std::vector<int> pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(static_cast<int>(k), m.cols());
  return x;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  RationalMatrix a = m;
  const std::vector<int> pivots = a.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = Rational(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a.at(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gradweil
