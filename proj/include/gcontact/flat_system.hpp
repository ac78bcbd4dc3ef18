#pragma once

#include <optional>
#include <vector>

#include "gcontact/graded_algebra.hpp"

namespace gcontact {

/// Dense matrix over the rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Inverse by Gauss-Jordan elimination; nullopt when singular.
  std::optional<RationalMatrix> inverse() const;
  /// Basis of { y : y^T A = 0 } (left null space).
  std::vector<std::vector<Rational>> left_kernel() const;
  std::size_t rank() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Left-linear system  sum_a x_a M_ab = target_b  over a graded-commutative
/// ring, split as M = M0 + N with M0 the rational constant part.  Solved by
/// the fixed-point iteration  x <- (target - x N) M0^{-1}  starting at x = 0.
class FlatSystem {
 public:
  FlatSystem(ChartPtr chart, std::vector<std::vector<GradedPoly>> matrix);

  std::size_t size() const { return matrix_.size(); }
  const std::vector<std::vector<GradedPoly>>& matrix() const { return matrix_; }
  const RationalMatrix& constant_part() const { return constant_; }
  bool constant_part_invertible() const { return inverse_.has_value(); }

  /// Throws NoPolynomialSolution if M0 is singular or no fixed point is
  /// reached within the iteration bound.
  std::vector<GradedPoly> solve(const std::vector<GradedPoly>& target) const;

  /// Nonzero rational vector c with c M = 0, if one exists.
  std::optional<std::vector<Rational>> constant_kernel_vector() const;

  /// sum_a x_a M_ab for every b.
  std::vector<GradedPoly> apply(const std::vector<GradedPoly>& x) const;

 private:
  ChartPtr chart_;
  std::vector<std::vector<GradedPoly>> matrix_;
  std::vector<std::vector<GradedPoly>> nilpotent_;
  RationalMatrix constant_;
  std::optional<RationalMatrix> inverse_;
  int nilpotent_degree_ = 0;
};

}  // namespace gcontact
