#include "gcontact/flat_system.hpp"

#include <algorithm>
#include <set>

namespace gcontact {

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational lead = a[row][col];
    for (auto& v : a[row]) v /= lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of the null space { y : A y = 0 } for a rows x cols system.
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> a, std::size_t cols) {
  const auto pivots = row_reduce(a, cols);
  std::set<std::size_t> pivot_set(pivots.begin(), pivots.end());
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_set.count(free)) continue;
    std::vector<Rational> y(cols, 0);
    y[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = -a[r][free];
    basis.push_back(std::move(y));
  }
  return basis;
}

}  // namespace

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = (*this)(r, c);
    a[r][n + r] = 1;
  }
  const auto pivots = row_reduce(a, n);
  if (pivots.size() != n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = a[r][n + c];
  }
  return inv;
}

std::vector<std::vector<Rational>> RationalMatrix::left_kernel() const {
  // y^T A = 0  <=>  A^T y = 0
  std::vector<std::vector<Rational>> at(cols_, std::vector<Rational>(rows_, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) at[c][r] = (*this)(r, c);
  }
  return null_space(std::move(at), rows_);
}

std::size_t RationalMatrix::rank() const {
  std::vector<std::vector<Rational>> a(rows_, std::vector<Rational>(cols_, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) a[r][c] = (*this)(r, c);
  }
  return row_reduce(a, cols_).size();
}

FlatSystem::FlatSystem(ChartPtr chart, std::vector<std::vector<GradedPoly>> matrix)
    : chart_(std::move(chart)), matrix_(std::move(matrix)) {
  const std::size_t m = matrix_.size();
  constant_ = RationalMatrix(m, m);
  nilpotent_ = matrix_;
  const Exponents one(chart_->size(), 0);
  for (std::size_t a = 0; a < m; ++a) {
    if (matrix_[a].size() != m) throw InvalidChart("flat matrix must be square");
    for (std::size_t b = 0; b < m; ++b) {
      constant_(a, b) = matrix_[a][b].constant_term();
      nilpotent_[a][b] -= GradedPoly::constant(chart_, constant_(a, b));
      nilpotent_degree_ = std::max(nilpotent_degree_, nilpotent_[a][b].total_degree());
    }
  }
  inverse_ = constant_.inverse();
}

std::vector<GradedPoly> FlatSystem::apply(const std::vector<GradedPoly>& x) const {
  const std::size_t m = matrix_.size();
  std::vector<GradedPoly> out(m, GradedPoly(chart_));
  for (std::size_t a = 0; a < m; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < m; ++b) {
      if (!matrix_[a][b].is_zero()) out[b] += x[a] * matrix_[a][b];
    }
  }
  return out;
}

std::vector<GradedPoly> FlatSystem::solve(const std::vector<GradedPoly>& target) const {
  const std::size_t m = matrix_.size();
  if (target.size() != m) throw InvalidChart("target length mismatch");
  if (!inverse_) throw NoPolynomialSolution("constant part of the flat matrix is singular");
  int target_degree = 0;
  for (const auto& t : target) target_degree = std::max(target_degree, t.total_degree());
  const int bound = target_degree + static_cast<int>(m + chart_->odd_count()) +
                    static_cast<int>(m) * nilpotent_degree_ + 4;

  std::vector<GradedPoly> x(m, GradedPoly(chart_));
  for (int iter = 0; iter <= bound; ++iter) {
    std::vector<GradedPoly> rhs = target;
    for (std::size_t a = 0; a < m; ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t b = 0; b < m; ++b) {
        if (!nilpotent_[a][b].is_zero()) rhs[b] -= x[a] * nilpotent_[a][b];
      }
    }
    std::vector<GradedPoly> next(m, GradedPoly(chart_));
    for (std::size_t a = 0; a < m; ++a) {
      if (rhs[a].is_zero()) continue;
      for (std::size_t b = 0; b < m; ++b) {
        const Rational& k = (*inverse_)(a, b);
        if (k != 0) next[b] += rhs[a] * k;
      }
    }
    if (next == x) return x;
    x = std::move(next);
  }
  throw NoPolynomialSolution("flat system did not reach a fixed point within " + std::to_string(bound) +
                             " iterations");
}

std::optional<std::vector<Rational>> FlatSystem::constant_kernel_vector() const {
  const std::size_t m = matrix_.size();
  // Conditions: for each column b and each monomial, sum_a c_a [coeff of monomial in M_ab] = 0.
  std::vector<std::vector<Rational>> rows;
  for (std::size_t b = 0; b < m; ++b) {
    std::set<Exponents> monomials;
    for (std::size_t a = 0; a < m; ++a) {
      for (const auto& [mono, c] : matrix_[a][b].terms()) monomials.insert(mono);
    }
    for (const auto& mono : monomials) {
      std::vector<Rational> row(m, 0);
      for (std::size_t a = 0; a < m; ++a) row[a] = matrix_[a][b].coefficient(mono);
      rows.push_back(std::move(row));
    }
  }
  auto basis = null_space(std::move(rows), m);
  if (basis.empty()) return std::nullopt;
  return basis.front();
}

}  // namespace gcontact
