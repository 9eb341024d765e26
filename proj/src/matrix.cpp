#include "drinfeld/matrix.hpp"

#include <utility>

namespace drinfeld {

namespace {

// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(MatrixFq& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        FieldElement t = m(row, j);
        m.set(row, j, m(piv, j));
        m.set(piv, j, t);
      }
    }
    const FieldElement inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m.set(row, j, m(row, j) * inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const FieldElement f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.set(i, j, m(i, j) - f * m(row, j));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

MatrixFq::MatrixFq(std::size_t rows, std::size_t cols, Field level)
    : rows_(rows), cols_(cols), level_(std::move(level)), data_(rows * cols, FieldElement::zero(level_)) {
  if (rows == 0 || cols == 0) raise(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
}

MatrixFq MatrixFq::identity(std::size_t n, const Field& level) {
  MatrixFq m(n, n, level);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, FieldElement::one(level));
  return m;
}

void MatrixFq::set(std::size_t i, std::size_t j, const FieldElement& x) {
  data_[i * cols_ + j] = x.level() == level_ ? x : embed(x, level_);
}

std::vector<FieldElement> MatrixFq::apply(std::span<const FieldElement> v) const {
  if (v.size() != cols_) raise(ErrorKind::WrongLength, "vector length differs from column count");
  std::vector<FieldElement> out(rows_, FieldElement::zero(level_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) {
  if (a.cols() != b.rows()) raise(ErrorKind::WrongLength, "matrix shapes do not compose");
  MatrixFq c(a.rows(), b.cols(), a.level());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      FieldElement s = FieldElement::zero(a.level());
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c.set(i, j, s);
    }
  return c;
}

bool operator==(const MatrixFq& a, const MatrixFq& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::size_t rank(const MatrixFq& m) {
  MatrixFq work = m;
  return row_reduce(work).size();
}

std::vector<std::vector<FieldElement>> kernel(const MatrixFq& m) {
  MatrixFq work = m;
  const auto pivots = row_reduce(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(m.cols(), FieldElement::zero(m.level()));
    v[free] = FieldElement::one(m.level());
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

FieldElement determinant(const MatrixFq& m) {
  if (m.rows() != m.cols()) raise(ErrorKind::WrongLength, "determinant of a non-square matrix");
  MatrixFq work = m;
  const std::size_t n = m.rows();
  FieldElement det = FieldElement::one(m.level());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work(piv, col).is_zero()) ++piv;
    if (piv == n) return FieldElement::zero(m.level());
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) {
        FieldElement t = work(col, j);
        work.set(col, j, work(piv, j));
        work.set(piv, j, t);
      }
      det = -det;
    }
    det *= work(col, col);
    if (col + 1 == n) break;
    const FieldElement inv = work(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (work(i, col).is_zero()) continue;
      const FieldElement f = work(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) work.set(i, j, work(i, j) - f * work(col, j));
    }
  }
  return det;
}

}  // namespace drinfeld
