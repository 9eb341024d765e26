#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drinfeld/field.hpp"

namespace drinfeld {

/// Dense row-major matrix with entries in one tower level.
class MatrixFq {
 public:
  MatrixFq(std::size_t rows, std::size_t cols, Field level);

  static MatrixFq identity(std::size_t n, const Field& level);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& level() const noexcept { return level_; }

  const FieldElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Stores x, embedding it into the matrix level when it lives lower down.
  void set(std::size_t i, std::size_t j, const FieldElement& x);

  std::vector<FieldElement> apply(std::span<const FieldElement> v) const;

  friend MatrixFq operator*(const MatrixFq& a, const MatrixFq& b);
  friend bool operator==(const MatrixFq& a, const MatrixFq& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  Field level_;
  std::vector<FieldElement> data_;
};

std::size_t rank(const MatrixFq& m);
/// Basis of the right kernel {v : M v = 0}, one vector per free column of the
/// reduced row echelon form.
std::vector<std::vector<FieldElement>> kernel(const MatrixFq& m);
FieldElement determinant(const MatrixFq& m);

}  // namespace drinfeld
