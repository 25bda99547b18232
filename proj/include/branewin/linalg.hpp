#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "branewin/rational.hpp"

namespace branewin {

using QVector = std::vector<Rational>;

// Dense exact-rational matrix; rows() x cols() may be 0.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  QMatrix transposed() const;
  QVector apply(const QVector& v) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

std::size_t rank(QMatrix m);

// Particular solution of A x = b with free variables set to zero.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

// Solution of A X = B column by column; nullopt if any column is infeasible.
std::optional<QMatrix> solve_many(const QMatrix& a, const QMatrix& b);

// Basis of the kernel of A.
std::vector<QVector> kernel_basis(const QMatrix& a);

}  // namespace branewin
