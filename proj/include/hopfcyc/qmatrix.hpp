#pragma once

#include "hopfcyc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hopfcyc {

// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix transposed() const;
  QMatrix select_rows(const std::vector<std::size_t>& rows) const;
  QMatrix select_cols(const std::vector<std::size_t>& cols) const;
  bool is_zero() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Result of fraction-free elimination: rank plus the pivot columns found
// scanning columns left to right (the lexicographically first maximal
// independent column set).
struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Bareiss elimination on the integer matrix obtained by clearing each row's
// denominators.
RankProfile rank_profile(const QMatrix& m);
std::size_t qmatrix_rank(const QMatrix& m);

// Determinant of a square matrix (Bareiss).
Rational determinant(const QMatrix& m);

// Inverse of a square matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& m);

// Unique solution of m * x = b for square nonsingular m; nullopt otherwise.
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);

}  // namespace hopfcyc
