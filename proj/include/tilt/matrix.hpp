#pragma once

#include <optional>
#include <vector>

#include "tilt/scalar.hpp"

namespace tilt {

/// Dense exact matrix over a fixed field. Row reduction always picks the
/// leftmost pivot column and within it the first nonzero row, so every
/// derived quantity (ranks, kernels, solutions) is reproducible bit for bit.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), field_(f), d_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;
  Matrix transpose() const;

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  Matrix columns(const std::vector<std::size_t>& idx) const;
  Matrix top_rows(std::size_t k) const;

  struct Rref;
  Rref rref() const;
  std::size_t rank() const;

  /// Columns form a basis of {x : M x = 0}. Column count = cols - rank.
  Matrix kernel_basis() const;

  /// Lexicographically first solution of M x = b (free variables zero),
  /// or nullopt when inconsistent.
  std::optional<Matrix> solve(const Matrix& b) const;

  /// Solves M X = B columnwise; nullopt if any column is inconsistent.
  std::optional<Matrix> solve_many(const Matrix& b) const;

  /// The columns of M at its pivot positions (a basis of the column space).
  Matrix column_space_basis() const;

  std::optional<Matrix> inverse() const;

  std::string str() const;

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::vector<Scalar> d_;
};

struct Matrix::Rref {
  Matrix r;
  std::vector<std::size_t> pivots;  // pivot column per pivot row
};

/// One-time elimination of a coefficient matrix, reusable across many
/// right-hand sides. solve(b) agrees with Matrix::solve_many(b) exactly.
class RrefSolver {
 public:
  explicit RrefSolver(const Matrix& a);

  std::size_t rank() const { return pivots_.size(); }
  std::optional<Matrix> solve(const Matrix& b) const;

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> pivots_;
  // Row transform: rows 0..rank-1 produce the reduced pivot rows, the rest
  // annihilate the row space. Sparse, sorted by column.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> trans_;
};

/// Columns spanning col(A) ∩ col(B). Requires rows(A) == rows(B).
Matrix intersect_columns(const Matrix& a, const Matrix& b);

/// True when every column of B lies in the column space of A.
bool columns_contained(const Matrix& a, const Matrix& b);

}  // namespace tilt
