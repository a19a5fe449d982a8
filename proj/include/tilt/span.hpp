#pragma once

#include <vector>

#include "tilt/matrix.hpp"

namespace tilt {

/// Incremental row span in reduced echelon form. Rows are inserted one at a
/// time; each insertion reduces against the current span, so membership tests
/// and residuals are cheap and deterministic.
class SpanBuilder {
 public:
  SpanBuilder(Field f, std::size_t width) : field_(f), width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t dim() const { return rows_.size(); }

  /// Reduces v against the span in place; returns the pivot column of the
  /// residual, or width() when v reduces to zero.
  std::size_t reduce(std::vector<Scalar>& v) const;

  /// Inserts v if independent; returns true when the dimension grew.
  bool insert(std::vector<Scalar> v);

  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool contains(std::vector<Scalar> v) const { return reduce(v) == width_; }

  /// Coordinates of v over the span rows; throws if v is outside the span.
  std::vector<Scalar> coordinates(const std::vector<Scalar>& v) const;

  Matrix as_matrix() const;

 private:
  Field field_;
  std::size_t width_;
  std::vector<std::vector<Scalar>> rows_;     // reduced, unit pivots
  std::vector<std::size_t> pivots_;
};

std::vector<Scalar> flatten(const Matrix& m);
Matrix unflatten(const std::vector<Scalar>& v, Field f, std::size_t rows, std::size_t cols);

}  // namespace tilt
