#include "tilt/span.hpp"

namespace tilt {

std::size_t SpanBuilder::reduce(std::vector<Scalar>& v) const {
  if (v.size() != width_) throw Error("span: width mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& c = v[pivots_[i]];
    if (c.is_zero()) continue;
    Scalar k = c;
    for (std::size_t j = pivots_[i]; j < width_; ++j) v[j] -= k * rows_[i][j];
  }
  for (std::size_t j = 0; j < width_; ++j)
    if (!v[j].is_zero()) return j;
  return width_;
}

bool SpanBuilder::insert(std::vector<Scalar> v) {
  std::size_t piv = reduce(v);
  if (piv == width_) return false;
  Scalar inv = v[piv].inverse();
  for (std::size_t j = piv; j < width_; ++j) v[j] *= inv;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = rows_[i][piv];
    if (c.is_zero()) continue;
    for (std::size_t j = piv; j < width_; ++j) rows_[i][j] -= c * v[j];
  }
  // Keep rows sorted by pivot column so coordinates are deterministic.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), piv);
  return true;
}

std::vector<Scalar> SpanBuilder::coordinates(const std::vector<Scalar>& v) const {
  if (v.size() != width_) throw Error("span: width mismatch");
  std::vector<Scalar> coords(rows_.size(), Scalar::zero(field_));
  std::vector<Scalar> w = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Scalar c = w[pivots_[i]];
    coords[i] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = pivots_[i]; j < width_; ++j) w[j] -= c * rows_[i][j];
  }
  for (const auto& x : w)
    if (!x.is_zero()) throw Error("span: vector outside span");
  return coords;
}

Matrix SpanBuilder::as_matrix() const {
  Matrix m(field_, rows_.size(), width_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < width_; ++j) m.at(i, j) = rows_[i][j];
  return m;
}

std::vector<Scalar> flatten(const Matrix& m) {
  std::vector<Scalar> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

Matrix unflatten(const std::vector<Scalar>& v, Field f, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw Error("unflatten: size mismatch");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v[i * cols + j];
  return m;
}

}  // namespace tilt
