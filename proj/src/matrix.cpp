#include "tilt/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace tilt {

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error("from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum: shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix diff: shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] -= o.d_[i];
  return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.d_) x *= s;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < d_.size(); ++i)
    if (d_[i] != o.d_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : d_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw Error("hstack: row mismatch");
  Matrix r(a.field_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw Error("vstack: column mismatch");
  Matrix r(a.field_, a.rows_ + b.rows_, a.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
  return r;
}

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j)
    for (std::size_t i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
  return r;
}

Matrix Matrix::top_rows(std::size_t k) const {
  Matrix r(field_, k, cols_);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  return r;
}

// Sparse elimination with a sparsest-pivot-row choice to limit fill-in. The
// reduced row echelon form is unique, so the result is independent of the
// pivoting strategy.
Matrix::Rref Matrix::rref() const {
  using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;
  std::vector<SparseRow> rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) rows[i].emplace_back(j, at(i, j));

  auto entry = [](const SparseRow& r, std::size_t col) -> const Scalar* {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
  };
  // r -= c * piv, merging sorted entry lists.
  auto axpy = [this](SparseRow& r, const Scalar& c, const SparseRow& piv) {
    SparseRow out;
    out.reserve(r.size() + piv.size());
    std::size_t a = 0, b = 0;
    while (a < r.size() || b < piv.size()) {
      if (b == piv.size() || (a < r.size() && r[a].first < piv[b].first)) {
        out.push_back(std::move(r[a++]));
      } else if (a == r.size() || piv[b].first < r[a].first) {
        out.emplace_back(piv[b].first, -(c * piv[b].second));
        ++b;
      } else {
        Scalar s = r[a].second - c * piv[b].second;
        if (!s.is_zero()) out.emplace_back(r[a].first, std::move(s));
        ++a;
        ++b;
      }
    }
    r = std::move(out);
  };

  std::vector<bool> used(rows_, false);
  std::vector<std::size_t> piv_rows;
  Rref out{Matrix(field_, rows_, cols_), {}};
  for (std::size_t col = 0; col < cols_ && piv_rows.size() < rows_; ++col) {
    std::size_t piv = rows_;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (used[i] || rows[i].empty() || rows[i].front().first != col) continue;
      if (piv == rows_ || rows[i].size() < rows[piv].size()) piv = i;
    }
    if (piv == rows_) continue;
    Scalar inv = rows[piv].front().second.inverse();
    if (!inv.is_one())
      for (auto& [j, v] : rows[piv]) v *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == piv) continue;
      const Scalar* c;
      if (used[i]) {
        c = entry(rows[i], col);
      } else {
        c = (!rows[i].empty() && rows[i].front().first == col) ? &rows[i].front().second
                                                               : nullptr;
      }
      if (c) axpy(rows[i], *c, rows[piv]);
    }
    used[piv] = true;
    piv_rows.push_back(piv);
    out.pivots.push_back(col);
  }
  for (std::size_t r = 0; r < piv_rows.size(); ++r)
    for (const auto& [j, v] : rows[piv_rows[r]]) out.r.at(r, j) = v;
  return out;
}

std::size_t Matrix::rank() const { return rref().pivots.size(); }

RrefSolver::RrefSolver(const Matrix& a)
    : field_(a.field()), rows_(a.rows()), cols_(a.cols()) {
  using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;
  std::vector<SparseRow> ar(rows_), er(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!a.at(i, j).is_zero()) ar[i].emplace_back(j, a.at(i, j));
    er[i].emplace_back(i, Scalar::one(field_));
  }

  auto entry = [](const SparseRow& r, std::size_t col) -> const Scalar* {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? &it->second : nullptr;
  };
  auto axpy = [](SparseRow& r, const Scalar& c, const SparseRow& piv) {
    SparseRow out;
    out.reserve(r.size() + piv.size());
    std::size_t x = 0, y = 0;
    while (x < r.size() || y < piv.size()) {
      if (y == piv.size() || (x < r.size() && r[x].first < piv[y].first)) {
        out.push_back(std::move(r[x++]));
      } else if (x == r.size() || piv[y].first < r[x].first) {
        out.emplace_back(piv[y].first, -(c * piv[y].second));
        ++y;
      } else {
        Scalar s = r[x].second - c * piv[y].second;
        if (!s.is_zero()) out.emplace_back(r[x].first, std::move(s));
        ++x;
        ++y;
      }
    }
    r = std::move(out);
  };

  std::vector<bool> used(rows_, false);
  std::vector<std::size_t> piv_rows;
  for (std::size_t col = 0; col < cols_ && piv_rows.size() < rows_; ++col) {
    std::size_t piv = rows_;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (used[i] || ar[i].empty() || ar[i].front().first != col) continue;
      if (piv == rows_ || ar[i].size() < ar[piv].size()) piv = i;
    }
    if (piv == rows_) continue;
    Scalar inv = ar[piv].front().second.inverse();
    if (!inv.is_one()) {
      for (auto& [j, v] : ar[piv]) v *= inv;
      for (auto& [j, v] : er[piv]) v *= inv;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == piv) continue;
      const Scalar* c = used[i] ? entry(ar[i], col)
                                : (!ar[i].empty() && ar[i].front().first == col
                                       ? &ar[i].front().second
                                       : nullptr);
      if (c) {
        Scalar cv = *c;
        axpy(ar[i], cv, ar[piv]);
        axpy(er[i], cv, er[piv]);
      }
    }
    used[piv] = true;
    piv_rows.push_back(piv);
    pivots_.push_back(col);
  }
  for (std::size_t r : piv_rows) trans_.push_back(std::move(er[r]));
  for (std::size_t i = 0; i < rows_; ++i)
    if (!used[i]) trans_.push_back(std::move(er[i]));
}

std::optional<Matrix> RrefSolver::solve(const Matrix& b) const {
  if (b.rows() != rows_) throw Error("solve: rhs row mismatch");
  Matrix x(field_, cols_, b.cols());
  for (std::size_t r = 0; r < trans_.size(); ++r) {
    bool pivot_row = r < pivots_.size();
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s = Scalar::zero(field_);
      for (const auto& [i, c] : trans_[r]) {
        const Scalar& bij = b.at(i, j);
        if (!bij.is_zero()) s += c * bij;
      }
      if (pivot_row)
        x.at(pivots_[r], j) = std::move(s);
      else if (!s.is_zero())
        return std::nullopt;
    }
  }
  return x;
}

Matrix Matrix::kernel_basis() const {
  Rref rr = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : rr.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(field_, cols_, free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    k.at(fc, j) = Scalar::one(field_);
    for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr)
      k.at(rr.pivots[pr], j) = -rr.r.at(pr, fc);
  }
  return k;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  return solve_many(b);
}

std::optional<Matrix> Matrix::solve_many(const Matrix& b) const {
  if (b.rows_ != rows_) throw Error("solve: rhs row mismatch");
  Rref rr = hstack(*this, b).rref();
  // Inconsistent iff some pivot lands in the rhs block.
  for (std::size_t c : rr.pivots)
    if (c >= cols_) return std::nullopt;
  Matrix x(field_, cols_, b.cols_);
  for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr)
    for (std::size_t j = 0; j < b.cols_; ++j)
      x.at(rr.pivots[pr], j) = rr.r.at(pr, cols_ + j);
  return x;
}

Matrix Matrix::column_space_basis() const {
  return columns(rref().pivots);
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  Rref rr = hstack(*this, identity(field_, rows_)).rref();
  for (std::size_t i = 0; i < rows_; ++i)
    if (rr.pivots.size() <= i || rr.pivots[i] != i) return std::nullopt;
  Matrix inv(field_, rows_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rows_; ++j) inv.at(i, j) = rr.r.at(i, rows_ + j);
  return inv;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j).str();
    os << "]" << (i + 1 == rows_ ? "]" : "\n");
  }
  if (rows_ == 0) os << "[]";
  return os.str();
}

Matrix intersect_columns(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("intersect_columns: row mismatch");
  // col(A) ∩ col(B) via the kernel of [A | -B].
  Matrix neg_b = b * Scalar(b.field(), -1);
  Matrix k = Matrix::hstack(a, neg_b).kernel_basis();
  Matrix coeffs(a.field(), a.cols(), k.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j) coeffs.at(i, j) = k.at(i, j);
  return (a * coeffs).column_space_basis();
}

bool columns_contained(const Matrix& a, const Matrix& b) {
  return a.solve_many(b).has_value();
}

}  // namespace tilt
