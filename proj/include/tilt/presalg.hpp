#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tilt/quiver.hpp"

namespace tilt {

/// Algebra presented by a quiver and endpoint-homogeneous relations. Every
/// relation must be homogeneous both in path length and in the arrow-degree
/// grading, which holds for all algebras in scope (path-length gradings and
/// cut gradings of Jacobian algebras).
struct Presentation {
  Quiver quiver;
  Field field = rationals();
  std::vector<PathSum> relations;
  /// Per-arrow degrees; empty means "all 1" (path-length grading).
  std::vector<std::size_t> arrow_degrees;

  std::size_t arrow_degree(std::size_t a) const {
    return arrow_degrees.empty() ? 1 : arrow_degrees[a];
  }
  std::size_t path_degree(const Path& p) const;
  std::size_t sum_degree(const PathSum& s) const;  // requires degree homogeneity

  /// Throws on endpoint-inhomogeneous, length-inhomogeneous or
  /// degree-inhomogeneous relations, or relations touching length < 2.
  void validate() const;
};

/// Normal-form bases of KQ/I, one per path length, with rewrite data taking
/// any path to its normal form. Computed length by length: at length l the
/// candidates are (basis path of length l-1) * arrow, and the relation span
/// {nf(b) * r : |b| + |r| = l} is cut out exactly; suffix products reduce to
/// zero through the lower rewrite tables, so this span is complete.
class DegreewiseBasis {
 public:
  /// Paths of arrow-degree > max_degree are dropped; extensions only raise
  /// the degree, so the truncated result is the degree-wise truncation of
  /// the full basis.
  static DegreewiseBasis compute(const Presentation& p, std::size_t max_length,
                                 std::size_t max_degree = SIZE_MAX);

  const Presentation& presentation() const { return pres_; }
  std::size_t max_length() const { return basis_.size() - 1; }
  const std::vector<Path>& basis(std::size_t length) const;
  std::size_t total_dim() const;

  /// Normal form of a path or a sum, as a combination of basis paths.
  /// Inputs longer than max_length are rejected.
  PathSum normal_form(const Path& p) const;
  PathSum normal_form(const PathSum& s) const;
  /// Normal form of x*y where both sides are already in normal form.
  PathSum multiply_nf(const PathSum& x, const PathSum& y) const;

  bool is_basis_path(const Path& p) const;

 private:
  DegreewiseBasis(Presentation p) : pres_(std::move(p)) {}
  PathSum extend_by_arrow(const PathSum& nf, std::size_t arrow) const;

  Presentation pres_;
  std::vector<std::vector<Path>> basis_;        // [length] -> ordered basis paths
  std::map<Path, PathSum> rewrite_;             // candidate path -> normal form
};

/// Finite-dimensional presented algebra: a degreewise basis that terminated,
/// with products of basis elements memoized on demand.
class FDAlgebra {
 public:
  const Presentation& presentation() const { return basis_.presentation(); }
  const Quiver& quiver() const { return basis_.presentation().quiver; }
  Field field() const { return basis_.presentation().field; }
  const DegreewiseBasis& degreewise() const { return basis_; }

  std::size_t dim() const { return elements_.size(); }
  const std::vector<Path>& elements() const { return elements_; }
  const Path& element(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(const Path& p) const;
  std::size_t stationary_index(std::size_t vertex) const;

  /// Product of basis elements as coordinates over elements().
  const std::vector<Scalar>& product(std::size_t i, std::size_t j) const;
  std::vector<Scalar> coords(const PathSum& nf) const;
  PathSum from_coords(const std::vector<Scalar>& v) const;

  /// Largest path length with a nonzero basis slice.
  std::size_t top_length() const { return basis_.max_length(); }

  friend std::optional<FDAlgebra> as_fd_algebra(const Presentation& p, std::size_t safety_bound);

 private:
  explicit FDAlgebra(DegreewiseBasis b);

  DegreewiseBasis basis_;
  std::vector<Path> elements_;
  std::map<Path, std::size_t> index_;
  std::vector<std::size_t> stationary_;
  std::vector<Scalar> zero_coords_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<Scalar>> products_;
};

/// Certifies finite-dimensionality by finding an empty length slice at or
/// below the bound; nullopt means "not finite-dimensional up to the bound".
std::optional<FDAlgebra> as_fd_algebra(const Presentation& p, std::size_t safety_bound);

/// The opposite presentation: arrows and relation paths reversed.
Presentation opposite(const Presentation& p);

}  // namespace tilt
