#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilt/matrix.hpp"

namespace tilt {

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// Finite quiver. Vertices are 0-based indices internally and printed 1-based
/// at the boundary. Arrow names are unique.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::size_t vertex_count, std::vector<Arrow> arrows);

  std::size_t vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t i) const { return arrows_[i]; }
  std::size_t arrow_index(const std::string& name) const;
  bool has_arrow(const std::string& name) const;
  bool has_loops() const;

  /// (i,j) entry counts arrows i -> j.
  Matrix adjacency(Field f) const;

 private:
  std::size_t n_ = 0;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::size_t> by_name_;
};

/// A path is a source vertex and a composable arrow sequence, read left to
/// right: the empty sequence is the stationary path e_source.
class Path {
 public:
  Path() = default;
  Path(const Quiver& q, std::size_t source, std::vector<std::size_t> arrow_indices);

  static Path stationary(std::size_t vertex);

  std::size_t source() const { return source_; }
  std::size_t target() const { return target_; }
  const std::vector<std::size_t>& arrows() const { return arrows_; }
  std::size_t length() const { return arrows_.size(); }
  bool is_stationary() const { return arrows_.empty(); }

  bool operator==(const Path& o) const = default;
  /// Orders by (length, arrow index sequence, source); used for canonical
  /// term order in PathSum and for deterministic basis choices.
  bool operator<(const Path& o) const;

  std::string str(const Quiver& q) const;

 private:
  std::size_t source_ = 0;
  std::size_t target_ = 0;
  std::vector<std::size_t> arrows_;
};

/// Composition "first p, then q": defined iff target(p) == source(q).
std::optional<Path> compose(const Quiver& q, const Path& a, const Path& b);

/// All length-l paths from i to j, ordered lexicographically by the arrow
/// index sequence (arrow indices follow declaration order, so this matches
/// the declared-name order of the quiver file).
std::vector<Path> paths_between(const Quiver& q, std::size_t i, std::size_t j, std::size_t l);

/// All length-l paths from i (any target), same order.
std::vector<Path> paths_from(const Quiver& q, std::size_t i, std::size_t l);

/// Finite linear combination of paths; zero coefficients are never stored.
class PathSum {
 public:
  explicit PathSum(Field f) : field_(f) {}
  PathSum(Field f, const Path& p) : field_(f) { add(p, Scalar::one(f)); }

  Field field() const { return field_; }
  const std::map<Path, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Path& p, const Scalar& c);
  PathSum operator+(const PathSum& o) const;
  PathSum operator-(const PathSum& o) const;
  PathSum operator*(const Scalar& c) const;

  /// True when all terms share one source and one target; stationary-free
  /// zero sums count as homogeneous.
  bool endpoint_homogeneous() const;
  /// Common source/target; requires endpoint homogeneity and a nonzero sum.
  std::size_t common_source() const;
  std::size_t common_target() const;

  std::string str(const Quiver& q) const;

 private:
  Field field_;
  std::map<Path, Scalar> terms_;
};

PathSum multiply(const Quiver& q, const PathSum& x, const PathSum& y);

}  // namespace tilt
