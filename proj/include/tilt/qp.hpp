#pragma once

#include "tilt/homalg.hpp"

namespace tilt {

/// Finite potential: a linear combination of cycles, each stored by its
/// lexicographically least rotation.
class Potential {
 public:
  explicit Potential(Field f) : field_(f) {}

  Field field() const { return field_; }
  const std::map<Path, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds a cycle (canonicalized by rotation); throws on non-cycles.
  void add(const Quiver& q, const Path& cycle, const Scalar& c);
  Potential operator+(const Potential& o) const;
  Potential operator*(const Scalar& c) const;

  std::string str(const Quiver& q) const;

 private:
  Field field_;
  std::map<Path, Scalar> terms_;
};

/// The lexicographically least rotation of a cycle.
Path canonical_rotation(const Quiver& q, const Path& cycle);

/// Sum over occurrences of the arrow of "rotate the occurrence first, drop
/// it": a path sum from target(a) to source(a).
PathSum cyclic_derivative(const Quiver& q, const Potential& w, std::size_t arrow);

/// Presentation on Q with relations {d_a W : a in Q_1}. When cut is given it
/// is validated and installs the cut grading (cut arrows degree 1, rest 0).
Presentation jacobian_presentation(const Quiver& q, const Potential& w,
                                   const std::vector<bool>* cut = nullptr);

/// Validates the cut (every potential cycle contains exactly one cut arrow,
/// throws "not a cut" naming the offending cycle), removes the cut arrows
/// and keeps relations {d_a W : a in cut}.
Presentation truncated_jacobian(const Quiver& q, const Potential& w, const std::vector<bool>& cut);

/// QP mutation at a vertex: premutation (composite arrows [ab] for each
/// 2-path a b through k, arrows at k reversed to a*, W' = [W] + sum [ab]b*a*)
/// followed by reduction of 2-cycle terms whose arrows occur linearly.
/// Arrow degrees are tracked: deg [ab] = deg a + deg b, reversed-arrow
/// degrees are solved from degree-1 homogeneity of the reduced potential.
struct Mutation {
  Quiver quiver;
  Potential potential;
  std::vector<std::size_t> arrow_degrees;
  bool reduced = false;    // no 2-cycle terms remain
  bool graded_ok = false;  // a consistent nonnegative degree assignment exists
  std::string note;
};

Mutation qp_mutate(const Quiver& q, const Potential& w, std::size_t k,
                   const std::vector<std::size_t>& degrees, std::size_t pass_bound = 10);

/// Degree-i slice dimensions of the cut-graded Jacobian algebra, i <= d.
std::vector<std::size_t> jacobian_slice_dims(const Quiver& q, const Potential& w,
                                             const std::vector<bool>& cut, std::size_t d);

/// dim Lambda-hat_i over the truncated Jacobian algebra (tau_n^- route, via
/// the engine) against the degree-i slice of the cut-graded Jacobian
/// presentation, for all i <= d.
struct JacobianCompare {
  bool pass = false;
  std::size_t degree = 0;
  std::vector<std::size_t> hat_dims, jacobian_dims;
  std::string failure;
};

JacobianCompare compare_preproj_jacobian(const NuEngine& eng, const Quiver& q, const Potential& w,
                                         const std::vector<bool>& cut, std::size_t d);

}  // namespace tilt
