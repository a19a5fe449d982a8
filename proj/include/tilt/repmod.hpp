#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tilt/presalg.hpp"

namespace tilt {

/// Finite-dimensional right module over an FDAlgebra. Vectors are rows, so
/// the action of an arrow a: i -> j is x |-> x * action(a) with a matrix of
/// shape dim(i) x dim(j), and paths act by left-to-right matrix products.
class Representation {
 public:
  Representation() = default;
  Representation(const FDAlgebra& alg, std::vector<std::size_t> dims,
                 std::vector<Matrix> arrow_actions);

  static Representation zero(const FDAlgebra& alg);

  const FDAlgebra& algebra() const { return *alg_; }
  Field field() const { return alg_->field(); }
  std::size_t vertex_count() const { return dims_.size(); }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  const std::vector<std::size_t>& dim_vector() const { return dims_; }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  const Matrix& action(std::size_t arrow) const { return act_[arrow]; }

  Matrix path_action(const Path& p) const;
  Matrix element_action(std::size_t vertex_from, const PathSum& nf,
                        std::size_t vertex_to) const;

  /// True when every relation of the algebra acts by zero and shapes agree.
  bool is_valid() const;

  std::string dim_str() const;
  bool same_dims(const Representation& o) const { return dims_ == o.dims_; }

 private:
  const FDAlgebra* alg_ = nullptr;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> act_;
};

/// Morphism of representations: one matrix per vertex, rows convention, so
/// commutation reads action_M(a) * f_j == f_i * action_N(a).
class RepMap {
 public:
  RepMap() = default;
  RepMap(const Representation& from, const Representation& to, std::vector<Matrix> comps);

  static RepMap zero(const Representation& from, const Representation& to);
  static RepMap identity(const Representation& m);

  const Representation& from() const { return *from_; }
  const Representation& to() const { return *to_; }
  const Matrix& at(std::size_t v) const { return comps_[v]; }
  Matrix& at(std::size_t v) { return comps_[v]; }

  bool commutes() const;
  bool is_zero() const;
  bool is_iso() const;
  RepMap operator+(const RepMap& o) const;
  RepMap operator-(const RepMap& o) const;
  RepMap operator*(const Scalar& c) const;
  /// Composition "first this, then g".
  RepMap then(const RepMap& g) const;
  bool operator==(const RepMap& o) const;

 private:
  RepMap(std::shared_ptr<const Representation> from, std::shared_ptr<const Representation> to,
         std::vector<Matrix> comps);

  // Shared snapshots so maps never dangle and copies stay cheap.
  std::shared_ptr<const Representation> from_, to_;
  std::vector<Matrix> comps_;
};

/// Basis of Hom(M, N) as the solution space of the commuting equations,
/// in a deterministic order.
std::vector<RepMap> hom_space(const Representation& m, const Representation& n);

struct SubQuotient {
  Representation rep;
  RepMap map;  // inclusion (kernel/image) or projection (cokernel)
};

SubQuotient kernel(const RepMap& f);
SubQuotient image(const RepMap& f);  // map: image -> codomain inclusion
SubQuotient cokernel(const RepMap& f);
/// Corestriction of f onto its image: from() -> image, with image.map the
/// inclusion; f = corestriction.then(inclusion).
RepMap corestrict_to_image(const RepMap& f, const SubQuotient& img);

Representation direct_sum(const std::vector<const Representation*>& parts);
/// Inclusion of part k into the direct sum built from the same list.
RepMap summand_inclusion(const std::vector<const Representation*>& parts,
                         const Representation& sum, std::size_t k);
RepMap summand_projection(const std::vector<const Representation*>& parts,
                          const Representation& sum, std::size_t k);

/// M * rad(A) as a subrepresentation (the radical of the module).
SubQuotient module_radical(const Representation& m);

struct Summand {
  Representation rep;
  std::size_t multiplicity = 1;
};

/// Decomposition into indecomposables, deterministic ordering by
/// (total dimension, dimension vector, discovery order). Throws
/// FieldExtensionNeeded when End(M)/rad does not split over the base field.
std::vector<Summand> decompose(const Representation& m);

/// True when End(X)/rad is one-dimensional (X indecomposable or zero test).
bool is_indecomposable(const Representation& x);

/// Isomorphism test; for arbitrary modules compares decompositions, for
/// indecomposables uses the composition pairing into End/rad.
bool isomorphic(const Representation& x, const Representation& y);

struct Cover {
  Representation proj;
  RepMap onto;  // surjection proj -> M
  std::vector<std::size_t> top_multiplicities;  // dim top(M)_v per vertex
};

Cover projective_cover(const Representation& m);

/// K-dual as a right module over the opposite algebra.
Representation dual(const Representation& m, const FDAlgebra& opposite_alg);
/// The dual of a morphism (arrows reversed): Hom(N*, M*) component.
RepMap dual_map(const RepMap& f, const Representation& dual_to, const Representation& dual_from);

/// Solves g.then(p) == f for g: from(f) -> from(p); nullopt when f does not
/// factor through p.
std::optional<RepMap> factor_through(const RepMap& f, const RepMap& p);
/// Solves i.then(g) == f for g: to(i) -> to(f).
std::optional<RepMap> factor_along(const RepMap& i, const RepMap& f);

struct CanonicalModules {
  std::vector<Representation> projectives;
  std::vector<Representation> simples;
  std::vector<Representation> injectives;
};

/// P_i = e_i A, S_i, and I_i = D(A e_i), all as right modules over alg.
CanonicalModules canonical_modules(const FDAlgebra& alg);

/// Projective P_i together with its generator row (the class of e_i).
Matrix projective_generator_row(const FDAlgebra& alg, std::size_t vertex,
                                const Representation& p_i);

}  // namespace tilt
