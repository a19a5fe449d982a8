#pragma once

#include <vector>

#include "tilt/matrix.hpp"
#include "tilt/span.hpp"

namespace tilt {

/// Raised when splitting an idempotent provably requires eigenvalues outside
/// the base field. The caller can switch fields or report the obstruction.
struct FieldExtensionNeeded : Error {
  using Error::Error;
};

/// Polynomials are dense coefficient vectors, p[i] the coefficient of x^i,
/// normalized so the leading coefficient is nonzero (zero polynomial = {}).
using Poly = std::vector<Scalar>;

Poly poly_trim(Poly p);
bool poly_is_zero(const Poly& p);
std::size_t poly_degree(const Poly& p);  // zero polynomial reports 0
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& p);
/// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);  // monic
Poly poly_derivative(const Poly& p);
Scalar poly_eval(const Poly& p, const Scalar& x);
Matrix poly_eval_matrix(const Poly& p, const Matrix& m);
/// p / gcd(p, p'): the product of the distinct irreducible factors, except
/// that over F_p factors with multiplicity divisible by p may survive with
/// reduced multiplicity. Good enough here: we only ever strip multiplicities.
Poly poly_squarefree_part(const Poly& p);
std::string poly_str(const Poly& p);

/// Monic minimal polynomial of a square matrix.
Poly minimal_polynomial(const Matrix& a);

/// All roots of p in the base field, sorted by value (F_p: by representative;
/// Q: numerically). Over Q uses the rational root theorem on the cleared
/// polynomial; over F_p tries every residue, so p must be modest.
std::vector<Scalar> field_roots(const Poly& p);

/// Unital matrix algebra spanned inside M_n(K), closed under products.
/// `blocks` lists consecutive diagonal blocks (offset, size) invariant under
/// every algebra element; the default is the single full block. The blocks
/// supply one trace form each, which keeps the radical criterion
/// nondegenerate in small characteristic far more often.
struct MatrixAlgebra {
  Field field;
  std::size_t n = 0;
  std::vector<Matrix> basis;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;

  static MatrixAlgebra generate(Field f, std::size_t n, const std::vector<Matrix>& gens,
                                std::vector<std::pair<std::size_t, std::size_t>> blocks = {});
  bool contains(const Matrix& m) const;
};

/// Basis of the Jacobson radical via the blockwise trace forms of the
/// ambient representation. Over Q this is exact; over F_p the result is
/// verified to be nilpotent and an Error is raised when every block trace
/// degenerates simultaneously.
std::vector<Matrix> radical_basis(const MatrixAlgebra& alg);

/// Splits the identity of the algebra generated by gens into pairwise
/// orthogonal primitive idempotents, in a deterministic order. Throws
/// FieldExtensionNeeded when a split demands eigenvalues outside the field.
std::vector<Matrix> split_idempotent_search(
    const std::vector<Matrix>& gens, Field f, std::size_t n,
    std::vector<std::pair<std::size_t, std::size_t>> blocks = {});

/// Splits a given idempotent e of alg into primitive orthogonal summands.
std::vector<Matrix> split_idempotent(const MatrixAlgebra& alg, const Matrix& e);

}  // namespace tilt
