#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tilt/idempotent.hpp"
#include "tilt/matrix.hpp"
#include "tilt/span.hpp"

using namespace tilt;

static Field Q = rationals();

TEST_CASE("scalar arithmetic over Q and F_p") {
  Scalar a(Q, 1, 2), b(Q, 1, 3);
  CHECK((a + b) == Scalar(Q, 5, 6));
  CHECK((a * b) == Scalar(Q, 1, 6));
  CHECK((a / b) == Scalar(Q, 3, 2));
  CHECK((-a) == Scalar(Q, -1, 2));

  Field f5 = prime_field(5);
  Scalar x(f5, 3), y(f5, 4);
  CHECK((x + y) == Scalar(f5, 2));
  CHECK((x * y) == Scalar(f5, 2));
  CHECK(x.inverse() == Scalar(f5, 2));
  CHECK(Scalar(f5, -1) == Scalar(f5, 4));
  CHECK_THROWS_AS(prime_field(6), Error);
  CHECK_THROWS_AS(Scalar(Q, 1, 0), Error);
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), Error);
}

TEST_CASE("kernel_basis examples") {
  CHECK(Matrix::identity(Q, 3).kernel_basis().cols() == 0);

  Matrix z(Q, 2, 3);
  Matrix k = z.kernel_basis();
  CHECK(k.cols() == 3);
  CHECK(k.rank() == 3);

  Matrix m = Matrix::from_rows(Q, {{1, 2}, {2, 4}});
  Matrix km = m.kernel_basis();
  CHECK(km.cols() == 1);
  CHECK((m * km).is_zero());
  CHECK(km.at(0, 0) == Scalar(Q, -2));
  CHECK(km.at(1, 0) == Scalar(Q, 1));
}

TEST_CASE("solve examples") {
  Matrix id = Matrix::identity(Q, 2);
  Matrix b(Q, 2, 1);
  b.at(0, 0) = Scalar(Q, 7);
  b.at(1, 0) = Scalar(Q, -3);
  CHECK(*id.solve(b) == b);

  Matrix col = Matrix::from_rows(Q, {{1}, {0}});
  Matrix bad(Q, 2, 1);
  bad.at(1, 0) = Scalar::one(Q);
  CHECK(!col.solve(bad).has_value());

  Matrix d = Matrix::from_rows(Q, {{2, 0}, {0, 3}});
  Matrix ones(Q, 2, 1);
  ones.at(0, 0) = Scalar::one(Q);
  ones.at(1, 0) = Scalar::one(Q);
  Matrix x = *d.solve(ones);
  CHECK(x.at(0, 0) == Scalar(Q, 1, 2));
  CHECK(x.at(1, 0) == Scalar(Q, 1, 3));
}

TEST_CASE("intersect_columns examples") {
  Matrix id = Matrix::identity(Q, 2);
  CHECK(intersect_columns(id, id).cols() == 2);

  Matrix ex = Matrix::from_rows(Q, {{1}, {0}});
  Matrix ey = Matrix::from_rows(Q, {{0}, {1}});
  CHECK(intersect_columns(ex, ey).cols() == 0);

  Matrix a = Matrix::from_rows(Q, {{1, 0}, {0, 1}, {0, 0}});
  Matrix b = Matrix::from_rows(Q, {{1}, {0}, {0}});
  Matrix cap = intersect_columns(a, b);
  REQUIRE(cap.cols() == 1);
  CHECK(cap.at(0, 0) == Scalar(Q, 1));
  CHECK(cap.at(1, 0) == Scalar(Q, 0));
  CHECK(cap.at(2, 0) == Scalar(Q, 0));
}

TEST_CASE("rank-nullity and solve consistency on random matrices") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    Field f = trial % 2 == 0 ? Q : prime_field(5);
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(f, dist(rng));
    Matrix k = m.kernel_basis();
    CHECK(m.rank() + k.cols() == c);
    CHECK((m * k).is_zero());
    CHECK(k.rank() == k.cols());

    Matrix x(f, c, 1);
    for (std::size_t i = 0; i < c; ++i) x.at(i, 0) = Scalar(f, dist(rng));
    Matrix b = m * x;
    auto sol = m.solve(b);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b);
  }
}

TEST_CASE("inverse and column space") {
  Matrix m = Matrix::from_rows(Q, {{1, 2}, {3, 4}});
  Matrix inv = *m.inverse();
  CHECK(m * inv == Matrix::identity(Q, 2));
  Matrix sing = Matrix::from_rows(Q, {{1, 2}, {2, 4}});
  CHECK(!sing.inverse().has_value());
  CHECK(sing.column_space_basis().cols() == 1);
}

TEST_CASE("polynomial utilities") {
  // x^2 - 1 = (x-1)(x+1)
  Poly p = {Scalar(Q, -1), Scalar::zero(Q), Scalar::one(Q)};
  auto roots = field_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Scalar(Q, -1));
  CHECK(roots[1] == Scalar(Q, 1));

  // 6x^2 - x - 1 = (3x + 1)(2x - 1): rational non-integer roots
  Poly q = {Scalar(Q, -1), Scalar(Q, -1), Scalar(Q, 6)};
  roots = field_roots(q);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Scalar(Q, -1, 3));
  CHECK(roots[1] == Scalar(Q, 1, 2));

  // x^2 + 1 has no rational roots
  Poly r = {Scalar::one(Q), Scalar::zero(Q), Scalar::one(Q)};
  CHECK(field_roots(r).empty());

  // (x-2)^3 squarefree part
  Poly cube = poly_mul(poly_mul({Scalar(Q, -2), Scalar::one(Q)}, {Scalar(Q, -2), Scalar::one(Q)}),
                       {Scalar(Q, -2), Scalar::one(Q)});
  Poly sf = poly_squarefree_part(cube);
  CHECK(poly_degree(sf) == 1);
  CHECK(poly_eval(sf, Scalar(Q, 2)).is_zero());

  auto [quo, rem] = poly_divmod(cube, {Scalar(Q, -2), Scalar::one(Q)});
  CHECK(poly_is_zero(rem));
  CHECK(poly_degree(quo) == 2);
}

TEST_CASE("minimal polynomial") {
  Matrix d = Matrix::from_rows(Q, {{1, 0}, {0, 2}});
  Poly m = minimal_polynomial(d);
  // (x-1)(x-2) = x^2 - 3x + 2
  REQUIRE(m.size() == 3);
  CHECK(m[0] == Scalar(Q, 2));
  CHECK(m[1] == Scalar(Q, -3));
  CHECK(m[2] == Scalar(Q, 1));

  Matrix nil = Matrix::from_rows(Q, {{0, 1}, {0, 0}});
  Poly mn = minimal_polynomial(nil);
  REQUIRE(mn.size() == 3);
  CHECK(mn[0].is_zero());
  CHECK(mn[1].is_zero());

  CHECK(poly_eval_matrix(m, d).is_zero());
}

TEST_CASE("span builder") {
  SpanBuilder s(Q, 3);
  CHECK(s.insert({Scalar(Q, 1), Scalar(Q, 2), Scalar(Q, 0)}));
  CHECK(s.insert({Scalar(Q, 0), Scalar(Q, 1), Scalar(Q, 1)}));
  CHECK(!s.insert({Scalar(Q, 1), Scalar(Q, 3), Scalar(Q, 1)}));
  CHECK(s.dim() == 2);
  CHECK(s.contains({Scalar(Q, 2), Scalar(Q, 5), Scalar(Q, 1)}));
  CHECK(!s.contains({Scalar(Q, 0), Scalar(Q, 0), Scalar(Q, 1)}));
  auto coords = s.coordinates({Scalar(Q, 2), Scalar(Q, 5), Scalar(Q, 1)});
  REQUIRE(coords.size() == 2);
}

static void check_complete_orthogonal(const std::vector<Matrix>& es, Field f, std::size_t n) {
  Matrix sum(f, n, n);
  for (std::size_t i = 0; i < es.size(); ++i) {
    CHECK(es[i] * es[i] == es[i]);
    sum = sum + es[i];
    for (std::size_t j = 0; j < es.size(); ++j)
      if (i != j) CHECK((es[i] * es[j]).is_zero());
  }
  CHECK(sum == Matrix::identity(f, n));
}

TEST_CASE("split_idempotent_search: scalar algebra") {
  auto es = split_idempotent_search({Matrix::identity(Q, 2)}, Q, 2);
  REQUIRE(es.size() == 1);
  CHECK(es[0] == Matrix::identity(Q, 2));
}

TEST_CASE("split_idempotent_search: diagonal split") {
  Matrix g = Matrix::from_rows(Q, {{1, 0}, {0, 0}});
  auto es = split_idempotent_search({g}, Q, 2);
  REQUIRE(es.size() == 2);
  check_complete_orthogonal(es, Q, 2);
  bool found = false;
  for (const auto& e : es)
    if (e == g) found = true;
  CHECK(found);
}

TEST_CASE("split_idempotent_search: triangular endomorphism algebra") {
  // Endomorphisms of P1 + P2 over the A2 path algebra embed as the algebra
  // generated by the two projections and the one-way map between summands.
  Matrix e1 = Matrix::from_rows(Q, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  Matrix e2 = Matrix::from_rows(Q, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Matrix u = Matrix::from_rows(Q, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}});
  auto es = split_idempotent_search({e1, e2, u}, Q, 3);
  REQUIRE(es.size() == 2);
  check_complete_orthogonal(es, Q, 3);
}

TEST_CASE("split_idempotent_search: semisimple with distinct eigenvalues") {
  Matrix g = Matrix::from_rows(Q, {{2, 0, 0}, {0, 3, 0}, {0, 0, 3}});
  auto es = split_idempotent_search({g}, Q, 3);
  // K[g] has two blocks; the 3-eigenspace corner is 1-dimensional in K[g],
  // hence primitive there even though it has rank 2 as a matrix.
  REQUIRE(es.size() == 2);
  check_complete_orthogonal(es, Q, 3);
}

TEST_CASE("split_idempotent_search: rotation needs extension over Q but splits over F_5") {
  Matrix rot = Matrix::from_rows(Q, {{0, -1}, {1, 0}});
  CHECK_THROWS_AS(split_idempotent_search({rot}, Q, 2), FieldExtensionNeeded);

  Field f5 = prime_field(5);
  Matrix rot5 = Matrix::from_rows(f5, {{0, -1}, {1, 0}});
  auto es = split_idempotent_search({rot5}, f5, 2);
  REQUIRE(es.size() == 2);
  check_complete_orthogonal(es, f5, 2);
}

TEST_CASE("split_idempotent_search: full matrix algebra is one block") {
  Matrix a = Matrix::from_rows(Q, {{0, 1}, {0, 0}});
  Matrix b = Matrix::from_rows(Q, {{0, 0}, {1, 0}});
  MatrixAlgebra alg = MatrixAlgebra::generate(Q, 2, {a, b});
  CHECK(alg.basis.size() == 4);
  CHECK(radical_basis(alg).empty());
  auto es = split_idempotent_search({a, b}, Q, 2);
  REQUIRE(es.size() == 2);
  check_complete_orthogonal(es, Q, 2);
}

TEST_CASE("radical of triangular matrices") {
  Matrix e1 = Matrix::from_rows(Q, {{1, 0}, {0, 0}});
  Matrix u = Matrix::from_rows(Q, {{0, 1}, {0, 0}});
  MatrixAlgebra alg = MatrixAlgebra::generate(Q, 2, {e1, u});
  CHECK(alg.basis.size() == 3);
  auto rad = radical_basis(alg);
  REQUIRE(rad.size() == 1);
  CHECK((rad[0] * rad[0]).is_zero());
}

TEST_CASE("field independence of rank") {
  Matrix mq = Matrix::from_rows(Q, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  Field f7 = prime_field(7);
  Matrix m7 = Matrix::from_rows(f7, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(mq.rank() == 2);
  CHECK(m7.rank() == 2);
}
