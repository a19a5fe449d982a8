#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tilt/quiver.hpp"

using namespace tilt;

static Field Q = rationals();

// Arrows 3->4, 4->1, 3->2, 2->1 (vertex 1 is the unique sink).
static Quiver square_quiver() {
  return Quiver(4, {{"a", 2, 3}, {"b", 3, 0}, {"c", 2, 1}, {"d", 1, 0}});
}

static Quiver kronecker() { return Quiver(2, {{"a", 0, 1}, {"b", 0, 1}}); }

TEST_CASE("quiver construction validates") {
  CHECK_THROWS_AS(Quiver(2, {{"a", 0, 2}}), Error);
  CHECK_THROWS_AS(Quiver(2, {{"a", 0, 1}, {"a", 1, 0}}), Error);
  Quiver loop(1, {{"l", 0, 0}});
  CHECK(loop.has_loops());
  CHECK(!kronecker().has_loops());
}

TEST_CASE("compose") {
  Quiver q(3, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}});
  Path a(q, 0, {0}), b(q, 1, {1}), c(q, 2, {2});
  Path e0 = Path::stationary(0);

  auto ep = compose(q, e0, a);
  REQUIRE(ep.has_value());
  CHECK(*ep == a);
  CHECK(*compose(q, a, Path::stationary(1)) == a);

  auto ab = compose(q, a, b);
  REQUIRE(ab.has_value());
  CHECK(ab->source() == 0);
  CHECK(ab->target() == 2);
  CHECK(ab->length() == 2);
  CHECK(ab->str(q) == "a*b");

  CHECK(!compose(q, a, c).has_value());
}

TEST_CASE("paths_between basics") {
  Quiver q = kronecker();
  auto stat = paths_between(q, 0, 0, 0);
  REQUIRE(stat.size() == 1);
  CHECK(stat[0].is_stationary());
  CHECK(paths_between(q, 0, 1, 0).empty());

  auto deg1 = paths_between(q, 0, 1, 1);
  REQUIRE(deg1.size() == 2);
  CHECK(deg1[0].str(q) == "a");
  CHECK(deg1[1].str(q) == "b");
}

TEST_CASE("paths in the square quiver") {
  Quiver q = square_quiver();
  // Two length-2 paths from vertex 3 to the sink 1: via 4 and via 2.
  auto p = paths_between(q, 2, 0, 2);
  REQUIRE(p.size() == 2);
  CHECK(p[0].str(q) == "a*b");
  CHECK(p[1].str(q) == "c*d");
  CHECK(paths_between(q, 2, 0, 3).empty());
  CHECK(paths_between(q, 0, 2, 1).empty());
}

TEST_CASE("path counts match adjacency powers") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 3;
    std::vector<Arrow> arrows;
    std::size_t na = 1 + rng() % 5;
    for (std::size_t k = 0; k < na; ++k)
      arrows.push_back({"a" + std::to_string(k), rng() % n, rng() % n});
    Quiver q(n, arrows);
    Matrix adj = q.adjacency(Q);
    Matrix pw = Matrix::identity(Q, n);
    for (std::size_t l = 0; l <= 4; ++l) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto paths = paths_between(q, i, j, l);
          CHECK(Scalar(Q, static_cast<long>(paths.size())) == pw.at(i, j));
        }
      pw = pw * adj;
    }
  }
}

TEST_CASE("path sum multiplication") {
  Quiver q(3, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 0}});
  PathSum zero(Q);
  PathSum a(Q, Path(q, 0, {0}));
  CHECK(multiply(q, a, zero).is_zero());

  PathSum es(Q);
  es.add(Path::stationary(0), Scalar::one(Q));
  es.add(Path::stationary(1), Scalar::one(Q));
  CHECK(multiply(q, es, a).terms() == a.terms());

  PathSum ab = a + PathSum(Q, Path(q, 1, {1}));
  PathSum b(Q, Path(q, 1, {1}));
  PathSum prod = multiply(q, ab, b);
  REQUIRE(prod.terms().size() == 1);
  CHECK(prod.terms().begin()->first.str(q) == "a*b");
}

TEST_CASE("path sum algebra properties") {
  Quiver q = square_quiver();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-3, 3);
  auto random_sum = [&]() {
    PathSum s(Q);
    for (int t = 0; t < 4; ++t) {
      std::size_t l = rng() % 3;
      std::size_t i = rng() % 4;
      auto paths = paths_from(q, i, l);
      if (paths.empty()) continue;
      s.add(paths[rng() % paths.size()], Scalar(Q, coeff(rng)));
    }
    return s;
  };
  PathSum unit(Q);
  for (std::size_t i = 0; i < 4; ++i) unit.add(Path::stationary(i), Scalar::one(Q));

  for (int trial = 0; trial < 40; ++trial) {
    PathSum x = random_sum(), y = random_sum(), z = random_sum();
    CHECK(multiply(q, multiply(q, x, y), z).terms() ==
          multiply(q, x, multiply(q, y, z)).terms());
    CHECK(multiply(q, unit, x).terms() == x.terms());
    CHECK(multiply(q, x, unit).terms() == x.terms());
  }
}

TEST_CASE("endpoint homogeneity") {
  Quiver q = square_quiver();
  PathSum comm(Q);
  comm.add(Path(q, 2, {0, 1}), Scalar::one(Q));
  comm.add(Path(q, 2, {2, 3}), Scalar(Q, -1));
  CHECK(comm.endpoint_homogeneous());
  CHECK(comm.common_source() == 2);
  CHECK(comm.common_target() == 0);

  PathSum mixed(Q);
  mixed.add(Path(q, 2, {0}), Scalar::one(Q));
  mixed.add(Path(q, 2, {2}), Scalar::one(Q));
  CHECK(!mixed.endpoint_homogeneous());
}
