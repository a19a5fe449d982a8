#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tilt/apr.hpp"
#include "tilt/qp.hpp"

using namespace tilt;

static Field Q = rationals();

// Vertex v here is vertex v+1 in the usual 1-based pictures.

// Cyclic double square: x1,y1: 2->1, x2,y2: 3->2, x3,y3: 4->3, x4,y4: 1->4,
// W = x4x3x2x1 - y4y3y2y1 + y4x3y2x1 - x4y3x2y1, cut {x4, y4}.
static Quiver ex2_quiver() {
  return Quiver(4, {{"x1", 1, 0},
                    {"y1", 1, 0},
                    {"x2", 2, 1},
                    {"y2", 2, 1},
                    {"x3", 3, 2},
                    {"y3", 3, 2},
                    {"x4", 0, 3},
                    {"y4", 0, 3}});
}

static Path word(const Quiver& q, std::initializer_list<const char*> names) {
  std::vector<std::size_t> idx;
  for (const char* n : names) idx.push_back(q.arrow_index(n));
  std::size_t src = q.arrow(idx.front()).source;
  return Path(q, src, std::move(idx));
}

static Potential ex2_potential(const Quiver& q) {
  Potential w(Q);
  w.add(q, word(q, {"x4", "x3", "x2", "x1"}), Scalar(Q, 1));
  w.add(q, word(q, {"y4", "y3", "y2", "y1"}), Scalar(Q, -1));
  w.add(q, word(q, {"y4", "x3", "y2", "x1"}), Scalar(Q, 1));
  w.add(q, word(q, {"x4", "y3", "x2", "y1"}), Scalar(Q, -1));
  return w;
}

static std::vector<bool> ex2_cut(const Quiver& q) {
  std::vector<bool> cut(q.arrows().size(), false);
  cut[q.arrow_index("x4")] = cut[q.arrow_index("y4")] = true;
  return cut;
}

// Doubled square with four returns: x1,y1: 1->2, x2,y2: 3->2, x3,y3: 4->3,
// x4,y4: 4->1, r1..r4: 2->4, W = the four 2x2-minor cycles, cut {r1..r4}.
static Quiver ex3_quiver() {
  return Quiver(4, {{"x1", 0, 1},
                    {"y1", 0, 1},
                    {"x2", 2, 1},
                    {"y2", 2, 1},
                    {"x3", 3, 2},
                    {"y3", 3, 2},
                    {"x4", 3, 0},
                    {"y4", 3, 0},
                    {"r1", 1, 3},
                    {"r2", 1, 3},
                    {"r3", 1, 3},
                    {"r4", 1, 3}});
}

static Potential ex3_potential(const Quiver& q) {
  Potential w(Q);
  w.add(q, word(q, {"r1", "x4", "x1"}), Scalar(Q, 1));
  w.add(q, word(q, {"r1", "x3", "x2"}), Scalar(Q, -1));
  w.add(q, word(q, {"r2", "y4", "x1"}), Scalar(Q, 1));
  w.add(q, word(q, {"r2", "x3", "y2"}), Scalar(Q, -1));
  w.add(q, word(q, {"r3", "x4", "y1"}), Scalar(Q, 1));
  w.add(q, word(q, {"r3", "y3", "x2"}), Scalar(Q, -1));
  w.add(q, word(q, {"r4", "y4", "y1"}), Scalar(Q, 1));
  w.add(q, word(q, {"r4", "y3", "y2"}), Scalar(Q, -1));
  return w;
}

static std::vector<bool> ex3_cut(const Quiver& q) {
  std::vector<bool> cut(q.arrows().size(), false);
  for (const char* n : {"r1", "r2", "r3", "r4"}) cut[q.arrow_index(n)] = true;
  return cut;
}

static std::vector<std::pair<std::size_t, std::size_t>> arrow_multiset(const Quiver& q) {
  std::vector<std::pair<std::size_t, std::size_t>> m;
  for (const Arrow& a : q.arrows()) m.push_back({a.source, a.target});
  std::sort(m.begin(), m.end());
  return m;
}

TEST_CASE("cyclic derivative") {
  Quiver q = ex2_quiver();
  Potential w = ex2_potential(q);

  Potential single(Q);
  single.add(q, word(q, {"x4", "x3", "x2", "x1"}), Scalar(Q, 1));
  CHECK(cyclic_derivative(q, single, q.arrow_index("y1")).is_zero());
  PathSum d4 = cyclic_derivative(q, single, q.arrow_index("x4"));
  PathSum want(Q, word(q, {"x3", "x2", "x1"}));
  CHECK((d4 - want).is_zero());

  // rotation invariance: a rotated representative is the same cycle
  Potential rotated(Q);
  rotated.add(q, word(q, {"x2", "x1", "x4", "x3"}), Scalar(Q, 1));
  CHECK(rotated.terms() == single.terms());

  PathSum dx4 = cyclic_derivative(q, w, q.arrow_index("x4"));
  PathSum wx4 = PathSum(Q, word(q, {"x3", "x2", "x1"})) - PathSum(Q, word(q, {"y3", "x2", "y1"}));
  CHECK((dx4 - wx4).is_zero());

  Quiver q3 = ex3_quiver();
  Potential w3 = ex3_potential(q3);
  PathSum dr1 = cyclic_derivative(q3, w3, q3.arrow_index("r1"));
  PathSum wr1 = PathSum(Q, word(q3, {"x4", "x1"})) - PathSum(Q, word(q3, {"x3", "x2"}));
  CHECK((dr1 - wr1).is_zero());
}

TEST_CASE("jacobian presentations") {
  Quiver q = ex2_quiver();
  CHECK(jacobian_presentation(q, Potential(Q)).relations.empty());
  CHECK(jacobian_presentation(q, ex2_potential(q)).relations.size() == 8);
  Quiver q3 = ex3_quiver();
  CHECK(jacobian_presentation(q3, ex3_potential(q3)).relations.size() == 12);
}

TEST_CASE("truncated jacobian algebras") {
  Quiver q = ex2_quiver();
  Potential w = ex2_potential(q);
  Presentation lam = truncated_jacobian(q, w, ex2_cut(q));
  CHECK(arrow_multiset(lam.quiver) ==
        std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {1, 0}, {2, 1}, {2, 1}, {3, 2},
                                                         {3, 2}});
  CHECK(lam.relations.size() == 2);
  auto alg = as_fd_algebra(lam, 10);
  REQUIRE(alg.has_value());
  CHECK(alg->dim() == 24);

  Quiver q3 = ex3_quiver();
  Presentation lam3 = truncated_jacobian(q3, ex3_potential(q3), ex3_cut(q3));
  CHECK(lam3.relations.size() == 4);
  auto alg3 = as_fd_algebra(lam3, 10);
  REQUIRE(alg3.has_value());
  CHECK(alg3->dim() == 16);

  // empty potential, empty cut: the path algebra itself
  Presentation free2 = truncated_jacobian(q, Potential(Q), std::vector<bool>(8, false));
  CHECK(free2.relations.empty());
  CHECK(free2.quiver.arrows().size() == 8);
}

TEST_CASE("non-cuts are rejected with the offending cycle") {
  Quiver q = ex2_quiver();
  Potential w = ex2_potential(q);
  std::vector<bool> miss(q.arrows().size(), false);
  miss[q.arrow_index("x4")] = true;  // y-cycle has no cut arrow
  CHECK_THROWS_WITH_AS(truncated_jacobian(q, w, miss),
                       doctest::Contains("not a cut: cycle x1*y4*x3*y2"), Error);
  std::vector<bool> twice = ex2_cut(q);
  twice[q.arrow_index("x1")] = twice[q.arrow_index("y1")] = true;
  CHECK_THROWS_WITH_AS(truncated_jacobian(q, w, twice), doctest::Contains("not a cut"), Error);
}

TEST_CASE("trivial mutation reverses arrows") {
  Quiver q(2, {{"a", 0, 1}});
  Mutation m = qp_mutate(q, Potential(Q), 1, {0});
  CHECK(m.reduced);
  CHECK(m.quiver.arrows().size() == 1);
  CHECK(m.quiver.arrow(0).name == "a*");
  CHECK(m.quiver.arrow(0).source == 1);
  CHECK(m.quiver.arrow(0).target == 0);
  CHECK(m.potential.is_zero());
}

TEST_CASE("mutation of the cyclic double square at vertex 1") {
  Quiver q = ex2_quiver();
  Potential w = ex2_potential(q);
  std::vector<std::size_t> deg(q.arrows().size(), 0);
  deg[q.arrow_index("x4")] = deg[q.arrow_index("y4")] = 1;

  Mutation m = qp_mutate(q, w, 0, deg);
  CHECK(m.reduced);
  CHECK(m.note.empty());
  CHECK(m.graded_ok);
  // doubled 4=>3, 4=>1, 1=>2, 3=>2 and four arrows 2->4
  CHECK(arrow_multiset(m.quiver) ==
        std::vector<std::pair<std::size_t, std::size_t>>{
            {0, 1}, {0, 1}, {1, 3}, {1, 3}, {1, 3}, {1, 3}, {2, 1}, {2, 1}, {3, 0}, {3, 0},
            {3, 2}, {3, 2}});
  CHECK(m.potential.terms().size() == 8);
  for (const auto& [cycle, c] : m.potential.terms()) CHECK(cycle.length() == 3);
  // the composite arrows 2->4 form the new cut
  for (std::size_t a = 0; a < m.quiver.arrows().size(); ++a) {
    bool comp = m.quiver.arrow(a).name.front() == '[';
    CHECK(m.arrow_degrees[a] == (comp ? 1 : 0));
  }
}

TEST_CASE("double mutation restores the quiver and the jacobian dimensions") {
  Quiver q = ex2_quiver();
  Potential w = ex2_potential(q);
  std::vector<std::size_t> deg(q.arrows().size(), 0);
  deg[q.arrow_index("x4")] = deg[q.arrow_index("y4")] = 1;

  Mutation m1 = qp_mutate(q, w, 0, deg);
  REQUIRE(m1.reduced);
  Mutation m2 = qp_mutate(m1.quiver, m1.potential, 0, m1.arrow_degrees);
  REQUIRE(m2.reduced);
  CHECK(arrow_multiset(m2.quiver) == arrow_multiset(q));

  DegreewiseBasis b0 = DegreewiseBasis::compute(jacobian_presentation(q, w), 4);
  DegreewiseBasis b2 = DegreewiseBasis::compute(jacobian_presentation(m2.quiver, m2.potential), 4);
  for (std::size_t l = 0; l <= 4; ++l) CHECK(b0.basis(l).size() == b2.basis(l).size());
}

TEST_CASE("preprojective slices match the cut-graded jacobian slices") {
  Quiver q = ex2_quiver();
  Potential w = ex2_potential(q);
  Presentation lam = truncated_jacobian(q, w, ex2_cut(q));
  auto alg = as_fd_algebra(lam, 10);
  auto op = as_fd_algebra(opposite(lam), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 2);
  CHECK(eng.global_dim() == 2);
  JacobianCompare rep = compare_preproj_jacobian(eng, q, w, ex2_cut(q), 4);
  CHECK(rep.pass);
  CHECK(rep.failure.empty());
  CHECK(rep.hat_dims[0] == 24);
  CHECK(rep.hat_dims == rep.jacobian_dims);

  Quiver q3 = ex3_quiver();
  Potential w3 = ex3_potential(q3);
  Presentation lam3 = truncated_jacobian(q3, w3, ex3_cut(q3));
  auto alg3 = as_fd_algebra(lam3, 10);
  auto op3 = as_fd_algebra(opposite(lam3), 10);
  REQUIRE(alg3.has_value());
  NuEngine eng3(*alg3, *op3, 2);
  CHECK(eng3.global_dim() == 2);
  JacobianCompare rep3 = compare_preproj_jacobian(eng3, q3, w3, ex3_cut(q3), 4);
  CHECK(rep3.pass);
  CHECK(rep3.hat_dims[0] == 16);
}

TEST_CASE("2-APR tilt of the doubled square matches the reversed picture") {
  Quiver q3 = ex3_quiver();
  Presentation lam3 = truncated_jacobian(q3, ex3_potential(q3), ex3_cut(q3));
  auto alg = as_fd_algebra(lam3, 10);
  auto op = as_fd_algebra(opposite(lam3), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 2);

  CHECK(apr_admissible(eng, 1).pass);
  AprContext ctx = build_apr(eng, 1, 2);
  TiltingReport tr = verify_tilting(ctx.t, 2, eng.global_dim());
  CHECK(tr.pass);
  CHECK(tr.proj_dim == 2);

  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  // doubled 4=>3, 4=>1 and four arrows 2->4
  CHECK(arrow_multiset(ep.pres.quiver) ==
        std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {1, 3}, {1, 3}, {1, 3}, {3, 0},
                                                         {3, 0}, {3, 2}, {3, 2}});
}
