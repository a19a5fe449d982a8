#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <utility>

#include "tilt/apr.hpp"

using namespace tilt;

static Field Q = rationals();

static Presentation a2_pres(Field f = Q) {
  Presentation p;
  p.field = f;
  p.quiver = Quiver(2, {{"alpha", 1, 0}});
  return p;
}

static Presentation square_pres(Field f = Q) {
  Presentation p;
  p.field = f;
  p.quiver = Quiver(4, {{"a", 2, 3}, {"b", 3, 0}, {"c", 2, 1}, {"d", 1, 0}});
  return p;
}

static Presentation comm_square_pres(Field f = Q) {
  Presentation p = square_pres(f);
  PathSum rel(f, Path(p.quiver, 2, {0, 1}));
  rel = rel - PathSum(f, Path(p.quiver, 2, {2, 3}));
  p.relations.push_back(rel);
  return p;
}

static std::multiset<std::pair<std::size_t, std::size_t>> arrow_multiset(const Quiver& q) {
  std::multiset<std::pair<std::size_t, std::size_t>> out;
  for (const Arrow& a : q.arrows()) out.insert({a.source, a.target});
  return out;
}

static Representation regular(const FDAlgebra& alg) {
  auto cm = canonical_modules(alg);
  std::vector<const Representation*> pp;
  for (const Representation& p : cm.projectives) pp.push_back(&p);
  return direct_sum(pp);
}

TEST_CASE("admissibility over A2") {
  auto alg = as_fd_algebra(a2_pres(), 10);
  auto op = as_fd_algebra(opposite(a2_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  auto good = apr_admissible(eng, 0);
  CHECK(good.pass);
  CHECK(good.ext_dims == std::vector<std::size_t>{0});

  auto bad = apr_admissible(eng, 1);
  CHECK(!bad.pass);
  CHECK(bad.reason.find("not simple") != std::string::npos);

  CHECK_THROWS_AS(build_apr(eng, 1, 1), Error);
  CHECK_THROWS_AS(build_apr(eng, 0, 2), Error);
}

TEST_CASE("injective simple projective is not admissible") {
  Presentation point;
  point.quiver = Quiver(1, {});
  auto alg = as_fd_algebra(point, 5);
  auto op = as_fd_algebra(opposite(point), 5);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);
  auto cert = apr_admissible(eng, 0);
  CHECK(!cert.pass);
  CHECK(cert.ext_dims == std::vector<std::size_t>{1});
}

TEST_CASE("1-APR tilt over A2") {
  auto alg = as_fd_algebra(a2_pres(), 10);
  auto op = as_fd_algebra(opposite(a2_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);
  auto cm = canonical_modules(*alg);

  AprContext ctx = build_apr(eng, 0, 1);
  REQUIRE(ctx.syzygy.size() == 2);
  CHECK(isomorphic(ctx.syzygy[0], cm.simples[0]));
  CHECK(isomorphic(ctx.syzygy[1], cm.simples[1]));
  CHECK(isomorphic(ctx.t_parts[0], cm.simples[1]));
  CHECK(isomorphic(ctx.t_parts[1], cm.projectives[1]));
  CHECK(ctx.t.total_dim() == 3);

  TiltingReport tr = verify_tilting(ctx.t, 1, eng.global_dim());
  CHECK(tr.t1);
  CHECK(tr.t2);
  CHECK(tr.t3);
  CHECK(tr.pass);
  CHECK(tr.proj_dim == 1);

  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  CHECK(ep.end_dim == 3);
  CHECK(ep.algebra.dim() == 3);
  CHECK(ep.pres.relations.empty());
  CHECK(arrow_multiset(ep.pres.quiver) ==
        std::multiset<std::pair<std::size_t, std::size_t>>{{0, 1}});

  // Gamma is again A2: gl.dim fine, but no algebra of finite type stays in
  // N^- under nu iteration.
  auto gop = as_fd_algebra(opposite(ep.pres), 10);
  REQUIRE(gop.has_value());
  NriReport nri = theorem_check_nri(ep.algebra, *gop, 1, 8);
  CHECK(nri.gldim_ok);
  CHECK(nri.gldim == 1);
  CHECK(!nri.nminus_ok);
  CHECK(!nri.pass);
}

TEST_CASE("0-APR tilt recovers the regular module") {
  auto alg = as_fd_algebra(a2_pres(), 10);
  auto op = as_fd_algebra(opposite(a2_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 0);
  CHECK(isomorphic(ctx.t, regular(*alg)));
  TiltingReport tr = verify_tilting(ctx.t, 0, eng.global_dim());
  CHECK(tr.pass);
  CHECK(tr.proj_dim == 0);

  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  CHECK(ep.end_dim == 3);
  CHECK(ep.pres.relations.empty());
  CHECK(arrow_multiset(ep.pres.quiver) == arrow_multiset(alg->quiver()));
}

TEST_CASE("1-APR tilt on the hereditary square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);
  auto cm = canonical_modules(*alg);

  AprContext ctx = build_apr(eng, 0, 1);
  CHECK(isomorphic(ctx.syzygy[0], cm.simples[0]));
  CHECK(ctx.res.is_exact());
  CHECK(ctx.res.is_minimal());
  for (std::size_t w = 1; w < 4; ++w) CHECK(isomorphic(ctx.t_parts[w], cm.projectives[w]));
  CHECK(isomorphic(ctx.t_parts[0], ctx.tau_inv_s));

  TiltingReport tr = verify_tilting(ctx.t, 1, eng.global_dim());
  CHECK(tr.pass);
  CHECK(tr.proj_dim == 1);

  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  // reflection at the sink: both arrows into it turn around
  CHECK(arrow_multiset(ep.pres.quiver) ==
        std::multiset<std::pair<std::size_t, std::size_t>>{{2, 3}, {2, 1}, {0, 3}, {0, 1}});
  CHECK(ep.pres.relations.empty());
  CHECK(ep.end_dim == 8);

  auto gop = as_fd_algebra(opposite(ep.pres), 10);
  REQUIRE(gop.has_value());
  NriReport nri = theorem_check_nri(ep.algebra, *gop, 1, 8);
  CHECK(nri.gldim_ok);
  CHECK(nri.nminus_ok);
  CHECK(nri.pass);
}

TEST_CASE("0-APR tilt on the square is the identity presentation") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 0);
  CHECK(isomorphic(ctx.t, regular(*alg)));
  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  CHECK(ep.end_dim == 10);
  CHECK(ep.pres.relations.empty());
  CHECK(arrow_multiset(ep.pres.quiver) == arrow_multiset(alg->quiver()));
}

TEST_CASE("relation extraction: End of the regular module of the commutative square") {
  auto alg = as_fd_algebra(comm_square_pres(), 10);
  REQUIRE(alg.has_value());
  auto cm = canonical_modules(*alg);
  std::vector<const Representation*> ps;
  for (const Representation& p : cm.projectives) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  CHECK(ep.end_dim == alg->dim());
  CHECK(ep.algebra.dim() == alg->dim());
  CHECK(arrow_multiset(ep.pres.quiver) == arrow_multiset(alg->quiver()));
  REQUIRE(ep.pres.relations.size() == 1);
  CHECK(ep.pres.relations[0].terms().size() == 2);
}

TEST_CASE("tilting invariants along the nu orbit") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 1);
  for (std::size_t l = 0; l <= 1; ++l) {
    auto cert = eng.in_N_minus(ctx.syzygy[l], 4);
    CHECK(cert.pass);
  }

  Representation x = ctx.t;
  for (std::size_t i = 0; i <= 3; ++i) {
    CHECK(ext(ctx.t, x, 1).dim == 0);
    x = eng.tau_inverse(x);
  }
}

TEST_CASE("verify_tilting rejects non-tilting modules") {
  auto alg = as_fd_algebra(a2_pres(), 10);
  REQUIRE(alg.has_value());
  auto cm = canonical_modules(*alg);

  // Ext^1(S_1, S_0) != 0, so T2 fails
  std::vector<const Representation*> ps{&cm.simples[1], &cm.simples[0]};
  Representation bad = direct_sum(ps);
  TiltingReport tr = verify_tilting(bad, 1, 1);
  CHECK(!tr.pass);
  CHECK(!tr.first_failure.empty());

  TiltingReport wrongm = verify_tilting(regular(*alg), 1, 1);
  CHECK(!wrongm.t1);
  CHECK(!wrongm.pass);
}
