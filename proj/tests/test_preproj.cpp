#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tilt/preproj.hpp"

using namespace tilt;

static Field Q = rationals();

static Presentation a2_pres() {
  Presentation p;
  p.field = Q;
  p.quiver = Quiver(2, {{"alpha", 1, 0}});
  return p;
}

static Presentation square_pres() {
  Presentation p;
  p.field = Q;
  p.quiver = Quiver(4, {{"a", 2, 3}, {"b", 3, 0}, {"c", 2, 1}, {"d", 1, 0}});
  return p;
}

static Representation regular(const FDAlgebra& alg) {
  auto cm = canonical_modules(alg);
  std::vector<const Representation*> pp;
  for (const Representation& p : cm.projectives) pp.push_back(&p);
  return direct_sum(pp);
}

/// Independent oracle: for a hereditary algebra the inverse Coxeter
/// transformation -E^T E^{-1} (E = I - A, row dim vectors) computes
/// dim tau^-(N) for N without injective summands.
static Matrix coxeter_inverse(const Quiver& q) {
  std::size_t n = q.vertex_count();
  Matrix e = Matrix::identity(Q, n);
  for (const Arrow& a : q.arrows())
    e.at(a.source, a.target) = e.at(a.source, a.target) - Scalar::one(Q);
  auto inv = e.inverse();
  REQUIRE(inv.has_value());
  return e.transpose() * *inv * Scalar(Q, -1);
}

static std::vector<std::size_t> apply_cox(const Matrix& m, const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out(v.size(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    Scalar acc = Scalar::zero(Q);
    for (std::size_t i = 0; i < v.size(); ++i) acc = acc + Scalar(Q, (long)v[i]) * m.at(i, j);
    REQUIRE(acc.value().get_den() == 1);
    REQUIRE(acc.value() >= 0);
    out[j] = acc.value().get_num().get_ui();
  }
  return out;
}

TEST_CASE("tau towers match the inverse Coxeter oracle on the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);
  auto cm = canonical_modules(*alg);
  Matrix cox = coxeter_inverse(alg->quiver());

  for (std::size_t v = 0; v < 4; ++v) {
    TauTower t = tau_tower(eng, cm.projectives[v], 4);
    std::vector<std::size_t> dims = cm.projectives[v].dim_vector();
    for (std::size_t i = 1; i <= 4; ++i) {
      dims = apply_cox(cox, dims);
      CHECK(t.piece[i].dim_vector() == dims);
    }
  }

  GradedModuleTruncation hs = hat(eng, cm.projectives[0], 5);
  CHECK(hs.dims == std::vector<std::size_t>{1, 3, 9, 11, 17, 19});
}

TEST_CASE("hat and upsilon reject modules that leave N^-") {
  auto alg = as_fd_algebra(a2_pres(), 10);
  auto op = as_fd_algebra(opposite(a2_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);
  CHECK_THROWS_AS(hat(eng, regular(*alg), 8), Error);
  CHECK_THROWS_AS(upsilon(eng, regular(*alg), 8), Error);
}

TEST_CASE("preprojective truncation of the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  GradedTruncation g0 = preprojective_truncation(eng, 0);
  CHECK(g0.dims == std::vector<std::size_t>{10});
  CHECK(g0.routes_agree);

  GradedTruncation g = preprojective_truncation(eng, 4);
  CHECK(g.dims == std::vector<std::size_t>{10, 22, 42, 54, 74});
  CHECK(g.routes_agree);
  CHECK(g.degree_one_generated);
  std::string why;
  CHECK(g.ups->associative(2, &why));
}

TEST_CASE("hatted morphisms are functorial slices") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);
  auto cm = canonical_modules(*alg);

  GradedModuleTruncation h1 = hat(eng, cm.projectives[1], 3);
  std::vector<RepMap> id = hat_map(eng, h1, h1, RepMap::identity(cm.projectives[1]));
  REQUIRE(id.size() == 4);
  for (std::size_t i = 0; i < id.size(); ++i)
    CHECK(id[i] == RepMap::identity(h1.tower.piece[i]));
}

TEST_CASE("graded resolution of the simple on the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 1);
  GradedExactness gr = graded_resolution_of_simple(eng, ctx, 4);
  CHECK(gr.pass);
  REQUIRE(gr.slice_dims.size() == 5);
  CHECK(gr.slice_dims[0] == std::vector<std::size_t>{1, 4, 3});
  CHECK(gr.slice_dims[1] == std::vector<std::size_t>{3, 12, 9});
  for (const auto& row : gr.slice_dims) {
    long alt = 0, sign = 1;
    for (std::size_t x : row) {
      alt += sign * (long)x;
      sign = -sign;
    }
    CHECK(alt == 0);
  }
}

TEST_CASE("hat tilting check on the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 1);
  HatTiltingReport ht = hat_tilting_check(eng, ctx, 4);
  CHECK(ht.t1);
  CHECK(ht.t2);
  CHECK(ht.t3);
  CHECK(ht.pass);

  AprContext ctx0 = build_apr(eng, 0, 0);
  HatTiltingReport ht0 = hat_tilting_check(eng, ctx0, 3);
  CHECK(ht0.pass);
}

TEST_CASE("n-APR iso check on the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 1);
  NAprIsoReport nr = n_apr_iso_check(eng, ctx, 4);
  CHECK(nr.pass);
  CHECK(nr.failure.empty());
  CHECK(nr.lambda_dims == std::vector<std::size_t>{10, 22, 42, 54, 74});
  CHECK(nr.endo_dims == nr.lambda_dims);

  AprContext ctx0 = build_apr(eng, 0, 0);
  CHECK_THROWS_AS(n_apr_iso_check(eng, ctx0, 2), Error);
}

TEST_CASE("upsilon of T matches the preprojective algebra of Gamma") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 1);
  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  auto gop = as_fd_algebra(opposite(ep.pres), 10);
  REQUIRE(gop.has_value());
  NuEngine geng(ep.algebra, *gop, 1);

  UpsilonAlgebra u = upsilon(eng, ctx.t, 3);
  GradedTruncation gt = preprojective_truncation(geng, 3);
  CHECK(u.dims() == gt.dims);
  CHECK(gt.routes_agree);

  // Independent combinatorial route for the Gamma-hat dimensions.
  Matrix cox = coxeter_inverse(ep.pres.quiver);
  auto gcm = canonical_modules(ep.algebra);
  std::vector<std::size_t> want;
  {
    std::vector<std::vector<std::size_t>> cur;
    for (const Representation& p : gcm.projectives) cur.push_back(p.dim_vector());
    for (std::size_t i = 0; i <= 3; ++i) {
      std::size_t tot = 0;
      for (auto& dv : cur) tot += [&] {
        std::size_t s = 0;
        for (std::size_t x : dv) s += x;
        return s;
      }();
      want.push_back(tot);
      for (auto& dv : cur) dv = apply_cox(cox, dv);
    }
  }
  CHECK(gt.dims == want);
}

TEST_CASE("graded endo comparison on the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  AprContext ctx = build_apr(eng, 0, 1);
  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  EndoPresentation ep = endomorphism_presentation(ps);
  auto gop = as_fd_algebra(opposite(ep.pres), 10);
  REQUIRE(gop.has_value());
  NuEngine geng(ep.algebra, *gop, 1);

  GradedEndoReport ge = graded_endo_comparison(eng, ctx, ep, geng, 3);
  CHECK(ge.dims_ok);
  CHECK(ge.pass);
  CHECK(ge.failure.empty());

  // m = 0: T = Lambda, Gamma = Lambda, the comparison is trivial but goes
  // through the same machinery.
  AprContext ctx0 = build_apr(eng, 0, 0);
  std::vector<const Representation*> ps0;
  for (const Representation& p : ctx0.t_parts) ps0.push_back(&p);
  EndoPresentation ep0 = endomorphism_presentation(ps0);
  auto gop0 = as_fd_algebra(opposite(ep0.pres), 10);
  REQUIRE(gop0.has_value());
  NuEngine geng0(ep0.algebra, *gop0, 1);
  GradedEndoReport ge0 = graded_endo_comparison(eng, ctx0, ep0, geng0, 2);
  CHECK(ge0.pass);
}

TEST_CASE("truncation algebra and CY symmetry on the square") {
  auto alg = as_fd_algebra(square_pres(), 10);
  auto op = as_fd_algebra(opposite(square_pres()), 10);
  REQUIRE(alg.has_value());
  NuEngine eng(*alg, *op, 1);

  TruncAlgebra ta = truncation_algebra(eng, 4);
  CHECK(ta.hat_dims == std::vector<std::size_t>{10, 22, 42, 54, 74});
  std::size_t dimb = 5 * 10 + 4 * 22 + 3 * 42 + 2 * 54 + 1 * 74;
  CHECK(ta.algebra.dim() == dimb);

  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k <= 2; ++k) CHECK(cy_symmetry_spotcheck(ta, 1, i, j, k));

  // the 2-CY double-quiver symmetry: dim Ext^1(S_i, S_j) = dim Ext^1(S_j, S_i)
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(hat_ext_dim(ta, i, j, 1) == hat_ext_dim(ta, j, i, 1));
}
