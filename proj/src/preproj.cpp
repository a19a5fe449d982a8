#include "tilt/preproj.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "tilt/span.hpp"

namespace tilt {

namespace {

std::vector<Scalar> flat_map(const RepMap& f) {
  std::vector<Scalar> out;
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v) {
    std::vector<Scalar> fl = flatten(f.at(v));
    out.insert(out.end(), fl.begin(), fl.end());
  }
  return out;
}

std::size_t flat_width(const Representation& from, const Representation& to) {
  std::size_t w = 0;
  for (std::size_t v = 0; v < from.vertex_count(); ++v) w += from.dim(v) * to.dim(v);
  return w;
}

std::size_t rank_of(const RepMap& f) {
  std::size_t r = 0;
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v) r += f.at(v).rank();
  return r;
}

bool zero_map(const RepMap& f) {
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v)
    if (!f.at(v).is_zero()) return false;
  return true;
}

Representation regular_module(const FDAlgebra& alg) {
  CanonicalModules cm = canonical_modules(alg);
  std::vector<const Representation*> pp;
  for (const Representation& p : cm.projectives) pp.push_back(&p);
  return direct_sum(pp);
}

Matrix cols_from(Field f, std::size_t width, const std::vector<std::vector<Scalar>>& cols) {
  Matrix m(f, width, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < width; ++r) m.at(r, c) = cols[c][r];
  return m;
}

std::vector<Scalar> mat_vec(const Matrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> out(m.rows(), Scalar::zero(m.field()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero() && !v[c].is_zero()) out[r] = out[r] + m.at(r, c) * v[c];
  return out;
}

/// Exactness of 0 -> X_0 -> ... -> X_r -> 0 from ranks and zero composites.
std::optional<std::string> chain_fail(const std::vector<RepMap>& maps) {
  if (maps.empty()) return std::nullopt;
  std::vector<std::size_t> rk;
  for (const RepMap& f : maps) rk.push_back(rank_of(f));
  if (rk[0] != maps[0].from().total_dim()) return std::string("not injective at spot 0");
  for (std::size_t k = 1; k < maps.size(); ++k) {
    if (!zero_map(maps[k - 1].then(maps[k])))
      return "composite at spot " + std::to_string(k) + " is nonzero";
    if (rk[k - 1] + rk[k] != maps[k].from().total_dim())
      return "homology at spot " + std::to_string(k) + " is nonzero";
  }
  if (rk.back() != maps.back().to().total_dim()) return std::string("tail is not surjective");
  return std::nullopt;
}

}  // namespace

TauTower tau_tower(const NuEngine& eng, const Representation& x, std::size_t d) {
  TauTower t;
  t.piece.push_back(x);
  for (std::size_t i = 0; i < d; ++i) {
    t.obj.push_back(eng.tau_inverse_obj(t.piece.back()));
    t.piece.push_back(t.obj.back().module());
  }
  return t;
}

RepMap tau_shift(const NuEngine& eng, const TauTower& from, std::size_t i, const TauTower& to,
                 std::size_t j, RepMap f, std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k)
    f = eng.tau_inverse_map(from.obj[i + k], to.obj[j + k], f);
  return f;
}

UpsilonAlgebra::UpsilonAlgebra(const NuEngine& eng, const Representation& x, std::size_t d)
    : eng_(&eng), d_(d) {
  BoundedCertificate cert = eng.in_N_minus(x, d);
  if (!cert.pass)
    throw Error("upsilon: module leaves N^- at step " + std::to_string(cert.failed_step) + ": " +
                cert.reason);
  tower_ = tau_tower(eng, x, d);
  for (std::size_t i = 0; i <= d; ++i) {
    basis_.push_back(hom_space(x, tower_.piece[i]));
    std::vector<std::vector<Scalar>> cols;
    for (const RepMap& f : basis_[i]) cols.push_back(flat_map(f));
    bmat_.push_back(cols_from(x.field(), flat_width(x, tower_.piece[i]), cols));
    shift_.push_back(std::vector<std::vector<RepMap>>(basis_[i].size()));
  }
  sc_.resize(d + 1);
  sc_done_.resize(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    sc_[i].resize(d + 1 - i);
    sc_done_[i].assign(d + 1 - i, false);
  }
}

std::vector<std::size_t> UpsilonAlgebra::dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis_) out.push_back(b.size());
  return out;
}

const RepMap& UpsilonAlgebra::shifted(std::size_t i, std::size_t a, std::size_t k) {
  if (k == 0) return basis_[i][a];
  if (i + k > d_) throw Error("upsilon: shift beyond the degree bound");
  std::vector<RepMap>& cache = shift_[i][a];
  while (cache.size() < k) {
    std::size_t have = cache.size();  // tau^{-have} is cached last
    const RepMap& prev = have == 0 ? basis_[i][a] : cache.back();
    cache.push_back(
        eng_->tau_inverse_map(tower_.obj[have], tower_.obj[i + have], prev));
  }
  return cache[k - 1];
}

RepMap UpsilonAlgebra::product(std::size_t i, std::size_t a, std::size_t j, std::size_t b) {
  return basis_[j][b].then(shifted(i, a, j));
}

void UpsilonAlgebra::ensure_structure(std::size_t i, std::size_t j) {
  if (sc_done_[i][j]) return;
  std::size_t ni = basis_[i].size(), nj = basis_[j].size();
  std::vector<std::vector<Scalar>> cols;
  for (std::size_t a = 0; a < ni; ++a)
    for (std::size_t b = 0; b < nj; ++b) cols.push_back(flat_map(product(i, a, j, b)));
  Matrix rhs = cols_from(bmat_[i + j].field(), bmat_[i + j].rows(), cols);
  std::optional<Matrix> sol = bmat_[i + j].solve_many(rhs);
  if (!sol) throw Error("upsilon: product escapes the Hom space");
  sc_[i][j].resize(ni * nj);
  for (std::size_t c = 0; c < ni * nj; ++c) {
    std::vector<Scalar> v;
    for (std::size_t r = 0; r < sol->rows(); ++r) v.push_back(sol->at(r, c));
    sc_[i][j][c] = std::move(v);
  }
  sc_done_[i][j] = true;
}

const std::vector<Scalar>& UpsilonAlgebra::structure(std::size_t i, std::size_t a, std::size_t j,
                                                     std::size_t b) {
  if (i + j > d_) throw Error("upsilon: product beyond the degree bound");
  ensure_structure(i, j);
  return sc_[i][j][a * basis_[j].size() + b];
}

std::vector<Scalar> UpsilonAlgebra::coords(std::size_t i, const RepMap& f) const {
  std::vector<Scalar> fl = flat_map(f);
  Matrix b(bmat_[i].field(), fl.size(), 1);
  for (std::size_t r = 0; r < fl.size(); ++r) b.at(r, 0) = fl[r];
  std::optional<Matrix> sol = bmat_[i].solve(b);
  if (!sol) throw Error("upsilon: map is outside the Hom space");
  std::vector<Scalar> out;
  for (std::size_t r = 0; r < sol->rows(); ++r) out.push_back(sol->at(r, 0));
  return out;
}

bool UpsilonAlgebra::associative(std::size_t max_total, std::string* why) {
  for (std::size_t i = 0; i <= max_total && i <= d_; ++i)
    for (std::size_t j = 0; i + j <= max_total && i + j <= d_; ++j)
      for (std::size_t k = 0; i + j + k <= max_total && i + j + k <= d_; ++k) {
        ensure_structure(i, j);
        ensure_structure(i + j, k);
        ensure_structure(j, k);
        ensure_structure(i, j + k);
        std::size_t nf = basis_[i + j + k].size();
        for (std::size_t a = 0; a < basis_[i].size(); ++a)
          for (std::size_t b = 0; b < basis_[j].size(); ++b)
            for (std::size_t c = 0; c < basis_[k].size(); ++c) {
              std::vector<Scalar> lhs(nf, Scalar::zero(bmat_[0].field()));
              std::vector<Scalar> rhs = lhs;
              const std::vector<Scalar>& ab = structure(i, a, j, b);
              for (std::size_t e = 0; e < ab.size(); ++e) {
                if (ab[e].is_zero()) continue;
                const std::vector<Scalar>& ec = structure(i + j, e, k, c);
                for (std::size_t t = 0; t < nf; ++t) lhs[t] = lhs[t] + ab[e] * ec[t];
              }
              const std::vector<Scalar>& bc = structure(j, b, k, c);
              for (std::size_t g = 0; g < bc.size(); ++g) {
                if (bc[g].is_zero()) continue;
                const std::vector<Scalar>& ag = structure(i, a, j + k, g);
                for (std::size_t t = 0; t < nf; ++t) rhs[t] = rhs[t] + bc[g] * ag[t];
              }
              if (lhs != rhs) {
                if (why)
                  *why = "associativity fails at degrees (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + ")";
                return false;
              }
            }
      }
  return true;
}

UpsilonAlgebra upsilon(const NuEngine& eng, const Representation& x, std::size_t d) {
  return UpsilonAlgebra(eng, x, d);
}

GradedTruncation preprojective_truncation(const NuEngine& eng, std::size_t d) {
  GradedTruncation g;
  g.degree = d;
  Representation lam = regular_module(eng.algebra());
  g.ups = std::make_shared<UpsilonAlgebra>(eng, lam, d);
  for (std::size_t i = 0; i <= d; ++i) g.dims.push_back(g.ups->orbit(i).total_dim());
  g.upsilon_dims = g.ups->dims();
  g.routes_agree = g.dims == g.upsilon_dims;

  g.degree_one_generated = true;
  Field f = lam.field();
  for (std::size_t i = 0; i + 1 <= d && g.degree_one_generated; ++i) {
    SpanBuilder sp(f, g.ups->dim(i + 1));
    for (std::size_t a = 0; a < g.ups->dim(1); ++a)
      for (std::size_t b = 0; b < g.ups->dim(i); ++b) sp.insert(g.ups->structure(1, a, i, b));
    if (sp.dim() != g.ups->dim(i + 1)) g.degree_one_generated = false;
  }
  return g;
}

GradedModuleTruncation hat(const NuEngine& eng, const Representation& x, std::size_t d) {
  BoundedCertificate cert = eng.in_N_minus(x, d);
  if (!cert.pass)
    throw Error("hat: module leaves N^- at step " + std::to_string(cert.failed_step) + ": " +
                cert.reason);
  GradedModuleTruncation g;
  g.degree = d;
  g.tower = tau_tower(eng, x, d);
  for (const Representation& p : g.tower.piece) g.dims.push_back(p.total_dim());
  return g;
}

std::vector<RepMap> hat_map(const NuEngine& eng, const GradedModuleTruncation& from,
                            const GradedModuleTruncation& to, const RepMap& f) {
  std::vector<RepMap> out{f};
  for (std::size_t i = 0; i < from.degree && i < to.degree; ++i)
    out.push_back(eng.tau_inverse_map(from.tower.obj[i], to.tower.obj[i], out.back()));
  return out;
}

GradedExactness graded_resolution_of_simple(const NuEngine& eng, const AprContext& ctx,
                                            std::size_t d) {
  GradedExactness rep;
  rep.degree = d;
  std::size_t n = ctx.n;

  BoundedCertificate cs = eng.in_N_minus(ctx.s, d + 1);
  if (!cs.pass) throw Error("graded resolution: S leaves N^-: " + cs.reason);
  BoundedCertificate cl = eng.in_N_minus(regular_module(eng.algebra()), d);
  if (!cl.pass) throw Error("graded resolution: Lambda leaves N^-: " + cl.reason);

  // 0 -> S -> P_1 -> ... -> P_n -> tau^-(S) -> 0, then tau^{-e} slices.
  std::vector<TauTower> tw;
  for (std::size_t k = 0; k <= n; ++k) tw.push_back(tau_tower(eng, ctx.res.terms[n - k], d));
  TauTower tail = tau_tower(eng, ctx.tau_inv_s, d);

  std::vector<RepMap> cur;
  for (std::size_t k = 0; k < n; ++k) cur.push_back(ctx.res.diffs[n - 1 - k]);
  cur.push_back(ctx.res.augment);

  rep.pass = true;
  for (std::size_t e = 0; e <= d; ++e) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k <= n; ++k) dims.push_back(tw[k].piece[e].total_dim());
    dims.push_back(tail.piece[e].total_dim());
    rep.slice_dims.push_back(dims);

    std::optional<std::string> bad = chain_fail(cur);
    if (bad) {
      rep.pass = false;
      rep.failed_degree = e;
      rep.failure = "degree " + std::to_string(e) + ": " + *bad;
      return rep;
    }
    if (e == d) break;
    for (std::size_t k = 0; k <= n; ++k) {
      const TauInvObject& src = tw[k].obj[e];
      const TauInvObject& dst = k == n ? tail.obj[e] : tw[k + 1].obj[e];
      cur[k] = eng.tau_inverse_map(src, dst, cur[k]);
    }
  }
  return rep;
}

HatTiltingReport hat_tilting_check(const NuEngine& eng, const AprContext& ctx, std::size_t d) {
  HatTiltingReport rep;
  rep.degree = d;
  std::size_t n = ctx.n, m = ctx.m;

  BoundedCertificate cl = eng.in_N_minus(regular_module(eng.algebra()), d + 1);
  if (!cl.pass) throw Error("hat tilting: Lambda leaves N^-: " + cl.reason);
  BoundedCertificate ct = eng.in_N_minus(ctx.t, d);
  if (!ct.pass) throw Error("hat tilting: T leaves N^-: " + ct.reason);

  // Graded projective resolution of K_m-hat: the hat of
  // 0 -> S -> P_1 -> ... -> P_m -> K_m -> 0, checked exact in each degree.
  std::vector<Representation> mods;
  for (std::size_t k = 0; k <= m; ++k) mods.push_back(ctx.res.terms[n - k]);
  std::vector<RepMap> cur;
  for (std::size_t k = 0; k + 1 <= m; ++k) cur.push_back(ctx.res.diffs[n - 1 - k]);
  Representation target;
  if (m == n) {
    target = ctx.tau_inv_s;
    cur.push_back(ctx.res.augment);
  } else {
    SubQuotient im = image(ctx.res.diffs[n - 1 - m]);
    target = im.rep;
    cur.push_back(corestrict_to_image(ctx.res.diffs[n - 1 - m], im));
  }

  std::vector<TauTower> tw;
  for (const Representation& x : mods) tw.push_back(tau_tower(eng, x, d));
  TauTower tail = tau_tower(eng, target, d);

  rep.t1 = rep.t3 = true;
  for (std::size_t e = 0; e <= d; ++e) {
    std::optional<std::string> bad = chain_fail(cur);
    if (bad) {
      rep.t1 = rep.t3 = false;
      rep.first_failure = "T1/T3: hatted resolution fails in degree " + std::to_string(e) + ": " +
                          *bad;
      break;
    }
    if (e == d) break;
    for (std::size_t k = 0; k <= m; ++k) {
      const TauInvObject& src = tw[k].obj[e];
      const TauInvObject& dst = k == m ? tail.obj[e] : tw[k + 1].obj[e];
      cur[k] = eng.tau_inverse_map(src, dst, cur[k]);
    }
  }

  // (T2): graded Ext^i(T-hat, T-hat) in degree e is Ext^i(K_m, tau^{-e} T),
  // read off the finite graded resolution above.
  rep.t2 = true;
  ProjResolution rk = min_resolution(ctx.syzygy[m], n + 2);
  TauTower tt = tau_tower(eng, ctx.t, d);
  for (std::size_t e = 0; e <= d && rep.t2; ++e)
    for (std::size_t i = 1; i <= n + 1 && i <= rk.length(); ++i) {
      std::size_t dim = ext_from(rk, tt.piece[e], i).dim;
      if (dim != 0) {
        rep.t2 = false;
        if (rep.first_failure.empty())
          rep.first_failure = "T2: graded Ext^" + std::to_string(i) + "(T-hat, T-hat) in degree " +
                              std::to_string(e) + " has dimension " + std::to_string(dim);
        break;
      }
    }

  rep.pass = rep.t1 && rep.t2 && rep.t3;
  return rep;
}

NAprIsoReport n_apr_iso_check(const NuEngine& eng, const AprContext& ctx, std::size_t d) {
  if (ctx.m != ctx.n)
    throw Error("n_apr_iso_check: requires m = n (got m = " + std::to_string(ctx.m) + ", n = " +
                std::to_string(ctx.n) + ")");
  NAprIsoReport rep;
  rep.degree = d;
  const FDAlgebra& alg = eng.algebra();
  Field f = alg.field();
  CanonicalModules cm = canonical_modules(alg);

  std::vector<const Representation*> allp, qparts;
  for (std::size_t w = 0; w < cm.projectives.size(); ++w) {
    allp.push_back(&cm.projectives[w]);
    if (w != ctx.vertex) qparts.push_back(&cm.projectives[w]);
  }
  Representation lam = direct_sum(allp);
  Representation q = direct_sum(qparts);

  BoundedCertificate cl = eng.in_N_minus(lam, d + 1);
  if (!cl.pass) {
    rep.failure = "Lambda leaves N^-: " + cl.reason;
    return rep;
  }

  TauTower tL = tau_tower(eng, lam, d + 1);
  TauTower tQ = tau_tower(eng, q, d + 1);
  TauTower tS = tau_tower(eng, ctx.s, d + 1);

  // Graded inclusion iota: T-hat -> Lambda-hat with T-hat_i =
  // tau^{-i}(Q) (+) tau^{-i}(S) (the K-hat summand shifted into alignment).
  RepMap incS = summand_inclusion(allp, lam, ctx.vertex);
  RepMap incQ = RepMap::zero(q, lam);
  {
    std::size_t pos = 0;
    for (std::size_t w = 0; w < cm.projectives.size(); ++w) {
      if (w == ctx.vertex) continue;
      incQ = incQ + summand_projection(qparts, q, pos).then(summand_inclusion(allp, lam, w));
      ++pos;
    }
  }

  std::vector<RepMap> liftQ{incQ}, liftS{incS};
  for (std::size_t i = 0; i <= d; ++i) {
    liftQ.push_back(eng.tau_inverse_map(tQ.obj[i], tL.obj[i], liftQ.back()));
    liftS.push_back(eng.tau_inverse_map(tS.obj[i], tL.obj[i], liftS.back()));
  }

  const Representation& kmod = tS.piece[1];  // K = tau^-(S)
  for (std::size_t i = 0; i <= d; ++i) {
    rep.lambda_dims.push_back(tL.piece[i].total_dim());

    // Slice of 0 -> T-hat -> Lambda-hat -> S -> 0 in degree i.
    if (i == 0) {
      if (rank_of(incQ) != q.total_dim() || !isomorphic(cokernel(incQ).rep, ctx.s)) {
        rep.failure = "degree 0: coker(Q -> Lambda) is not S";
        return rep;
      }
    } else {
      std::vector<const Representation*> two{&tQ.piece[i], &tS.piece[i]};
      Representation dsum = direct_sum(two);
      std::vector<Matrix> comps;
      for (std::size_t v = 0; v < dsum.vertex_count(); ++v)
        comps.push_back(Matrix::vstack(liftQ[i].at(v), liftS[i].at(v)));
      RepMap comb(dsum, tL.piece[i], std::move(comps));
      if (dsum.total_dim() != tL.piece[i].total_dim() || rank_of(comb) != dsum.total_dim()) {
        rep.failure = "degree " + std::to_string(i) +
                      ": tau^{-i}(Q) (+) tau^{-i}(S) is not tau^{-i}(Lambda)";
        return rep;
      }
    }

    // Hom(T-hat, iota) in degree i: the four Peirce blocks of End(T-hat)_i
    // postcomposed with the slices of iota, against Hom(T-hat, Lambda-hat)_i.
    std::vector<RepMap> hqq = hom_space(q, tQ.piece[i]);
    std::vector<RepMap> hqs = i >= 1 ? hom_space(q, tS.piece[i]) : std::vector<RepMap>{};
    std::vector<RepMap> hkq = hom_space(kmod, tQ.piece[i + 1]);
    std::vector<RepMap> hks = hom_space(kmod, tS.piece[i + 1]);
    std::size_t src_dim = hqq.size() + hqs.size() + hkq.size() + hks.size();
    rep.endo_dims.push_back(src_dim);

    std::size_t tgt1 = hom_space(q, tL.piece[i]).size();
    std::size_t tgt2 = hom_space(kmod, tL.piece[i + 1]).size();
    std::size_t w1 = flat_width(q, tL.piece[i]);
    std::size_t w2 = flat_width(kmod, tL.piece[i + 1]);
    std::vector<std::vector<Scalar>> cols;
    auto block_col = [&](const RepMap& g, bool first) {
      std::vector<Scalar> col(w1 + w2, Scalar::zero(f));
      std::vector<Scalar> fl = flat_map(g);
      std::size_t off = first ? 0 : w1;
      for (std::size_t r = 0; r < fl.size(); ++r) col[off + r] = fl[r];
      return col;
    };
    for (const RepMap& h : hqq) cols.push_back(block_col(h.then(liftQ[i]), true));
    for (const RepMap& h : hqs) cols.push_back(block_col(h.then(liftS[i]), true));
    for (const RepMap& h : hkq) cols.push_back(block_col(h.then(liftQ[i + 1]), false));
    for (const RepMap& h : hks) cols.push_back(block_col(h.then(liftS[i + 1]), false));
    Matrix mc = cols_from(f, w1 + w2, cols);
    if (src_dim != tgt1 + tgt2 || mc.rank() != src_dim) {
      rep.failure = "degree " + std::to_string(i) + ": Hom(T-hat, iota) is not bijective";
      return rep;
    }
    if (src_dim != rep.lambda_dims[i]) {
      rep.failure = "degree " + std::to_string(i) + ": dim End(T-hat) = " +
                    std::to_string(src_dim) + " differs from dim Lambda-hat = " +
                    std::to_string(rep.lambda_dims[i]);
      return rep;
    }

    // Hom(iota, Lambda-hat) in degree i: restriction along iota of
    // Hom(Lambda-hat, Lambda-hat(i))_0 = Hom(Lambda, tau^{-i} Lambda).
    std::vector<RepMap> homL = hom_space(lam, tL.piece[i]);
    if (homL.size() != tgt1 + tgt2) {
      rep.failure = "degree " + std::to_string(i) + ": Hom(iota, Lambda-hat) dimension mismatch";
      return rep;
    }
    std::vector<std::vector<Scalar>> rcols;
    for (const RepMap& g : homL) rcols.push_back(flat_map(incQ.then(g)));
    Matrix rmat = cols_from(f, w1, rcols);
    Matrix ker = rmat.kernel_basis();
    SpanBuilder indep(f, flat_width(kmod, tL.piece[i + 1]));
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      RepMap g0 = RepMap::zero(lam, tL.piece[i]);
      for (std::size_t r = 0; r < homL.size(); ++r)
        if (!ker.at(r, c).is_zero()) g0 = g0 + homL[r] * ker.at(r, c);
      RepMap tg0 = eng.tau_inverse_map(tL.obj[0], tL.obj[i], g0);
      if (!indep.insert(flat_map(liftS[1].then(tg0)))) {
        rep.failure = "degree " + std::to_string(i) + ": Hom(iota, Lambda-hat) is not injective";
        return rep;
      }
    }
  }

  rep.pass = true;
  return rep;
}

namespace {

/// Basis-path indices of e_v A e_w in element order (the canonical
/// projective layout of repmod).
std::vector<std::size_t> peirce_slice(const FDAlgebra& alg, std::size_t v, std::size_t w) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (alg.element(i).source() == v && alg.element(i).target() == w) idx.push_back(i);
  return idx;
}

/// Left multiplication by the algebra element with the given coordinates, as
/// an endomorphism of the regular module (+)_v P_v.
RepMap left_mult_map(const FDAlgebra& alg, const std::vector<Scalar>& coords,
                     const Representation& reg) {
  Field f = alg.field();
  std::size_t nv = alg.quiver().vertex_count();
  std::vector<std::vector<std::vector<std::size_t>>> sl(nv);
  std::vector<std::vector<std::size_t>> off(nv, std::vector<std::size_t>(nv, 0));
  for (std::size_t v = 0; v < nv; ++v) {
    sl[v].resize(nv);
    for (std::size_t w = 0; w < nv; ++w) sl[v][w] = peirce_slice(alg, v, w);
  }
  for (std::size_t w = 0; w < nv; ++w) {
    std::size_t o = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      off[v][w] = o;
      o += sl[v][w].size();
    }
  }
  std::vector<std::size_t> pos(alg.dim(), 0);  // position within its slice
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t w = 0; w < nv; ++w)
      for (std::size_t k = 0; k < sl[v][w].size(); ++k) pos[sl[v][w][k]] = k;

  std::vector<Matrix> comps;
  for (std::size_t w = 0; w < nv; ++w) {
    Matrix m(f, reg.dim(w), reg.dim(w));
    for (std::size_t t = 0; t < nv; ++t)
      for (std::size_t qi = 0; qi < sl[t][w].size(); ++qi) {
        std::size_t qidx = sl[t][w][qi];
        std::vector<Scalar> acc(alg.dim(), Scalar::zero(f));
        for (std::size_t p = 0; p < alg.dim(); ++p) {
          if (coords[p].is_zero()) continue;
          const std::vector<Scalar>& pr = alg.product(p, qidx);
          for (std::size_t r = 0; r < alg.dim(); ++r)
            if (!pr[r].is_zero()) acc[r] = acc[r] + coords[p] * pr[r];
        }
        for (std::size_t r = 0; r < alg.dim(); ++r) {
          if (acc[r].is_zero()) continue;
          std::size_t s = alg.element(r).source();
          m.at(off[t][w] + qi, off[s][w] + pos[r]) = acc[r];
        }
      }
    comps.push_back(std::move(m));
  }
  return RepMap(reg, reg, std::move(comps));
}

Matrix sc_matrix(UpsilonAlgebra& a, std::size_t i, std::size_t j) {
  std::size_t ni = a.dim(i), nj = a.dim(j), nf = a.dim(i + j);
  Matrix m(a.module().field(), nf, ni * nj);
  for (std::size_t x = 0; x < ni; ++x)
    for (std::size_t y = 0; y < nj; ++y) {
      const std::vector<Scalar>& s = a.structure(i, x, j, y);
      for (std::size_t r = 0; r < nf; ++r) m.at(r, x * nj + y) = s[r];
    }
  return m;
}

}  // namespace

GradedEndoReport graded_endo_comparison(const NuEngine& eng, const AprContext& ctx,
                                        const EndoPresentation& ep, const NuEngine& gamma_eng,
                                        std::size_t d) {
  GradedEndoReport rep;
  rep.degree = d;
  Field f = eng.algebra().field();

  UpsilonAlgebra u(eng, ctx.t, d);
  Representation greg = regular_module(gamma_eng.algebra());
  UpsilonAlgebra v(gamma_eng, greg, d);
  rep.t_dims = u.dims();
  rep.gamma_dims = v.dims();
  rep.dims_ok = rep.t_dims == rep.gamma_dims;
  if (!rep.dims_ok) {
    rep.failure = "slice dimensions differ";
    return rep;
  }

  const FDAlgebra& gam = gamma_eng.algebra();
  std::size_t ng = gam.dim();

  // Phi_0 = (left multiplication on Gamma) after (coordinates over the
  // presentation images of the Gamma basis).
  auto phi_pres = [&](const Path& p) {
    if (p.is_stationary()) return ep.idempotents[p.source()];
    const std::vector<std::size_t>& as = p.arrows();
    RepMap g = ep.arrow_maps[as.back()];
    for (std::size_t k = as.size() - 1; k-- > 0;) g = g.then(ep.arrow_maps[as[k]]);
    return g;
  };
  std::size_t wu = flat_width(ep.sum, ep.sum);
  std::vector<std::vector<Scalar>> pcols;
  for (std::size_t p = 0; p < ng; ++p) pcols.push_back(flat_map(phi_pres(gam.element(p))));
  Matrix m0 = cols_from(f, wu, pcols);
  std::vector<std::vector<Scalar>> ucols;
  for (const RepMap& g : u.basis(0)) ucols.push_back(flat_map(g));
  std::optional<Matrix> gcoords = m0.solve_many(cols_from(f, wu, ucols));
  if (!gcoords) {
    rep.failure = "End(T) basis escapes the presented algebra";
    return rep;
  }

  std::vector<Matrix> phi(d + 1, Matrix(f, 0, 0));
  {
    std::vector<std::vector<Scalar>> cols;
    for (std::size_t a = 0; a < u.dim(0); ++a) {
      std::vector<Scalar> c;
      for (std::size_t r = 0; r < ng; ++r) c.push_back(gcoords->at(r, a));
      cols.push_back(v.coords(0, left_mult_map(gam, c, greg)));
    }
    phi[0] = cols_from(f, v.dim(0), cols);
  }
  if (!phi[0].inverse()) {
    rep.failure = "degree 0: base change is not invertible";
    return rep;
  }

  // Phi_1: an invertible bimodule map over the degree-0 generators, found by
  // solving the intertwining constraints on the Peirce-block ansatz.
  std::size_t n1 = u.dim(1);
  if (d >= 1 && n1 > 0) {
    // Peirce blocks via idempotent left/right actions.
    std::size_t r = ep.idempotents.size();
    std::vector<std::vector<Scalar>> uid, vid;
    for (std::size_t k = 0; k < r; ++k) {
      uid.push_back(u.coords(0, ep.idempotents[k]));
      std::vector<Scalar> e(ng, Scalar::zero(f));
      e[gam.stationary_index(k)] = Scalar::one(f);
      vid.push_back(v.coords(0, left_mult_map(gam, e, greg)));
    }
    auto act_left = [&](UpsilonAlgebra& a, const std::vector<Scalar>& al) {
      Matrix m(f, a.dim(1), a.dim(1));
      for (std::size_t p = 0; p < a.dim(0); ++p) {
        if (al[p].is_zero()) continue;
        for (std::size_t x = 0; x < a.dim(1); ++x) {
          const std::vector<Scalar>& s = a.structure(0, p, 1, x);
          for (std::size_t t = 0; t < a.dim(1); ++t) m.at(t, x) = m.at(t, x) + al[p] * s[t];
        }
      }
      return m;
    };
    auto act_right = [&](UpsilonAlgebra& a, const std::vector<Scalar>& al) {
      Matrix m(f, a.dim(1), a.dim(1));
      for (std::size_t p = 0; p < a.dim(0); ++p) {
        if (al[p].is_zero()) continue;
        for (std::size_t x = 0; x < a.dim(1); ++x) {
          const std::vector<Scalar>& s = a.structure(1, x, 0, p);
          for (std::size_t t = 0; t < a.dim(1); ++t) m.at(t, x) = m.at(t, x) + al[p] * s[t];
        }
      }
      return m;
    };

    std::vector<Matrix> bu, bv;  // per (i,j) block: columns in degree-1 coords
    for (std::size_t bi = 0; bi < r; ++bi)
      for (std::size_t bj = 0; bj < r; ++bj) {
        Matrix pu = act_left(u, uid[bi]) * act_right(u, uid[bj]);
        Matrix pv = act_left(v, vid[bi]) * act_right(v, vid[bj]);
        bu.push_back(pu.column_space_basis());
        bv.push_back(pv.column_space_basis());
        if (bu.back().cols() != bv.back().cols()) {
          rep.failure = "degree 1: Peirce block (" + std::to_string(bi) + "," +
                        std::to_string(bj) + ") dimensions differ";
          return rep;
        }
      }
    Matrix bufull(f, n1, 0), bvfull(f, n1, 0);
    for (std::size_t k = 0; k < bu.size(); ++k) {
      bufull = Matrix::hstack(bufull, bu[k]);
      bvfull = Matrix::hstack(bvfull, bv[k]);
    }
    std::optional<Matrix> buinv = bufull.inverse();
    if (!buinv || bvfull.cols() != n1) {
      rep.failure = "degree 1: Peirce blocks do not decompose the slice";
      return rep;
    }

    // Unknowns: one square block per Peirce block.
    std::vector<Matrix> contrib;  // candidate n1 x n1 matrices, one per unknown
    {
      std::size_t coloff = 0;
      for (std::size_t k = 0; k < bu.size(); ++k) {
        std::size_t bdim = bu[k].cols();
        for (std::size_t s = 0; s < bdim; ++s)
          for (std::size_t t = 0; t < bdim; ++t) {
            Matrix e(f, n1, n1);
            for (std::size_t rr = 0; rr < n1; ++rr)
              for (std::size_t cc = 0; cc < n1; ++cc)
                e.at(rr, cc) = bv[k].at(rr, s) * buinv->at(coloff + t, cc);
            contrib.push_back(std::move(e));
          }
        coloff += bdim;
      }
    }
    std::size_t nun = contrib.size();

    // Intertwining rows over the arrow generators of Gamma.
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t ai = 0; ai < ep.arrow_maps.size(); ++ai) {
      std::vector<Scalar> ua = u.coords(0, ep.arrow_maps[ai]);
      std::vector<Scalar> va = mat_vec(phi[0], ua);
      Matrix mlu = act_left(u, ua), mru = act_right(u, ua);
      Matrix mlv = act_left(v, va), mrv = act_right(v, va);
      for (std::size_t x = 0; x < n1; ++x)
        for (std::size_t out = 0; out < n1; ++out) {
          std::vector<Scalar> rl(nun, Scalar::zero(f)), rr(nun, Scalar::zero(f));
          for (std::size_t k = 0; k < nun; ++k) {
            // L(a*x) - Phi0(a)*(L x)  and  L(x*a) - (L x)*Phi0(a)
            Scalar vl = Scalar::zero(f), vr = Scalar::zero(f);
            for (std::size_t q = 0; q < n1; ++q) {
              if (!mlu.at(q, x).is_zero()) vl = vl + contrib[k].at(out, q) * mlu.at(q, x);
              if (!mru.at(q, x).is_zero()) vr = vr + contrib[k].at(out, q) * mru.at(q, x);
              if (!contrib[k].at(q, x).is_zero()) {
                vl = vl - mlv.at(out, q) * contrib[k].at(q, x);
                vr = vr - mrv.at(out, q) * contrib[k].at(q, x);
              }
            }
            rl[k] = vl;
            rr[k] = vr;
          }
          rows.push_back(std::move(rl));
          rows.push_back(std::move(rr));
        }
    }
    Matrix sys(f, rows.size(), nun);
    for (std::size_t rr = 0; rr < rows.size(); ++rr)
      for (std::size_t cc = 0; cc < nun; ++cc) sys.at(rr, cc) = rows[rr][cc];
    Matrix ker = sys.kernel_basis();

    auto assemble = [&](const std::vector<Scalar>& lam) {
      Matrix l(f, n1, n1);
      for (std::size_t k = 0; k < nun; ++k) {
        if (lam[k].is_zero()) continue;
        for (std::size_t rr = 0; rr < n1; ++rr)
          for (std::size_t cc = 0; cc < n1; ++cc)
            l.at(rr, cc) = l.at(rr, cc) + contrib[k].at(rr, cc) * lam[k];
      }
      return l;
    };
    bool found = false;
    for (std::size_t c = 0; c < ker.cols() && !found; ++c) {
      std::vector<Scalar> lam;
      for (std::size_t rr = 0; rr < nun; ++rr) lam.push_back(ker.at(rr, c));
      Matrix cand = assemble(lam);
      if (cand.inverse()) {
        phi[1] = std::move(cand);
        found = true;
      }
    }
    for (long j = 2; j < 40 && !found && ker.cols() > 0; ++j) {
      std::vector<Scalar> lam(nun, Scalar::zero(f));
      Scalar pw = Scalar::one(f);
      Scalar base(f, j);
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        for (std::size_t rr = 0; rr < nun; ++rr) lam[rr] = lam[rr] + ker.at(rr, c) * pw;
        pw = pw * base;
      }
      Matrix cand = assemble(lam);
      if (cand.inverse()) {
        phi[1] = std::move(cand);
        found = true;
      }
    }
    if (!found) {
      rep.failure = "degree 1: no invertible bimodule map found";
      return rep;
    }
  } else if (d >= 1) {
    phi[1] = Matrix(f, 0, 0);
  }

  // Higher degrees: Phi_{i} forced by Phi_1 (x) Phi_{i-1} over the degree-1
  // generation surjection, then verified globally.
  for (std::size_t i = 2; i <= d; ++i) {
    Matrix mu = sc_matrix(u, 1, i - 1);  // dim_i x (n1 * dim_{i-1})
    if (mu.rank() != u.dim(i)) {
      rep.failure = "degree " + std::to_string(i) + ": not generated in degree 1";
      return rep;
    }
    // W = sc_V contracted with Phi_1 and Phi_{i-1}.
    std::size_t nim1 = u.dim(i - 1), nfi = u.dim(i);
    Matrix mv = sc_matrix(v, 1, i - 1);
    Matrix w(f, nfi, n1 * nim1);
    for (std::size_t x = 0; x < n1; ++x)
      for (std::size_t y = 0; y < nim1; ++y)
        for (std::size_t p = 0; p < n1; ++p) {
          if (phi[1].at(p, x).is_zero()) continue;
          for (std::size_t qq = 0; qq < nim1; ++qq) {
            Scalar c = phi[1].at(p, x) * phi[i - 1].at(qq, y);
            if (c.is_zero()) continue;
            for (std::size_t t = 0; t < nfi; ++t)
              w.at(t, x * nim1 + y) = w.at(t, x * nim1 + y) + mv.at(t, p * nim1 + qq) * c;
          }
        }
    std::optional<Matrix> sol = mu.transpose().solve_many(w.transpose());
    if (!sol) {
      rep.failure = "degree " + std::to_string(i) + ": multiplication does not descend";
      return rep;
    }
    phi[i] = sol->transpose();
    if (!phi[i].inverse()) {
      rep.failure = "degree " + std::to_string(i) + ": comparison map is not invertible";
      return rep;
    }
  }

  // Full intertwining on all structure constants in range.
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; i + j <= d; ++j) {
      std::size_t ni = u.dim(i), nj = u.dim(j), nf = u.dim(i + j);
      Matrix lhs = phi[i + j] * sc_matrix(u, i, j);
      Matrix mv = sc_matrix(v, i, j);
      // contract over the first factor, then the second
      Matrix t1(f, nf * nj, ni);
      for (std::size_t t = 0; t < nf; ++t)
        for (std::size_t qq = 0; qq < nj; ++qq)
          for (std::size_t p = 0; p < ni; ++p) t1.at(t * nj + qq, p) = mv.at(t, p * nj + qq);
      Matrix b1 = t1 * phi[i];  // [(t, q)][a]
      Matrix t2(f, nf * ni, nj);
      for (std::size_t t = 0; t < nf; ++t)
        for (std::size_t qq = 0; qq < nj; ++qq)
          for (std::size_t a = 0; a < ni; ++a) t2.at(t * ni + a, qq) = b1.at(t * nj + qq, a);
      Matrix b2 = t2 * phi[j];  // [(t, a)][b]
      Matrix rhs(f, nf, ni * nj);
      for (std::size_t t = 0; t < nf; ++t)
        for (std::size_t a = 0; a < ni; ++a)
          for (std::size_t b = 0; b < nj; ++b) rhs.at(t, a * nj + b) = b2.at(t * ni + a, b);
      if (!(lhs == rhs)) {
        rep.failure = "intertwining fails on the degree (" + std::to_string(i) + "," +
                      std::to_string(j) + ") products";
        return rep;
      }
    }

  rep.pass = true;
  return rep;
}

namespace {

/// The element of M at vertex w with the given coordinates, as the map
/// P_w -> M sending the generator to it.
RepMap element_to_map(const FDAlgebra& alg, std::size_t w, const Representation& pw,
                      const Representation& m, const std::vector<Scalar>& vec) {
  Field f = alg.field();
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    std::vector<std::size_t> sl = peirce_slice(alg, w, v);
    Matrix c(f, pw.dim(v), m.dim(v));
    for (std::size_t r = 0; r < sl.size(); ++r) {
      Matrix act = m.path_action(alg.element(sl[r]));
      for (std::size_t cc = 0; cc < m.dim(v); ++cc) {
        Scalar acc = Scalar::zero(f);
        for (std::size_t k = 0; k < m.dim(w); ++k)
          if (!vec[k].is_zero() && !act.at(k, cc).is_zero()) acc = acc + vec[k] * act.at(k, cc);
        c.at(r, cc) = acc;
      }
    }
    comps.push_back(std::move(c));
  }
  return RepMap(pw, m, std::move(comps));
}

/// The generator image of a map P_w -> M, inverse to element_to_map.
std::vector<Scalar> map_to_element(const FDAlgebra& alg, std::size_t w, const RepMap& f) {
  std::vector<std::size_t> sl = peirce_slice(alg, w, w);
  std::size_t gen = 0;
  for (std::size_t k = 0; k < sl.size(); ++k)
    if (sl[k] == alg.stationary_index(w)) gen = k;
  std::vector<Scalar> out;
  for (std::size_t c = 0; c < f.to().dim(w); ++c) out.push_back(f.at(w).at(gen, c));
  return out;
}

/// Left multiplication by an arrow a: s -> t as a map P_t -> P_s.
RepMap arrow_left_mult(const FDAlgebra& alg, std::size_t arrow, const Representation& pt,
                       const Representation& ps) {
  Field f = alg.field();
  const Quiver& q = alg.quiver();
  std::size_t s = q.arrow(arrow).source, t = q.arrow(arrow).target;
  std::size_t ia = alg.index_of(Path(q, s, {arrow}));
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < pt.vertex_count(); ++v) {
    std::vector<std::size_t> slt = peirce_slice(alg, t, v);
    std::vector<std::size_t> sls = peirce_slice(alg, s, v);
    Matrix c(f, pt.dim(v), ps.dim(v));
    for (std::size_t r = 0; r < slt.size(); ++r) {
      const std::vector<Scalar>& pr = alg.product(ia, slt[r]);
      for (std::size_t cc = 0; cc < sls.size(); ++cc) c.at(r, cc) = pr[sls[cc]];
    }
    comps.push_back(std::move(c));
  }
  return RepMap(pt, ps, std::move(comps));
}

struct BVal {
  std::size_t u = 0, w = 0, k = 0;
  RepMap map;  // P_w -> tau^{-k}(P_u)
};

}  // namespace

TruncAlgebra truncation_algebra(const NuEngine& eng, std::size_t d) {
  const FDAlgebra& alg = eng.algebra();
  Field f = alg.field();
  const Quiver& q0 = alg.quiver();
  std::size_t nv = q0.vertex_count();
  CanonicalModules cm = canonical_modules(alg);

  Representation lam = regular_module(alg);
  BoundedCertificate cert = eng.in_N_minus(lam, d);
  if (!cert.pass) throw Error("truncation algebra: Lambda leaves N^-: " + cert.reason);

  std::vector<TauTower> pt;
  for (std::size_t u = 0; u < nv; ++u) pt.push_back(tau_tower(eng, cm.projectives[u], d));
  std::vector<std::size_t> hat_dims(d + 1, 0);
  for (std::size_t k = 0; k <= d; ++k)
    for (std::size_t u = 0; u < nv; ++u) hat_dims[k] += pt[u].piece[k].total_dim();

  // Arrow data: each B-arrow carries its underlying hat-element.
  std::vector<RepMap> lmul;  // left multiplication per Lambda-arrow
  for (std::size_t a = 0; a < q0.arrows().size(); ++a)
    lmul.push_back(arrow_left_mult(alg, a, cm.projectives[q0.arrow(a).target],
                                   cm.projectives[q0.arrow(a).source]));

  // Degree-1 generators: a basis of the top of Lambda-hat_1 as a bimodule,
  // the complement of rad * hat_1 + hat_1 * rad per target vertex.
  std::vector<BVal> gens1;
  if (d >= 1) {
    std::vector<RepMap> lmul1;
    for (std::size_t a = 0; a < q0.arrows().size(); ++a)
      lmul1.push_back(tau_shift(eng, pt[q0.arrow(a).target], 0, pt[q0.arrow(a).source], 0,
                                lmul[a], 1));
    for (std::size_t w = 0; w < nv; ++w) {
      std::vector<std::size_t> o1(nv + 1, 0);
      for (std::size_t u = 0; u < nv; ++u) o1[u + 1] = o1[u] + pt[u].piece[1].dim(w);
      SpanBuilder sp(f, o1[nv]);
      auto embed_rows = [&](const Matrix& m, std::size_t u) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
          std::vector<Scalar> row(o1[nv], Scalar::zero(f));
          for (std::size_t c = 0; c < m.cols(); ++c) row[o1[u] + c] = m.at(r, c);
          sp.insert(std::move(row));
        }
      };
      for (std::size_t u = 0; u < nv; ++u)
        embed_rows(module_radical(pt[u].piece[1]).map.at(w), u);
      for (std::size_t a = 0; a < q0.arrows().size(); ++a)
        embed_rows(lmul1[a].at(w), q0.arrow(a).source);
      for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t c = 0; c < pt[u].piece[1].dim(w); ++c) {
          std::vector<Scalar> e(o1[nv], Scalar::zero(f));
          e[o1[u] + c] = Scalar::one(f);
          if (!sp.insert(std::move(e))) continue;
          std::vector<Scalar> vec(pt[u].piece[1].dim(w), Scalar::zero(f));
          vec[c] = Scalar::one(f);
          gens1.push_back(
              {u, w, 1, element_to_map(alg, w, cm.projectives[w], pt[u].piece[1], vec)});
        }
    }
  }

  // The B quiver: Lambda's arrows at every level, degree-1 arrows between
  // consecutive levels.
  std::vector<Arrow> arrows;
  std::vector<BVal> avals;
  for (std::size_t l = 0; l <= d; ++l)
    for (std::size_t a = 0; a < q0.arrows().size(); ++a) {
      const Arrow& ar = q0.arrow(a);
      arrows.push_back({ar.name + "_" + std::to_string(l), l * nv + ar.source,
                        l * nv + ar.target});
      avals.push_back({ar.source, ar.target, 0, lmul[a]});
    }
  for (std::size_t l = 0; l + 1 <= d; ++l)
    for (std::size_t g = 0; g < gens1.size(); ++g) {
      arrows.push_back({"h" + std::to_string(g + 1) + "_" + std::to_string(l),
                        l * nv + gens1[g].u, (l + 1) * nv + gens1[g].w});
      avals.push_back(gens1[g]);
    }

  Presentation pres;
  pres.quiver = Quiver(nv * (d + 1), arrows);
  pres.field = f;

  std::size_t dim_b = 0;
  for (std::size_t k = 0; k <= d; ++k) dim_b += (d + 1 - k) * hat_dims[k];

  // Global coordinates: one block per (source level i, target level j, u, w).
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> goff(d + 1);
  {
    std::size_t off = 0;
    for (std::size_t i = 0; i <= d; ++i) {
      goff[i].resize(d + 1);
      for (std::size_t j = i; j <= d; ++j) {
        goff[i][j].assign(nv, std::vector<std::size_t>(nv, 0));
        for (std::size_t u = 0; u < nv; ++u)
          for (std::size_t w = 0; w < nv; ++w) {
            goff[i][j][u][w] = off;
            off += pt[u].piece[j - i].dim(w);
          }
      }
    }
  }

  std::map<Path, BVal> memo;
  std::map<Path, RepMap> memo_shift;
  for (std::size_t a = 0; a < arrows.size(); ++a)
    memo.emplace(Path(pres.quiver, arrows[a].source, std::vector<std::size_t>{a}), avals[a]);
  auto phi_of = [&](const Path& p) -> const BVal& {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    const std::vector<std::size_t>& as = p.arrows();
    if (as.size() == 1) return memo.emplace(p, avals[as[0]]).first->second;
    Path prefix(pres.quiver, p.source(), std::vector<std::size_t>(as.begin(), as.end() - 1));
    const BVal& pre = memo.at(prefix);
    const BVal& last = avals[as.back()];
    RepMap lifted = pre.map;
    if (last.k == 1) {
      auto sit = memo_shift.find(prefix);
      if (sit == memo_shift.end()) {
        lifted = eng.tau_inverse_map(pt[pre.w].obj[0], pt[pre.u].obj[pre.k], pre.map);
        sit = memo_shift.emplace(prefix, lifted).first;
      }
      lifted = sit->second;
    }
    BVal out{pre.u, last.w, pre.k + last.k, last.map.then(lifted)};
    return memo.emplace(p, std::move(out)).first->second;
  };

  for (std::size_t len = 2;; ++len) {
    if (len > dim_b + 2)
      throw Error("truncation algebra: relation extraction did not terminate");
    DegreewiseBasis db = DegreewiseBasis::compute(pres, len);
    const std::vector<Path>& bp = db.basis(len);
    if (bp.empty()) break;
    Matrix mcols(f, dim_b, bp.size());
    for (std::size_t c = 0; c < bp.size(); ++c) {
      const BVal& bv = phi_of(bp[c]);
      std::size_t i = bp[c].source() / nv, j = bp[c].target() / nv;
      std::vector<Scalar> vec = map_to_element(alg, bv.w, bv.map);
      std::size_t off = goff[i][j][bv.u][bv.w];
      for (std::size_t r = 0; r < vec.size(); ++r) mcols.at(off + r, c) = vec[r];
    }
    Matrix ker = mcols.kernel_basis();
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      PathSum rel(f);
      for (std::size_t r = 0; r < bp.size(); ++r)
        if (!ker.at(r, c).is_zero()) rel.add(bp[r], ker.at(r, c));
      pres.relations.push_back(rel);
    }
  }

  pres.validate();
  std::optional<FDAlgebra> fd = as_fd_algebra(pres, dim_b + 2);
  if (!fd) throw Error("truncation algebra: presented algebra exceeds the dimension bound");
  if (fd->dim() != dim_b)
    throw Error("truncation algebra: dimension certificate failed: presented dim " +
                std::to_string(fd->dim()) + " vs " + std::to_string(dim_b));
  return {d, nv, std::move(*fd), std::move(hat_dims)};
}

std::size_t hat_ext_dim(const TruncAlgebra& ta, std::size_t i, std::size_t j, std::size_t k) {
  CanonicalModules cm = canonical_modules(ta.algebra);
  ProjResolution res = min_resolution(cm.simples[ta.vertex(i, 0)], k + 1);
  for (std::size_t step = 0; step < res.terms.size() && step <= k + 1; ++step)
    for (std::size_t v = 0; v < ta.base_vertices; ++v)
      if (res.multiplicities[step][ta.vertex(v, ta.degree)] != 0)
        throw Error("truncation too small: resolution step " + std::to_string(step) +
                    " needs generators at the boundary");
  if (res.complete && k > res.length()) return 0;
  std::vector<const Representation*> parts;
  for (std::size_t t = 0; t <= ta.degree; ++t) parts.push_back(&cm.simples[ta.vertex(j, t)]);
  return ext_from(res, direct_sum(parts), k).dim;
}

bool cy_symmetry_spotcheck(const TruncAlgebra& ta, std::size_t n, std::size_t i, std::size_t j,
                           std::size_t k) {
  if (k > n + 1) throw Error("cy symmetry: k exceeds n + 1");
  return hat_ext_dim(ta, i, j, k) == hat_ext_dim(ta, j, i, n + 1 - k);
}

}  // namespace tilt
