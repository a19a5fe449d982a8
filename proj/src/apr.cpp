#include "tilt/apr.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "tilt/idempotent.hpp"
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

bool in_add(const Representation& x, const std::vector<Summand>& parts) {
  for (const Summand& s : decompose(x)) {
    bool found = false;
    for (const Summand& t : parts)
      if (isomorphic(s.rep, t.rep)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

struct ApproxCopy {
  const Representation* tgt = nullptr;
  RepMap h;
};

RepMap assemble_into_sum(const Representation& x, const std::vector<ApproxCopy>& copies) {
  std::vector<const Representation*> tgts;
  for (const ApproxCopy& c : copies) tgts.push_back(c.tgt);
  Representation sum = direct_sum(tgts);
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < x.vertex_count(); ++v) {
    Matrix m(x.field(), x.dim(v), sum.dim(v));
    std::size_t off = 0;
    for (const ApproxCopy& c : copies) {
      const Matrix& hv = c.h.at(v);
      for (std::size_t r = 0; r < hv.rows(); ++r)
        for (std::size_t cc = 0; cc < hv.cols(); ++cc) m.at(r, off + cc) = hv.at(r, cc);
      off += c.tgt->dim(v);
    }
    comps.push_back(std::move(m));
  }
  return RepMap(x, sum, std::move(comps));
}

/// Universal left add-T approximation of x, pruned until no copy can be
/// dropped; pruning keeps the cokernels small without losing the
/// approximation property (a dropped copy factors through the rest).
/// Factorization through the rest is tested blockwise: a map into the sum
/// splits into maps through the individual copies, whose hom spaces only
/// depend on the pair of summand types and are cached.
RepMap left_add_approximation(const Representation& x, const std::vector<Summand>& parts) {
  std::vector<ApproxCopy> copies;
  std::vector<std::size_t> type_of;
  for (std::size_t s = 0; s < parts.size(); ++s)
    for (RepMap& h : hom_space(x, parts[s].rep)) {
      copies.push_back({&parts[s].rep, std::move(h)});
      type_of.push_back(s);
    }
  if (copies.empty()) return RepMap::zero(x, Representation::zero(x.algebra()));

  std::map<std::pair<std::size_t, std::size_t>, std::vector<RepMap>> pair_hom;
  auto phom = [&](std::size_t a, std::size_t b) -> const std::vector<RepMap>& {
    auto it = pair_hom.find({a, b});
    if (it == pair_hom.end())
      it = pair_hom.emplace(std::make_pair(a, b), hom_space(parts[a].rep, parts[b].rep)).first;
    return it->second;
  };
  auto factors_through_rest = [&](std::size_t k) {
    Field f = x.field();
    std::vector<Scalar> rhs_flat = flat_map(copies[k].h);
    std::vector<std::vector<Scalar>> cols;
    for (std::size_t j = 0; j < copies.size(); ++j) {
      if (j == k) continue;
      for (const RepMap& g : phom(type_of[j], type_of[k]))
        cols.push_back(flat_map(copies[j].h.then(g)));
    }
    Matrix m(f, rhs_flat.size(), cols.size());
    Matrix rhs(f, rhs_flat.size(), 1);
    for (std::size_t r = 0; r < rhs_flat.size(); ++r) {
      rhs.at(r, 0) = rhs_flat[r];
      for (std::size_t c = 0; c < cols.size(); ++c) m.at(r, c) = cols[c][r];
    }
    return m.solve(rhs).has_value();
  };
  for (std::size_t k = 0; k < copies.size() && copies.size() > 1;) {
    if (factors_through_rest(k)) {
      copies.erase(copies.begin() + k);
      type_of.erase(type_of.begin() + k);
    } else {
      ++k;
    }
  }
  return assemble_into_sum(x, copies);
}

}  // namespace

AprCertificate apr_admissible(const NuEngine& eng, std::size_t vertex) {
  AprCertificate cert;
  const FDAlgebra& alg = eng.algebra();
  if (vertex >= alg.quiver().vertex_count()) {
    cert.reason = "no vertex " + std::to_string(vertex + 1);
    return cert;
  }
  CanonicalModules cm = canonical_modules(alg);
  const Representation& s = cm.projectives[vertex];
  if (s.total_dim() != 1) {
    cert.reason = "P_" + std::to_string(vertex + 1) + " is not simple";
    return cert;
  }
  for (std::size_t i = 0; i < eng.n(); ++i)
    cert.ext_dims.push_back(ext_from(eng.d_lambda_resolution(), s, i).dim);
  for (std::size_t i = 0; i < cert.ext_dims.size(); ++i)
    if (cert.ext_dims[i] != 0) {
      cert.reason = "Ext^" + std::to_string(i) + "(D(Lambda), S) has dimension " +
                    std::to_string(cert.ext_dims[i]);
      return cert;
    }
  cert.pass = true;
  return cert;
}

AprContext build_apr(const NuEngine& eng, std::size_t vertex, std::size_t m) {
  AprCertificate cert = apr_admissible(eng, vertex);
  if (!cert.pass)
    throw Error("build_apr: vertex " + std::to_string(vertex + 1) +
                " is not admissible: " + cert.reason);
  std::size_t n = eng.n();
  if (m > n) throw Error("build_apr: m = " + std::to_string(m) + " exceeds n");
  CanonicalModules cm = canonical_modules(eng.algebra());

  AprContext ctx;
  ctx.vertex = vertex;
  ctx.n = n;
  ctx.m = m;
  ctx.s = cm.projectives[vertex];
  ctx.tau_inv_s = eng.tau_inverse(ctx.s);
  ctx.res = min_resolution(ctx.tau_inv_s, n);
  if (!ctx.res.complete || ctx.res.length() != n)
    throw Error("build_apr: tau_n^-(S) does not have projective dimension n");
  for (std::size_t j = 0; j < n; ++j)
    if (ctx.res.multiplicities[j][vertex] != 0)
      throw Error("build_apr: resolution term " + std::to_string(j) +
                  " of tau_n^-(S) contains the simple projective S");
  ctx.syzygy.resize(n + 1);
  ctx.syzygy[n] = ctx.tau_inv_s;
  for (std::size_t i = 0; i < n; ++i) ctx.syzygy[i] = image(ctx.res.diffs[n - 1 - i]).rep;
  if (!isomorphic(ctx.syzygy[0], ctx.s))
    throw Error("build_apr: the n-th syzygy of tau_n^-(S) is not S");

  for (std::size_t w = 0; w < cm.projectives.size(); ++w)
    ctx.t_parts.push_back(w == vertex ? ctx.syzygy[m] : cm.projectives[w]);
  std::vector<const Representation*> ps;
  for (const Representation& p : ctx.t_parts) ps.push_back(&p);
  ctx.t = direct_sum(ps);
  return ctx;
}

TiltingReport verify_tilting(const Representation& t, std::size_t m, std::size_t gldim) {
  TiltingReport rep;
  const FDAlgebra& alg = t.algebra();

  ProjResolution rt = min_resolution(t, gldim);
  rep.proj_dim = rt.length();
  rep.t1 = rt.complete && rt.length() == m;
  if (!rep.t1)
    rep.first_failure = "T1: projective dimension is " +
                        (rt.complete ? std::to_string(rt.length()) : "> " + std::to_string(gldim)) +
                        ", expected " + std::to_string(m);

  rep.t2 = true;
  for (std::size_t i = 1; i <= gldim && i <= rt.length(); ++i) {
    ExtResult e = ext_from(rt, t, i);
    if (e.dim != 0) {
      rep.t2 = false;
      if (rep.first_failure.empty())
        rep.first_failure =
            "T2: Ext^" + std::to_string(i) + "(T, T) has dimension " + std::to_string(e.dim);
      break;
    }
  }

  CanonicalModules cm = canonical_modules(alg);
  std::vector<const Representation*> pp;
  for (const Representation& p : cm.projectives) pp.push_back(&p);
  Representation x = direct_sum(pp);
  std::vector<Summand> tsum = decompose(t);
  rep.t3 = true;
  for (std::size_t step = 0;; ++step) {
    if (x.is_zero()) break;
    if (in_add(x, tsum)) {
      rep.coresolution.push_back(x.dim_str());
      break;
    }
    if (step > gldim) {
      rep.t3 = false;
      if (rep.first_failure.empty())
        rep.first_failure = "T3: coresolution does not terminate within gl.dim steps";
      break;
    }
    RepMap f = left_add_approximation(x, tsum);
    if (f.to().is_zero() || kernel(f).rep.total_dim() != 0) {
      rep.t3 = false;
      if (rep.first_failure.empty())
        rep.first_failure = "T3: left add-T approximation at step " + std::to_string(step) +
                            " is not injective";
      break;
    }
    rep.coresolution.push_back(f.to().dim_str());
    x = cokernel(f).rep;
  }

  rep.pass = rep.t1 && rep.t2 && rep.t3;
  return rep;
}

EndoPresentation endomorphism_presentation(const std::vector<const Representation*>& parts) {
  if (parts.empty()) throw Error("endomorphism presentation: no parts");
  const FDAlgebra& alg = parts[0]->algebra();
  Field f = alg.field();
  std::size_t r = parts.size();
  for (std::size_t i = 0; i < r; ++i) {
    if (parts[i]->is_zero() || !is_indecomposable(*parts[i]))
      throw Error("endomorphism presentation: part " + std::to_string(i + 1) +
                  " is not indecomposable");
    for (std::size_t j = i + 1; j < r; ++j)
      if (isomorphic(*parts[i], *parts[j]))
        throw Error("endomorphism presentation: parts " + std::to_string(i + 1) + " and " +
                    std::to_string(j + 1) + " are isomorphic");
  }

  Representation tb = direct_sum(parts);
  std::vector<RepMap> incl, proj;
  for (std::size_t k = 0; k < r; ++k) {
    incl.push_back(summand_inclusion(parts, tb, k));
    proj.push_back(summand_projection(parts, tb, k));
  }

  std::size_t nbig = tb.total_dim();
  std::vector<std::size_t> voff(tb.vertex_count() + 1, 0);
  for (std::size_t v = 0; v < tb.vertex_count(); ++v) voff[v + 1] = voff[v] + tb.dim(v);
  auto embed = [&](const RepMap& g) {
    Matrix b(f, nbig, nbig);
    for (std::size_t v = 0; v < tb.vertex_count(); ++v)
      for (std::size_t rr = 0; rr < tb.dim(v); ++rr)
        for (std::size_t cc = 0; cc < tb.dim(v); ++cc)
          b.at(voff[v] + rr, voff[v] + cc) = g.at(v).at(rr, cc);
    return b;
  };
  auto unembed = [&](const Matrix& b) {
    std::vector<Matrix> comps;
    for (std::size_t v = 0; v < tb.vertex_count(); ++v) {
      Matrix m(f, tb.dim(v), tb.dim(v));
      for (std::size_t rr = 0; rr < tb.dim(v); ++rr)
        for (std::size_t cc = 0; cc < tb.dim(v); ++cc) m.at(rr, cc) = b.at(voff[v] + rr, voff[v] + cc);
      comps.push_back(std::move(m));
    }
    return RepMap(tb, tb, std::move(comps));
  };

  std::size_t dim_e = 0;
  std::vector<Matrix> basis;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (const RepMap& h : hom_space(*parts[j], *parts[i])) {
        ++dim_e;
        basis.push_back(embed(proj[j].then(h).then(incl[i])));
      }

  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t v = 0; v < tb.vertex_count(); ++v)
    if (tb.dim(v) > 0) blocks.push_back({voff[v], tb.dim(v)});
  MatrixAlgebra ma{f, nbig, basis, blocks};

  std::vector<RepMap> rad;
  for (const Matrix& b : radical_basis(ma)) rad.push_back(unembed(b));
  std::vector<RepMap> rad2;
  for (const RepMap& a : rad)
    for (const RepMap& b : rad) rad2.push_back(a.then(b));

  auto component = [&](const RepMap& g, std::size_t j, std::size_t i) {
    return incl[j].then(g).then(proj[i]);  // the Hom(T_j, T_i) block of g
  };

  // An arrow i -> j of Gamma is a rad/rad^2 class of Hom(T_j, T_i); this is
  // the End(Lambda) convention Hom(P_j, P_i) = e_i Lambda e_j, under which
  // Phi(p * q) = Phi(q).then(Phi(p)).
  std::vector<Arrow> arrows;
  std::vector<RepMap> arrow_img;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      SpanBuilder sp(f, flat_width(*parts[j], *parts[i]));
      for (const RepMap& g : rad2) sp.insert(flat_map(component(g, j, i)));
      for (const RepMap& g : rad) {
        RepMap c = component(g, j, i);
        if (!sp.insert(flat_map(c))) continue;
        arrows.push_back({"a" + std::to_string(arrows.size() + 1), i, j});
        arrow_img.push_back(proj[j].then(c).then(incl[i]));
      }
    }

  Presentation pres;
  pres.quiver = Quiver(r, arrows);
  pres.field = f;

  std::vector<RepMap> eps;
  for (std::size_t k = 0; k < r; ++k) eps.push_back(proj[k].then(incl[k]));
  auto phi = [&](const Path& p) {
    if (p.is_stationary()) return eps[p.source()];
    const std::vector<std::size_t>& as = p.arrows();
    RepMap g = arrow_img[as.back()];
    for (std::size_t k = as.size() - 1; k-- > 0;) g = g.then(arrow_img[as[k]]);
    return g;
  };

  std::size_t width = flat_width(tb, tb);
  for (std::size_t len = 2;; ++len) {
    if (len > dim_e + 2)
      throw Error("endomorphism presentation: relation extraction did not terminate");
    DegreewiseBasis db = DegreewiseBasis::compute(pres, len);
    const std::vector<Path>& bp = db.basis(len);
    if (bp.empty()) break;
    Matrix mcols(f, width, bp.size());
    for (std::size_t c = 0; c < bp.size(); ++c) {
      std::vector<Scalar> fl = flat_map(phi(bp[c]));
      for (std::size_t rr = 0; rr < width; ++rr) mcols.at(rr, c) = fl[rr];
    }
    Matrix ker = mcols.kernel_basis();
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      PathSum rel(f);
      for (std::size_t rr = 0; rr < bp.size(); ++rr)
        if (!ker.at(rr, c).is_zero()) rel.add(bp[rr], ker.at(rr, c));
      pres.relations.push_back(rel);
    }
  }

  pres.validate();
  std::optional<FDAlgebra> fd = as_fd_algebra(pres, dim_e + 2);
  if (!fd) throw Error("endomorphism presentation: presented algebra exceeds the dimension bound");
  if (fd->dim() != dim_e)
    throw Error("endomorphism presentation: dimension certificate failed: presented dim " +
                std::to_string(fd->dim()) + " vs End dim " + std::to_string(dim_e));
  return {std::move(pres),      std::move(*fd),      dim_e,
          std::move(tb),        std::move(eps),      std::move(arrow_img)};
}

NriReport theorem_check_nri(const FDAlgebra& gamma, const FDAlgebra& gamma_op, std::size_t n,
                            std::size_t depth) {
  NriReport rep;
  std::optional<std::size_t> gd = global_dimension(gamma, n);
  if (!gd) {
    rep.cert.reason = "global dimension exceeds n";
    return rep;
  }
  rep.gldim = *gd;
  rep.gldim_ok = true;
  NuEngine eng(gamma, gamma_op, n);
  CanonicalModules cm = canonical_modules(gamma);
  // Summand by summand: nu_n^- commutes with direct sums, so the regular
  // module stays concentrated exactly when every projective does, and the
  // first failing step of the sum is the minimum over the summands.
  rep.cert.pass = true;
  rep.cert.depth = depth;
  rep.hat_dims.assign(depth + 1, 0);
  std::vector<std::size_t> bad_t;
  for (const Representation& p : cm.projectives) {
    NuEngine::NuIteration it = eng.nakayama_nu_inverse(p, depth);
    for (std::size_t i = 0; i < it.modules.size() && i <= depth; ++i)
      rep.hat_dims[i] += it.modules[i].total_dim();
    if (it.ok) continue;
    if (rep.cert.pass || it.failed_step < rep.cert.failed_step) {
      rep.cert.pass = false;
      rep.cert.failed_step = it.failed_step;
      bad_t.assign(eng.n(), 0);
    }
    if (it.failed_step == rep.cert.failed_step) {
      const NuStep& s = it.steps.back();
      for (std::size_t t = 0; t < eng.n(); ++t) bad_t[t] += s.h[t];
    }
  }
  if (!rep.cert.pass) {
    rep.hat_dims.clear();
    std::ostringstream os;
    os << "step " << rep.cert.failed_step << ": H^t nonzero for t =";
    for (std::size_t t = 0; t < bad_t.size(); ++t)
      if (bad_t[t] != 0) os << " " << t;
    rep.cert.reason = os.str();
  }
  rep.nminus_ok = rep.cert.pass;
  rep.pass = rep.gldim_ok && rep.nminus_ok;
  return rep;
}

}  // namespace tilt
