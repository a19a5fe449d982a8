#include "tilt/homalg.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "tilt/span.hpp"

namespace tilt {

namespace {

std::vector<Scalar> col_of(const Matrix& m, std::size_t j) {
  std::vector<Scalar> v;
  for (std::size_t r = 0; r < m.rows(); ++r) v.push_back(m.at(r, j));
  return v;
}

Matrix cols_to_matrix(Field f, std::size_t rows, const std::vector<std::vector<Scalar>>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < rows; ++r) m.at(r, j) = cols[j][r];
  return m;
}

Matrix rows_block(const Matrix& m, std::size_t off, std::size_t cnt) {
  Matrix out(m.field(), cnt, m.cols());
  for (std::size_t r = 0; r < cnt; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(off + r, c);
  return out;
}

/// Layout of a direct sum of canonical projectives P_v, in the order used by
/// projective_cover and canonical_modules: copies of P_v grouped by vertex,
/// and within P_v at vertex w the basis paths v -> w in element order (the
/// stationary path first when v == w). A module map out of such a projective
/// is determined by the images of the summand generators, which live in the
/// rows at gen_row().
struct ProjStructure {
  const FDAlgebra* alg = nullptr;
  std::vector<std::size_t> sv;                    // summand vertices in order
  std::vector<std::vector<std::size_t>> slices;   // [v][w] -> element indices v -> w
  std::vector<std::vector<std::size_t>> boff;     // [summand][w] block offset
  std::size_t gen_row(std::size_t s) const { return boff[s][sv[s]]; }
};

ProjStructure proj_structure(const FDAlgebra& alg, const std::vector<std::size_t>& mult) {
  const Quiver& q = alg.quiver();
  std::size_t nv = q.vertex_count();
  ProjStructure ps;
  ps.alg = &alg;
  std::vector<std::vector<std::size_t>> sl(nv * nv);
  for (std::size_t i = 0; i < alg.dim(); ++i)
    sl[alg.element(i).source() * nv + alg.element(i).target()].push_back(i);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t k = 0; k < mult[v]; ++k) ps.sv.push_back(v);
  std::vector<std::size_t> off(nv, 0);
  for (std::size_t s = 0; s < ps.sv.size(); ++s) {
    ps.boff.emplace_back(nv, 0);
    for (std::size_t w = 0; w < nv; ++w) {
      ps.boff[s][w] = off[w];
      off[w] += sl[ps.sv[s] * nv + w].size();
    }
  }
  ps.slices = std::move(sl);
  return ps;
}

const std::vector<std::size_t>& slice_of(const ProjStructure& ps, std::size_t v, std::size_t w) {
  return ps.slices[v * ps.alg->quiver().vertex_count() + w];
}

/// Path actions of algebra elements on a representation, cached by element.
struct PathActCache {
  const Representation* x = nullptr;
  std::map<std::size_t, Matrix> m;
  const Matrix& get(std::size_t idx) {
    auto it = m.find(idx);
    if (it != m.end()) return it->second;
    return m.emplace(idx, x->path_action(x->algebra().element(idx))).first->second;
  }
};

/// Hom(P, X) for a structured projective P, coordinatized by the generator
/// images: coords are the concatenated rows X_{v_s} per summand.
struct HomSlot {
  ProjStructure ps;
  const Representation* x = nullptr;
  std::vector<std::size_t> offs;  // coord offset per summand
  std::size_t dim = 0;
};

HomSlot make_slot(ProjStructure ps, const Representation& x) {
  HomSlot s;
  s.ps = std::move(ps);
  s.x = &x;
  for (std::size_t t = 0; t < s.ps.sv.size(); ++t) {
    s.offs.push_back(s.dim);
    s.dim += x.dim(s.ps.sv[t]);
  }
  return s;
}

std::vector<Scalar> slot_coords(const HomSlot& s, const RepMap& phi) {
  std::vector<Scalar> c;
  for (std::size_t t = 0; t < s.ps.sv.size(); ++t) {
    std::size_t v = s.ps.sv[t], g = s.ps.gen_row(t);
    for (std::size_t b = 0; b < s.x->dim(v); ++b) c.push_back(phi.at(v).at(g, b));
  }
  return c;
}

RepMap slot_combine(const HomSlot& s, const Representation& p, const std::vector<Scalar>& c,
                    PathActCache& pact) {
  Field f = s.x->field();
  std::size_t nv = p.vertex_count();
  std::vector<Matrix> comps;
  for (std::size_t w = 0; w < nv; ++w) {
    Matrix m(f, p.dim(w), s.x->dim(w));
    for (std::size_t t = 0; t < s.ps.sv.size(); ++t) {
      std::size_t v = s.ps.sv[t];
      const auto& sl = slice_of(s.ps, v, w);
      for (std::size_t qi = 0; qi < sl.size(); ++qi) {
        const Matrix& a = pact.get(sl[qi]);
        std::size_t row = s.ps.boff[t][w] + qi;
        for (std::size_t col = 0; col < s.x->dim(w); ++col) {
          Scalar acc = Scalar::zero(f);
          for (std::size_t b = 0; b < s.x->dim(v); ++b)
            acc += c[s.offs[t] + b] * a.at(b, col);
          m.at(row, col) = acc;
        }
      }
    }
    comps.push_back(std::move(m));
  }
  return RepMap(p, *s.x, std::move(comps));
}

/// Matrix of phi |-> d.then(phi) from Hom(P_a, X) to Hom(P_b, X), where
/// d: P_b -> P_a and both slots share the target X.
Matrix slot_diff(const RepMap& d, const HomSlot& a, const HomSlot& b, PathActCache& pact) {
  Field f = a.x->field();
  Matrix out(f, b.dim, a.dim);
  for (std::size_t t = 0; t < b.ps.sv.size(); ++t) {
    std::size_t v = b.ps.sv[t], g = b.ps.gen_row(t);
    for (std::size_t s = 0; s < a.ps.sv.size(); ++s) {
      std::size_t vs = a.ps.sv[s];
      const auto& sl = slice_of(a.ps, vs, v);
      Matrix e(f, a.x->dim(vs), a.x->dim(v));
      bool any = false;
      for (std::size_t qi = 0; qi < sl.size(); ++qi) {
        const Scalar& coeff = d.at(v).at(g, a.ps.boff[s][v] + qi);
        if (coeff.is_zero()) continue;
        any = true;
        e = e + pact.get(sl[qi]) * coeff;
      }
      if (!any) continue;
      for (std::size_t bp = 0; bp < a.x->dim(vs); ++bp)
        for (std::size_t bb = 0; bb < a.x->dim(v); ++bb)
          out.at(b.offs[t] + bb, a.offs[s] + bp) = e.at(bp, bb);
    }
  }
  return out;
}

/// Ambient matrix of phi |-> phi.then(lam) on Hom(P, X) for lam: X -> X',
/// when both slots share the source P (block diagonal per summand).
Matrix slot_post(const HomSlot& from, const HomSlot& to, const RepMap& lam) {
  Field f = from.x->field();
  Matrix out(f, to.dim, from.dim);
  for (std::size_t t = 0; t < from.ps.sv.size(); ++t) {
    std::size_t v = from.ps.sv[t];
    const Matrix& l = lam.at(v);
    for (std::size_t b = 0; b < from.x->dim(v); ++b)
      for (std::size_t c = 0; c < to.x->dim(v); ++c)
        out.at(to.offs[t] + c, from.offs[t] + b) = l.at(b, c);
  }
  return out;
}

/// Lift f: src -> Z through the surjection onto: P -> Z, using the generator
/// structure of src; deterministic (lexicographically first preimages).
RepMap lift_through(const ProjStructure& psrc, const Representation& src, const RepMap& f,
                    const RepMap& onto, PathActCache& pact_target) {
  const Representation& p = onto.from();
  Field fl = p.field();
  HomSlot s = make_slot(psrc, p);
  std::vector<Scalar> c(s.dim, Scalar::zero(fl));
  for (std::size_t t = 0; t < psrc.sv.size(); ++t) {
    std::size_t v = psrc.sv[t], g = psrc.gen_row(t);
    Matrix rhs(fl, onto.at(v).cols(), 1);
    for (std::size_t j = 0; j < rhs.rows(); ++j) rhs.at(j, 0) = f.at(v).at(g, j);
    auto sol = onto.at(v).transpose().solve(rhs);
    if (!sol) throw Error("lift_through: row not in the image");
    for (std::size_t b = 0; b < p.dim(v); ++b) c[s.offs[t] + b] = sol->at(b, 0);
  }
  return slot_combine(s, src, c, pact_target);
}

/// ker(dout) / im(din) with chosen representatives and a projection solver.
struct Cohom {
  std::size_t dim = 0;
  Matrix reps;  // ambient x dim
  std::shared_ptr<RrefSolver> solver;  // factors [im basis | reps] once
  std::size_t scols = 0;
  std::size_t imrank = 0;
};

Cohom cohomology(Field f, std::size_t ambient, const Matrix& dout, const Matrix& din) {
  Cohom h;
  Matrix ker = dout.kernel_basis();
  Matrix imb = din.column_space_basis();
  h.imrank = imb.cols();
  SpanBuilder span(f, ambient);
  for (std::size_t j = 0; j < imb.cols(); ++j) span.insert(col_of(imb, j));
  std::vector<std::vector<Scalar>> reps;
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    std::vector<Scalar> v = col_of(ker, j);
    if (span.insert(v)) reps.push_back(std::move(v));
  }
  h.dim = reps.size();
  h.reps = cols_to_matrix(f, ambient, reps);
  h.scols = h.imrank + h.dim;
  if (h.scols > 0) h.solver = std::make_shared<RrefSolver>(Matrix::hstack(imb, h.reps));
  return h;
}

/// Class coordinates of many cocycles at once (columns), sharing one
/// elimination of the solver matrix.
Matrix project_many(const Cohom& h, const Matrix& v) {
  Field f = v.field();
  if (h.scols == 0) {
    if (!v.is_zero()) throw Error("cohomology projection: nonzero vector in zero space");
    return Matrix(f, 0, v.cols());
  }
  auto sol = h.solver->solve(v);
  if (!sol) throw Error("cohomology projection: not a cocycle modulo boundaries");
  return rows_block(*sol, h.imrank, h.dim);
}

/// A vector space with commuting vertex idempotents and arrow actions,
/// packaged as a Representation in an adapted basis.
struct VecModule {
  Representation rep;
  std::vector<Matrix> cols;  // ambient x d_v per vertex
  Matrix tinv;
  std::vector<std::size_t> offs;
};

VecModule make_vec_module(const FDAlgebra& b, std::size_t ambient,
                          const std::vector<Matrix>& ev, const std::vector<Matrix>& arr) {
  Field f = b.field();
  const Quiver& q = b.quiver();
  VecModule vm;
  Matrix sum(f, ambient, ambient);
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (!(ev[v] * ev[v] == ev[v])) throw Error("vec module: vertex action not idempotent");
    sum = sum + ev[v];
  }
  if (!(sum == Matrix::identity(f, ambient)))
    throw Error("vec module: vertex actions do not sum to the identity");

  std::vector<std::size_t> dims;
  std::size_t off = 0;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    vm.cols.push_back(ev[v].column_space_basis());
    vm.offs.push_back(off);
    dims.push_back(vm.cols.back().cols());
    off += dims.back();
  }
  Matrix t(f, ambient, 0);
  for (const auto& c : vm.cols) t = Matrix::hstack(t, c);
  auto inv = t.inverse();
  if (!inv) throw Error("vec module: adapted basis is not a basis");
  vm.tinv = *inv;

  std::vector<Matrix> acts;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    Matrix g = rows_block(vm.tinv * (arr[a] * vm.cols[i]), vm.offs[j], dims[j]);
    acts.push_back(g.transpose());
  }
  vm.rep = Representation(b, std::move(dims), std::move(acts));
  return vm;
}

/// The RepMap induced on adapted bases by an ambient linear map L (columns).
RepMap vec_map(const VecModule& from, const VecModule& to, const Matrix& l) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < from.rep.vertex_count(); ++v) {
    Matrix g = rows_block(to.tinv * (l * from.cols[v]), to.offs[v], to.rep.dim(v));
    comps.push_back(g.transpose());
  }
  return RepMap(from.rep, to.rep, std::move(comps));
}

/// Regular module reg = (+)_v P_v with the left multiplications by the
/// stationary paths and the arrows, as right-module endomorphisms of reg.
struct RegData {
  Representation reg;
  std::vector<RepMap> stat;  // lambda_{e_v}
  std::vector<RepMap> larr;  // lambda_a, maps summand target(a) into summand source(a)
};

RegData make_reg(const FDAlgebra& alg) {
  const Quiver& q = alg.quiver();
  Field f = alg.field();
  std::size_t nv = q.vertex_count();
  RegData rd;
  CanonicalModules cm = canonical_modules(alg);
  std::vector<const Representation*> parts;
  for (const auto& p : cm.projectives) parts.push_back(&p);
  rd.reg = direct_sum(parts);
  for (std::size_t v = 0; v < nv; ++v)
    rd.stat.push_back(summand_projection(parts, rd.reg, v)
                          .then(summand_inclusion(parts, rd.reg, v)));

  ProjStructure ps = proj_structure(alg, std::vector<std::size_t>(nv, 1));
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    std::size_t ia = alg.index_of(Path(q, i, {a}));
    std::vector<Matrix> comps;
    for (std::size_t w = 0; w < nv; ++w) {
      Matrix m(f, rd.reg.dim(w), rd.reg.dim(w));
      const auto& qs = slice_of(ps, j, w);
      const auto& psl = slice_of(ps, i, w);
      for (std::size_t r = 0; r < qs.size(); ++r) {
        const auto& prod = alg.product(ia, qs[r]);
        for (std::size_t c = 0; c < psl.size(); ++c)
          m.at(ps.boff[j][w] + r, ps.boff[i][w] + c) = prod[psl[c]];
      }
      comps.push_back(std::move(m));
    }
    rd.larr.emplace_back(rd.reg, rd.reg, std::move(comps));
  }
  return rd;
}

ProjStructure term_structure(const FDAlgebra& alg, const ProjResolution& res, std::size_t k) {
  return proj_structure(alg, res.multiplicities[k]);
}

}  // namespace

ProjResolution min_resolution(const Representation& m, std::size_t lmax) {
  ProjResolution res;
  res.module = m;
  if (m.is_zero()) {
    res.augment = RepMap::zero(Representation::zero(m.algebra()), m);
    res.complete = true;
    return res;
  }
  Cover c0 = projective_cover(m);
  res.terms.push_back(c0.proj);
  res.augment = c0.onto;
  res.multiplicities.push_back(c0.top_multiplicities);
  SubQuotient syz = kernel(c0.onto);
  for (std::size_t k = 1; k <= lmax && !syz.rep.is_zero(); ++k) {
    Cover c = projective_cover(syz.rep);
    res.terms.push_back(c.proj);
    res.diffs.push_back(c.onto.then(syz.map));
    res.multiplicities.push_back(c.top_multiplicities);
    syz = kernel(c.onto);
  }
  res.complete = syz.rep.is_zero();
  return res;
}

bool ProjResolution::is_exact() const {
  if (terms.empty()) return module.is_zero();
  if (image(augment).rep.dim_vector() != module.dim_vector()) return false;
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    const RepMap& next = diffs[k];
    std::size_t kd = (k == 0) ? kernel(augment).rep.total_dim() : kernel(diffs[k - 1]).rep.total_dim();
    if (!(k == 0 ? next.then(augment) : next.then(diffs[k - 1])).is_zero()) return false;
    if (image(next).rep.total_dim() != kd) return false;
  }
  if (complete) {
    std::size_t last = terms.size() - 1;
    std::size_t kd = (last == 0) ? kernel(augment).rep.total_dim()
                                 : kernel(diffs[last - 1]).rep.total_dim();
    if (kd != 0) return false;
  }
  return true;
}

bool ProjResolution::is_minimal() const {
  if (terms.empty()) return true;
  SubQuotient rad0 = module_radical(terms[0]);
  SubQuotient k0 = kernel(augment);
  for (std::size_t v = 0; v < module.vertex_count(); ++v)
    if (!columns_contained(rad0.map.at(v).transpose(), k0.map.at(v).transpose())) return false;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    SubQuotient rad = module_radical(terms[k]);
    for (std::size_t v = 0; v < module.vertex_count(); ++v)
      if (!columns_contained(rad.map.at(v).transpose(), diffs[k].at(v).transpose())) return false;
  }
  return true;
}

ExtResult ext_from(const ProjResolution& res, const Representation& n, std::size_t k) {
  Field f = n.field();
  if (k > res.length() || res.terms.empty()) {
    if (!res.complete) throw Error("ext: resolution too short");
    return {};
  }
  if (k == res.length() && !res.complete) throw Error("ext: resolution too short");
  const FDAlgebra& alg = n.algebra();
  PathActCache pact;
  pact.x = &n;
  HomSlot ck = make_slot(term_structure(alg, res, k), n);
  Matrix dout(f, 0, ck.dim), din(f, ck.dim, 0);
  if (k < res.length())
    dout = slot_diff(res.diffs[k], ck, make_slot(term_structure(alg, res, k + 1), n), pact);
  if (k > 0)
    din = slot_diff(res.diffs[k - 1], make_slot(term_structure(alg, res, k - 1), n), ck, pact);
  Cohom h = cohomology(f, ck.dim, dout, din);

  ExtResult out;
  out.dim = h.dim;
  for (std::size_t j = 0; j < h.dim; ++j)
    out.cocycles.push_back(slot_combine(ck, res.terms[k], col_of(h.reps, j), pact));
  return out;
}

ExtResult ext(const Representation& m, const Representation& n, std::size_t k) {
  ProjResolution res = min_resolution(m, k + 1);
  if (!res.complete && res.length() < k + 1) throw Error("ext: resolution too short");
  return ext_from(res, n, k);
}

std::optional<std::size_t> global_dimension(const FDAlgebra& alg, std::size_t bound) {
  CanonicalModules cm = canonical_modules(alg);
  std::size_t gd = 0;
  for (const auto& s : cm.simples) {
    ProjResolution res = min_resolution(s, bound);
    if (!res.complete) return std::nullopt;
    gd = std::max(gd, res.length());
  }
  return gd;
}

// ---------------------------------------------------------------------------
// Ext^k(M, A) with the coefficient-side module structure.

struct CoefExt::Impl {
  const FDAlgebra* a = nullptr;
  const FDAlgebra* b = nullptr;
  std::size_t k = 0;
  RegData rd;
  HomSlot ck;
  Cohom h;
  VecModule vm;
};

CoefExt::CoefExt(const FDAlgebra& alg, const FDAlgebra& opalg, const Representation& m,
                 std::size_t k)
    : impl_(std::make_shared<Impl>()) {
  Field f = alg.field();
  Impl& im = *impl_;
  im.a = &alg;
  im.b = &opalg;
  im.k = k;

  res_ = min_resolution(m, k + 1);
  if (!res_.complete && res_.length() < k + 1) throw Error("coef ext: resolution too short");

  std::size_t nv = alg.quiver().vertex_count();
  if (k > res_.length() || res_.terms.empty()) {
    std::vector<Matrix> acts;
    for (std::size_t a = 0; a < opalg.quiver().arrows().size(); ++a) acts.emplace_back(f, 0, 0);
    module_ = Representation(opalg, std::vector<std::size_t>(nv, 0), std::move(acts));
    im.vm.rep = module_;
    im.vm.tinv = Matrix(f, 0, 0);
    im.vm.offs.assign(nv, 0);
    im.vm.cols.assign(nv, Matrix(f, 0, 0));
    return;
  }

  im.rd = make_reg(alg);
  PathActCache pact;
  pact.x = &im.rd.reg;
  im.ck = make_slot(term_structure(alg, res_, k), im.rd.reg);
  Matrix dout(f, 0, im.ck.dim), din(f, im.ck.dim, 0);
  if (k < res_.length())
    dout = slot_diff(res_.diffs[k], im.ck,
                     make_slot(term_structure(alg, res_, k + 1), im.rd.reg), pact);
  if (k > 0)
    din = slot_diff(res_.diffs[k - 1], make_slot(term_structure(alg, res_, k - 1), im.rd.reg),
                    im.ck, pact);
  im.h = cohomology(f, im.ck.dim, dout, din);

  // Action of a left multiplication on cohomology classes: postcomposition
  // is linear in the ambient coordinates, then project back to classes.
  auto act = [&](const RepMap& lam) {
    return project_many(im.h, slot_post(im.ck, im.ck, lam) * im.h.reps);
  };

  std::vector<Matrix> evs;
  for (std::size_t v = 0; v < nv; ++v) evs.push_back(act(im.rd.stat[v]));
  std::vector<Matrix> arrs;
  for (std::size_t t = 0; t < opalg.quiver().arrows().size(); ++t) {
    std::size_t a = alg.quiver().arrow_index(opalg.quiver().arrow(t).name);
    arrs.push_back(act(im.rd.larr[a]));
  }
  im.vm = make_vec_module(opalg, im.h.dim, evs, arrs);
  module_ = im.vm.rep;
}

RepMap CoefExt::induced(const CoefExt& ext_m, const CoefExt& ext_mprime, const RepMap& g) {
  const Impl& am = *ext_m.impl_;
  const Impl& bm = *ext_mprime.impl_;
  std::size_t k = am.k;
  if (am.h.dim == 0 || bm.h.dim == 0)
    return RepMap::zero(ext_m.module_, ext_mprime.module_);

  const FDAlgebra& alg = *am.a;
  const ProjResolution& ra = ext_m.res_;
  const ProjResolution& rb = ext_mprime.res_;

  // Chain lift of g along the two resolutions, via generator images.
  std::vector<RepMap> u;
  {
    PathActCache pa;
    pa.x = &ra.terms[0];
    u.push_back(lift_through(term_structure(alg, rb, 0), rb.terms[0], rb.augment.then(g),
                             ra.augment, pa));
  }
  for (std::size_t j = 1; j <= k; ++j) {
    PathActCache pa;
    pa.x = &ra.terms[j];
    u.push_back(lift_through(term_structure(alg, rb, j), rb.terms[j],
                             rb.diffs[j - 1].then(u[j - 1]), ra.diffs[j - 1], pa));
  }

  PathActCache pact;
  pact.x = am.ck.x;
  Matrix amb = slot_diff(u[k], am.ck, bm.ck, pact);
  return vec_map(am.vm, bm.vm, project_many(bm.h, amb * am.h.reps));
}

// ---------------------------------------------------------------------------
// NuEngine.

NuEngine::NuEngine(const FDAlgebra& alg, const FDAlgebra& opalg, std::size_t n)
    : alg_(&alg), op_(&opalg), n_(n) {
  auto gd = global_dimension(alg, n);
  if (!gd) throw Error("nu engine: global dimension exceeds n = " + std::to_string(n));
  gldim_ = *gd;
  CanonicalModules cm = canonical_modules(alg);
  std::vector<const Representation*> parts;
  for (const auto& i : cm.injectives) parts.push_back(&i);
  dlambda_ = direct_sum(parts);
  res_dl_ = min_resolution(dlambda_, n);
  if (!res_dl_.complete) throw Error("nu engine: resolution of D(Lambda) did not terminate");
}

NuStep NuEngine::nu_inverse_cohomology(const Representation& x) const {
  Field f = alg_->field();
  std::size_t len = res_dl_.length();
  PathActCache pact;
  pact.x = &x;
  std::vector<HomSlot> slots;
  for (std::size_t t = 0; t <= len; ++t)
    slots.push_back(make_slot(term_structure(*alg_, res_dl_, t), x));
  std::vector<Matrix> d(len);
  for (std::size_t t = 0; t < len; ++t)
    d[t] = slot_diff(res_dl_.diffs[t], slots[t], slots[t + 1], pact);

  NuStep step;
  step.h.assign(n_ + 1, 0);
  for (std::size_t t = 0; t <= std::min(len, n_); ++t) {
    std::size_t outrank = (t < len) ? d[t].rank() : 0;
    std::size_t kd = slots[t].dim - outrank;
    std::size_t id = (t > 0) ? d[t - 1].rank() : 0;
    step.h[t] = kd - id;
  }
  step.concentrated = true;
  for (std::size_t t = 0; t < n_; ++t)
    if (step.h[t] != 0) step.concentrated = false;
  (void)f;
  return step;
}

TauInvObject NuEngine::tau_inverse_obj(const Representation& x) const {
  TauInvObject obj;
  obj.dual_input = dual(x, *op_);
  obj.ext = std::make_shared<CoefExt>(*op_, *alg_, obj.dual_input, n_);
  return obj;
}

Representation NuEngine::tau_inverse(const Representation& x) const {
  return tau_inverse_obj(x).module();
}

RepMap NuEngine::tau_inverse_map(const TauInvObject& tx, const TauInvObject& ty,
                                 const RepMap& g) const {
  RepMap dg = dual_map(g, ty.dual_input, tx.dual_input);
  return CoefExt::induced(*tx.ext, *ty.ext, dg);
}

Representation NuEngine::tau(const Representation& m) const {
  CoefExt e(*alg_, *op_, m, n_);
  return dual(e.module(), *alg_);
}

NuEngine::NuIteration NuEngine::nakayama_nu_inverse(const Representation& x,
                                                    std::size_t steps) const {
  NuIteration it;
  it.modules.push_back(x);
  for (std::size_t i = 1; i <= steps; ++i) {
    NuStep s = nu_inverse_cohomology(it.modules.back());
    it.steps.push_back(s);
    if (!s.concentrated) {
      it.ok = false;
      it.failed_step = i;
      break;
    }
    it.modules.push_back(tau_inverse(it.modules.back()));
  }
  return it;
}

BoundedCertificate NuEngine::in_N_minus(const Representation& x, std::size_t depth) const {
  NuIteration it = nakayama_nu_inverse(x, depth);
  BoundedCertificate cert;
  cert.depth = depth;
  cert.pass = it.ok;
  if (!it.ok) {
    cert.failed_step = it.failed_step;
    std::ostringstream os;
    os << "step " << it.failed_step << ": H^t nonzero for t =";
    const NuStep& s = it.steps.back();
    for (std::size_t t = 0; t < n_; ++t)
      if (s.h[t] != 0) os << " " << t;
    cert.reason = os.str();
  }
  return cert;
}

BoundedCertificate in_N_plus(const NuEngine& engine_op, const Representation& x,
                             std::size_t depth) {
  return engine_op.in_N_minus(dual(x, engine_op.algebra()), depth);
}

std::pair<std::size_t, std::size_t> NuEngine::serre_duality_dims(const Representation& x,
                                                                 const Representation& y,
                                                                 std::size_t k) const {
  Field f = alg_->field();
  if (x.is_zero() || y.is_zero()) return {0, 0};
  ProjResolution rx = min_resolution(x, std::max(gldim_, k + 1));
  std::size_t lhs = ext_from(rx, y, k).dim;
  std::size_t len = rx.length();

  // nu(X) as the complex D Hom(P_., Lambda), in degrees -len .. 0. The
  // coefficient actions are block diagonal in the generator coordinates.
  RegData rd = make_reg(*alg_);
  PathActCache regact;
  regact.x = &rd.reg;
  std::vector<HomSlot> cj;
  std::vector<VecModule> rj;
  std::size_t nv = alg_->quiver().vertex_count();
  for (std::size_t j = 0; j <= len; ++j) {
    cj.push_back(make_slot(term_structure(*alg_, rx, j), rd.reg));
    std::vector<Matrix> evs;
    for (std::size_t v = 0; v < nv; ++v) evs.push_back(slot_post(cj[j], cj[j], rd.stat[v]));
    std::vector<Matrix> arrs;
    for (std::size_t t = 0; t < op_->quiver().arrows().size(); ++t)
      arrs.push_back(slot_post(cj[j], cj[j],
                               rd.larr[alg_->quiver().arrow_index(op_->quiver().arrow(t).name)]));
    rj.push_back(make_vec_module(*op_, cj[j].dim, evs, arrs));
  }
  std::vector<Representation> ct;  // ct[j] = C^{-j} = D(R^j)
  for (std::size_t j = 0; j <= len; ++j) ct.push_back(dual(rj[j].rep, *alg_));
  std::vector<RepMap> dd;  // dd[j]: C^{-j-1} -> C^{-j}
  for (std::size_t j = 0; j < len; ++j) {
    RepMap delta = vec_map(rj[j], rj[j + 1], slot_diff(rx.diffs[j], cj[j], cj[j + 1], regact));
    dd.push_back(dual_map(delta, ct[j + 1], ct[j]));
  }
  for (std::size_t j = 0; j + 1 < dd.size(); ++j)
    if (!dd[j + 1].then(dd[j]).is_zero()) throw Error("serre duality: nu(X) is not a complex");

  // Hypercohomology slots of RHom(Y, nu(X)) in total degrees -k-1, -k, -k+1.
  ProjResolution qy = min_resolution(y, gldim_);
  std::size_t qlen = qy.length();
  std::vector<ProjStructure> qps;
  for (std::size_t s = 0; s <= qlen; ++s) qps.push_back(term_structure(*alg_, qy, s));
  std::vector<PathActCache> ctact(len + 1);
  for (std::size_t j = 0; j <= len; ++j) ctact[j].x = &ct[j];

  struct Cell {
    std::size_t s = 0;
    std::size_t j = 0;  // t = -j
    HomSlot slot;
    std::size_t off = 0;
  };
  auto build_slot = [&](long m) {
    std::vector<Cell> cells;
    std::size_t off = 0;
    for (std::size_t j = 0; j <= len; ++j) {
      long s = m + static_cast<long>(j);
      if (s < 0 || s > static_cast<long>(qlen)) continue;
      Cell c;
      c.s = static_cast<std::size_t>(s);
      c.j = j;
      c.slot = make_slot(qps[c.s], ct[j]);
      c.off = off;
      off += c.slot.dim;
      cells.push_back(std::move(c));
    }
    return cells;
  };
  auto slot_dim = [](const std::vector<Cell>& cs) {
    std::size_t d = 0;
    for (const auto& c : cs) d += c.slot.dim;
    return d;
  };
  auto find_cell = [](const std::vector<Cell>& cs, std::size_t s, std::size_t j) -> const Cell* {
    for (const auto& c : cs)
      if (c.s == s && c.j == j) return &c;
    return nullptr;
  };
  // Total differential: vertical postcomposes d_C, horizontal precomposes
  // d_Q with sign (-1)^t.
  auto total_diff = [&](const std::vector<Cell>& from, const std::vector<Cell>& to) {
    Matrix d(f, slot_dim(to), slot_dim(from));
    for (const auto& c : from) {
      if (c.j > 0)
        if (const Cell* tc = find_cell(to, c.s, c.j - 1)) {
          Matrix blk = slot_post(c.slot, tc->slot, dd[c.j - 1]);
          for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t cc = 0; cc < blk.cols(); ++cc)
              d.at(tc->off + r, c.off + cc) += blk.at(r, cc);
        }
      if (c.s < qlen)
        if (const Cell* tc = find_cell(to, c.s + 1, c.j)) {
          Matrix blk = slot_diff(qy.diffs[c.s], c.slot, tc->slot, ctact[c.j]);
          Scalar sgn = (c.j % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);
          for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t cc = 0; cc < blk.cols(); ++cc)
              d.at(tc->off + r, c.off + cc) += sgn * blk.at(r, cc);
        }
    }
    return d;
  };

  long m = -static_cast<long>(k);
  auto sm1 = build_slot(m - 1), s0 = build_slot(m), sp1 = build_slot(m + 1);
  Matrix din = total_diff(sm1, s0);
  Matrix dout = total_diff(s0, sp1);
  if (!(dout * din).is_zero())
    throw Error("serre duality: total differential does not square to zero");
  std::size_t rhs = slot_dim(s0) - dout.rank() - din.rank();
  return {lhs, rhs};
}

bool NuEngine::serre_duality_check(const Representation& x, const Representation& y,
                                   std::size_t k) const {
  auto [lhs, rhs] = serre_duality_dims(x, y, k);
  return lhs == rhs;
}

}  // namespace tilt
