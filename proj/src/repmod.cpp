#include "tilt/repmod.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tilt/idempotent.hpp"
#include "tilt/span.hpp"

namespace tilt {

Representation::Representation(const FDAlgebra& alg, std::vector<std::size_t> dims,
                               std::vector<Matrix> arrow_actions)
    : alg_(&alg), dims_(std::move(dims)), act_(std::move(arrow_actions)) {
  const Quiver& q = alg.quiver();
  if (dims_.size() != q.vertex_count() || act_.size() != q.arrows().size())
    throw Error("representation: component count mismatch");
  for (std::size_t a = 0; a < act_.size(); ++a) {
    if (act_[a].rows() != dims_[q.arrow(a).source] || act_[a].cols() != dims_[q.arrow(a).target])
      throw Error("representation: arrow matrix shape mismatch");
  }
}

Representation Representation::zero(const FDAlgebra& alg) {
  std::vector<std::size_t> dims(alg.quiver().vertex_count(), 0);
  std::vector<Matrix> acts;
  for (std::size_t a = 0; a < alg.quiver().arrows().size(); ++a)
    acts.emplace_back(alg.field(), 0, 0);
  return Representation(alg, std::move(dims), std::move(acts));
}

std::size_t Representation::total_dim() const {
  std::size_t d = 0;
  for (std::size_t x : dims_) d += x;
  return d;
}

Matrix Representation::path_action(const Path& p) const {
  Matrix m = Matrix::identity(field(), dims_[p.source()]);
  for (std::size_t a : p.arrows()) m = m * act_[a];
  return m;
}

Matrix Representation::element_action(std::size_t vertex_from, const PathSum& nf,
                                      std::size_t vertex_to) const {
  Matrix m(field(), dims_[vertex_from], dims_[vertex_to]);
  for (const auto& [p, c] : nf.terms())
    if (p.source() == vertex_from && p.target() == vertex_to) m = m + path_action(p) * c;
  return m;
}

bool Representation::is_valid() const {
  for (const auto& r : alg_->presentation().relations) {
    Matrix m(field(), dims_[r.common_source()], dims_[r.common_target()]);
    for (const auto& [p, c] : r.terms()) m = m + path_action(p) * c;
    if (!m.is_zero()) return false;
  }
  return true;
}

std::string Representation::dim_str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t v = 0; v < dims_.size(); ++v) os << (v ? "," : "") << dims_[v];
  os << ")";
  return os.str();
}

RepMap::RepMap(const Representation& from, const Representation& to, std::vector<Matrix> comps)
    : RepMap(std::make_shared<const Representation>(from),
             std::make_shared<const Representation>(to), std::move(comps)) {}

RepMap::RepMap(std::shared_ptr<const Representation> from,
               std::shared_ptr<const Representation> to, std::vector<Matrix> comps)
    : from_(std::move(from)), to_(std::move(to)), comps_(std::move(comps)) {
  if (comps_.size() != from_->vertex_count()) throw Error("repmap: component count mismatch");
  for (std::size_t v = 0; v < comps_.size(); ++v)
    if (comps_[v].rows() != from_->dim(v) || comps_[v].cols() != to_->dim(v))
      throw Error("repmap: component shape mismatch");
}

RepMap RepMap::zero(const Representation& from, const Representation& to) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < from.vertex_count(); ++v)
    comps.emplace_back(from.field(), from.dim(v), to.dim(v));
  return RepMap(from, to, std::move(comps));
}

RepMap RepMap::identity(const Representation& m) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    comps.push_back(Matrix::identity(m.field(), m.dim(v)));
  return RepMap(m, m, std::move(comps));
}

bool RepMap::commutes() const {
  const Quiver& q = from_->algebra().quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    if (!(from_->action(a) * comps_[j] == comps_[i] * to_->action(a))) return false;
  }
  return true;
}

bool RepMap::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool RepMap::is_iso() const {
  for (std::size_t v = 0; v < comps_.size(); ++v) {
    if (comps_[v].rows() != comps_[v].cols()) return false;
    if (comps_[v].rank() != comps_[v].rows()) return false;
  }
  return true;
}

RepMap RepMap::operator+(const RepMap& o) const {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] + o.comps_[v]);
  return RepMap(from_, to_, std::move(comps));
}

RepMap RepMap::operator-(const RepMap& o) const {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] - o.comps_[v]);
  return RepMap(from_, to_, std::move(comps));
}

RepMap RepMap::operator*(const Scalar& c) const {
  std::vector<Matrix> comps;
  for (const auto& m : comps_) comps.push_back(m * c);
  return RepMap(from_, to_, std::move(comps));
}

RepMap RepMap::then(const RepMap& g) const {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < comps_.size(); ++v) comps.push_back(comps_[v] * g.comps_[v]);
  return RepMap(from_, g.to_, std::move(comps));
}

bool RepMap::operator==(const RepMap& o) const {
  if (comps_.size() != o.comps_.size()) return false;
  for (std::size_t v = 0; v < comps_.size(); ++v)
    if (!(comps_[v] == o.comps_[v])) return false;
  return true;
}

namespace {

struct VertexOffsets {
  std::vector<std::size_t> off;
  std::size_t total = 0;
  VertexOffsets(const Representation& m, const Representation& n) {
    for (std::size_t v = 0; v < m.vertex_count(); ++v) {
      off.push_back(total);
      total += m.dim(v) * n.dim(v);
    }
  }
  std::size_t index(std::size_t v, std::size_t r, std::size_t c,
                    const Representation& n) const {
    return off[v] + r * n.dim(v) + c;
  }
};

RepMap map_from_flat(const Representation& m, const Representation& n,
                     const VertexOffsets& vo, const Matrix& col, std::size_t j) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    Matrix c(m.field(), m.dim(v), n.dim(v));
    for (std::size_t r = 0; r < m.dim(v); ++r)
      for (std::size_t s = 0; s < n.dim(v); ++s)
        c.at(r, s) = col.at(vo.index(v, r, s, n), j);
    comps.push_back(std::move(c));
  }
  return RepMap(m, n, std::move(comps));
}

}  // namespace

std::vector<RepMap> hom_space(const Representation& m, const Representation& n) {
  if (!(&m.algebra() == &n.algebra()))
    throw Error("hom_space: modules over different algebras");
  Field f = m.field();
  const Quiver& q = m.algebra().quiver();
  VertexOffsets vo(m, n);
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    const Matrix& ma = m.action(a);
    const Matrix& na = n.action(a);
    for (std::size_t p = 0; p < m.dim(i); ++p)
      for (std::size_t c = 0; c < n.dim(j); ++c) {
        std::vector<Scalar> row(vo.total, Scalar::zero(f));
        for (std::size_t r = 0; r < m.dim(j); ++r)
          row[vo.index(j, r, c, n)] += ma.at(p, r);
        for (std::size_t s = 0; s < n.dim(i); ++s)
          row[vo.index(i, p, s, n)] -= na.at(s, c);
        rows.push_back(std::move(row));
      }
  }
  Matrix eq(f, rows.size(), vo.total);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < vo.total; ++c) eq.at(r, c) = rows[r][c];
  Matrix ker = eq.kernel_basis();
  std::vector<RepMap> basis;
  for (std::size_t j = 0; j < ker.cols(); ++j) basis.push_back(map_from_flat(m, n, vo, ker, j));
  return basis;
}

namespace {

// Induced action on a subrepresentation given by basis rows B_v: solves
// C_a * B_j = B_i * X_a.
Representation induced_sub(const Representation& ambient, const std::vector<Matrix>& basis_rows) {
  const Quiver& q = ambient.algebra().quiver();
  Field f = ambient.field();
  std::vector<std::size_t> dims;
  for (const auto& b : basis_rows) dims.push_back(b.rows());
  std::vector<Matrix> acts;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    Matrix rhs = (basis_rows[i] * ambient.action(a)).transpose();
    auto sol = basis_rows[j].transpose().solve_many(rhs);
    if (!sol) throw Error("subrepresentation: rows not action-stable");
    acts.push_back(sol->transpose());
  }
  return Representation(ambient.algebra(), std::move(dims), std::move(acts));
}

std::vector<Matrix> row_space_bases(const RepMap& f) {
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v) {
    auto rr = f.at(v).rref();
    bases.push_back(rr.r.top_rows(rr.pivots.size()));
  }
  return bases;
}

}  // namespace

SubQuotient kernel(const RepMap& f) {
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v)
    bases.push_back(f.at(v).transpose().kernel_basis().transpose());
  Representation k = induced_sub(f.from(), bases);
  return {k, RepMap(k, f.from(), std::move(bases))};
}

SubQuotient image(const RepMap& f) {
  std::vector<Matrix> bases = row_space_bases(f);
  Representation im = induced_sub(f.to(), bases);
  return {im, RepMap(im, f.to(), std::move(bases))};
}

RepMap corestrict_to_image(const RepMap& f, const SubQuotient& img) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v) {
    auto sol = img.map.at(v).transpose().solve_many(f.at(v).transpose());
    if (!sol) throw Error("corestrict: map does not land in image");
    comps.push_back(sol->transpose());
  }
  return RepMap(f.from(), img.rep, std::move(comps));
}

SubQuotient cokernel(const RepMap& f) {
  const Representation& n = f.to();
  Field fl = n.field();
  const Quiver& q = n.algebra().quiver();
  std::vector<SpanBuilder> spans;
  std::vector<std::vector<std::size_t>> free_cols(n.vertex_count());
  std::vector<Matrix> proj;
  for (std::size_t v = 0; v < n.vertex_count(); ++v) {
    SpanBuilder s(fl, n.dim(v));
    for (std::size_t r = 0; r < f.at(v).rows(); ++r) {
      std::vector<Scalar> row;
      for (std::size_t c = 0; c < n.dim(v); ++c) row.push_back(f.at(v).at(r, c));
      s.insert(std::move(row));
    }
    std::vector<bool> is_pivot(n.dim(v), false);
    for (std::size_t p : s.pivots()) is_pivot[p] = true;
    for (std::size_t c = 0; c < n.dim(v); ++c)
      if (!is_pivot[c]) free_cols[v].push_back(c);
    Matrix pm(fl, n.dim(v), free_cols[v].size());
    for (std::size_t t = 0; t < n.dim(v); ++t) {
      std::vector<Scalar> e(n.dim(v), Scalar::zero(fl));
      e[t] = Scalar::one(fl);
      s.reduce(e);
      for (std::size_t c = 0; c < free_cols[v].size(); ++c) pm.at(t, c) = e[free_cols[v][c]];
    }
    proj.push_back(std::move(pm));
    spans.push_back(std::move(s));
  }
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < n.vertex_count(); ++v) dims.push_back(free_cols[v].size());
  std::vector<Matrix> acts;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    Matrix act(fl, dims[i], dims[j]);
    for (std::size_t r = 0; r < dims[i]; ++r) {
      std::vector<Scalar> rep(n.dim(i), Scalar::zero(fl));
      rep[free_cols[i][r]] = Scalar::one(fl);
      Matrix rv(fl, 1, n.dim(i));
      for (std::size_t c = 0; c < n.dim(i); ++c) rv.at(0, c) = rep[c];
      Matrix img = rv * n.action(a) * proj[j];
      for (std::size_t c = 0; c < dims[j]; ++c) act.at(r, c) = img.at(0, c);
    }
    acts.push_back(std::move(act));
  }
  Representation ck(n.algebra(), std::move(dims), std::move(acts));
  return {ck, RepMap(n, ck, std::move(proj))};
}

Representation direct_sum(const std::vector<const Representation*>& parts) {
  if (parts.empty()) throw Error("direct_sum: empty list");
  const FDAlgebra& alg = parts[0]->algebra();
  const Quiver& q = alg.quiver();
  Field f = alg.field();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  for (const auto* p : parts)
    for (std::size_t v = 0; v < q.vertex_count(); ++v) dims[v] += p->dim(v);
  std::vector<Matrix> acts;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
    Matrix m(f, dims[i], dims[j]);
    std::size_t ro = 0, co = 0;
    for (const auto* p : parts) {
      for (std::size_t r = 0; r < p->dim(i); ++r)
        for (std::size_t c = 0; c < p->dim(j); ++c)
          m.at(ro + r, co + c) = p->action(a).at(r, c);
      ro += p->dim(i);
      co += p->dim(j);
    }
    acts.push_back(std::move(m));
  }
  return Representation(alg, std::move(dims), std::move(acts));
}

RepMap summand_inclusion(const std::vector<const Representation*>& parts,
                         const Representation& sum, std::size_t k) {
  Field f = sum.field();
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < sum.vertex_count(); ++v) {
    Matrix m(f, parts[k]->dim(v), sum.dim(v));
    std::size_t off = 0;
    for (std::size_t t = 0; t < k; ++t) off += parts[t]->dim(v);
    for (std::size_t r = 0; r < parts[k]->dim(v); ++r) m.at(r, off + r) = Scalar::one(f);
    comps.push_back(std::move(m));
  }
  return RepMap(*parts[k], sum, std::move(comps));
}

RepMap summand_projection(const std::vector<const Representation*>& parts,
                          const Representation& sum, std::size_t k) {
  Field f = sum.field();
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < sum.vertex_count(); ++v) {
    Matrix m(f, sum.dim(v), parts[k]->dim(v));
    std::size_t off = 0;
    for (std::size_t t = 0; t < k; ++t) off += parts[t]->dim(v);
    for (std::size_t r = 0; r < parts[k]->dim(v); ++r) m.at(off + r, r) = Scalar::one(f);
    comps.push_back(std::move(m));
  }
  return RepMap(sum, *parts[k], std::move(comps));
}

SubQuotient module_radical(const Representation& m) {
  const Quiver& q = m.algebra().quiver();
  Field f = m.field();
  std::vector<Matrix> bases;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    SpanBuilder s(f, m.dim(v));
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      if (q.arrow(a).target != v) continue;
      const Matrix& act = m.action(a);
      for (std::size_t r = 0; r < act.rows(); ++r) {
        std::vector<Scalar> row;
        for (std::size_t c = 0; c < act.cols(); ++c) row.push_back(act.at(r, c));
        s.insert(std::move(row));
      }
    }
    bases.push_back(s.as_matrix());
  }
  Representation rad = induced_sub(m, bases);
  return {rad, RepMap(rad, m, std::move(bases))};
}

namespace {

Matrix embed_endo(const RepMap& f) {
  const Representation& m = f.from();
  Field fl = m.field();
  std::size_t d = m.total_dim();
  Matrix big(fl, d, d);
  std::size_t off = 0;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    for (std::size_t r = 0; r < m.dim(v); ++r)
      for (std::size_t c = 0; c < f.to().dim(v); ++c) big.at(off + r, off + c) = f.at(v).at(r, c);
    off += m.dim(v);
  }
  return big;
}

std::vector<std::pair<std::size_t, std::size_t>> vertex_blocks(const Representation& m) {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t off = 0;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    if (m.dim(v) > 0) blocks.emplace_back(off, m.dim(v));
    off += m.dim(v);
  }
  return blocks;
}

RepMap endo_from_embedding(const Representation& m, const Matrix& big) {
  Field fl = m.field();
  std::vector<Matrix> comps;
  std::size_t off = 0;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    Matrix c(fl, m.dim(v), m.dim(v));
    for (std::size_t r = 0; r < m.dim(v); ++r)
      for (std::size_t s = 0; s < m.dim(v); ++s) c.at(r, s) = big.at(off + r, off + s);
    comps.push_back(std::move(c));
    off += m.dim(v);
  }
  return RepMap(m, m, std::move(comps));
}

// Composition pairing test: indecomposables X, Y are isomorphic iff some
// composition Y -> X -> Y escapes the radical of End(Y).
bool indec_iso(const Representation& x, const Representation& y) {
  if (x.dim_vector() != y.dim_vector()) return false;
  auto hx = hom_space(x, y);
  auto hy = hom_space(y, x);
  if (hx.empty() || hy.empty()) return false;
  std::vector<Matrix> gens;
  for (const auto& e : hom_space(y, y)) gens.push_back(embed_endo(e));
  MatrixAlgebra alg =
      MatrixAlgebra::generate(y.field(), y.total_dim(), gens, vertex_blocks(y));
  SpanBuilder rad(y.field(), y.total_dim() * y.total_dim());
  for (const auto& r : radical_basis(alg)) rad.insert(flatten(r));
  for (const auto& f : hx)
    for (const auto& g : hy)
      if (!rad.contains(flatten(embed_endo(g.then(f))))) return true;
  return false;
}

}  // namespace

bool is_indecomposable(const Representation& x) {
  if (x.is_zero()) return false;
  std::vector<Matrix> gens;
  for (const auto& e : hom_space(x, x)) gens.push_back(embed_endo(e));
  MatrixAlgebra alg =
      MatrixAlgebra::generate(x.field(), x.total_dim(), gens, vertex_blocks(x));
  return alg.basis.size() - radical_basis(alg).size() == 1;
}

std::vector<Summand> decompose(const Representation& m) {
  if (m.is_zero()) return {};
  std::vector<Matrix> gens;
  for (const auto& e : hom_space(m, m)) gens.push_back(embed_endo(e));
  auto idems = split_idempotent_search(gens, m.field(), m.total_dim(), vertex_blocks(m));
  std::vector<Representation> pieces;
  for (const auto& e : idems) {
    RepMap f = endo_from_embedding(m, e);
    pieces.push_back(image(f).rep);
  }
  std::stable_sort(pieces.begin(), pieces.end(),
                   [](const Representation& a, const Representation& b) {
                     if (a.total_dim() != b.total_dim()) return a.total_dim() < b.total_dim();
                     return a.dim_vector() < b.dim_vector();
                   });
  std::vector<Summand> out;
  for (auto& p : pieces) {
    bool merged = false;
    for (auto& s : out)
      if (s.rep.dim_vector() == p.dim_vector() && indec_iso(s.rep, p)) {
        ++s.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.push_back({std::move(p), 1});
  }
  return out;
}

bool isomorphic(const Representation& x, const Representation& y) {
  if (x.dim_vector() != y.dim_vector()) return false;
  if (x.is_zero()) return true;
  auto dx = decompose(x);
  auto dy = decompose(y);
  if (dx.size() != dy.size()) return false;
  std::vector<bool> used(dy.size(), false);
  for (const auto& sx : dx) {
    bool matched = false;
    for (std::size_t j = 0; j < dy.size(); ++j) {
      if (used[j] || dy[j].multiplicity != sx.multiplicity) continue;
      if (indec_iso(sx.rep, dy[j].rep)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

Cover projective_cover(const Representation& m) {
  if (m.is_zero()) throw Error("projective_cover: zero module");
  const FDAlgebra& alg = m.algebra();
  Field f = m.field();
  SubQuotient rad = module_radical(m);
  CanonicalModules cm = canonical_modules(alg);

  std::vector<std::size_t> tops(m.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> rep_rows(m.vertex_count());
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    SpanBuilder s(f, m.dim(v));
    for (std::size_t r = 0; r < rad.map.at(v).rows(); ++r) {
      std::vector<Scalar> row;
      for (std::size_t c = 0; c < m.dim(v); ++c) row.push_back(rad.map.at(v).at(r, c));
      s.insert(std::move(row));
    }
    for (std::size_t t = 0; t < m.dim(v); ++t) {
      std::vector<Scalar> e(m.dim(v), Scalar::zero(f));
      e[t] = Scalar::one(f);
      if (s.insert(std::move(e))) {
        rep_rows[v].push_back(t);
        ++tops[v];
      }
    }
  }

  std::vector<const Representation*> parts;
  std::vector<std::pair<std::size_t, std::size_t>> tags;  // (vertex, representative row)
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    for (std::size_t k = 0; k < tops[v]; ++k) {
      parts.push_back(&cm.projectives[v]);
      tags.emplace_back(v, rep_rows[v][k]);
    }
  if (parts.empty()) throw Error("projective_cover: empty top");
  Representation p = direct_sum(parts);

  // Rows of the surjection, per vertex w, follow the direct-sum layout:
  // basis path q: v -> w of copy (v, x) maps to x * action(q). Path actions
  // are shared across rows through a prefix cache.
  const Quiver& qv = alg.quiver();
  std::map<Path, Matrix> acts;
  auto act_of = [&](const Path& el) -> const Matrix& {
    auto it = acts.find(el);
    if (it != acts.end()) return it->second;
    Matrix cur = Matrix::identity(f, m.dim(el.source()));
    std::vector<std::size_t> pre;
    for (std::size_t a : el.arrows()) {
      pre.push_back(a);
      Path pp(qv, el.source(), pre);
      auto pit = acts.find(pp);
      if (pit == acts.end()) pit = acts.emplace(std::move(pp), cur * m.action(a)).first;
      cur = pit->second;
    }
    return acts.emplace(el, std::move(cur)).first->second;
  };
  std::vector<Matrix> comps;
  for (std::size_t w = 0; w < m.vertex_count(); ++w) {
    Matrix c(f, p.dim(w), m.dim(w));
    std::size_t row = 0;
    for (std::size_t t = 0; t < parts.size(); ++t) {
      std::size_t v = tags[t].first;
      for (const auto& el : alg.elements()) {
        if (el.source() != v || el.target() != w) continue;
        const Matrix& act = act_of(el);
        for (std::size_t col = 0; col < m.dim(w); ++col)
          c.at(row, col) = act.at(tags[t].second, col);
        ++row;
      }
    }
    comps.push_back(std::move(c));
  }
  RepMap onto(p, m, std::move(comps));
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    if (onto.at(v).rank() != m.dim(v)) throw Error("projective_cover: not surjective");
  return {std::move(p), std::move(onto), std::move(tops)};
}

Representation dual(const Representation& m, const FDAlgebra& opposite_alg) {
  const Quiver& q = m.algebra().quiver();
  const Quiver& qo = opposite_alg.quiver();
  std::vector<Matrix> acts(qo.arrows().size(), Matrix());
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    std::size_t ao = qo.arrow_index(q.arrow(a).name);
    acts[ao] = m.action(a).transpose();
  }
  return Representation(opposite_alg, m.dim_vector(), std::move(acts));
}

RepMap dual_map(const RepMap& f, const Representation& dual_to,
                const Representation& dual_from) {
  std::vector<Matrix> comps;
  for (std::size_t v = 0; v < f.from().vertex_count(); ++v)
    comps.push_back(f.at(v).transpose());
  return RepMap(dual_to, dual_from, std::move(comps));
}

namespace {

std::optional<RepMap> solve_in_hom(const std::vector<RepMap>& basis,
                                   const Representation& from, const Representation& to,
                                   const std::function<Matrix(const RepMap&, std::size_t)>& lhs,
                                   const RepMap& target) {
  Field f = from.field();
  std::size_t rows = 0;
  for (std::size_t v = 0; v < target.from().vertex_count(); ++v)
    rows += target.at(v).rows() * target.at(v).cols();
  Matrix a(f, rows, basis.size());
  Matrix b(f, rows, 1);
  std::size_t r = 0;
  for (std::size_t v = 0; v < target.from().vertex_count(); ++v) {
    std::vector<Matrix> cols;
    for (const auto& h : basis) cols.push_back(lhs(h, v));
    const Matrix& tv = target.at(v);
    for (std::size_t i = 0; i < tv.rows(); ++i)
      for (std::size_t j = 0; j < tv.cols(); ++j) {
        for (std::size_t t = 0; t < basis.size(); ++t) a.at(r, t) = cols[t].at(i, j);
        b.at(r, 0) = tv.at(i, j);
        ++r;
      }
  }
  auto sol = a.solve(b);
  if (!sol) return std::nullopt;
  RepMap g = RepMap::zero(from, to);
  for (std::size_t t = 0; t < basis.size(); ++t)
    if (!sol->at(t, 0).is_zero()) g = g + basis[t] * sol->at(t, 0);
  return g;
}

}  // namespace

std::optional<RepMap> factor_through(const RepMap& f, const RepMap& p) {
  auto basis = hom_space(f.from(), p.from());
  return solve_in_hom(basis, f.from(), p.from(),
                      [&](const RepMap& h, std::size_t v) { return h.at(v) * p.at(v); }, f);
}

std::optional<RepMap> factor_along(const RepMap& i, const RepMap& f) {
  auto basis = hom_space(i.to(), f.to());
  return solve_in_hom(basis, i.to(), f.to(),
                      [&](const RepMap& h, std::size_t v) { return i.at(v) * h.at(v); }, f);
}

CanonicalModules canonical_modules(const FDAlgebra& alg) {
  const Quiver& q = alg.quiver();
  Field f = alg.field();
  CanonicalModules out;

  // Basis paths with fixed endpoints, in element order.
  auto slice = [&](std::size_t from, std::size_t to) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < alg.dim(); ++i)
      if (alg.element(i).source() == from && alg.element(i).target() == to) idx.push_back(i);
    return idx;
  };

  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    // P_v = e_v A.
    std::vector<std::vector<std::size_t>> pbasis;
    std::vector<std::size_t> pdims;
    for (std::size_t w = 0; w < q.vertex_count(); ++w) {
      pbasis.push_back(slice(v, w));
      pdims.push_back(pbasis[w].size());
    }
    std::vector<Matrix> pacts;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
      Matrix m(f, pdims[i], pdims[j]);
      std::size_t ia = alg.index_of(Path(q, i, {a}));
      for (std::size_t r = 0; r < pdims[i]; ++r) {
        const auto& prod = alg.product(pbasis[i][r], ia);
        for (std::size_t c = 0; c < pdims[j]; ++c) m.at(r, c) = prod[pbasis[j][c]];
      }
      pacts.push_back(std::move(m));
    }
    out.projectives.emplace_back(alg, std::move(pdims), std::move(pacts));

    // S_v.
    std::vector<std::size_t> sdims(q.vertex_count(), 0);
    sdims[v] = 1;
    std::vector<Matrix> sacts;
    for (std::size_t a = 0; a < q.arrows().size(); ++a)
      sacts.emplace_back(f, sdims[q.arrow(a).source], sdims[q.arrow(a).target]);
    out.simples.emplace_back(alg, std::move(sdims), std::move(sacts));

    // I_v = D(A e_v): component at w is dual to paths w -> v; the action of
    // a: i -> j sends p* to the functional q |-> coeff of p in a*q.
    std::vector<std::vector<std::size_t>> ibasis;
    std::vector<std::size_t> idims;
    for (std::size_t w = 0; w < q.vertex_count(); ++w) {
      ibasis.push_back(slice(w, v));
      idims.push_back(ibasis[w].size());
    }
    std::vector<Matrix> iacts;
    for (std::size_t a = 0; a < q.arrows().size(); ++a) {
      std::size_t i = q.arrow(a).source, j = q.arrow(a).target;
      Matrix m(f, idims[i], idims[j]);
      std::size_t ia = alg.index_of(Path(q, i, {a}));
      for (std::size_t c = 0; c < idims[j]; ++c) {
        const auto& prod = alg.product(ia, ibasis[j][c]);
        for (std::size_t r = 0; r < idims[i]; ++r) m.at(r, c) = prod[ibasis[i][r]];
      }
      iacts.push_back(std::move(m));
    }
    out.injectives.emplace_back(alg, std::move(idims), std::move(iacts));
  }
  return out;
}

Matrix projective_generator_row(const FDAlgebra& alg, std::size_t vertex,
                                const Representation& p_i) {
  Field f = alg.field();
  Matrix row(f, 1, p_i.dim(vertex));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    const Path& el = alg.element(i);
    if (el.source() != vertex || el.target() != vertex) continue;
    if (el.is_stationary()) {
      row.at(0, pos) = Scalar::one(f);
      return row;
    }
    ++pos;
  }
  throw Error("projective_generator_row: stationary path missing");
}

}  // namespace tilt
