#include "tilt/presalg.hpp"

#include <algorithm>

#include "tilt/span.hpp"

namespace tilt {

std::size_t Presentation::path_degree(const Path& p) const {
  std::size_t d = 0;
  for (std::size_t a : p.arrows()) d += arrow_degree(a);
  return d;
}

std::size_t Presentation::sum_degree(const PathSum& s) const {
  if (s.is_zero()) return 0;
  return path_degree(s.terms().begin()->first);
}

void Presentation::validate() const {
  if (!arrow_degrees.empty() && arrow_degrees.size() != quiver.arrows().size())
    throw Error("presentation: arrow_degrees size mismatch");
  for (const auto& r : relations) {
    if (r.is_zero()) throw Error("presentation: zero relation");
    if (!r.endpoint_homogeneous())
      throw Error("presentation: relation not endpoint-homogeneous");
    const Path& first = r.terms().begin()->first;
    std::size_t len = first.length();
    std::size_t deg = path_degree(first);
    if (len < 2) throw Error("presentation: relation outside the arrow ideal square");
    for (const auto& [p, c] : r.terms()) {
      if (p.length() != len) throw Error("presentation: relation not length-homogeneous");
      if (path_degree(p) != deg) throw Error("presentation: relation not degree-homogeneous");
    }
  }
}

const std::vector<Path>& DegreewiseBasis::basis(std::size_t length) const {
  if (length >= basis_.size()) {
    static const std::vector<Path> empty;
    return empty;
  }
  return basis_[length];
}

std::size_t DegreewiseBasis::total_dim() const {
  std::size_t d = 0;
  for (const auto& b : basis_) d += b.size();
  return d;
}

bool DegreewiseBasis::is_basis_path(const Path& p) const {
  if (p.length() >= basis_.size()) return false;
  const auto& slice = basis_[p.length()];
  return std::find(slice.begin(), slice.end(), p) != slice.end();
}

PathSum DegreewiseBasis::extend_by_arrow(const PathSum& nf, std::size_t arrow) const {
  PathSum out(pres_.field);
  const Arrow& a = pres_.quiver.arrow(arrow);
  for (const auto& [b, c] : nf.terms()) {
    if (b.target() != a.source) continue;
    std::vector<std::size_t> idx = b.arrows();
    idx.push_back(arrow);
    Path cand(pres_.quiver, b.source(), std::move(idx));
    auto it = rewrite_.find(cand);
    if (it == rewrite_.end())
      throw Error("degreewise basis: path exceeds computed length bound");
    out = out + it->second * c;
  }
  return out;
}

PathSum DegreewiseBasis::normal_form(const Path& p) const {
  if (p.length() >= basis_.size())
    throw Error("degreewise basis: path exceeds computed length bound");
  PathSum cur(pres_.field, Path::stationary(p.source()));
  for (std::size_t a : p.arrows()) cur = extend_by_arrow(cur, a);
  return cur;
}

PathSum DegreewiseBasis::normal_form(const PathSum& s) const {
  PathSum out(pres_.field);
  for (const auto& [p, c] : s.terms()) out = out + normal_form(p) * c;
  return out;
}

PathSum DegreewiseBasis::multiply_nf(const PathSum& x, const PathSum& y) const {
  PathSum out(pres_.field);
  for (const auto& [q, cy] : y.terms()) {
    for (const auto& [p, cx] : x.terms()) {
      if (p.target() != q.source()) continue;
      PathSum cur(pres_.field, p);
      for (std::size_t a : q.arrows()) cur = extend_by_arrow(cur, a);
      out = out + cur * (cx * cy);
    }
  }
  return out;
}

DegreewiseBasis DegreewiseBasis::compute(const Presentation& p, std::size_t max_length,
                                         std::size_t max_degree) {
  p.validate();
  DegreewiseBasis db(p);
  Field f = p.field;
  const Quiver& q = p.quiver;

  db.basis_.emplace_back();
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    db.basis_[0].push_back(Path::stationary(v));

  for (std::size_t l = 1; l <= max_length; ++l) {
    // Candidates: previous basis times one arrow, in deterministic order.
    std::vector<Path> cand;
    std::map<Path, std::size_t> cand_idx;
    for (const auto& b : db.basis_[l - 1])
      for (std::size_t a = 0; a < q.arrows().size(); ++a)
        if (q.arrow(a).source == b.target()) {
          std::vector<std::size_t> idx = b.arrows();
          idx.push_back(a);
          Path c(q, b.source(), std::move(idx));
          if (p.path_degree(c) > max_degree) continue;
          cand_idx.emplace(c, cand.size());
          cand.push_back(std::move(c));
        }

    // Relation span at this length: nf(b) * r for |b| + |r| = l. The final
    // arrow multiplication lands on candidate paths directly.
    SpanBuilder rel_span(f, cand.size());
    std::vector<std::vector<Scalar>> rel_rows;
    for (const auto& r : p.relations) {
      std::size_t k = r.terms().begin()->first.length();
      if (k > l) continue;
      for (const auto& b : db.basis_[l - k]) {
        if (b.target() != r.common_source()) continue;
        if (p.path_degree(b) + p.sum_degree(r) > max_degree) continue;
        std::vector<Scalar> row(cand.size(), Scalar::zero(f));
        for (const auto& [path, c] : r.terms()) {
          PathSum cur(f, b);
          const auto& arrs = path.arrows();
          for (std::size_t t = 0; t + 1 < arrs.size(); ++t)
            cur = db.extend_by_arrow(cur, arrs[t]);
          std::size_t last = arrs.back();
          const Arrow& la = q.arrow(last);
          for (const auto& [bp, cc] : cur.terms()) {
            if (bp.target() != la.source) continue;
            std::vector<std::size_t> idx = bp.arrows();
            idx.push_back(last);
            Path cp(q, bp.source(), std::move(idx));
            row[cand_idx.at(cp)] += cc * c;
          }
        }
        rel_span.insert(std::move(row));
      }
    }

    // Basis = non-pivot candidates; pivots rewrite to minus the row tail.
    std::vector<bool> is_pivot(cand.size(), false);
    for (std::size_t piv : rel_span.pivots()) is_pivot[piv] = true;
    db.basis_.emplace_back();
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (!is_pivot[i]) {
        db.basis_[l].push_back(cand[i]);
        PathSum self(f, cand[i]);
        db.rewrite_.emplace(cand[i], self);
      }
    for (std::size_t rr = 0; rr < rel_span.rows().size(); ++rr) {
      const auto& row = rel_span.rows()[rr];
      PathSum nf(f);
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (!is_pivot[i] && !row[i].is_zero()) nf.add(cand[i], -row[i]);
      db.rewrite_.emplace(cand[rel_span.pivots()[rr]], nf);
    }
    if (db.basis_[l].empty()) break;  // all higher slices vanish
  }
  return db;
}

FDAlgebra::FDAlgebra(DegreewiseBasis b) : basis_(std::move(b)) {
  for (std::size_t l = 0; l <= basis_.max_length(); ++l)
    for (const auto& p : basis_.basis(l)) {
      index_.emplace(p, elements_.size());
      elements_.push_back(p);
    }
  stationary_.assign(quiver().vertex_count(), 0);
  for (std::size_t v = 0; v < quiver().vertex_count(); ++v)
    stationary_[v] = index_.at(Path::stationary(v));
  zero_coords_.assign(dim(), Scalar::zero(field()));
}

std::size_t FDAlgebra::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw Error("fd algebra: not a basis element");
  return it->second;
}

std::size_t FDAlgebra::stationary_index(std::size_t vertex) const {
  return stationary_.at(vertex);
}

const std::vector<Scalar>& FDAlgebra::product(std::size_t i, std::size_t j) const {
  if (elements_[i].target() != elements_[j].source() ||
      elements_[i].length() + elements_[j].length() > top_length())
    return zero_coords_;
  auto it = products_.find({i, j});
  if (it != products_.end()) return it->second;
  PathSum prod = basis_.multiply_nf(PathSum(field(), elements_[i]), PathSum(field(), elements_[j]));
  return products_.emplace(std::make_pair(i, j), coords(prod)).first->second;
}

std::vector<Scalar> FDAlgebra::coords(const PathSum& nf) const {
  std::vector<Scalar> v(dim(), Scalar::zero(field()));
  for (const auto& [p, c] : nf.terms()) v[index_of(p)] = c;
  return v;
}

PathSum FDAlgebra::from_coords(const std::vector<Scalar>& v) const {
  PathSum s(field());
  for (std::size_t i = 0; i < v.size(); ++i) s.add(elements_[i], v[i]);
  return s;
}

std::optional<FDAlgebra> as_fd_algebra(const Presentation& p, std::size_t safety_bound) {
  DegreewiseBasis db = DegreewiseBasis::compute(p, safety_bound);
  if (!db.basis(db.max_length()).empty()) return std::nullopt;
  return FDAlgebra(std::move(db));
}

Presentation opposite(const Presentation& p) {
  Presentation op;
  op.field = p.field;
  std::vector<Arrow> arrows;
  for (const auto& a : p.quiver.arrows()) arrows.push_back({a.name, a.target, a.source});
  op.quiver = Quiver(p.quiver.vertex_count(), std::move(arrows));
  op.arrow_degrees = p.arrow_degrees;
  for (const auto& r : p.relations) {
    PathSum rr(p.field);
    for (const auto& [path, c] : r.terms()) {
      std::vector<std::size_t> idx(path.arrows().rbegin(), path.arrows().rend());
      rr.add(Path(op.quiver, path.target(), std::move(idx)), c);
    }
    op.relations.push_back(std::move(rr));
  }
  return op;
}

}  // namespace tilt
