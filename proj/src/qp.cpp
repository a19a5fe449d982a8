#include "tilt/qp.hpp"

#include <algorithm>

namespace tilt {

Path canonical_rotation(const Quiver& q, const Path& cycle) {
  if (cycle.source() != cycle.target()) throw Error("potential: not a cycle");
  if (cycle.length() == 0) throw Error("potential: stationary cycle");
  const std::vector<std::size_t>& as = cycle.arrows();
  Path best = cycle;
  for (std::size_t r = 1; r < as.size(); ++r) {
    std::vector<std::size_t> rot(as.begin() + r, as.end());
    rot.insert(rot.end(), as.begin(), as.begin() + r);
    Path p(q, q.arrow(as[r]).source, std::move(rot));
    if (p < best) best = p;
  }
  return best;
}

void Potential::add(const Quiver& q, const Path& cycle, const Scalar& c) {
  if (c.is_zero()) return;
  Path key = canonical_rotation(q, cycle);
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Potential Potential::operator+(const Potential& o) const {
  Potential out = *this;
  for (const auto& [p, c] : o.terms_) {
    auto [it, fresh] = out.terms_.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

Potential Potential::operator*(const Scalar& c) const {
  Potential out(field_);
  if (c.is_zero()) return out;
  for (const auto& [p, cc] : terms_) out.terms_.emplace(p, cc * c);
  return out;
}

std::string Potential::str(const Quiver& q) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [p, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (!c.is_one()) out += c.str() + "*";
    std::string word;
    for (std::size_t a : p.arrows()) {
      if (!word.empty()) word += "*";
      word += q.arrow(a).name;
    }
    out += word;
  }
  return out;
}

PathSum cyclic_derivative(const Quiver& q, const Potential& w, std::size_t arrow) {
  PathSum out(w.field());
  for (const auto& [cycle, c] : w.terms()) {
    const std::vector<std::size_t>& as = cycle.arrows();
    for (std::size_t p = 0; p < as.size(); ++p) {
      if (as[p] != arrow) continue;
      std::vector<std::size_t> rest(as.begin() + p + 1, as.end());
      rest.insert(rest.end(), as.begin(), as.begin() + p);
      out.add(Path(q, q.arrow(arrow).target, std::move(rest)), c);
    }
  }
  return out;
}

namespace {

void validate_cut(const Quiver& q, const Potential& w, const std::vector<bool>& cut) {
  if (cut.size() != q.arrows().size()) throw Error("cut: one flag per arrow required");
  for (const auto& [cycle, c] : w.terms()) {
    std::size_t hits = 0;
    for (std::size_t a : cycle.arrows())
      if (cut[a]) ++hits;
    if (hits != 1) {
      std::string word;
      for (std::size_t a : cycle.arrows()) {
        if (!word.empty()) word += "*";
        word += q.arrow(a).name;
      }
      throw Error("not a cut: cycle " + word + " contains " + std::to_string(hits) +
                  " cut arrows");
    }
  }
}

}  // namespace

Presentation jacobian_presentation(const Quiver& q, const Potential& w,
                                   const std::vector<bool>* cut) {
  Presentation pres;
  pres.quiver = q;
  pres.field = w.field();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    PathSum rel = cyclic_derivative(q, w, a);
    if (!rel.is_zero()) pres.relations.push_back(std::move(rel));
  }
  if (cut) {
    validate_cut(q, w, *cut);
    pres.arrow_degrees.assign(q.arrows().size(), 0);
    for (std::size_t a = 0; a < q.arrows().size(); ++a)
      if ((*cut)[a]) pres.arrow_degrees[a] = 1;
  }
  return pres;
}

Presentation truncated_jacobian(const Quiver& q, const Potential& w,
                                const std::vector<bool>& cut) {
  validate_cut(q, w, cut);
  std::vector<Arrow> kept;
  std::vector<std::size_t> remap(q.arrows().size(), SIZE_MAX);
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    if (!cut[a]) {
      remap[a] = kept.size();
      kept.push_back(q.arrow(a));
    }
  Presentation pres;
  pres.quiver = Quiver(q.vertex_count(), std::move(kept));
  pres.field = w.field();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    if (!cut[a]) continue;
    PathSum rel = cyclic_derivative(q, w, a);
    PathSum out(w.field());
    for (const auto& [p, c] : rel.terms()) {
      std::vector<std::size_t> idx;
      for (std::size_t x : p.arrows()) {
        if (remap[x] == SIZE_MAX)
          throw Error("not a cut: derivative by " + q.arrow(a).name + " touches a cut arrow");
        idx.push_back(remap[x]);
      }
      out.add(Path(pres.quiver, p.source(), std::move(idx)), c);
    }
    if (!out.is_zero()) pres.relations.push_back(std::move(out));
  }
  return pres;
}

namespace {

/// Rebuilds the potential over a quiver with two arrows removed.
Potential strip_arrows(const Quiver& oldq, const Quiver& newq,
                       const std::vector<std::size_t>& remap, const Potential& w) {
  Potential out(w.field());
  for (const auto& [cycle, c] : w.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t a : cycle.arrows()) {
      if (remap[a] == SIZE_MAX) throw Error("mutation: eliminated arrow survives in potential");
      idx.push_back(remap[a]);
    }
    out.add(newq, Path(newq, cycle.source(), std::move(idx)), c);
  }
  (void)oldq;
  return out;
}

}  // namespace

Mutation qp_mutate(const Quiver& q, const Potential& w, std::size_t k,
                   const std::vector<std::size_t>& degrees, std::size_t pass_bound) {
  Field f = w.field();
  if (k >= q.vertex_count()) throw Error("mutation: no such vertex");
  if (degrees.size() != q.arrows().size()) throw Error("mutation: one degree per arrow required");
  std::vector<std::size_t> ins, outs;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (ar.source == k && ar.target == k) throw Error("mutation: loop at the vertex");
    if (ar.target == k) ins.push_back(a);
    if (ar.source == k) outs.push_back(a);
  }
  for (std::size_t a : ins)
    for (std::size_t b : outs)
      if (q.arrow(a).source == q.arrow(b).target)
        throw Error("mutation: 2-cycle at the vertex through " + q.arrow(a).name + ", " +
                    q.arrow(b).name);

  // Premutation quiver: untouched arrows, composites [ab], reversals a*.
  std::vector<Arrow> arrows;
  std::vector<std::size_t> deg;
  std::vector<bool> solved;  // degree already known
  std::vector<std::size_t> keep_remap(q.arrows().size(), SIZE_MAX);
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    if (q.arrow(a).source != k && q.arrow(a).target != k) {
      keep_remap[a] = arrows.size();
      arrows.push_back(q.arrow(a));
      deg.push_back(degrees[a]);
      solved.push_back(true);
    }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp_idx;
  for (std::size_t a : ins)
    for (std::size_t b : outs) {
      comp_idx[{a, b}] = arrows.size();
      arrows.push_back({"[" + q.arrow(a).name + q.arrow(b).name + "]", q.arrow(a).source,
                        q.arrow(b).target});
      deg.push_back(degrees[a] + degrees[b]);
      solved.push_back(true);
    }
  std::map<std::size_t, std::size_t> star_idx;
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    if (q.arrow(a).source == k || q.arrow(a).target == k) {
      star_idx[a] = arrows.size();
      arrows.push_back({q.arrow(a).name + "*", q.arrow(a).target, q.arrow(a).source});
      deg.push_back(0);
      solved.push_back(false);
    }
  Quiver mq(q.vertex_count(), arrows);

  // W' = [W] + sum over 2-paths of [ab] b* a*.
  Potential wp(f);
  for (const auto& [cycle, c] : w.terms()) {
    const std::vector<std::size_t>& as = cycle.arrows();
    std::size_t start = 0;
    while (start < as.size() && q.arrow(as[start]).source == k) ++start;
    if (start == as.size()) throw Error("mutation: cycle stays at the vertex");
    std::vector<std::size_t> idx;
    for (std::size_t t = 0; t < as.size(); ++t) {
      std::size_t a = as[(start + t) % as.size()];
      if (q.arrow(a).target == k) {
        std::size_t b = as[(start + t + 1) % as.size()];
        idx.push_back(comp_idx.at({a, b}));
        ++t;
      } else {
        idx.push_back(keep_remap[a]);
      }
    }
    wp.add(mq, Path(mq, q.arrow(as[start]).source, std::move(idx)), c);
  }
  for (std::size_t a : ins)
    for (std::size_t b : outs) {
      std::vector<std::size_t> idx{comp_idx.at({a, b}), star_idx.at(b), star_idx.at(a)};
      wp.add(mq, Path(mq, q.arrow(a).source, std::move(idx)), Scalar::one(f));
    }

  // Reduction: eliminate 2-cycle terms whose arrows occur linearly elsewhere.
  Mutation out{std::move(mq), std::move(wp), std::move(deg), false, false, ""};
  for (std::size_t pass = 0; pass < pass_bound; ++pass) {
    std::optional<Path> two;
    for (const auto& [cycle, c] : out.potential.terms())
      if (cycle.length() == 2) {
        two = cycle;
        break;
      }
    if (!two) {
      out.reduced = true;
      break;
    }
    std::size_t c_arr = two->arrows()[0], d_arr = two->arrows()[1];
    Scalar lam = out.potential.terms().at(*two);
    bool ok = c_arr != d_arr;
    for (const auto& [cycle, cc] : out.potential.terms()) {
      if (cycle == *two) continue;
      std::size_t hits = 0;
      for (std::size_t a : cycle.arrows()) hits += (a == c_arr) + (a == d_arr);
      if (hits > 1) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      out.note = "reduction incomplete: 2-cycle arrows " + out.quiver.arrow(c_arr).name +
                 ", " + out.quiver.arrow(d_arr).name + " occur nonlinearly";
      break;
    }
    // W = lam c d + c A + d B + W0, with A = d/dc W - lam d, B = d/dd W - lam c.
    PathSum da = cyclic_derivative(out.quiver, out.potential, c_arr);
    PathSum db = cyclic_derivative(out.quiver, out.potential, d_arr);
    da.add(Path(out.quiver, out.quiver.arrow(d_arr).source, {d_arr}), -lam);
    db.add(Path(out.quiver, out.quiver.arrow(c_arr).source, {c_arr}), -lam);
    Potential red(f);
    for (const auto& [cycle, cc] : out.potential.terms()) {
      if (cycle == *two) continue;
      bool touches = false;
      for (std::size_t a : cycle.arrows()) touches |= (a == c_arr || a == d_arr);
      if (!touches) red.add(out.quiver, cycle, cc);
    }
    Scalar li = lam.inverse();
    for (const auto& [p, cp] : da.terms())
      for (const auto& [qq, cq] : db.terms()) {
        auto comp = compose(out.quiver, p, qq);
        if (!comp) throw Error("mutation: reduction produced a non-composable cycle");
        red.add(out.quiver, *comp, -(li * cp * cq));
      }
    // Drop the two arrows.
    std::vector<Arrow> rest;
    std::vector<std::size_t> remap(out.quiver.arrows().size(), SIZE_MAX);
    std::vector<std::size_t> rdeg;
    std::vector<bool> nsolved;
    for (std::size_t a = 0; a < out.quiver.arrows().size(); ++a)
      if (a != c_arr && a != d_arr) {
        remap[a] = rest.size();
        rest.push_back(out.quiver.arrow(a));
        rdeg.push_back(out.arrow_degrees[a]);
        nsolved.push_back(solved[a]);
      }
    Quiver nq(out.quiver.vertex_count(), std::move(rest));
    out.potential = strip_arrows(out.quiver, nq, remap, red);
    out.quiver = std::move(nq);
    out.arrow_degrees = std::move(rdeg);
    solved = std::move(nsolved);
  }
  if (!out.reduced && out.note.empty())
    out.note = "reduction incomplete: pass bound exceeded";

  // Solve the unknown (reversed-arrow) degrees from degree-1 homogeneity.
  std::vector<std::size_t> unknowns;
  for (std::size_t a = 0; a < out.quiver.arrows().size(); ++a)
    if (!solved[a]) unknowns.push_back(a);
  std::map<std::size_t, std::size_t> upos;
  for (std::size_t i = 0; i < unknowns.size(); ++i) upos[unknowns[i]] = i;
  Matrix m(f, out.potential.terms().size(), unknowns.size());
  Matrix rhs(f, out.potential.terms().size(), 1);
  std::size_t row = 0;
  for (const auto& [cycle, c] : out.potential.terms()) {
    long known = 0;
    for (std::size_t a : cycle.arrows()) {
      if (solved[a])
        known += (long)out.arrow_degrees[a];
      else
        m.at(row, upos[a]) += Scalar::one(f);
    }
    rhs.at(row, 0) = Scalar(f, 1 - known);
    ++row;
  }
  std::optional<Matrix> sol;
  if (unknowns.empty()) {
    if (rhs.is_zero()) sol = Matrix(f, 0, 1);
  } else {
    sol = m.solve(rhs);
  }
  out.graded_ok = sol.has_value();
  if (sol) {
    for (std::size_t i = 0; i < unknowns.size(); ++i) {
      const mpq_class& v = sol->at(i, 0).value();
      if (v.get_den() != 1 || v < 0) {
        out.graded_ok = false;
        break;
      }
      out.arrow_degrees[unknowns[i]] = v.get_num().get_ui();
    }
  }
  return out;
}

std::vector<std::size_t> jacobian_slice_dims(const Quiver& q, const Potential& w,
                                             const std::vector<bool>& cut, std::size_t d) {
  Presentation pres = jacobian_presentation(q, w, &cut);
  std::size_t bound = 16 * (d + 2);
  DegreewiseBasis db = DegreewiseBasis::compute(pres, bound, d);
  if (!db.basis(db.max_length()).empty())
    throw Error("jacobian slices: length bound exceeded");
  std::vector<std::size_t> dims(d + 1, 0);
  for (std::size_t l = 0; l <= db.max_length(); ++l)
    for (const Path& p : db.basis(l)) ++dims[pres.path_degree(p)];
  return dims;
}

JacobianCompare compare_preproj_jacobian(const NuEngine& eng, const Quiver& q, const Potential& w,
                                         const std::vector<bool>& cut, std::size_t d) {
  JacobianCompare rep;
  rep.degree = d;
  const FDAlgebra& alg = eng.algebra();
  CanonicalModules cm = canonical_modules(alg);
  // Summand by summand: nu_n^- commutes with direct sums and the towers of
  // the single projectives are much cheaper than the tower of Lambda.
  rep.hat_dims.assign(d + 1, 0);
  for (const Representation& p : cm.projectives) {
    NuEngine::NuIteration it = eng.nakayama_nu_inverse(p, d);
    if (!it.ok)
      throw Error("jacobian comparison: Lambda leaves N^- at step " +
                  std::to_string(it.failed_step));
    for (std::size_t i = 0; i <= d; ++i) rep.hat_dims[i] += it.modules[i].total_dim();
  }
  rep.jacobian_dims = jacobian_slice_dims(q, w, cut, d);
  for (std::size_t i = 0; i <= d; ++i)
    if (rep.hat_dims[i] != rep.jacobian_dims[i]) {
      rep.failure = "slice dimension mismatch at degree " + std::to_string(i) + ": tau route " +
                    std::to_string(rep.hat_dims[i]) + ", jacobian route " +
                    std::to_string(rep.jacobian_dims[i]);
      return rep;
    }
  rep.pass = true;
  return rep;
}

}  // namespace tilt
