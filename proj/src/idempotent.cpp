#include "tilt/idempotent.hpp"

#include <algorithm>
#include <sstream>

namespace tilt {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

bool poly_is_zero(const Poly& p) { return poly_trim(p).empty(); }

std::size_t poly_degree(const Poly& p) {
  Poly t = poly_trim(p);
  return t.empty() ? 0 : t.size() - 1;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Field f = a.empty() ? (b.empty() ? rationals() : b[0].field()) : a[0].field();
  Poly r(std::max(a.size(), b.size()), Scalar::zero(f));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(r);
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Field f = a.empty() ? (b.empty() ? rationals() : b[0].field()) : a[0].field();
  Poly r(std::max(a.size(), b.size()), Scalar::zero(f));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return poly_trim(r);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Scalar::zero(a[0].field()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return poly_trim(r);
}

Poly poly_monic(const Poly& p) {
  Poly t = poly_trim(p);
  if (t.empty()) return t;
  Scalar inv = t.back().inverse();
  for (auto& c : t) c *= inv;
  return t;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  Poly bb = poly_trim(b);
  if (bb.empty()) throw Error("poly_divmod: division by zero polynomial");
  Poly rem = poly_trim(a);
  Field f = bb[0].field();
  if (rem.size() < bb.size()) return {{}, rem};
  Poly quo(rem.size() - bb.size() + 1, Scalar::zero(f));
  Scalar lead_inv = bb.back().inverse();
  while (rem.size() >= bb.size() && !rem.empty()) {
    std::size_t shift = rem.size() - bb.size();
    Scalar c = rem.back() * lead_inv;
    quo[shift] = c;
    for (std::size_t i = 0; i < bb.size(); ++i) rem[shift + i] -= c * bb[i];
    rem = poly_trim(rem);
  }
  return {poly_trim(quo), rem};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  Poly x = poly_trim(a), y = poly_trim(b);
  while (!y.empty()) {
    Poly r = poly_divmod(x, y).second;
    x = y;
    y = r;
  }
  return poly_monic(x);
}

Poly poly_derivative(const Poly& p) {
  Poly t = poly_trim(p);
  if (t.size() < 2) return {};
  Field f = t[0].field();
  Poly r(t.size() - 1, Scalar::zero(f));
  for (std::size_t i = 1; i < t.size(); ++i) r[i - 1] = t[i] * Scalar(f, static_cast<long>(i));
  return poly_trim(r);
}

Scalar poly_eval(const Poly& p, const Scalar& x) {
  Scalar r = Scalar::zero(x.field());
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

Matrix poly_eval_matrix(const Poly& p, const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("poly_eval_matrix: square matrix required");
  Matrix r(m.field(), m.rows(), m.rows());
  for (std::size_t i = p.size(); i-- > 0;) {
    r = r * m;
    if (!p[i].is_zero()) r = r + Matrix::identity(m.field(), m.rows()) * p[i];
  }
  return r;
}

Poly poly_squarefree_part(const Poly& p) {
  Poly t = poly_trim(p);
  if (t.size() < 2) return poly_monic(t);
  Poly d = poly_derivative(t);
  if (poly_is_zero(d)) return poly_monic(t);
  Poly g = poly_gcd(t, d);
  return poly_monic(poly_divmod(t, g).first);
}

std::string poly_str(const Poly& p) {
  Poly t = poly_trim(p);
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = t.size(); i-- > 0;) {
    if (t[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || !t[i].is_one()) os << t[i].str();
    if (i > 0) {
      if (!t[i].is_one()) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly minimal_polynomial(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error("minimal_polynomial: square matrix required");
  Field f = a.field();
  std::size_t n = a.rows();
  std::vector<Matrix> powers = {Matrix::identity(f, n)};
  for (std::size_t k = 1; k <= n + 1; ++k) {
    Matrix next = powers.back() * a;
    Matrix cols(f, n * n, powers.size());
    for (std::size_t j = 0; j < powers.size(); ++j) {
      auto fl = flatten(powers[j]);
      for (std::size_t i = 0; i < fl.size(); ++i) cols.at(i, j) = fl[i];
    }
    Matrix rhs(f, n * n, 1);
    auto fl = flatten(next);
    for (std::size_t i = 0; i < fl.size(); ++i) rhs.at(i, 0) = fl[i];
    if (auto sol = cols.solve(rhs)) {
      Poly m(powers.size() + 1, Scalar::zero(f));
      for (std::size_t j = 0; j < powers.size(); ++j) m[j] = -sol->at(j, 0);
      m[powers.size()] = Scalar::one(f);
      return m;
    }
    powers.push_back(next);
  }
  throw Error("minimal_polynomial: no dependency found");
}

namespace {

bool scalar_less(const Scalar& a, const Scalar& b) { return a.value() < b.value(); }

// All positive divisors of |v|, by trial division. A leftover cofactor past
// the trial bound is treated as one extra prime, which keeps the candidate
// set a superset of the true divisors for the sizes that occur here.
std::vector<mpz_class> integer_divisors(mpz_class v) {
  if (v < 0) v = -v;
  std::vector<mpz_class> divs = {1};
  if (v <= 1) return divs;
  auto push_prime_power = [&divs](const mpz_class& p, unsigned mult) {
    std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned e = 1; e <= mult; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  };
  mpz_class rem = v;
  for (mpz_class d = 2; d * d <= rem && d < 1000000; ++d) {
    if (rem % d != 0) continue;
    unsigned mult = 0;
    while (rem % d == 0) {
      rem /= d;
      ++mult;
    }
    push_prime_power(d, mult);
  }
  if (rem > 1) push_prime_power(rem, 1);
  return divs;
}

}  // namespace

std::vector<Scalar> field_roots(const Poly& p) {
  Poly t = poly_trim(p);
  if (t.empty()) throw Error("field_roots: zero polynomial");
  Field f = t[0].field();
  std::vector<Scalar> roots;
  if (!f.is_rational()) {
    if (f.p > 100000) throw Error("field_roots: prime too large for exhaustive search");
    for (unsigned long r = 0; r < f.p; ++r) {
      Scalar x(f, static_cast<long>(r));
      if (poly_eval(t, x).is_zero()) roots.push_back(x);
    }
    return roots;
  }
  // Rational roots: factor out x, clear denominators, then apply the
  // rational root theorem with divisor candidates of the outer coefficients.
  bool zero_root = false;
  while (!t.empty() && t[0].is_zero()) {
    zero_root = true;
    t.erase(t.begin());
  }
  if (zero_root) roots.push_back(Scalar::zero(f));
  if (t.size() >= 2) {
    mpz_class den_lcm = 1;
    for (const auto& c : t) {
      mpz_class d = c.value().get_den();
      den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    std::vector<mpz_class> ic;
    for (const auto& c : t) {
      mpq_class q = c.value() * mpq_class(den_lcm);
      ic.push_back(q.get_num());
    }
    auto nums = integer_divisors(ic.front());
    auto dens = integer_divisors(ic.back());
    for (const auto& r : nums)
      for (const auto& s : dens)
        for (int sign : {1, -1}) {
          mpq_class cand(sign * r, s);
          cand.canonicalize();
          Scalar x(f, cand);
          if (poly_eval(t, x).is_zero() &&
              std::find(roots.begin(), roots.end(), x) == roots.end())
            roots.push_back(x);
        }
  }
  std::sort(roots.begin(), roots.end(), scalar_less);
  return roots;
}

MatrixAlgebra MatrixAlgebra::generate(Field f, std::size_t n, const std::vector<Matrix>& gens,
                                      std::vector<std::pair<std::size_t, std::size_t>> blocks) {
  if (blocks.empty()) blocks = {{0, n}};
  MatrixAlgebra alg{f, n, {}, std::move(blocks)};
  SpanBuilder span(f, n * n);
  auto try_add = [&](const Matrix& m) {
    if (m.rows() != n || m.cols() != n) throw Error("algebra generator: shape mismatch");
    if (span.insert(flatten(m))) alg.basis.push_back(m);
  };
  try_add(Matrix::identity(f, n));
  for (const auto& g : gens) try_add(g);
  std::size_t done = 0;
  while (done < alg.basis.size()) {
    std::size_t cur = alg.basis.size();
    for (std::size_t i = done; i < cur; ++i)
      for (std::size_t j = 0; j < alg.basis.size(); ++j) {
        try_add(alg.basis[i] * alg.basis[j]);
        if (j < done) try_add(alg.basis[j] * alg.basis[i]);
      }
    done = cur;
  }
  return alg;
}

bool MatrixAlgebra::contains(const Matrix& m) const {
  SpanBuilder span(field, n * n);
  for (const auto& b : basis) span.insert(flatten(b));
  return span.contains(flatten(m));
}

std::vector<Matrix> radical_basis(const MatrixAlgebra& alg) {
  std::size_t m = alg.basis.size();
  Field f = alg.field;
  const auto& blocks = alg.blocks.empty()
                           ? std::vector<std::pair<std::size_t, std::size_t>>{{0, alg.n}}
                           : alg.blocks;
  // One Gram row group per invariant block: x is in the kernel of every
  // blockwise trace form.
  Matrix gram(f, m * blocks.size(), m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix prod = alg.basis[i] * alg.basis[j];
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        Scalar tr = Scalar::zero(f);
        for (std::size_t k = blocks[b].first; k < blocks[b].first + blocks[b].second; ++k)
          tr += prod.at(k, k);
        gram.at(j * blocks.size() + b, i) = tr;
      }
    }
  Matrix ker = gram.kernel_basis();
  std::vector<Matrix> rad;
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    Matrix r(f, alg.n, alg.n);
    for (std::size_t i = 0; i < m; ++i)
      if (!ker.at(i, j).is_zero()) r = r + alg.basis[i] * ker.at(i, j);
    rad.push_back(r);
  }
  // The trace criterion can degenerate in positive characteristic; certify
  // the answer by checking the candidate ideal is actually nilpotent.
  SpanBuilder layer(f, alg.n * alg.n);
  std::vector<Matrix> cur;
  for (const auto& r : rad)
    if (layer.insert(flatten(r))) cur.push_back(r);
  while (!cur.empty()) {
    SpanBuilder next_span(f, alg.n * alg.n);
    std::vector<Matrix> next;
    for (const auto& a : cur)
      for (const auto& r : rad) {
        Matrix p = a * r;
        if (!p.is_zero() && next_span.insert(flatten(p))) next.push_back(p);
      }
    // J^{k+1} is contained in J^k, so the dimension must strictly drop.
    if (next_span.dim() >= layer.dim())
      throw Error("radical: trace criterion degenerated in this characteristic");
    layer = next_span;
    cur = next;
  }
  return rad;
}

namespace {

// Projection of c onto the generalized eigenspace of root lambda, as an exact
// polynomial in c: with m = (x-lambda)^k * h coprime, the CRT idempotent
// u = 1 mod (x-lambda)^k, 0 mod h satisfies u(c)^2 = u(c) exactly.
Matrix crt_projector(const Matrix& c, const Poly& minpoly, const Scalar& lambda) {
  Field f = c.field();
  Poly lin = {-lambda, Scalar::one(f)};
  Poly g = lin;
  Poly rest = minpoly;
  Poly quo, rem;
  std::tie(quo, rem) = poly_divmod(rest, lin);
  if (!poly_is_zero(rem)) throw Error("crt_projector: not a root");
  rest = quo;
  while (true) {
    std::tie(quo, rem) = poly_divmod(rest, lin);
    if (!poly_is_zero(rem)) break;
    g = poly_mul(g, lin);
    rest = quo;
  }
  // Extended Euclid for s with s*rest = 1 mod g.
  Poly r0 = g, r1 = rest;
  Poly t0 = {}, t1 = {Scalar::one(f)};
  while (!poly_is_zero(r1)) {
    auto [q, r2] = poly_divmod(r0, r1);
    Poly t2 = poly_sub(t0, poly_mul(q, t1));
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (poly_degree(r0) != 0 || poly_is_zero(r0))
    throw Error("crt_projector: factors not coprime");
  Scalar inv = r0[0].inverse();
  for (auto& x : t0) x *= inv;
  Poly u = poly_divmod(poly_mul(t0, rest), minpoly).second;
  return poly_eval_matrix(u, c);
}

struct SplitContext {
  const MatrixAlgebra& alg;
};

void split_rec(SplitContext& ctx, const Matrix& e, std::vector<Matrix>& out) {
  Field f = ctx.alg.field;
  std::size_t n = ctx.alg.n;
  if (e.is_zero()) return;
  // Corner algebra e A e, with e as its unit.
  SpanBuilder corner_span(f, n * n);
  std::vector<Matrix> corner;
  for (const auto& b : ctx.alg.basis) {
    Matrix c = e * b * e;
    if (!c.is_zero() && corner_span.insert(flatten(c))) corner.push_back(c);
  }
  MatrixAlgebra corner_alg{f, n, corner, ctx.alg.blocks};
  std::vector<Matrix> rad = radical_basis(corner_alg);
  if (corner.size() - rad.size() <= 1) {
    out.push_back(e);
    return;
  }
  SpanBuilder rad_span(f, n * n);
  for (const auto& r : rad) rad_span.insert(flatten(r));

  // Candidate elements to diagonalize: central-mod-radical elements first
  // (their eigenprojections split the block decomposition directly), then
  // basis elements and small sums as a fallback.
  std::vector<Matrix> candidates;
  {
    std::size_t m = corner.size();
    std::vector<std::vector<Scalar>> eq_rows;
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<std::vector<Scalar>> residuals;
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<Scalar> v = flatten(corner[i] * corner[k] - corner[k] * corner[i]);
        rad_span.reduce(v);
        residuals.push_back(std::move(v));
      }
      for (std::size_t t = 0; t < n * n; ++t) {
        std::vector<Scalar> row(m, Scalar::zero(f));
        bool nonzero = false;
        for (std::size_t i = 0; i < m; ++i) {
          row[i] = residuals[i][t];
          if (!row[i].is_zero()) nonzero = true;
        }
        if (nonzero) eq_rows.push_back(std::move(row));
      }
    }
    Matrix eq(f, eq_rows.size(), m);
    for (std::size_t i = 0; i < eq_rows.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) eq.at(i, j) = eq_rows[i][j];
    Matrix ker = eq.kernel_basis();
    for (std::size_t j = 0; j < ker.cols(); ++j) {
      Matrix z(f, n, n);
      for (std::size_t i = 0; i < m; ++i)
        if (!ker.at(i, j).is_zero()) z = z + corner[i] * ker.at(i, j);
      if (!z.is_zero()) candidates.push_back(z);
    }
  }
  for (const auto& b : corner) candidates.push_back(b);
  for (std::size_t i = 0; i < corner.size() && i < 12; ++i)
    for (std::size_t j = i + 1; j < corner.size() && j < 12; ++j)
      candidates.push_back(corner[i] + corner[j]);

  std::size_t budget = 0;
  bool saw_extension = false;
  for (const auto& c : candidates) {
    if (++budget > 500) break;
    Poly m = minimal_polynomial(c);
    Poly sf = poly_squarefree_part(m);
    std::vector<Scalar> roots = field_roots(sf);
    if (roots.size() < poly_degree(sf)) saw_extension = true;
    if (roots.size() < 2) continue;
    for (const auto& lambda : roots) {
      Matrix proj = crt_projector(c, m, lambda);
      Matrix fidem = e * proj * e;
      if (fidem.is_zero() || fidem == e) continue;
      if (!(fidem * fidem == fidem)) continue;
      split_rec(ctx, fidem, out);
      split_rec(ctx, e - fidem, out);
      return;
    }
  }
  if (saw_extension)
    throw FieldExtensionNeeded("idempotent split requires a field extension");
  throw Error("idempotent split: candidate search exhausted");
}

}  // namespace

std::vector<Matrix> split_idempotent(const MatrixAlgebra& alg, const Matrix& e) {
  SplitContext ctx{alg};
  std::vector<Matrix> out;
  split_rec(ctx, e, out);
  return out;
}

std::vector<Matrix> split_idempotent_search(
    const std::vector<Matrix>& gens, Field f, std::size_t n,
    std::vector<std::pair<std::size_t, std::size_t>> blocks) {
  MatrixAlgebra alg = MatrixAlgebra::generate(f, n, gens, std::move(blocks));
  return split_idempotent(alg, Matrix::identity(f, n));
}

}  // namespace tilt
