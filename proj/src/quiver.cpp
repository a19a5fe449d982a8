#include "tilt/quiver.hpp"

#include <sstream>

namespace tilt {

Quiver::Quiver(std::size_t vertex_count, std::vector<Arrow> arrows)
    : n_(vertex_count), arrows_(std::move(arrows)) {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    if (a.source >= n_ || a.target >= n_)
      throw Error("quiver: arrow '" + a.name + "' uses an undeclared vertex");
    if (!by_name_.emplace(a.name, i).second)
      throw Error("quiver: duplicate arrow name '" + a.name + "'");
  }
}

std::size_t Quiver::arrow_index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw Error("quiver: unknown arrow '" + name + "'");
  return it->second;
}

bool Quiver::has_arrow(const std::string& name) const { return by_name_.count(name) != 0; }

bool Quiver::has_loops() const {
  for (const auto& a : arrows_)
    if (a.source == a.target) return true;
  return false;
}

Matrix Quiver::adjacency(Field f) const {
  Matrix m(f, n_, n_);
  for (const auto& a : arrows_) m.at(a.source, a.target) += Scalar::one(f);
  return m;
}

Path::Path(const Quiver& q, std::size_t source, std::vector<std::size_t> arrow_indices)
    : source_(source), target_(source), arrows_(std::move(arrow_indices)) {
  for (std::size_t idx : arrows_) {
    const Arrow& a = q.arrow(idx);
    if (a.source != target_) throw Error("path: arrows do not compose");
    target_ = a.target;
  }
}

Path Path::stationary(std::size_t vertex) {
  Path p;
  p.source_ = p.target_ = vertex;
  return p;
}

bool Path::operator<(const Path& o) const {
  if (arrows_.size() != o.arrows_.size()) return arrows_.size() < o.arrows_.size();
  if (arrows_ != o.arrows_) return arrows_ < o.arrows_;
  return source_ < o.source_;
}

std::string Path::str(const Quiver& q) const {
  if (arrows_.empty()) return "e_" + std::to_string(source_ + 1);
  std::string s;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (i) s += "*";
    s += q.arrow(arrows_[i]).name;
  }
  return s;
}

std::optional<Path> compose(const Quiver& q, const Path& a, const Path& b) {
  if (a.target() != b.source()) return std::nullopt;
  std::vector<std::size_t> idx = a.arrows();
  idx.insert(idx.end(), b.arrows().begin(), b.arrows().end());
  return Path(q, a.source(), std::move(idx));
}

std::vector<Path> paths_from(const Quiver& q, std::size_t i, std::size_t l) {
  std::vector<Path> cur = {Path::stationary(i)};
  for (std::size_t step = 0; step < l; ++step) {
    std::vector<Path> next;
    for (const auto& p : cur)
      for (std::size_t a = 0; a < q.arrows().size(); ++a)
        if (q.arrow(a).source == p.target()) {
          std::vector<std::size_t> idx = p.arrows();
          idx.push_back(a);
          next.emplace_back(q, i, std::move(idx));
        }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Path> paths_between(const Quiver& q, std::size_t i, std::size_t j, std::size_t l) {
  std::vector<Path> out;
  for (auto& p : paths_from(q, i, l))
    if (p.target() == j) out.push_back(std::move(p));
  return out;
}

void PathSum::add(const Path& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PathSum PathSum::operator+(const PathSum& o) const {
  PathSum r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, c);
  return r;
}

PathSum PathSum::operator-(const PathSum& o) const {
  PathSum r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, -c);
  return r;
}

PathSum PathSum::operator*(const Scalar& c) const {
  PathSum r(field_);
  for (const auto& [p, k] : terms_) r.add(p, k * c);
  return r;
}

bool PathSum::endpoint_homogeneous() const {
  if (terms_.empty()) return true;
  auto first = terms_.begin()->first;
  for (const auto& [p, c] : terms_)
    if (p.source() != first.source() || p.target() != first.target()) return false;
  return true;
}

std::size_t PathSum::common_source() const {
  if (terms_.empty() || !endpoint_homogeneous())
    throw Error("path sum: no common source");
  return terms_.begin()->first.source();
}

std::size_t PathSum::common_target() const {
  if (terms_.empty() || !endpoint_homogeneous())
    throw Error("path sum: no common target");
  return terms_.begin()->first.target();
}

std::string PathSum::str(const Quiver& q) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (!c.is_one()) os << c.str() << "*";
    os << p.str(q);
  }
  return os.str();
}

PathSum multiply(const Quiver& q, const PathSum& x, const PathSum& y) {
  PathSum r(x.field());
  for (const auto& [p, a] : x.terms())
    for (const auto& [s, b] : y.terms())
      if (auto comp = compose(q, p, s)) r.add(*comp, a * b);
  return r;
}

}  // namespace tilt
