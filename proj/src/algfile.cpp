#include "tilt/algfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tilt {

namespace {

struct ParseError : Error {
  using Error::Error;
};

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col + 1) + ": " +
                   msg);
}

bool name_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

/// One term of a path expression: an optional rational coefficient and a
/// word of arrow names / stationary markers, with source columns kept for
/// error messages.
struct Term {
  Scalar coef;
  std::vector<std::pair<std::string, std::size_t>> factors;
};

class ExprParser {
 public:
  ExprParser(Field f, const std::string& s, std::size_t line, std::size_t base_col)
      : f_(f), s_(s), line_(line), base_(base_col) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    if (done()) fail(line_, col(), "expected a path expression");
    bool neg = eat_sign();
    for (;;) {
      terms.push_back(term(neg));
      skip_ws();
      if (done()) break;
      char c = s_[pos_];
      if (c != '+' && c != '-') fail(line_, col(), std::string("unexpected character '") + c + "'");
      ++pos_;
      neg = (c == '-');
      skip_ws();
      neg ^= eat_sign();
    }
    return terms;
  }

 private:
  bool done() const { return pos_ >= s_.size(); }
  std::size_t col() const { return base_ + pos_; }
  void skip_ws() {
    while (!done() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool eat_sign() {
    if (!done() && s_[pos_] == '-') {
      ++pos_;
      skip_ws();
      return true;
    }
    return false;
  }

  Term term(bool neg) {
    Term t{Scalar::one(f_), {}};
    skip_ws();
    if (!done() && std::isdigit((unsigned char)s_[pos_])) {
      long num = number();
      long den = 1;
      if (!done() && s_[pos_] == '/') {
        ++pos_;
        if (done() || !std::isdigit((unsigned char)s_[pos_]))
          fail(line_, col(), "expected a denominator");
        den = number();
      }
      t.coef = Scalar(f_, num, den);
      skip_ws();
      if (done() || s_[pos_] != '*') fail(line_, col(), "expected '*' after a coefficient");
      ++pos_;
    }
    if (neg) t.coef = t.coef * Scalar(f_, -1);
    for (;;) {
      skip_ws();
      std::size_t at = col();
      if (done() || !(std::isalpha((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        fail(line_, at, "expected an arrow name or e_<vertex>");
      std::string nm;
      while (!done() && name_char(s_[pos_])) nm += s_[pos_++];
      t.factors.push_back({nm, at});
      skip_ws();
      if (done() || s_[pos_] != '*') break;
      ++pos_;
    }
    return t;
  }

  long number() {
    long v = 0;
    while (!done() && std::isdigit((unsigned char)s_[pos_])) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  Field f_;
  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t base_;
};

bool stationary_name(const std::string& nm, long& label) {
  if (nm.size() < 3 || nm[0] != 'e' || nm[1] != '_') return false;
  for (std::size_t i = 2; i < nm.size(); ++i)
    if (!std::isdigit((unsigned char)nm[i])) return false;
  label = std::stol(nm.substr(2));
  return true;
}

Path term_path(const AlgebraFile& f, const Term& t, std::size_t line) {
  const Quiver& q = f.pres.quiver;
  bool have_at = false;
  std::size_t at = 0, src = 0;
  std::vector<std::size_t> arrows;
  for (const auto& [nm, c] : t.factors) {
    long label;
    std::size_t from, to;
    if (stationary_name(nm, label)) {
      auto it = std::find(f.vertex_labels.begin(), f.vertex_labels.end(), label);
      if (it == f.vertex_labels.end())
        fail(line, c, "unknown vertex '" + std::to_string(label) + "'");
      from = to = (std::size_t)(it - f.vertex_labels.begin());
    } else {
      if (!q.has_arrow(nm)) fail(line, c, "unknown arrow '" + nm + "'");
      const Arrow& a = q.arrow(q.arrow_index(nm));
      from = a.source;
      to = a.target;
      arrows.push_back(q.arrow_index(nm));
    }
    if (have_at && at != from)
      fail(line, c, "'" + nm + "' does not compose: expected source " +
                        std::to_string(f.label_of(at)) + ", got " +
                        std::to_string(f.label_of(from)));
    if (!have_at) src = from;
    at = to;
    have_at = true;
  }
  return Path(q, src, std::move(arrows));
}

std::string scalar_prefix(const Scalar& c) {
  Scalar abs = c;
  if (!c.field().is_rational() || c.value() >= 0) return abs.is_one() ? "" : abs.str() + "*";
  abs = c * Scalar(c.field(), -1);
  return abs.is_one() ? "" : abs.str() + "*";
}

bool negative(const Scalar& c) { return c.field().is_rational() && c.value() < 0; }

std::string word_str(const Quiver& q, const Path& p, const std::vector<long>& labels) {
  if (p.is_stationary()) return "e_" + std::to_string(labels[p.source()]);
  std::string out;
  for (std::size_t a : p.arrows()) {
    if (!out.empty()) out += "*";
    out += q.arrow(a).name;
  }
  return out;
}

template <typename Terms>
std::string sum_str(const Quiver& q, const Terms& terms, const std::vector<long>& labels) {
  std::string out;
  for (const auto& [p, c] : terms) {
    if (out.empty())
      out += negative(c) ? "-" : "";
    else
      out += negative(c) ? " - " : " + ";
    out += scalar_prefix(c) + word_str(q, p, labels);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::size_t AlgebraFile::vertex_of_label(long label) const {
  auto it = std::find(vertex_labels.begin(), vertex_labels.end(), label);
  if (it == vertex_labels.end())
    throw Error("unknown vertex label '" + std::to_string(label) + "'");
  return (std::size_t)(it - vertex_labels.begin());
}

AlgebraFile parse_algebra_file(const std::string& text) {
  AlgebraFile f;
  bool have_field = false, have_vertices = false;
  struct RawArrow {
    Arrow a;
    std::size_t deg = 1;
    bool has_deg = false;
  };
  std::vector<RawArrow> raw;
  std::vector<std::pair<std::size_t, std::string>> relation_lines, potential_lines;
  std::vector<std::pair<std::size_t, std::string>> cut_lines;

  std::istringstream in(text);
  std::string full;
  std::size_t lineno = 0;
  while (std::getline(in, full)) {
    ++lineno;
    std::string line = full.substr(0, full.find('#'));
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::size_t kwcol = line.find(kw);
    if (kw == "field") {
      std::string which;
      if (!(ls >> which)) fail(lineno, line.size(), "expected 'Q' or 'F <p>'");
      if (which == "Q") {
        f.pres.field = rationals();
      } else if (which == "F") {
        unsigned long p;
        if (!(ls >> p) || p < 2) fail(lineno, line.size(), "expected a prime after 'F'");
        f.pres.field = prime_field(p);
      } else {
        fail(lineno, line.find(which), "unknown field '" + which + "'");
      }
      have_field = true;
    } else if (kw == "vertices") {
      long v;
      while (ls >> v) {
        if (std::find(f.vertex_labels.begin(), f.vertex_labels.end(), v) != f.vertex_labels.end())
          fail(lineno, kwcol, "duplicate vertex label '" + std::to_string(v) + "'");
        f.vertex_labels.push_back(v);
      }
      if (!ls.eof()) fail(lineno, kwcol, "vertex labels must be integers");
      if (f.vertex_labels.empty()) fail(lineno, kwcol, "expected at least one vertex");
      have_vertices = true;
    } else if (kw == "arrow") {
      if (!have_vertices) fail(lineno, kwcol, "'arrow' before 'vertices'");
      std::string nm, colon, arr;
      long s, t;
      if (!(ls >> nm >> colon >> s >> arr >> t) || colon != ":" || arr != "->")
        fail(lineno, kwcol, "expected 'arrow <name> : <src> -> <tgt> [deg <d>]'");
      RawArrow ra;
      ra.a.name = nm;
      auto find = [&](long label) {
        auto it = std::find(f.vertex_labels.begin(), f.vertex_labels.end(), label);
        if (it == f.vertex_labels.end())
          fail(lineno, line.find(std::to_string(label), kwcol),
               "unknown vertex '" + std::to_string(label) + "'");
        return (std::size_t)(it - f.vertex_labels.begin());
      };
      ra.a.source = find(s);
      ra.a.target = find(t);
      std::string degkw;
      if (ls >> degkw) {
        if (degkw != "deg" || !(ls >> ra.deg))
          fail(lineno, line.find(degkw, kwcol), "expected 'deg <d>'");
        ra.has_deg = true;
      }
      for (const RawArrow& o : raw)
        if (o.a.name == nm) fail(lineno, line.find(nm, kwcol), "duplicate arrow '" + nm + "'");
      raw.push_back(std::move(ra));
    } else if (kw == "relation") {
      std::string rest = line.substr(line.find(kw) + kw.size());
      relation_lines.push_back({lineno, rest});
    } else if (kw == "potential" || kw == "W") {
      std::string rest = line.substr(line.find(kw) + kw.size());
      if (kw == "W") {
        std::size_t eq = rest.find('=');
        if (eq == std::string::npos) fail(lineno, kwcol, "expected 'W = <cyclesum>'");
        rest = std::string(eq + 1, ' ') + rest.substr(eq + 1);
      }
      potential_lines.push_back({lineno, rest});
    } else if (kw == "cut") {
      std::string rest = line.substr(line.find(kw) + kw.size());
      cut_lines.push_back({lineno, rest});
    } else if (kw == "n") {
      long v;
      if (!(ls >> v) || v < 0) fail(lineno, kwcol, "expected a nonnegative integer after 'n'");
      f.n = (std::size_t)v;
      f.has_n = true;
    } else {
      fail(lineno, kwcol, "unknown directive '" + kw + "'");
    }
  }
  if (!have_field) throw ParseError("missing 'field' line");
  if (!have_vertices) throw ParseError("missing 'vertices' line");

  std::vector<Arrow> arrows;
  bool any_deg = false;
  for (const RawArrow& r : raw) any_deg |= r.has_deg;
  std::vector<std::size_t> degs;
  for (const RawArrow& r : raw) {
    arrows.push_back(r.a);
    degs.push_back(r.deg);
  }
  f.pres.quiver = Quiver(f.vertex_labels.size(), arrows);
  if (any_deg) f.pres.arrow_degrees = degs;

  Field k = f.pres.field;
  for (const auto& [ln, rest] : relation_lines) {
    std::size_t base = 0;  // columns reported relative to the full line
    ExprParser ep(k, rest, ln, base);
    PathSum s(k);
    for (const Term& t : ep.parse()) s.add(term_path(f, t, ln), t.coef);
    f.pres.relations.push_back(std::move(s));
  }
  if (!potential_lines.empty()) f.potential = Potential(k);
  for (const auto& [ln, rest] : potential_lines) {
    ExprParser ep(k, rest, ln, 0);
    for (const Term& t : ep.parse()) {
      Path p = term_path(f, t, ln);
      if (p.source() != p.target() || p.is_stationary())
        fail(ln, t.factors.front().second,
             "potential terms must be cycles; got " + std::to_string(f.label_of(p.source())) +
                 " -> " + std::to_string(f.label_of(p.target())));
      f.potential.add(f.pres.quiver, p, t.coef);
    }
    f.has_potential = true;
  }
  if (f.has_potential && f.potential.field() != k) f.potential = Potential(k);
  for (const auto& [ln, rest] : cut_lines) {
    if (f.cut.empty()) f.cut.assign(arrows.size(), false);
    std::istringstream cs(rest);
    std::string nm;
    bool any = false;
    while (cs >> nm) {
      if (!f.pres.quiver.has_arrow(nm)) fail(ln, rest.find(nm), "unknown arrow '" + nm + "'");
      f.cut[f.pres.quiver.arrow_index(nm)] = true;
      any = true;
    }
    if (!any) fail(ln, 0, "expected arrow names after 'cut'");
    f.has_cut = true;
  }
  if (f.has_cut && !f.has_potential) throw ParseError("'cut' given without a potential");
  return f;
}

AlgebraFile load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_algebra_file(buf.str());
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string print_algebra_file(const AlgebraFile& f) {
  std::ostringstream os;
  os << "field " << (f.pres.field.is_rational() ? "Q" : "F " + std::to_string(f.pres.field.p))
     << "\n";
  os << "vertices";
  for (long v : f.vertex_labels) os << " " << v;
  os << "\n";
  const Quiver& q = f.pres.quiver;
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& ar = q.arrow(a);
    os << "arrow " << ar.name << " : " << f.label_of(ar.source) << " -> " << f.label_of(ar.target);
    if (!f.pres.arrow_degrees.empty()) os << " deg " << f.pres.arrow_degrees[a];
    os << "\n";
  }
  for (const PathSum& r : f.pres.relations)
    os << "relation " << sum_str(q, r.terms(), f.vertex_labels) << "\n";
  if (f.has_potential)
    os << "potential " << sum_str(q, f.potential.terms(), f.vertex_labels) << "\n";
  if (f.has_cut) {
    os << "cut";
    for (std::size_t a = 0; a < f.cut.size(); ++a)
      if (f.cut[a]) os << " " << q.arrow(a).name;
    os << "\n";
  }
  if (f.has_n) os << "n " << f.n << "\n";
  return os.str();
}

Presentation presented_algebra(const AlgebraFile& f) {
  if (f.has_potential && f.has_cut)
    return truncated_jacobian(f.pres.quiver, f.potential, f.cut);
  Presentation p = f.pres;
  p.validate();
  return p;
}

std::string quiver_diagram(const Quiver& q, const std::vector<long>& labels) {
  auto lab = [&](std::size_t v) {
    return labels.empty() ? (long)(v + 1) : labels[v];
  };
  std::vector<std::string> lines;
  for (const Arrow& a : q.arrows())
    lines.push_back(a.name + ": " + std::to_string(lab(a.source)) + " -> " +
                    std::to_string(lab(a.target)));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

}  // namespace tilt
