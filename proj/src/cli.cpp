#include "trihoch/cli.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "trihoch/spectral.hpp"

namespace trihoch::cli {

ParseError::ParseError(const std::string& what, std::size_t l)
    : std::runtime_error(l ? what + " at line " + std::to_string(l) : what), line(l) {}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> v)
    : std::runtime_error("invalid triangular algebra: " + join(v, "; ")), violations(std::move(v)) {}

namespace {

struct Line {
  std::vector<std::string> words;
  std::size_t number = 0;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string spaced;
    for (char c : raw) {
      if (c == ':')
        spaced += " : ";
      else
        spaced += c;
    }
    std::istringstream words(spaced);
    Line line{{}, number};
    for (std::string w; words >> w;) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

Index parse_index(const std::string& s, std::size_t line, const char* what) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ParseError(std::string("malformed ") + what + " '" + s + "'", line);
  return static_cast<Index>(std::stoul(s));
}

/// 1-based level in the file, 0-based on return.
Index parse_level(const std::string& s, std::size_t line) {
  Index v = parse_index(s, line, "level");
  if (v == 0) throw ParseError("levels are numbered from 1", line);
  return v - 1;
}

Index algebra_name(const std::string& s, std::size_t line) {
  if (s.size() < 2 || s[0] != 'A') throw ParseError("expected an algebra name A<i>, got '" + s + "'", line);
  return parse_level(s.substr(1), line);
}

std::pair<Index, Index> module_name(const std::string& s, std::size_t line) {
  if (s.size() < 3 || s[0] != 'M') throw ParseError("expected a module name M<j><i>, got '" + s + "'", line);
  const std::string body = s.substr(1);
  std::pair<Index, Index> ji;
  if (auto u = body.find('_'); u != std::string::npos) {
    ji = {parse_level(body.substr(0, u), line), parse_level(body.substr(u + 1), line)};
  } else {
    if (body.size() != 2) throw ParseError("ambiguous module name '" + s + "', write M<j>_<i>", line);
    ji = {parse_level(body.substr(0, 1), line), parse_level(body.substr(1), line)};
  }
  if (ji.first <= ji.second) throw ParseError("module " + s + " is not below the diagonal", line);
  return ji;
}

std::string level_str(Index v) { return std::to_string(v + 1); }

std::string module_str(Index j, Index i, Index n) {
  return n >= 10 ? "M" + level_str(j) + "_" + level_str(i) : "M" + level_str(j) + level_str(i);
}

void expect(const Line& l, std::size_t pos, const std::string& word) {
  if (l.words.size() <= pos || l.words[pos] != word)
    throw ParseError("expected '" + word + "' after '" + join({l.words.begin(), l.words.begin() + std::min(pos, l.words.size())}, " ") + "'",
                     l.number);
}

void expect_count(const Line& l, std::size_t n) {
  if (l.words.size() != n)
    throw ParseError("'" + l.words[0] + "' takes " + std::to_string(n - 1) + " fields, got " +
                         std::to_string(l.words.size() - 1),
                     l.number);
}

}  // namespace

Quiver parse_quiver_file(const std::string& text) {
  Quiver q;
  for (const auto& l : tokenize(text)) {
    const auto& w = l.words;
    if (w[0] == "vertex") {
      expect_count(l, 2);
      if (q.find_vertex(w[1])) throw ParseError("duplicate vertex " + w[1], l.number);
      q.add_vertex(w[1]);
    } else if (w[0] == "arrow") {
      expect_count(l, 6);
      expect(l, 2, ":");
      expect(l, 4, "->");
      for (const auto& a : q.arrows)
        if (a.label == w[1]) throw ParseError("duplicate arrow " + w[1], l.number);
      auto s = q.find_vertex(w[3]);
      if (!s) throw ParseError("unknown vertex " + w[3], l.number);
      auto t = q.find_vertex(w[5]);
      if (!t) throw ParseError("unknown vertex " + w[5], l.number);
      q.add_arrow(w[1], *s, *t);
    } else {
      throw ParseError("unknown keyword '" + w[0] + "' in a quiver file", l.number);
    }
  }
  if (q.vertices.empty()) throw ParseError("no vertices", 0);
  return q;
}

std::string emit_quiver(const Quiver& q) {
  std::string out;
  for (const auto& v : q.vertices) out += "vertex " + v + "\n";
  for (const auto& a : q.arrows) out += "arrow " + a.label + " : " + q.vertices[a.source] + " -> " + q.vertices[a.target] + "\n";
  return out;
}

SimplicialComplex parse_simplicial_file(const std::string& text) {
  SimplicialComplex s;
  for (const auto& l : tokenize(text)) {
    const auto& w = l.words;
    if (w[0] == "vertex") {
      expect_count(l, 2);
      s.vertex(w[1]);
    } else if (w[0] == "facet") {
      if (w.size() < 2) throw ParseError("empty facet", l.number);
      std::vector<Index> f;
      for (std::size_t k = 1; k < w.size(); ++k) f.push_back(s.vertex(w[k]));
      try {
        s.add_facet(f);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), l.number);
      }
    } else {
      throw ParseError("unknown keyword '" + w[0] + "' in a simplicial file", l.number);
    }
  }
  if (s.facets.empty()) throw ParseError("no facets", 0);
  return s;
}

InputKind detect_kind(const std::string& text) {
  bool quiver = false, triangular = false, simplicial = false;
  for (const auto& l : tokenize(text)) {
    const auto& k = l.words[0];
    if (k == "arrow" || k == "vertex") quiver = true;
    if (k == "facet") simplicial = true;
    if (k == "algebra" || k == "unit" || k == "mul" || k == "module" || k == "lact" || k == "ract" || k == "mu")
      triangular = true;
  }
  if (triangular && !quiver && !simplicial) return InputKind::triangular;
  if (simplicial && !triangular) return InputKind::simplicial;
  if (quiver && !triangular) return InputKind::quiver;
  throw ParseError("cannot tell the input kind from its keywords", 0);
}

template <class F>
TriangularAlgebra<F> parse_triangular_file(const F& field, const std::string& text) {
  using T = typename F::value_type;
  struct Term {
    Index a, b, c;
    T coeff;
    std::size_t line;
  };
  struct AlgDecl {
    Index dim = 0;
    std::size_t line = 0;
    std::optional<std::vector<T>> unit;
    std::vector<Term> mul;
  };
  struct ModDecl {
    Index dim = 0;
    std::size_t line = 0;
    std::vector<Term> lact, ract;
  };
  std::map<Index, AlgDecl> algs;
  std::map<std::pair<Index, Index>, ModDecl> mods;
  std::map<std::tuple<Index, Index, Index>, std::vector<Term>> mus;

  auto scalar = [&](const std::string& s, std::size_t line) {
    try {
      return parse_scalar(field, s);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line);
    }
  };
  auto term = [&](const Line& l) {
    expect_count(l, l.words[0] == "mu" ? 9 : 7);
    const std::size_t b = l.words[0] == "mu" ? 5 : 3;
    return Term{parse_index(l.words[b], l.number, "basis index"), parse_index(l.words[b + 1], l.number, "basis index"),
                parse_index(l.words[b + 2], l.number, "basis index"), scalar(l.words[b + 3], l.number), l.number};
  };

  const auto lines = tokenize(text);
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w[0] == "algebra") {
      expect_count(l, 4);
      expect(l, 2, "dim");
      Index i = algebra_name(w[1], l.number);
      if (algs.count(i)) throw ParseError("duplicate algebra " + w[1], l.number);
      Index d = parse_index(w[3], l.number, "dimension");
      if (d == 0) throw ParseError("algebra " + w[1] + " has dimension 0", l.number);
      algs[i] = {d, l.number, std::nullopt, {}};
    } else if (w[0] == "module") {
      expect_count(l, 4);
      expect(l, 2, "dim");
      auto ji = module_name(w[1], l.number);
      if (mods.count(ji)) throw ParseError("duplicate module " + w[1], l.number);
      mods[ji] = {parse_index(w[3], l.number, "dimension"), l.number, {}, {}};
    } else if (w[0] == "unit" || w[0] == "mul" || w[0] == "lact" || w[0] == "ract" || w[0] == "mu") {
      continue;
    } else {
      throw ParseError("unknown keyword '" + w[0] + "' in a triangular file", l.number);
    }
  }
  const Index n = algs.empty() ? 0 : algs.rbegin()->first + 1;
  if (n == 0) throw ParseError("no algebras declared", 0);
  for (Index i = 0; i < n; ++i)
    if (!algs.count(i)) throw ParseError("missing algebra A" + level_str(i), 0);
  for (const auto& [ji, m] : mods)
    if (ji.first >= n) throw ParseError("module M" + level_str(ji.first) + level_str(ji.second) + " refers to an undeclared level", m.line);

  auto find_alg = [&](const std::string& s, std::size_t line) -> AlgDecl& {
    Index i = algebra_name(s, line);
    auto it = algs.find(i);
    if (it == algs.end()) throw ParseError("undeclared algebra " + s, line);
    return it->second;
  };
  auto find_mod = [&](const std::string& s, std::size_t line) -> ModDecl& {
    auto ji = module_name(s, line);
    auto it = mods.find(ji);
    if (it == mods.end()) throw ParseError("undeclared module " + s, line);
    return it->second;
  };
  auto module_dim = [&](Index j, Index i) {
    auto it = mods.find({j, i});
    return it == mods.end() ? Index{0} : it->second.dim;
  };
  auto check = [&](Index v, Index bound, const std::string& where, std::size_t line) {
    if (v >= bound)
      throw ParseError("basis index " + std::to_string(v) + " out of range for " + where + " (dim " +
                           std::to_string(bound) + ")",
                       line);
  };

  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w[0] == "unit") {
      if (w.size() < 3) throw ParseError("unit needs coefficients", l.number);
      expect(l, 2, ":");
      auto& a = find_alg(w[1], l.number);
      if (a.unit) throw ParseError("duplicate unit for " + w[1], l.number);
      if (w.size() - 3 != a.dim)
        throw ParseError("unit for " + w[1] + " needs " + std::to_string(a.dim) + " coefficients", l.number);
      std::vector<T> u;
      for (std::size_t k = 3; k < w.size(); ++k) u.push_back(scalar(w[k], l.number));
      a.unit = std::move(u);
    } else if (w[0] == "mul") {
      expect(l, 2, ":");
      auto& a = find_alg(w[1], l.number);
      auto t = term(l);
      check(t.a, a.dim, w[1], l.number);
      check(t.b, a.dim, w[1], l.number);
      check(t.c, a.dim, w[1], l.number);
      a.mul.push_back(t);
    } else if (w[0] == "lact" || w[0] == "ract") {
      expect(l, 2, ":");
      auto& m = find_mod(w[1], l.number);
      auto ji = module_name(w[1], l.number);
      auto t = term(l);
      const bool left = w[0] == "lact";
      const Index adim = algs[left ? ji.first : ji.second].dim;
      check(left ? t.a : t.b, adim, "A" + level_str(left ? ji.first : ji.second), l.number);
      check(left ? t.b : t.a, m.dim, w[1], l.number);
      check(t.c, m.dim, w[1], l.number);
      (left ? m.lact : m.ract).push_back(t);
    } else if (w[0] == "mu") {
      if (w.size() < 5) throw ParseError("mu needs three levels", l.number);
      expect(l, 4, ":");
      Index lv = parse_level(w[1], l.number), j = parse_level(w[2], l.number), i = parse_level(w[3], l.number);
      if (!(lv > j && j > i) || lv >= n) throw ParseError("mu needs levels l > j > i within 1.." + std::to_string(n), l.number);
      auto t = term(l);
      check(t.a, module_dim(lv, j), module_str(lv, j, n), l.number);
      check(t.b, module_dim(j, i), module_str(j, i, n), l.number);
      check(t.c, module_dim(lv, i), module_str(lv, i, n), l.number);
      mus[{lv, j, i}].push_back(t);
    }
  }

  std::vector<AlgebraPtr<F>> diag;
  for (Index i = 0; i < n; ++i) {
    const auto& d = algs[i];
    if (!d.unit) throw ParseError("missing unit for A" + level_str(i), 0);
    FiniteDimAlgebra<F> a(field, d.dim);
    std::vector<std::vector<std::pair<Index, T>>> acc(static_cast<std::size_t>(d.dim) * d.dim);
    for (const auto& t : d.mul) acc[t.a * d.dim + t.b].emplace_back(t.c, t.coeff);
    for (std::size_t k = 0; k < acc.size(); ++k) a.table[k] = compress(field, std::move(acc[k]));
    std::vector<std::pair<Index, T>> u;
    for (Index k = 0; k < d.dim; ++k) u.emplace_back(k, (*d.unit)[k]);
    a.unit = compress(field, std::move(u));
    diag.push_back(std::make_shared<const FiniteDimAlgebra<F>>(std::move(a)));
  }
  TriangularAlgebra<F> t(field, diag);
  for (const auto& [ji, d] : mods) {
    Bimodule<F> m(diag[ji.first], diag[ji.second], d.dim);
    std::vector<std::vector<std::pair<Index, T>>> la(m.lact.size()), ra(m.ract.size());
    for (const auto& e : d.lact) la[e.a * d.dim + e.b].emplace_back(e.c, e.coeff);
    for (const auto& e : d.ract) ra[e.a * diag[ji.second]->dim + e.b].emplace_back(e.c, e.coeff);
    for (std::size_t k = 0; k < la.size(); ++k) m.lact[k] = compress(field, std::move(la[k]));
    for (std::size_t k = 0; k < ra.size(); ++k) m.ract[k] = compress(field, std::move(ra[k]));
    t.set_module(ji.first, ji.second, std::move(m));
  }
  for (const auto& [key, terms] : mus) {
    auto [lv, j, i] = key;
    BimoduleMap<F> mu(module_dim(lv, j), module_dim(j, i), module_dim(lv, i));
    std::vector<std::vector<std::pair<Index, T>>> acc(mu.images.size());
    for (const auto& e : terms) acc[e.a * mu.right_dim + e.b].emplace_back(e.c, e.coeff);
    for (std::size_t k = 0; k < acc.size(); ++k) mu.images[k] = compress(field, std::move(acc[k]));
    t.set_mu(lv, j, i, std::move(mu));
  }
  auto rep = validate_triangular(t);
  if (!rep.ok()) throw ValidationError(rep.violations);
  return t;
}

template <class F>
std::string emit_triangular(const TriangularAlgebra<F>& t) {
  const F& f = t.field();
  const Index n = t.n();
  std::ostringstream out;
  for (Index i = 0; i < n; ++i) {
    const auto& a = t.algebra(i);
    const std::string name = "A" + level_str(i);
    out << "algebra " << name << " dim " << a.dim << "\n";
    out << "unit " << name << " :";
    for (Index k = 0; k < a.dim; ++k) out << " " << f.to_string(entry(f, a.unit, k));
    out << "\n";
    for (Index x = 0; x < a.dim; ++x)
      for (Index y = 0; y < a.dim; ++y)
        for (const auto& [c, v] : a.basis_product(x, y))
          out << "mul " << name << " : " << x << " " << y << " " << c << " " << f.to_string(v) << "\n";
  }
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      const auto& m = t.module(j, i);
      if (m.dim == 0) continue;
      const std::string name = module_str(j, i, n);
      out << "module " << name << " dim " << m.dim << "\n";
      for (Index a = 0; a < m.left->dim; ++a)
        for (Index x = 0; x < m.dim; ++x)
          for (const auto& [c, v] : m.left_basis(a, x))
            out << "lact " << name << " : " << a << " " << x << " " << c << " " << f.to_string(v) << "\n";
      for (Index x = 0; x < m.dim; ++x)
        for (Index a = 0; a < m.right->dim; ++a)
          for (const auto& [c, v] : m.right_basis(x, a))
            out << "ract " << name << " : " << x << " " << a << " " << c << " " << f.to_string(v) << "\n";
    }
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        const auto& mu = t.mu(l, j, i);
        for (Index y = 0; y < mu.left_dim; ++y)
          for (Index x = 0; x < mu.right_dim; ++x)
            for (const auto& [c, v] : mu.image(y, x))
              out << "mu " << level_str(l) << " " << level_str(j) << " " << level_str(i) << " : " << y << " " << x
                  << " " << c << " " << f.to_string(v) << "\n";
      }
  return out.str();
}

template <class F>
bool blockwise_equal(const TriangularAlgebra<F>& a, const TriangularAlgebra<F>& b) {
  if (a.n() != b.n()) return false;
  const Index n = a.n();
  for (Index i = 0; i < n; ++i) {
    const auto &x = a.algebra(i), &y = b.algebra(i);
    if (x.dim != y.dim || x.table != y.table || x.unit != y.unit) return false;
  }
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      const auto &x = a.module(j, i), &y = b.module(j, i);
      if (x.dim != y.dim || x.lact != y.lact || x.ract != y.ract) return false;
    }
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        const auto &x = a.mu(l, j, i), &y = b.mu(l, j, i);
        const Index ld = a.block_dim(l, j), rd = a.block_dim(j, i);
        for (Index s = 0; s < ld; ++s)
          for (Index r = 0; r < rd; ++r) {
            const SparseVec<F> none;
            const auto& u = x.images.empty() ? none : x.image(s, r);
            const auto& v = y.images.empty() ? none : y.image(s, r);
            if (u != v) return false;
          }
      }
  return true;
}

FieldChoice parse_field(const std::string& spec) {
  if (spec == "rat") return {};
  if (spec.rfind("fp:", 0) == 0) {
    const std::string p = spec.substr(3);
    if (p.empty() || p.size() > 9 || !std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw std::invalid_argument("malformed prime in '" + spec + "'");
    const auto v = std::stoul(p);
    if (!is_prime(v)) throw std::invalid_argument(p + " is not prime");
    if (v >= (1ul << 31)) throw std::invalid_argument("primes must stay below 2^31");
    return {static_cast<std::uint32_t>(v)};
  }
  throw std::invalid_argument("unknown field '" + spec + "', expected rat or fp:<p>");
}

std::vector<Report> parse_reports(const std::string& csv) {
  static const std::map<std::string, Report> names{{"pages", Report::pages},
                                                   {"hochschild", Report::hochschild},
                                                   {"e1-structure", Report::e1_structure},
                                                   {"oracle-check", Report::oracle_check},
                                                   {"degeneration-check", Report::degeneration_check}};
  std::vector<Report> out;
  std::istringstream in(csv);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) continue;
    auto it = names.find(item);
    if (it == names.end()) throw std::invalid_argument("unknown report '" + item + "'");
    if (std::find(out.begin(), out.end(), it->second) == out.end()) out.push_back(it->second);
  }
  if (out.empty()) throw std::invalid_argument("no report requested");
  return out;
}

namespace {

class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accumulates the requested sections; nothing is printed unless the job ends
// with a complete report.
class Emitter {
 public:
  explicit Emitter(bool tsv) : tsv_(tsv) {
    if (tsv_) out_ << "report\tr\tp\tq\tvalue\n";
  }
  bool tsv() const { return tsv_; }
  std::ostringstream& text() { return out_; }
  void row(const std::string& report, const std::string& r, const std::string& p, const std::string& q,
           const std::string& value) {
    out_ << report << '\t' << r << '\t' << p << '\t' << q << '\t' << value << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  bool tsv_;
  std::ostringstream out_;
};

std::string list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

template <class F>
struct Input {
  TriangularAlgebra<F> t;
  std::optional<SimplicialComplex> complex;
  std::string description;
};

template <class F>
Input<F> load(const F& field, const JobSpec& job) {
  switch (job.kind) {
    case InputKind::quiver: {
      auto q = parse_quiver_file(job.text);
      if (!check_acyclic(q)) throw ParseError("the quiver has an oriented cycle", 0);
      auto lv = compute_levels(q);
      return {path_algebra(field, q, lv), std::nullopt,
              "quiver with " + std::to_string(q.vertices.size()) + " vertices and " + std::to_string(q.arrows.size()) +
                  " arrows"};
    }
    case InputKind::triangular:
      return {parse_triangular_file(field, job.text), std::nullopt, "triangular algebra"};
    case InputKind::simplicial: {
      auto s = parse_simplicial_file(job.text);
      auto t = incidence_algebra(field, s);
      return {std::move(t), s,
              "incidence algebra of a " + std::to_string(s.dimension()) + "-dimensional simplicial complex with " +
                  std::to_string(s.facets.size()) + " facets"};
    }
  }
  throw std::logic_error("unknown input kind");
}

bool wants(const JobSpec& job, Report r) { return std::find(job.reports.begin(), job.reports.end(), r) != job.reports.end(); }

template <class F>
void page_tables(Emitter& em, const SpectralSequence<F>& ss) {
  const Index n = ss.columns, L = ss.cutoff;
  // last page that still carries a nonzero differential, plus one
  Index stable = 1;
  for (Index r = 1; r < ss.pages.size(); ++r)
    for (Index p = 0; p < n; ++p)
      for (Index l = 0; l < L; ++l)
        if (ss.pages[r].d_reliable[p][l] && !ss.pages[r].d[p][l].is_zero()) stable = std::max<Index>(stable, r + 1);
  stable = std::min<Index>(stable, static_cast<Index>(ss.pages.size()) - 1);
  for (Index r = 1; r <= stable; ++r) {
    const auto& pg = ss.pages[r];
    auto cell = [&](Index p, Index q) { return p + q <= L ? std::to_string(pg.dim(p, p + q)) : std::string("?"); };
    if (em.tsv()) {
      for (Index p = 0; p < n; ++p)
        for (Index q = 0; q <= L; ++q) em.row("pages", std::to_string(r), std::to_string(p), std::to_string(q), cell(p, q));
      continue;
    }
    auto& o = em.text();
    o << "\nE_" << r << (r == stable ? " = E_inf" : "") << "  (rows q, columns p)\n";
    o << std::setw(5) << "q\\p";
    for (Index p = 0; p < n; ++p) o << std::setw(6) << p;
    o << "\n";
    for (Index q = L + 1; q-- > 0;) {
      o << std::setw(5) << q;
      for (Index p = 0; p < n; ++p) o << std::setw(6) << cell(p, q);
      o << "\n";
    }
  }
}

template <class F>
JobResult run_typed(const F& field, const JobSpec& job) {
  JobResult res;
  Input<F> in;
  try {
    in = load(field, job);
  } catch (const ValidationError& e) {
    res.exit_code = kExitInput;
    res.err = "error: invalid triangular algebra\n";
    for (const auto& v : e.violations) res.err += "  " + v + "\n";
    return res;
  } catch (const std::exception& e) {
    res.exit_code = kExitInput;
    res.err = std::string("error: ") + e.what() + "\n";
    return res;
  }
  const auto& t = in.t;
  auto rep = validate_triangular(t);
  if (!rep.ok()) {
    res.exit_code = kExitInput;
    res.err = "error: invalid triangular algebra\n";
    for (const auto& v : rep.violations) res.err += "  " + v + "\n";
    return res;
  }

  Emitter em(job.tsv);
  std::vector<std::string> invariant, oracle;
  const Index L = job.max_degree - 1;
  const Index n = t.n();
  auto x = job.coefficients == Coefficients::regular ? TBimodule<F>::regular(t) : TBimodule<F>::dual(t);
  auto rc = build_relative_complex(t, x, L);
  if (auto l = square_zero_failure(rc.window)) invariant.push_back("delta squared is nonzero in degree " + std::to_string(*l));
  if (auto l = filtration_failure(rc.window)) invariant.push_back("delta lowers the filtration in degree " + std::to_string(*l));
  if (!invariant.empty()) throw InvariantFailure(join(invariant, "; "));
  const auto hh = cohomology_dims(rc.window);
  std::vector<std::size_t> hh_vals(hh.value.begin(), hh.value.begin() + L + 1);

  if (!em.tsv()) {
    auto& o = em.text();
    o << "input: " << in.description << "\n";
    o << "field: " << field.name() << "\n";
    o << "levels: " << n << ", dim T = " << t.total_dim() << ", coefficients: "
      << (job.coefficients == Coefficients::regular ? "T" : "Hom_k(T, k)") << "\n";
    o << "window: degrees 0.." << L << "\n";
    for (const auto& note : rep.notes) o << "note: " << note << "\n";
  }

  const bool need_ss = wants(job, Report::pages) || wants(job, Report::e1_structure) ||
                       wants(job, Report::oracle_check) || wants(job, Report::degeneration_check);
  SpectralSequence<F> ss;
  if (need_ss) {
    ss = compute_spectral_sequence(rc.window, n, std::max<Index>(n, 2));
    auto issues = check_spectral_sequence(ss, hh);
    if (!issues.empty()) throw InvariantFailure(join(issues, "; "));
  }

  for (Report r : job.reports) {
    switch (r) {
      case Report::hochschild:
        if (em.tsv()) {
          for (Index l = 0; l <= L; ++l) em.row("hochschild", "-", "-", std::to_string(l), std::to_string(hh_vals[l]));
        } else {
          em.text() << "HH: " << list(hh_vals) << "\n";
        }
        break;
      case Report::pages:
        page_tables(em, ss);
        break;
      case Report::e1_structure: {
        auto e1 = e1_structure_report(t, x, ss);
        if (!em.tsv()) em.text() << "\nE_1 by summands\n" << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(8)
                                 << "engine" << std::setw(11) << "summands" << "\n";
        for (const auto& c : e1.cells) {
          if (em.tsv()) {
            em.row("e1-engine", "1", std::to_string(c.p), std::to_string(c.q), std::to_string(c.engine));
            em.row(c.projective ? "e1-summands" : "e1-summands-unclaimed", "1", std::to_string(c.p), std::to_string(c.q),
                   std::to_string(c.predicted));
          } else {
            std::ostringstream row;
            row << std::setw(4) << c.p << std::setw(4) << c.q << std::setw(8) << c.engine << std::setw(11)
                << c.predicted << "  " << (c.agree() ? "" : c.projective ? "MISMATCH " : "(not claimed) ")
                << join(c.summands, " + ");
            std::string line = row.str();
            line.erase(line.find_last_not_of(' ') + 1);
            em.text() << line << "\n";
          }
        }
        oracle.insert(oracle.end(), e1.failures.begin(), e1.failures.end());
        break;
      }
      case Report::oracle_check: {
        if (!em.tsv()) em.text() << "\noracle checks\n";
        // largest window the budget allows
        std::optional<GradedDims> bar;
        Index reach = L + 1;
        for (Index l = L + 1; l-- > 0;) {
          try {
            bar = cohomology_dims(build_bar_complex(t, x, l, job.oracle_budget));
            reach = l;
            break;
          } catch (const BudgetExceeded&) {
          }
        }
        if (bar) {
          std::vector<std::size_t> b(bar->value.begin(), bar->value.begin() + reach + 1);
          std::vector<std::size_t> mine(hh_vals.begin(), hh_vals.begin() + reach + 1);
          const bool ok = b == mine;
          if (!ok) oracle.push_back("bar complex gives " + list(b) + ", relative complex " + list(mine));
          if (em.tsv()) {
            for (Index l = 0; l <= reach; ++l) em.row("oracle-bar", "-", "-", std::to_string(l), std::to_string(b[l]));
          } else {
            em.text() << "  bar complex, degrees 0.." << reach << ": " << list(b) << (ok ? "  (agrees)" : "  MISMATCH")
                      << "\n";
            if (reach < L) em.text() << "  degrees above " << reach << " exceed the oracle budget of " << job.oracle_budget << " entries\n";
          }
        } else if (!em.tsv()) {
          em.text() << "  bar complex skipped: even degree 0 exceeds the oracle budget\n";
        }
        if (job.coefficients == Coefficients::regular) {
          const std::size_t z = center(assemble_total(t)).dim();
          if (z != hh_vals[0]) oracle.push_back("HH^0 differs from the center");
          if (em.tsv())
            em.row("oracle-center", "-", "-", "0", std::to_string(z));
          else
            em.text() << "  dim Z(T) = " << z << (z == hh_vals[0] ? "  (agrees with HH^0)" : "  MISMATCH") << "\n";
        }
        auto d1 = check_d1_against_cup(t, x, rc, ss);
        oracle.insert(oracle.end(), d1.begin(), d1.end());
        if (em.tsv())
          em.row("oracle-d1-cup", "1", "-", "-", d1.empty() ? "agree" : "differ");
        else
          em.text() << "  d_1 against cup products: " << (d1.empty() ? "agrees" : "MISMATCH") << "\n";
        if (in.complex && job.coefficients == Coefficients::regular) {
          auto s = simplicial_cohomology(field, *in.complex, L);
          const bool ok = s == hh_vals;
          if (!ok) oracle.push_back("simplicial cohomology gives " + list(s));
          if (em.tsv()) {
            for (Index l = 0; l <= L; ++l) em.row("oracle-simplicial", "-", "-", std::to_string(l), std::to_string(s[l]));
          } else {
            em.text() << "  simplicial cohomology: " << list(s) << (ok ? "  (agrees)" : "  MISMATCH") << "\n";
          }
        }
        break;
      }
      case Report::degeneration_check: {
        std::string verdict;
        if (n != 3) {
          verdict = "not applicable: needs 3 levels, got " + std::to_string(n);
        } else if (!is_tensorial(t)) {
          verdict = "not applicable: the algebra is not tensorial";
        } else {
          auto d = check_degeneration_A2k(t, x, rc, ss);
          if (!d.ok()) oracle.insert(oracle.end(), d.details.begin(), d.details.end());
          if (d.global_claim)
            verdict = d.ok() ? "d_2 = 0 on every reliable cell" : "FAILED: d_2 is nonzero";
          else
            verdict = d.ok() ? "A2 is not k; d_2 vanishes on the classes from HH(A1) and HH(A3)"
                             : "FAILED on the classes from HH(A1) and HH(A3)";
        }
        if (em.tsv())
          em.row("degeneration", "2", "-", "-", verdict);
        else
          em.text() << "\ndegeneration: " << verdict << "\n";
        break;
      }
    }
  }
  res.out = em.str();
  if (!oracle.empty()) {
    res.exit_code = kExitOracle;
    for (const auto& m : oracle) res.err += "oracle mismatch: " + m + "\n";
  }
  return res;
}

}  // namespace

JobResult run_job(const JobSpec& job) {
  JobResult res;
  if (job.max_degree < 1) {
    res.exit_code = kExitInput;
    res.err = "error: --max-degree must be at least 1\n";
    return res;
  }
  if (job.reports.empty()) {
    res.exit_code = kExitInput;
    res.err = "error: no report requested\n";
    return res;
  }
  try {
    if (job.field.prime == 0) return run_typed(Rationals{}, job);
    if (!is_prime(job.field.prime)) {
      res.exit_code = kExitInput;
      res.err = "error: " + std::to_string(job.field.prime) + " is not prime\n";
      return res;
    }
    return run_typed(PrimeField(job.field.prime), job);
  } catch (const InvariantFailure& e) {
    res.exit_code = kExitInvariant;
    res.err = std::string("invariant failure: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = kExitInvariant;
    res.err = std::string("internal error: ") + e.what() + "\n";
  }
  return res;
}

template TriangularAlgebra<Rationals> parse_triangular_file(const Rationals&, const std::string&);
template TriangularAlgebra<PrimeField> parse_triangular_file(const PrimeField&, const std::string&);
template std::string emit_triangular(const TriangularAlgebra<Rationals>&);
template std::string emit_triangular(const TriangularAlgebra<PrimeField>&);
template bool blockwise_equal(const TriangularAlgebra<Rationals>&, const TriangularAlgebra<Rationals>&);
template bool blockwise_equal(const TriangularAlgebra<PrimeField>&, const TriangularAlgebra<PrimeField>&);

}  // namespace trihoch::cli
