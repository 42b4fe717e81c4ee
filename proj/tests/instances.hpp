#pragma once

// Shared test instances: the worked three-level quiver, small named quivers
// and complexes, and a seeded generator of random valid triangular algebras.

#include <random>
#include <string>
#include <vector>

#include "trihoch/algebra.hpp"
#include "trihoch/quiver.hpp"

namespace trihoch::inst {

template <class F>
AlgebraPtr<F> share(FiniteDimAlgebra<F> a) {
  return std::make_shared<const FiniteDimAlgebra<F>>(std::move(a));
}

inline Quiver quiver(const std::vector<std::string>& vs, const std::vector<std::pair<std::string, std::string>>& as) {
  Quiver q;
  for (const auto& v : vs) q.add_vertex(v);
  int k = 0;
  for (const auto& [s, t] : as) q.add_arrow("x" + std::to_string(k++), *q.find_vertex(s), *q.find_vertex(t));
  return q;
}

/// a -> b, two arrows b -> c, two arrows b -> d.
inline Quiver example_quiver() {
  return quiver({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"b", "c"}, {"b", "d"}, {"b", "d"}});
}
inline Quiver kronecker() { return quiver({"a", "b"}, {{"a", "b"}, {"a", "b"}}); }
inline Quiver chain(int n) {
  std::vector<std::string> vs;
  std::vector<std::pair<std::string, std::string>> as;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) as.emplace_back(vs[i], vs[i + 1]);
  return quiver(vs, as);
}

template <class F>
TriangularAlgebra<F> path(F field, const Quiver& q) {
  return path_algebra(field, q, compute_levels(q));
}

inline SimplicialComplex complex_of(const std::vector<std::vector<std::string>>& facets) {
  SimplicialComplex s;
  for (const auto& f : facets) {
    std::vector<Index> vs;
    for (const auto& v : f) vs.push_back(s.vertex(v));
    s.add_facet(vs);
  }
  return s;
}
inline SimplicialComplex triangle_boundary() { return complex_of({{"a", "b"}, {"b", "c"}, {"a", "c"}}); }
inline SimplicialComplex tetrahedron_boundary() {
  return complex_of({{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
}

// ---------------------------------------------------------------- module catalog

/// A small algebra with its one-dimensional representations, each given by
/// the values of a character on the basis.
template <class F>
struct CatalogAlgebra {
  std::string name;
  AlgebraPtr<F> alg;
  std::vector<std::vector<long long>> characters;
};

template <class F>
std::vector<CatalogAlgebra<F>> catalog(F f) {
  return {
      {"k", share(FiniteDimAlgebra<F>::ground(f)), {{1}}},
      {"k2", share(FiniteDimAlgebra<F>::diagonal(f, 2)), {{1, 0}, {0, 1}}},
      {"k[x]/x2", share(FiniteDimAlgebra<F>::truncated_polynomial(f, 2)), {{1, 0}}},
      {"UT2", share(FiniteDimAlgebra<F>::upper_triangular(f, 2)), {{1, 0, 0}, {0, 0, 1}}},
  };
}

/// One-sided module data: action[a][m] for a basis element a and module basis m.
template <class F>
struct OneSided {
  Index dim = 0;
  std::vector<std::vector<SparseVec<F>>> action;
};

template <class F>
OneSided<F> character_module(const F& f, const CatalogAlgebra<F>& c, std::size_t which) {
  OneSided<F> m;
  m.dim = 1;
  m.action.resize(c.alg->dim);
  for (Index a = 0; a < c.alg->dim; ++a) {
    auto v = f.from_int(c.characters[which][a]);
    m.action[a] = {f.is_zero(v) ? SparseVec<F>{} : SparseVec<F>{{0, v}}};
  }
  return m;
}

template <class F>
OneSided<F> left_regular(const CatalogAlgebra<F>& c) {
  OneSided<F> m;
  m.dim = c.alg->dim;
  m.action.resize(m.dim);
  for (Index a = 0; a < m.dim; ++a)
    for (Index b = 0; b < m.dim; ++b) m.action[a].push_back(c.alg->basis_product(a, b));
  return m;
}

template <class F>
OneSided<F> right_regular(const CatalogAlgebra<F>& c) {
  OneSided<F> m;
  m.dim = c.alg->dim;
  m.action.resize(m.dim);
  for (Index a = 0; a < m.dim; ++a)
    for (Index b = 0; b < m.dim; ++b) m.action[a].push_back(c.alg->basis_product(b, a));
  return m;
}

/// L (x)_k R with A_left acting on L and A_right on R; basis l*dim R + r.
template <class F>
Bimodule<F> outer(const F& f, AlgebraPtr<F> la, const OneSided<F>& l, AlgebraPtr<F> ra, const OneSided<F>& r) {
  Bimodule<F> m(la, ra, l.dim * r.dim);
  for (Index li = 0; li < l.dim; ++li)
    for (Index ri = 0; ri < r.dim; ++ri) {
      const Index v = li * r.dim + ri;
      for (Index a = 0; a < la->dim; ++a) {
        SparseVec<F> out;
        for (const auto& [g, c] : l.action[a][li]) out.emplace_back(g * r.dim + ri, c);
        m.lact[a * m.dim + v] = compress(f, std::move(out));
      }
      for (Index a = 0; a < ra->dim; ++a) {
        SparseVec<F> out;
        for (const auto& [g, c] : r.action[a][ri]) out.emplace_back(li * r.dim + g, c);
        m.ract[v * ra->dim + a] = compress(f, std::move(out));
      }
    }
  return m;
}

template <class F>
OneSided<F> pick_module(const F& f, const CatalogAlgebra<F>& c, bool left, std::mt19937& rng) {
  const std::size_t options = c.characters.size() + 1;
  const std::size_t k = rng() % options;
  if (k < c.characters.size()) return character_module(f, c, k);
  return left ? left_regular(c) : right_regular(c);
}

// ---------------------------------------------------------------- basis changes

template <class F>
using Dense = std::vector<std::vector<typename F::value_type>>;

/// Random unitriangular matrix (columns are the new basis vectors) and its inverse.
template <class F>
std::pair<Dense<F>, Dense<F>> random_unitriangular(const F& f, Index d, std::mt19937& rng) {
  Dense<F> p(d, std::vector<typename F::value_type>(d, f.zero()));
  for (Index i = 0; i < d; ++i) {
    p[i][i] = f.one();
    for (Index j = i + 1; j < d; ++j) p[i][j] = f.from_int(static_cast<int>(rng() % 5) - 2);
  }
  // inverse by back substitution, column by column
  Dense<F> inv(d, std::vector<typename F::value_type>(d, f.zero()));
  for (Index c = 0; c < d; ++c)
    for (Index r = d; r-- > 0;) {
      auto v = r == c ? f.one() : f.zero();
      for (Index k = r + 1; k < d; ++k) v = f.sub(v, f.mul(p[r][k], inv[k][c]));
      inv[r][c] = v;
    }
  return {p, inv};
}

/// Coordinates (in the old basis) of new basis vector k.
template <class F>
SparseVec<F> column(const F& f, const Dense<F>& p, Index k) {
  SparseVec<F> v;
  for (Index r = 0; r < p.size(); ++r)
    if (!f.is_zero(p[r][k])) v.emplace_back(r, p[r][k]);
  return v;
}

/// Old coordinates to new coordinates.
template <class F>
SparseVec<F> to_new(const F& f, const Dense<F>& inv, const SparseVec<F>& old) {
  std::vector<std::pair<Index, typename F::value_type>> out;
  for (const auto& [i, c] : old)
    for (Index r = 0; r < inv.size(); ++r)
      if (!f.is_zero(inv[r][i])) out.emplace_back(r, f.mul(inv[r][i], c));
  return compress(f, std::move(out));
}

/// The same triangular algebra written in random unitriangular bases of every block.
template <class F>
TriangularAlgebra<F> change_basis(const TriangularAlgebra<F>& t, std::mt19937& rng) {
  const F& f = t.field();
  const Index n = t.n();
  std::vector<std::pair<Dense<F>, Dense<F>>> bc(static_cast<std::size_t>(n) * n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i <= j; ++i) bc[j * n + i] = random_unitriangular(f, t.block_dim(j, i), rng);
  // product of two combinations in old coordinates
  auto combine = [&](Index l, Index j, Index i, const SparseVec<F>& y, const SparseVec<F>& x) {
    std::vector<std::pair<Index, typename F::value_type>> acc;
    for (const auto& [a, ca] : y)
      for (const auto& [b, cb] : x)
        for (const auto& [c, v] : t.block_product(l, j, i, a, b)) acc.emplace_back(c, f.mul(f.mul(ca, cb), v));
    return to_new(f, bc[l * n + i].second, compress(f, std::move(acc)));
  };
  std::vector<AlgebraPtr<F>> diag;
  for (Index i = 0; i < n; ++i) {
    const Index d = t.algebra(i).dim;
    FiniteDimAlgebra<F> a(f, d);
    const auto& p = bc[i * n + i].first;
    for (Index u = 0; u < d; ++u)
      for (Index v = 0; v < d; ++v) a.table[u * d + v] = combine(i, i, i, column(f, p, u), column(f, p, v));
    a.unit = to_new(f, bc[i * n + i].second, t.algebra(i).unit);
    diag.push_back(share(std::move(a)));
  }
  TriangularAlgebra<F> out(f, diag);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      const Index d = t.block_dim(j, i);
      Bimodule<F> m(diag[j], diag[i], d);
      const auto& pm = bc[j * n + i].first;
      for (Index v = 0; v < d; ++v) {
        for (Index a = 0; a < diag[j]->dim; ++a)
          m.lact[a * d + v] = combine(j, j, i, column(f, bc[j * n + j].first, a), column(f, pm, v));
        for (Index a = 0; a < diag[i]->dim; ++a)
          m.ract[v * diag[i]->dim + a] = combine(j, i, i, column(f, pm, v), column(f, bc[i * n + i].first, a));
      }
      out.set_module(j, i, std::move(m));
    }
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        BimoduleMap<F> mu(t.block_dim(l, j), t.block_dim(j, i), t.block_dim(l, i));
        for (Index y = 0; y < mu.left_dim; ++y)
          for (Index x = 0; x < mu.right_dim; ++x)
            mu.images[y * mu.right_dim + x] =
                combine(l, j, i, column(f, bc[l * n + j].first, y), column(f, bc[j * n + i].first, x));
        out.set_mu(l, j, i, std::move(mu));
      }
  return out;
}

// ---------------------------------------------------------------- random suite

template <class F>
struct Instance {
  std::string name;
  TriangularAlgebra<F> t;
};

/// Random acyclic quiver with at most `max_paths` paths.
inline std::optional<Quiver> random_quiver(std::mt19937& rng, std::size_t max_paths) {
  const Index nv = 2 + rng() % 4;
  Quiver q;
  for (Index v = 0; v < nv; ++v) q.add_vertex("v" + std::to_string(v));
  const Index na = 1 + rng() % 4;
  for (Index a = 0; a < na; ++a) {
    Index s = rng() % nv, t = rng() % nv;
    if (s == t) continue;
    if (s > t) std::swap(s, t);
    q.add_arrow("a" + std::to_string(a), s, t);
  }
  if (enumerate_paths(q).size() > max_paths) return std::nullopt;
  return q;
}

/// Tensorial build from catalog algebras and outer-product adjacent modules.
template <class F>
std::optional<TriangularAlgebra<F>> random_tensorial(const F& f, std::mt19937& rng, Index n, Index max_dim,
                                                     std::string& name) {
  auto cat = catalog(f);
  std::vector<AlgebraPtr<F>> diag;
  std::vector<std::size_t> which;
  for (Index i = 0; i < n; ++i) {
    which.push_back(rng() % cat.size());
    diag.push_back(cat[which.back()].alg);
  }
  std::vector<Bimodule<F>> adj;
  for (Index i = 0; i + 1 < n; ++i) {
    auto l = pick_module(f, cat[which[i + 1]], true, rng);
    auto r = pick_module(f, cat[which[i]], false, rng);
    adj.push_back(outer(f, diag[i + 1], l, diag[i], r));
  }
  auto t = build_tensorial(f, diag, adj);
  if (t.total_dim() > max_dim) return std::nullopt;
  name = "tensorial(";
  for (Index i = 0; i < n; ++i) name += (i ? "," : "") + cat[which[i]].name;
  name += ")";
  return t;
}

/// Arbitrary outer-product modules in every slot with mu = 0.
template <class F>
std::optional<TriangularAlgebra<F>> random_zero_mu(const F& f, std::mt19937& rng, Index n, Index max_dim,
                                                   std::string& name) {
  auto cat = catalog(f);
  std::vector<AlgebraPtr<F>> diag;
  std::vector<std::size_t> which;
  for (Index i = 0; i < n; ++i) {
    which.push_back(rng() % cat.size());
    diag.push_back(cat[which.back()].alg);
  }
  TriangularAlgebra<F> t(f, diag);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      if (rng() % 4 == 0) continue;  // leave a zero block
      auto l = pick_module(f, cat[which[j]], true, rng);
      auto r = pick_module(f, cat[which[i]], false, rng);
      t.set_module(j, i, outer(f, diag[j], l, diag[i], r));
    }
  if (t.total_dim() > max_dim) return std::nullopt;
  name = "zero-mu(";
  for (Index i = 0; i < n; ++i) name += (i ? "," : "") + cat[which[i]].name;
  name += ")";
  return t;
}

/// T as a bimodule over R = k^n acting through the diagonal idempotents.
template <class F>
Bimodule<F> total_over_r(const TriangularAlgebra<F>& t, AlgebraPtr<F> r) {
  const F& f = t.field();
  Bimodule<F> m(r, r, t.total_dim());
  for (Index s = 0; s < m.dim; ++s) {
    auto [j, i] = t.block_of(s);
    m.lact[j * m.dim + s] = {{s, f.one()}};
    m.ract[s * r->dim + i] = {{s, f.one()}};
  }
  return m;
}

/// A fixed hand-written instance with non-semisimple A_1 = k[x]/(x^2).
template <class F>
TriangularAlgebra<F> dual_numbers_over_k(const F& f) {
  auto cat = catalog(f);
  auto a1 = cat[2].alg;
  auto k = cat[0].alg;
  TriangularAlgebra<F> t(f, {a1, k});
  t.set_module(1, 0, outer(f, k, left_regular(cat[0]), a1, right_regular(cat[2])));
  return t;
}

/// At least `count` valid instances with dim T <= max_dim and at most four levels,
/// cycling through path algebras, tensorial builds and mu = 0 presentations;
/// every third instance is rewritten in random block bases.
template <class F>
std::vector<Instance<F>> random_suite(const F& f, unsigned seed, std::size_t count, Index max_dim = 8) {
  std::mt19937 rng(seed);
  std::vector<Instance<F>> out;
  out.push_back({"hand(k[x]/x2,k)", dual_numbers_over_k(f)});
  std::size_t attempt = 0;
  while (out.size() < count) {
    ++attempt;
    std::string name;
    std::optional<TriangularAlgebra<F>> t;
    switch (attempt % 3) {
      case 0:
        if (auto q = random_quiver(rng, max_dim)) {
          auto lv = compute_levels(*q);
          if (lv.n <= 4) {
            t = path_algebra(f, *q, lv);
            name = "path(" + std::to_string(q->vertices.size()) + "v," + std::to_string(q->arrows.size()) + "a)";
          }
        }
        break;
      case 1:
        t = random_tensorial(f, rng, 2 + rng() % 2, max_dim, name);
        break;
      default:
        t = random_zero_mu(f, rng, 2 + rng() % 3, max_dim, name);
        break;
    }
    if (!t || t->n() > 4) continue;
    if (out.size() % 3 == 2) {
      t = change_basis(*t, rng);
      name += "+basis";
    }
    if (!validate_triangular(*t).ok()) throw std::logic_error("generator produced an invalid instance: " + name);
    out.push_back({name, std::move(*t)});
  }
  return out;
}

}  // namespace trihoch::inst
