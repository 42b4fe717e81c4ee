#include "trihoch/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace trihoch {

Index Quiver::add_vertex(const std::string& label) {
  if (find_vertex(label)) throw std::invalid_argument("duplicate vertex " + label);
  vertices.push_back(label);
  return static_cast<Index>(vertices.size() - 1);
}

void Quiver::add_arrow(const std::string& label, Index source, Index target) {
  for (const auto& a : arrows)
    if (a.label == label) throw std::invalid_argument("duplicate arrow " + label);
  if (source >= vertices.size() || target >= vertices.size()) throw std::out_of_range("arrow endpoint out of range");
  arrows.push_back({label, source, target});
}

std::optional<Index> Quiver::find_vertex(const std::string& label) const {
  for (Index v = 0; v < vertices.size(); ++v)
    if (vertices[v] == label) return v;
  return std::nullopt;
}

namespace {

// Kahn's algorithm; empty optional when a cycle remains.
std::optional<std::vector<Index>> topological_order(const Quiver& q) {
  const Index nv = static_cast<Index>(q.vertices.size());
  std::vector<Index> indeg(nv, 0);
  for (const auto& a : q.arrows) ++indeg[a.target];
  std::vector<Index> order, stack;
  for (Index v = nv; v-- > 0;)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    Index v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& a : q.arrows)
      if (a.source == v && --indeg[a.target] == 0) stack.push_back(a.target);
  }
  if (order.size() != nv) return std::nullopt;
  return order;
}

}  // namespace

bool check_acyclic(const Quiver& q) { return topological_order(q).has_value(); }

LevelAssignment compute_levels(const Quiver& q) {
  auto order = topological_order(q);
  if (!order) throw std::invalid_argument("quiver has an oriented cycle");
  LevelAssignment lv;
  lv.level.assign(q.vertices.size(), 0);
  for (Index v : *order)
    for (const auto& a : q.arrows)
      if (a.source == v) lv.level[a.target] = std::max(lv.level[a.target], lv.level[v] + 1);
  for (Index l : lv.level) lv.n = std::max(lv.n, l + 1);
  return lv;
}

bool levels_valid(const Quiver& q, const LevelAssignment& lv) {
  if (lv.level.size() != q.vertices.size()) return false;
  for (Index l : lv.level)
    if (l >= lv.n) return false;
  for (const auto& a : q.arrows)
    if (lv.level[a.source] >= lv.level[a.target]) return false;
  return true;
}

std::vector<Path> enumerate_paths(const Quiver& q) {
  if (!check_acyclic(q)) throw std::invalid_argument("quiver has an oriented cycle");
  std::vector<Path> out;
  for (Index v = 0; v < q.vertices.size(); ++v) out.push_back({v, v, {}});
  std::size_t begin = 0;
  while (begin < out.size()) {
    std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (Index a = 0; a < q.arrows.size(); ++a)
        if (q.arrows[a].source == out[k].target) {
          Path p = out[k];
          p.arrows.push_back(a);
          p.target = q.arrows[a].target;
          out.push_back(std::move(p));
        }
    begin = end;
  }
  return out;
}

template <class F>
TriangularAlgebra<F> path_algebra(F field, const Quiver& q, const LevelAssignment& lv) {
  if (!levels_valid(q, lv)) throw std::invalid_argument("level assignment does not raise the level along every arrow");
  if (lv.n == 0) throw std::invalid_argument("empty quiver");
  const Index n = lv.n;
  std::vector<std::vector<Index>> at_level(n);
  std::vector<Index> local(q.vertices.size());
  for (Index v = 0; v < q.vertices.size(); ++v) {
    local[v] = static_cast<Index>(at_level[lv.level[v]].size());
    at_level[lv.level[v]].push_back(v);
  }
  std::vector<AlgebraPtr<F>> diag;
  for (Index r = 0; r < n; ++r)
    diag.push_back(std::make_shared<const FiniteDimAlgebra<F>>(
        FiniteDimAlgebra<F>::diagonal(field, static_cast<Index>(at_level[r].size()))));
  TriangularAlgebra<F> t(field, diag);

  auto paths = enumerate_paths(q);
  std::vector<std::vector<const Path*>> block(static_cast<std::size_t>(n) * n);
  std::map<std::vector<Index>, Index> where;
  for (const auto& p : paths) {
    if (p.arrows.empty()) continue;
    auto& b = block[lv.level[p.target] * n + lv.level[p.source]];
    where[p.arrows] = static_cast<Index>(b.size());
    b.push_back(&p);
  }
  for (Index s = 0; s < n; ++s)
    for (Index r = 0; r < s; ++r) {
      const auto& b = block[s * n + r];
      Bimodule<F> m(diag[s], diag[r], static_cast<Index>(b.size()));
      for (Index k = 0; k < m.dim; ++k) {
        m.lact[local[b[k]->target] * m.dim + k] = {{k, field.one()}};
        m.ract[k * diag[r]->dim + local[b[k]->source]] = {{k, field.one()}};
      }
      t.set_module(s, r, std::move(m));
    }
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        const auto& by = block[l * n + j];
        const auto& bx = block[j * n + i];
        BimoduleMap<F> mu(static_cast<Index>(by.size()), static_cast<Index>(bx.size()),
                          static_cast<Index>(block[l * n + i].size()));
        for (Index y = 0; y < mu.left_dim; ++y)
          for (Index x = 0; x < mu.right_dim; ++x)
            if (by[y]->source == bx[x]->target) {
              auto seq = bx[x]->arrows;
              seq.insert(seq.end(), by[y]->arrows.begin(), by[y]->arrows.end());
              mu.images[y * mu.right_dim + x] = {{where.at(seq), field.one()}};
            }
        t.set_mu(l, j, i, std::move(mu));
      }
  return t;
}

Index SimplicialComplex::vertex(const std::string& label) {
  for (Index v = 0; v < vertices.size(); ++v)
    if (vertices[v] == label) return v;
  vertices.push_back(label);
  return static_cast<Index>(vertices.size() - 1);
}

void SimplicialComplex::add_facet(std::vector<Index> f) {
  std::sort(f.begin(), f.end());
  if (f.empty() || std::adjacent_find(f.begin(), f.end()) != f.end())
    throw std::invalid_argument("a facet needs distinct vertices");
  facets.push_back(std::move(f));
}

std::vector<std::vector<Index>> SimplicialComplex::faces() const {
  std::vector<std::vector<Index>> out;
  for (const auto& f : facets) {
    if (f.size() > 20) throw std::invalid_argument("facet too large");
    for (std::uint32_t mask = 1; mask < (1u << f.size()); ++mask) {
      std::vector<Index> s;
      for (std::size_t b = 0; b < f.size(); ++b)
        if (mask >> b & 1) s.push_back(f[b]);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const auto& f : facets) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

template <class F>
TriangularAlgebra<F> incidence_algebra(F field, const SimplicialComplex& s) {
  if (s.facets.empty()) throw std::invalid_argument("empty simplicial complex");
  const auto faces = s.faces();
  const Index n = static_cast<Index>(s.dimension() + 1);
  std::vector<std::vector<const std::vector<Index>*>> by_dim(n);
  std::map<std::vector<Index>, Index> local;
  for (const auto& f : faces) {
    local[f] = static_cast<Index>(by_dim[f.size() - 1].size());
    by_dim[f.size() - 1].push_back(&f);
  }
  std::vector<AlgebraPtr<F>> diag;
  for (Index d = 0; d < n; ++d)
    diag.push_back(std::make_shared<const FiniteDimAlgebra<F>>(
        FiniteDimAlgebra<F>::diagonal(field, static_cast<Index>(by_dim[d].size()))));
  TriangularAlgebra<F> t(field, diag);
  // pairs[e*n+d]: (sigma, tau) local indices, sigma of dim d inside tau of dim e
  std::vector<std::vector<std::pair<Index, Index>>> pairs(static_cast<std::size_t>(n) * n);
  std::vector<std::map<std::pair<Index, Index>, Index>> pair_index(static_cast<std::size_t>(n) * n);
  for (Index e = 0; e < n; ++e)
    for (Index d = 0; d < e; ++d)
      for (Index b = 0; b < by_dim[e].size(); ++b)
        for (Index a = 0; a < by_dim[d].size(); ++a) {
          const auto& sig = *by_dim[d][a];
          const auto& tau = *by_dim[e][b];
          if (std::includes(tau.begin(), tau.end(), sig.begin(), sig.end())) {
            pair_index[e * n + d][{a, b}] = static_cast<Index>(pairs[e * n + d].size());
            pairs[e * n + d].push_back({a, b});
          }
        }
  for (Index e = 0; e < n; ++e)
    for (Index d = 0; d < e; ++d) {
      const auto& ps = pairs[e * n + d];
      Bimodule<F> m(diag[e], diag[d], static_cast<Index>(ps.size()));
      for (Index k = 0; k < m.dim; ++k) {
        m.lact[ps[k].second * m.dim + k] = {{k, field.one()}};
        m.ract[k * diag[d]->dim + ps[k].first] = {{k, field.one()}};
      }
      t.set_module(e, d, std::move(m));
    }
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        const auto& py = pairs[l * n + j];
        const auto& px = pairs[j * n + i];
        BimoduleMap<F> mu(static_cast<Index>(py.size()), static_cast<Index>(px.size()),
                          static_cast<Index>(pairs[l * n + i].size()));
        for (Index y = 0; y < mu.left_dim; ++y)
          for (Index x = 0; x < mu.right_dim; ++x)
            if (py[y].first == px[x].second)
              mu.images[y * mu.right_dim + x] = {{pair_index[l * n + i].at({px[x].first, py[y].second}), field.one()}};
        t.set_mu(l, j, i, std::move(mu));
      }
  return t;
}

template <class F>
std::vector<std::size_t> simplicial_cohomology(F field, const SimplicialComplex& s, Index max_degree) {
  const auto faces = s.faces();
  std::vector<std::vector<std::vector<Index>>> by_dim(max_degree + 2);
  for (const auto& f : faces)
    if (f.size() - 1 <= max_degree + 1) by_dim[f.size() - 1].push_back(f);
  // rank of the coboundary C^d -> C^{d+1}
  std::vector<std::size_t> rk(max_degree + 1, 0);
  for (Index d = 0; d <= max_degree; ++d) {
    std::map<std::vector<Index>, Index> col;
    for (Index k = 0; k < by_dim[d].size(); ++k) col[by_dim[d][k]] = k;
    std::vector<typename Matrix<F>::Triplet> t;
    for (Index r = 0; r < by_dim[d + 1].size(); ++r) {
      const auto& tau = by_dim[d + 1][r];
      for (std::size_t i = 0; i < tau.size(); ++i) {
        auto face = tau;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        t.push_back({r, col.at(face), field.from_int(i % 2 ? -1 : 1)});
      }
    }
    rk[d] = rank(Matrix<F>::from_triplets(field, static_cast<Index>(by_dim[d + 1].size()),
                                          static_cast<Index>(by_dim[d].size()), std::move(t)));
  }
  std::vector<std::size_t> h(max_degree + 1);
  for (Index d = 0; d <= max_degree; ++d) h[d] = by_dim[d].size() - rk[d] - (d ? rk[d - 1] : 0);
  return h;
}

template TriangularAlgebra<Rationals> path_algebra(Rationals, const Quiver&, const LevelAssignment&);
template TriangularAlgebra<PrimeField> path_algebra(PrimeField, const Quiver&, const LevelAssignment&);
template TriangularAlgebra<Rationals> incidence_algebra(Rationals, const SimplicialComplex&);
template TriangularAlgebra<PrimeField> incidence_algebra(PrimeField, const SimplicialComplex&);
template std::vector<std::size_t> simplicial_cohomology(Rationals, const SimplicialComplex&, Index);
template std::vector<std::size_t> simplicial_cohomology(PrimeField, const SimplicialComplex&, Index);

}  // namespace trihoch
