#include "trihoch/hochcomplex.hpp"

#include <string>

namespace trihoch {

namespace {

template <class F>
typename F::value_type sign(const F& field, Index k) {
  return field.from_int(k % 2 ? -1 : 1);
}

std::size_t checked_pow(std::size_t base, Index e) {
  std::size_t r = 1;
  for (Index i = 0; i < e; ++i) {
    if (base != 0 && r > static_cast<std::size_t>(UINT32_MAX) / base)
      throw std::length_error("cochain space too large to index");
    r *= base;
  }
  return r;
}

}  // namespace

template <class F>
const Cell* RelativeComplex<F>::find(const std::vector<Index>& w) const {
  const std::size_t l = w.size() - 1;
  if (l >= lookup.size()) return nullptr;
  auto it = lookup[l].find(w);
  return it == lookup[l].end() ? nullptr : &cells[l][it->second];
}

template <class F>
RelativeComplex<F> build_relative_complex(const TriangularAlgebra<F>& t, const TBimodule<F>& x, Index L) {
  const F& field = t.field();
  const Index n = t.n();
  if (x.n != n || x.t_dim != t.total_dim()) throw std::invalid_argument("coefficient bimodule does not match the algebra");
  RelativeComplex<F> rc;
  rc.n = n;
  auto& win = rc.window;
  win.field = field;
  win.cutoff = L;
  rc.cells.resize(L + 2);
  rc.lookup.resize(L + 2);
  win.dims.resize(L + 2);
  win.tags.resize(L + 2);
  for (Index l = 0; l <= L + 1; ++l) {
    std::size_t off = 0;
    for (auto& tau : enumerate_trajectories(n, l)) {
      Cell c;
      c.offset = static_cast<Index>(off);
      c.tensor = TensorIndex(factor_dims(t, tau));
      c.x_dim = x.block_dim(tau.target(), tau.source());
      c.x_offset = x.block_offset(tau.target(), tau.source());
      off += static_cast<std::size_t>(c.tensor.size) * c.x_dim;
      if (off > UINT32_MAX) throw std::length_error("cochain space too large to index");
      win.tags[l].insert(win.tags[l].end(), c.dim(), tau.length());
      rc.lookup[l][tau.w] = static_cast<Index>(rc.cells[l].size());
      c.tau = std::move(tau);
      rc.cells[l].push_back(std::move(c));
    }
    win.dims[l] = static_cast<Index>(off);
  }

  for (Index l = 0; l <= L; ++l) {
    std::vector<typename Matrix<F>::Triplet> trip;
    const auto last_sign = sign(field, l + 1);
    for (const auto& ct : rc.cells[l + 1]) {
      if (ct.dim() == 0) continue;
      const auto& w = ct.tau.w;
      const Cell* c0 = rc.find(std::vector<Index>(w.begin() + 1, w.end()));
      const Cell* cl = rc.find(std::vector<Index>(w.begin(), w.end() - 1));
      std::vector<const Cell*> mid(l + 1, nullptr);
      for (Index i = 1; i <= l; ++i) {
        auto v = w;
        v.erase(v.begin() + i);
        mid[i] = rc.find(v);
      }
      const Index first_off = t.block_offset(w[0], w[1]);
      const Index last_off = t.block_offset(w[l], w[l + 1]);
      for (Index ut = 0; ut < ct.tensor.size; ++ut) {
        const auto digits = ct.tensor.decode(ut);
        const Index row_base = ct.offset + ut * ct.x_dim;
        // t_1 f(t_2 .. t_{l+1})
        {
          const Index u = c0->tensor.encode(std::vector<Index>(digits.begin() + 1, digits.end()));
          for (Index xl = 0; xl < c0->x_dim; ++xl)
            for (const auto& [g, v] : x.left_basis(first_off + digits[0], c0->x_offset + xl))
              trip.push_back({row_base + (g - ct.x_offset), c0->offset + u * c0->x_dim + xl, v});
        }
        // (-1)^i f(.. t_i t_{i+1} ..)
        for (Index i = 1; i <= l; ++i) {
          const Cell* ci = mid[i];
          const auto s = sign(field, i);
          auto d2 = digits;
          d2.erase(d2.begin() + i);
          for (const auto& [p, v] : t.block_product(w[i - 1], w[i], w[i + 1], digits[i - 1], digits[i])) {
            d2[i - 1] = p;
            const Index u = ci->tensor.encode(d2);
            const auto sv = field.mul(s, v);
            for (Index xl = 0; xl < ci->x_dim; ++xl)
              trip.push_back({row_base + xl, ci->offset + u * ci->x_dim + xl, sv});
          }
        }
        // (-1)^{l+1} f(t_1 .. t_l) t_{l+1}
        {
          const Index u = cl->tensor.encode(std::vector<Index>(digits.begin(), digits.end() - 1));
          for (Index xl = 0; xl < cl->x_dim; ++xl)
            for (const auto& [g, v] : x.right_basis(cl->x_offset + xl, last_off + digits[l]))
              trip.push_back({row_base + (g - ct.x_offset), cl->offset + u * cl->x_dim + xl, field.mul(last_sign, v)});
        }
      }
    }
    win.delta.push_back(Matrix<F>::from_triplets(field, win.dims[l + 1], win.dims[l], std::move(trip)));
  }
  return rc;
}

BudgetExceeded::BudgetExceeded(std::size_t req, std::size_t bud)
    : std::runtime_error("bar complex needs about " + std::to_string(req) + " matrix entries, over the budget of " +
                         std::to_string(bud)),
      required(req),
      budget(bud) {}

std::size_t bar_budget_estimate(Index alg_dim, Index x_dim, Index L) {
  long double total = 0, rows = x_dim;
  for (Index l = 0; l <= L; ++l) {
    rows *= alg_dim;
    total += rows * (2.0L * x_dim + static_cast<long double>(l) * alg_dim);
  }
  return total > 1e18L ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(total);
}

template <class F>
CochainWindow<F> build_bar_complex(const FiniteDimAlgebra<F>& a, const Bimodule<F>& x, Index L, std::size_t budget) {
  const F& field = a.field;
  const Index d = a.dim, dx = x.dim;
  if (x.left->dim != d || x.right->dim != d) throw std::invalid_argument("bar complex: coefficients do not match the algebra");
  const std::size_t need = bar_budget_estimate(d, dx, L);
  if (need > budget) throw BudgetExceeded(need, budget);

  // inverse multiplication table: s -> {(p, q, c) : b_p b_q has coefficient c at b_s}
  std::vector<std::vector<std::tuple<Index, Index, typename F::value_type>>> inv(d);
  for (Index p = 0; p < d; ++p)
    for (Index q = 0; q < d; ++q)
      for (const auto& [s, c] : a.basis_product(p, q)) inv[s].emplace_back(p, q, c);

  CochainWindow<F> win;
  win.field = field;
  win.cutoff = L;
  for (Index l = 0; l <= L + 1; ++l) win.dims.push_back(static_cast<Index>(checked_pow(d, l) * dx));
  for (Index l = 0; l <= L; ++l) {
    const Index tuples = static_cast<Index>(checked_pow(d, l));
    std::vector<typename Matrix<F>::Triplet> trip;
    for (Index u = 0; u < tuples; ++u)
      for (Index xi = 0; xi < dx; ++xi) {
        const Index col = u * dx + xi;
        for (Index t1 = 0; t1 < d; ++t1)
          for (const auto& [g, v] : x.left_basis(t1, xi)) trip.push_back({(t1 * tuples + u) * dx + g, col, v});
        Index tail = tuples;  // d^{l-i+1}
        for (Index i = 1; i <= l; ++i) {
          tail /= d;
          const Index prefix = u / (tail * d);
          const Index s = (u / tail) % d;
          const Index suffix = u % tail;
          const auto sg = sign(field, i);
          for (const auto& [p, q, c] : inv[s]) {
            const Index row = ((prefix * d + p) * d + q) * tail + suffix;
            trip.push_back({row * dx + xi, col, field.mul(sg, c)});
          }
        }
        const auto sg = sign(field, l + 1);
        for (Index tl = 0; tl < d; ++tl)
          for (const auto& [g, v] : x.right_basis(xi, tl)) trip.push_back({(u * d + tl) * dx + g, col, field.mul(sg, v)});
      }
    win.delta.push_back(Matrix<F>::from_triplets(field, win.dims[l + 1], win.dims[l], std::move(trip)));
  }
  return win;
}

template <class F>
CochainWindow<F> build_bar_complex(const TriangularAlgebra<F>& t, const TBimodule<F>& x, Index L, std::size_t budget) {
  const std::size_t need = bar_budget_estimate(t.total_dim(), x.dim, L);
  if (need > budget) throw BudgetExceeded(need, budget);
  auto total = std::make_shared<const FiniteDimAlgebra<F>>(assemble_total(t));
  return build_bar_complex(*total, as_bimodule(x, total), L, budget);
}

template <class F>
CochainWindow<F> build_ext_complex(const Bimodule<F>& n, const Bimodule<F>& y, Index L) {
  const F& field = n.left->field;
  const auto& B = *n.left;
  const auto& A = *n.right;
  if (y.left->dim != B.dim || y.right->dim != A.dim) throw std::invalid_argument("ext complex: coefficient actions do not match");
  const Index dy = y.dim;
  auto layout = [&](Index i, Index j) {
    std::vector<Index> dims(i, B.dim);
    dims.push_back(n.dim);
    dims.insert(dims.end(), j, A.dim);
    return TensorIndex(dims);
  };
  // offsets[l][i] of bidegree (i, l-i)
  std::vector<std::vector<Index>> offsets(L + 2);
  CochainWindow<F> win;
  win.field = field;
  win.cutoff = L;
  for (Index l = 0; l <= L + 1; ++l) {
    std::size_t off = 0;
    for (Index i = 0; i <= l; ++i) {
      offsets[l].push_back(static_cast<Index>(off));
      off += static_cast<std::size_t>(layout(i, l - i).size) * dy;
      if (off > UINT32_MAX) throw std::length_error("cochain space too large to index");
    }
    win.dims.push_back(static_cast<Index>(off));
  }
  for (Index l = 0; l <= L; ++l) {
    std::vector<typename Matrix<F>::Triplet> trip;
    for (Index it = 0; it <= l + 1; ++it) {
      const Index jt = l + 1 - it;
      const TensorIndex rows = layout(it, jt);
      for (Index ut = 0; ut < rows.size; ++ut) {
        const auto dg = rows.decode(ut);
        const Index row_base = offsets[l + 1][it] + ut * dy;
        if (it >= 1) {
          // delta_B from bidegree (it-1, jt)
          const TensorIndex cols = layout(it - 1, jt);
          const Index cbase = offsets[l][it - 1];
          auto col_of = [&](const std::vector<Index>& digits, Index yl) { return cbase + cols.encode(digits) * dy + yl; };
          {
            std::vector<Index> d2(dg.begin() + 1, dg.end());
            for (Index yl = 0; yl < dy; ++yl)
              for (const auto& [g, v] : y.left_basis(dg[0], yl)) trip.push_back({row_base + g, col_of(d2, yl), v});
          }
          for (Index k = 1; k < it; ++k) {
            auto d2 = dg;
            d2.erase(d2.begin() + k);
            const auto sg = sign(field, k);
            for (const auto& [s, c] : B.basis_product(dg[k - 1], dg[k])) {
              d2[k - 1] = s;
              for (Index yl = 0; yl < dy; ++yl) trip.push_back({row_base + yl, col_of(d2, yl), field.mul(sg, c)});
            }
          }
          {
            auto d2 = dg;
            d2.erase(d2.begin() + (it - 1));
            const auto sg = sign(field, it);
            for (const auto& [m, c] : n.left_basis(dg[it - 1], dg[it])) {
              d2[it - 1] = m;
              for (Index yl = 0; yl < dy; ++yl) trip.push_back({row_base + yl, col_of(d2, yl), field.mul(sg, c)});
            }
          }
        }
        if (jt >= 1) {
          // (-1)^i delta_A from bidegree (it, jt-1)
          const TensorIndex cols = layout(it, jt - 1);
          const Index cbase = offsets[l][it];
          auto col_of = [&](const std::vector<Index>& digits, Index yl) { return cbase + cols.encode(digits) * dy + yl; };
          const auto outer = sign(field, it);
          const Index np = it;  // position of the N factor
          {
            auto d2 = dg;
            d2.erase(d2.begin() + np + 1);
            for (const auto& [m, c] : n.right_basis(dg[np], dg[np + 1])) {
              d2[np] = m;
              for (Index yl = 0; yl < dy; ++yl) trip.push_back({row_base + yl, col_of(d2, yl), field.mul(outer, c)});
            }
          }
          for (Index k = 1; k < jt; ++k) {
            auto d2 = dg;
            d2.erase(d2.begin() + np + k + 1);
            const auto sg = field.mul(outer, sign(field, k));
            for (const auto& [s, c] : A.basis_product(dg[np + k], dg[np + k + 1])) {
              d2[np + k] = s;
              for (Index yl = 0; yl < dy; ++yl) trip.push_back({row_base + yl, col_of(d2, yl), field.mul(sg, c)});
            }
          }
          {
            std::vector<Index> d2(dg.begin(), dg.end() - 1);
            const auto sg = field.mul(outer, sign(field, jt));
            for (Index yl = 0; yl < dy; ++yl)
              for (const auto& [g, v] : y.right_basis(yl, dg.back())) trip.push_back({row_base + g, col_of(d2, yl), field.mul(sg, v)});
          }
        }
      }
    }
    win.delta.push_back(Matrix<F>::from_triplets(field, win.dims[l + 1], win.dims[l], std::move(trip)));
  }
  return win;
}

template <class F>
ChainWindow<F> build_tor_complex(const Bimodule<F>& m2, const Bimodule<F>& m1, const FiniteDimAlgebra<F>& mid, Index L) {
  const F& field = mid.field;
  if (m2.right->dim != mid.dim || m1.left->dim != mid.dim) throw std::invalid_argument("tor complex: actions do not match the middle algebra");
  ChainWindow<F> win;
  win.field = field;
  win.cutoff = L;
  auto layout = [&](Index q) {
    std::vector<Index> dims{m2.dim};
    dims.insert(dims.end(), q, mid.dim);
    dims.push_back(m1.dim);
    return TensorIndex(dims);
  };
  for (Index q = 0; q <= L + 1; ++q) win.dims.push_back(layout(q).size);
  win.boundary.push_back(Matrix<F>(field, 0, win.dims[0]));
  for (Index q = 1; q <= L + 1; ++q) {
    const TensorIndex src = layout(q), dst = layout(q - 1);
    std::vector<typename Matrix<F>::Triplet> trip;
    const auto minus = field.from_int(-1);
    for (Index u = 0; u < src.size; ++u) {
      const auto dg = src.decode(u);
      {
        auto d2 = dg;
        d2.erase(d2.begin() + 1);
        for (const auto& [y, c] : m2.right_basis(dg[0], dg[1])) {
          d2[0] = y;
          trip.push_back({dst.encode(d2), u, field.mul(minus, c)});
        }
      }
      for (Index i = 1; i < q; ++i) {
        auto d2 = dg;
        d2.erase(d2.begin() + i + 1);
        const auto sg = sign(field, i + 1);
        for (const auto& [s, c] : mid.basis_product(dg[i], dg[i + 1])) {
          d2[i] = s;
          trip.push_back({dst.encode(d2), u, field.mul(sg, c)});
        }
      }
      {
        auto d2 = dg;
        d2.erase(d2.begin() + q);
        const auto sg = sign(field, q + 1);
        for (const auto& [x, c] : m1.left_basis(dg[q], dg[q + 1])) {
          d2[q] = x;
          trip.push_back({dst.encode(d2), u, field.mul(sg, c)});
        }
      }
    }
    win.boundary.push_back(Matrix<F>::from_triplets(field, dst.size, src.size, std::move(trip)));
  }
  return win;
}

std::vector<std::size_t> GradedDims::reliable_values() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < value.size() && reliable[k]; ++k) out.push_back(value[k]);
  return out;
}

template <class F>
GradedDims cohomology_dims(const CochainWindow<F>& w) {
  std::vector<std::size_t> rk;
  for (const auto& d : w.delta) rk.push_back(rank(d));
  GradedDims out;
  for (Index l = 0; l < w.dims.size(); ++l) {
    std::size_t into = l ? rk[l - 1] : 0;
    std::size_t outof = l < rk.size() ? rk[l] : 0;
    out.value.push_back(w.dims[l] - into - outof);
    out.reliable.push_back(l < rk.size());
  }
  return out;
}

template <class F>
std::vector<std::size_t> homology_dims(const ChainWindow<F>& w) {
  std::vector<std::size_t> rk;
  for (const auto& d : w.boundary) rk.push_back(rank(d));
  std::vector<std::size_t> out;
  for (Index q = 0; q <= w.cutoff; ++q) out.push_back(w.dims[q] - rk[q] - rk[q + 1]);
  return out;
}

template <class F>
std::optional<Index> square_zero_failure(const CochainWindow<F>& w) {
  for (Index l = 0; l + 1 < w.delta.size(); ++l)
    if (!w.delta[l + 1].multiply(w.delta[l]).is_zero()) return l;
  return std::nullopt;
}

template <class F>
std::optional<Index> filtration_failure(const CochainWindow<F>& w) {
  if (!w.filtered()) return std::nullopt;
  for (Index l = 0; l < w.delta.size(); ++l)
    for (Index c = 0; c < w.delta[l].cols(); ++c)
      for (const auto& [r, v] : w.delta[l].col(c))
        if (w.tags[l + 1][r] < w.tags[l][c]) return l;
  return std::nullopt;
}

#define TRIHOCH_INSTANTIATE_HOCH(F)                                                                                 \
  template struct RelativeComplex<F>;                                                                               \
  template RelativeComplex<F> build_relative_complex(const TriangularAlgebra<F>&, const TBimodule<F>&, Index);      \
  template CochainWindow<F> build_bar_complex(const FiniteDimAlgebra<F>&, const Bimodule<F>&, Index, std::size_t);  \
  template CochainWindow<F> build_bar_complex(const TriangularAlgebra<F>&, const TBimodule<F>&, Index, std::size_t); \
  template CochainWindow<F> build_ext_complex(const Bimodule<F>&, const Bimodule<F>&, Index);                       \
  template ChainWindow<F> build_tor_complex(const Bimodule<F>&, const Bimodule<F>&, const FiniteDimAlgebra<F>&,     \
                                            Index);                                                                 \
  template GradedDims cohomology_dims(const CochainWindow<F>&);                                                     \
  template std::vector<std::size_t> homology_dims(const ChainWindow<F>&);                                           \
  template std::optional<Index> square_zero_failure(const CochainWindow<F>&);                                       \
  template std::optional<Index> filtration_failure(const CochainWindow<F>&);

TRIHOCH_INSTANTIATE_HOCH(Rationals)
TRIHOCH_INSTANTIATE_HOCH(PrimeField)

}  // namespace trihoch
