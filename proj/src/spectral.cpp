#include "trihoch/spectral.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace trihoch {

namespace {

template <class F>
class ZCache {
 public:
  ZCache(const CochainWindow<F>& w, Index columns) : w_(w), columns_(columns) {}

  /// Z_r^p(l) for l <= cutoff.
  const Subspace<F>& z(int r, int p, Index l) {
    const int colmin = std::clamp(p, 0, static_cast<int>(columns_));
    const int rowthr = std::clamp(p + r, colmin, static_cast<int>(columns_));
    auto key = std::make_tuple(colmin, rowthr, l);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, compute(colmin, rowthr, l)).first->second;
  }

  /// F^p C^l.
  Subspace<F> filtration(int p, Index l) const {
    const F& field = w_.field;
    std::vector<Index> coords;
    for (Index i = 0; i < w_.dims[l]; ++i)
      if (static_cast<int>(w_.tags[l][i]) >= p) coords.push_back(i);
    return Subspace<F>::coordinate(field, w_.dims[l], coords);
  }

 private:
  Subspace<F> compute(int colmin, int rowthr, Index l) const {
    if (rowthr <= colmin) return filtration(colmin, l);
    const auto& tags_c = w_.tags[l];
    const auto& tags_r = w_.tags[l + 1];
    std::vector<bool> keep_c(tags_c.size()), keep_r(tags_r.size());
    std::vector<Index> col_ids;
    for (Index i = 0; i < tags_c.size(); ++i)
      if (static_cast<int>(tags_c[i]) >= colmin) {
        keep_c[i] = true;
        col_ids.push_back(i);
      }
    for (Index i = 0; i < tags_r.size(); ++i) keep_r[i] = static_cast<int>(tags_r[i]) < rowthr;
    auto k = kernel(w_.delta[l].submatrix(keep_r, keep_c));
    std::vector<SparseVec<F>> basis;
    for (const auto& b : k.basis()) {
      SparseVec<F> v;
      for (const auto& [i, x] : b) v.emplace_back(col_ids[i], x);
      basis.push_back(std::move(v));
    }
    return Subspace<F>::from_canonical(w_.field, w_.dims[l], std::move(basis));
  }

  const CochainWindow<F>& w_;
  Index columns_;
  std::map<std::tuple<int, int, Index>, Subspace<F>> cache_;
};

template <class F>
SpectralPage<F> build_page(const CochainWindow<F>& w, Index columns, Index r, ZCache<F>& zc) {
  SpectralPage<F> page;
  page.r = r;
  page.columns = columns;
  page.cutoff = w.cutoff;
  const Index L = w.cutoff;
  const int ri = static_cast<int>(r);
  page.basis.assign(columns, std::vector<QuotientBasis<F>>(L + 1));
  for (Index p = 0; p < columns; ++p)
    for (Index l = 0; l <= L; ++l) {
      const int pi = static_cast<int>(p);
      auto den = zc.z(ri - 1, pi + 1, l);
      // on page 0 the boundary term lies in F^{p+1} already
      if (l > 0 && r > 0) den = subspace_sum(den, map_subspace(w.delta[l - 1], zc.z(ri - 1, pi - ri + 1, l - 1)));
      page.basis[p][l] = QuotientBasis<F>(zc.z(ri, pi, l), den);
    }
  page.d.assign(columns, std::vector<Matrix<F>>(L + 1));
  page.d_reliable.assign(columns, std::vector<bool>(L + 1, false));
  for (Index p = 0; p < columns; ++p)
    for (Index l = 0; l < L; ++l) {
      const auto& src = page.basis[p][l];
      const Index tp = p + r;
      const Index rows = tp < columns ? static_cast<Index>(page.basis[tp][l + 1].dim()) : 0;
      std::vector<typename Matrix<F>::Triplet> trip;
      if (rows > 0)
        for (Index c = 0; c < src.dim(); ++c) {
          auto coords = page.basis[tp][l + 1].sparse_coordinates(w.delta[l].apply(src.lifts()[c]));
          if (!coords) throw std::logic_error("d_r lands outside Z_r");
          for (auto& [k, v] : *coords) trip.push_back({k, c, std::move(v)});
        }
      page.d[p][l] = Matrix<F>::from_triplets(w.field, rows, static_cast<Index>(src.dim()), std::move(trip));
      page.d_reliable[p][l] = true;
    }
  return page;
}

template <class F>
typename F::value_type sgn(const F& field, Index k) {
  return field.from_int(k % 2 ? -1 : 1);
}

}  // namespace

template <class F>
SpectralSequence<F> compute_spectral_sequence(const CochainWindow<F>& w, Index columns, Index max_page) {
  if (!w.filtered()) throw std::invalid_argument("spectral sequence needs a filtered window");
  ZCache<F> zc(w, columns);
  SpectralSequence<F> ss;
  ss.columns = columns;
  ss.cutoff = w.cutoff;
  for (Index r = 0; r <= max_page; ++r) ss.pages.push_back(build_page(w, columns, r, zc));
  return ss;
}

template <class F>
SpectralPage<F> compute_page(const CochainWindow<F>& w, Index columns, Index r) {
  ZCache<F> zc(w, columns);
  return build_page(w, columns, r, zc);
}

template <class F>
std::vector<std::string> check_spectral_sequence(const SpectralSequence<F>& ss, const GradedDims& hh) {
  std::vector<std::string> out;
  const Index n = ss.columns, L = ss.cutoff;
  for (const auto& pg : ss.pages) {
    const std::string tag = "page " + std::to_string(pg.r);
    for (Index p = 0; p < n; ++p)
      for (Index l = 0; l + 1 < L; ++l) {
        const Index tp = p + pg.r;
        if (tp >= n || !pg.d_reliable[p][l] || !pg.d_reliable[tp][l + 1]) continue;
        const Index tt = tp + pg.r;
        if (tt < n && !pg.d[tp][l + 1].multiply(pg.d[p][l]).is_zero())
          out.push_back(tag + ": d_r d_r != 0 at p=" + std::to_string(p) + " l=" + std::to_string(l));
      }
  }
  for (std::size_t k = 0; k + 1 < ss.pages.size(); ++k) {
    const auto& pg = ss.pages[k];
    const auto& next = ss.pages[k + 1];
    for (Index p = 0; p < n; ++p)
      for (Index l = 0; l < L; ++l) {
        std::size_t ker = pg.dim(p, l) - (pg.d_reliable[p][l] ? rank(pg.d[p][l]) : 0);
        std::size_t im = 0;
        if (p >= pg.r && l >= 1) im = rank(pg.d[p - pg.r][l - 1]);
        if (ker - im != next.dim(p, l))
          out.push_back("page " + std::to_string(k + 1) + ": dim at p=" + std::to_string(p) + " l=" + std::to_string(l) +
                        " is " + std::to_string(next.dim(p, l)) + ", recurrence gives " + std::to_string(ker - im));
      }
  }
  if (ss.pages.size() > n) {
    const auto& last = ss.pages[n];
    for (Index l = 0; l <= L && l < hh.value.size(); ++l) {
      if (!hh.reliable[l]) continue;
      std::size_t sum = 0;
      for (Index p = 0; p < n; ++p) sum += last.dim(p, l);
      if (sum != hh.value[l])
        out.push_back("convergence fails in degree " + std::to_string(l) + ": " + std::to_string(sum) + " vs " +
                      std::to_string(hh.value[l]));
    }
  }
  return out;
}

template <class F>
SparseVec<F> cup_d1_general(const TriangularAlgebra<F>& t, const TBimodule<F>& x, const RelativeComplex<F>& rc,
                            Index l, const SparseVec<F>& f) {
  const F& field = t.field();
  const Index n = t.n();
  if (l + 1 >= rc.cells.size()) throw std::out_of_range("cup product leaves the window");
  std::vector<std::pair<Index, typename F::value_type>> acc;
  const auto& cells = rc.cells[l];
  std::optional<Index> column;
  const auto right_sign = sgn(field, l + 1);
  for (const auto& [idx, c] : f) {
    auto it = std::upper_bound(cells.begin(), cells.end(), idx, [](Index v, const Cell& cell) { return v < cell.offset; });
    const Cell& cell = *(it - 1);
    const auto& w = cell.tau.w;
    const Index len = cell.tau.length();
    if (column && *column != len) throw std::invalid_argument("cochain spans several filtration columns");
    column = len;
    const Index local = idx - cell.offset;
    const auto digits = cell.tensor.decode(local / cell.x_dim);
    const Index xg = cell.x_offset + local % cell.x_dim;
    auto emit = [&](const Cell* ct, const std::vector<Index>& d2, Index xl, const typename F::value_type& v) {
      acc.emplace_back(ct->offset + ct->tensor.encode(d2) * ct->x_dim + xl, v);
    };
    // 1_M cup f: a jump leaving the target
    for (Index k = w.front() + 1; k < n; ++k) {
      auto w2 = w;
      w2.insert(w2.begin(), k);
      const Cell* ct = rc.find(w2);
      const Index off = t.block_offset(k, w.front());
      for (Index y = 0; y < t.block_dim(k, w.front()); ++y) {
        auto d2 = digits;
        d2.insert(d2.begin(), y);
        for (const auto& [g, v] : x.left_basis(off + y, xg)) emit(ct, d2, g - ct->x_offset, field.mul(c, v));
      }
    }
    // f cup 1_M: a jump entering the source
    for (Index k = 0; k < w.back(); ++k) {
      auto w2 = w;
      w2.push_back(k);
      const Cell* ct = rc.find(w2);
      const Index off = t.block_offset(w.back(), k);
      for (Index y = 0; y < t.block_dim(w.back(), k); ++y) {
        auto d2 = digits;
        d2.push_back(y);
        for (const auto& [g, v] : x.right_basis(xg, off + y))
          emit(ct, d2, g - ct->x_offset, field.mul(right_sign, field.mul(c, v)));
      }
    }
    // f composed with mu on a split jump
    for (Index m = 1; m <= l; ++m) {
      const Index hi = w[m - 1], lo = w[m];
      if (hi == lo) continue;
      for (Index a = lo + 1; a < hi; ++a) {
        auto w2 = w;
        w2.insert(w2.begin() + m, a);
        const Cell* ct = rc.find(w2);
        const auto& mu = t.mu(hi, a, lo);
        const auto s = field.mul(sgn(field, m), c);
        for (Index y = 0; y < mu.left_dim; ++y)
          for (Index z = 0; z < mu.right_dim; ++z) {
            const auto v = entry(field, mu.image(y, z), digits[m - 1]);
            if (field.is_zero(v)) continue;
            auto d2 = digits;
            d2[m - 1] = y;
            d2.insert(d2.begin() + m, z);
            emit(ct, d2, xg - ct->x_offset, field.mul(s, v));
          }
      }
    }
  }
  return compress(field, std::move(acc));
}

template <class F>
SparseVec<F> cup_d1_n3(const TriangularAlgebra<F>& t, const TBimodule<F>& x, const RelativeComplex<F>& rc, Index l,
                       const SparseVec<F>& f, const SparseVec<F>& g, const SparseVec<F>& h) {
  const F& field = t.field();
  if (t.n() != 3) throw std::invalid_argument("cup_d1_n3 needs three levels");
  if (l + 1 >= rc.cells.size()) throw std::out_of_range("cup product leaves the window");
  const SparseVec<F>* in[3] = {&f, &g, &h};
  for (Index i = 0; i < 3; ++i) {
    auto bar = build_bar_complex(t.algebra(i), restrict_block(t, x, i, i), l);
    if (!bar.delta[l].apply(*in[i]).empty())
      throw std::invalid_argument("input on A" + std::to_string(i + 1) + " is not a cocycle");
  }
  std::vector<std::pair<Index, typename F::value_type>> acc;
  const auto rs = sgn(field, l + 1);
  // theta cup phi, theta running over the basis of _jM_i, phi on the diagonal cell of `at`
  auto cup = [&](Index j, Index i, Index at, bool left) {
    const auto& phi = *in[at];
    const Index dx = x.block_dim(at, at);
    std::vector<Index> w(l + 1, at);
    const Cell* src = rc.find(w);
    if (left)
      w.insert(w.begin(), j);
    else
      w.push_back(i);
    const Cell* ct = rc.find(w);
    const Index off = t.block_offset(j, i);
    for (const auto& [idx, c] : phi) {
      const Index u = idx / dx;
      const Index xg = src->x_offset + idx % dx;
      auto digits = src->tensor.decode(u);
      for (Index m = 0; m < t.block_dim(j, i); ++m) {
        auto d2 = digits;
        if (left)
          d2.insert(d2.begin(), m);
        else
          d2.push_back(m);
        const Index row = ct->offset + ct->tensor.encode(d2) * ct->x_dim;
        const auto& act = left ? x.left_basis(off + m, xg) : x.right_basis(xg, off + m);
        for (const auto& [gx, v] : act)
          acc.emplace_back(row + gx - ct->x_offset, left ? field.mul(c, v) : field.mul(rs, field.mul(c, v)));
      }
    }
  };
  cup(1, 0, 0, true);   // 1_{M21} f
  cup(1, 0, 1, false);  // g 1_{M21}
  cup(2, 1, 1, true);   // 1_{M32} g
  cup(2, 1, 2, false);  // h 1_{M32}
  cup(2, 0, 0, true);   // 1_{M31} f
  cup(2, 0, 2, false);  // h 1_{M31}
  return compress(field, std::move(acc));
}

template <class F>
std::vector<std::string> check_d1_against_cup(const TriangularAlgebra<F>& t, const TBimodule<F>& x,
                                              const RelativeComplex<F>& rc, const SpectralSequence<F>& ss) {
  std::vector<std::string> out;
  if (ss.pages.size() < 2) return {"page 1 was not computed"};
  const auto& pg = ss.pages[1];
  const auto& win = rc.window;
  for (Index p = 0; p < ss.columns; ++p)
    for (Index l = 0; l < ss.cutoff; ++l) {
      if (!pg.d_reliable[p][l]) continue;
      const auto& src = pg.basis[p][l];
      for (Index c = 0; c < src.dim(); ++c) {
        SparseVec<F> fcol;
        for (const auto& [i, v] : src.lifts()[c])
          if (win.tags[l][i] == p) fcol.emplace_back(i, v);
        auto image = cup_d1_general(t, x, rc, l, fcol);
        SparseVec<F> got;
        if (p + 1 < ss.columns) {
          auto coords = pg.basis[p + 1][l + 1].sparse_coordinates(image);
          if (!coords) {
            out.push_back("cup image of a class at p=" + std::to_string(p) + " l=" + std::to_string(l) +
                          " is not in Z_1");
            continue;
          }
          got = std::move(*coords);
        } else if (!image.empty()) {
          out.push_back("cup image leaves the last column at l=" + std::to_string(l));
          continue;
        }
        if (got != pg.d[p][l].col(c))
          out.push_back("d_1 and the cup formula differ at p=" + std::to_string(p) + " l=" + std::to_string(l) +
                        " on class " + std::to_string(c));
      }
    }
  return out;
}

namespace {

// Iterated tensor product M_{k_{t+1} k_t} (x) ... (x) M_{k_2 k_1} over the intermediate algebras.
template <class F>
Bimodule<F> chain_product(const TriangularAlgebra<F>& t, const std::vector<Index>& k) {
  Bimodule<F> acc = t.module(k[1], k[0]);
  for (std::size_t i = 2; i < k.size(); ++i) acc = tensor_over(t.algebra(k[i - 1]), t.module(k[i], k[i - 1]), acc).module;
  return acc;
}

void increasing_sequences(Index n, Index len, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (Index v = cur.empty() ? 0 : cur.back() + 1; v < n; ++v) {
    cur.push_back(v);
    increasing_sequences(n, len, cur, out);
    cur.pop_back();
  }
}

std::string level_name(Index v) { return std::to_string(v + 1); }

}  // namespace

template <class F>
E1Report e1_structure_report(const TriangularAlgebra<F>& t, const TBimodule<F>& x, const SpectralSequence<F>& ss) {
  E1Report rep;
  if (ss.pages.size() < 2) throw std::invalid_argument("page 1 was not computed");
  const auto& pg = ss.pages[1];
  const Index n = t.n(), L = ss.cutoff;
  for (Index p = 0; p < n && p <= L; ++p) {
    const Index qmax = L - p;
    std::vector<std::size_t> pred(qmax + 1, 0);
    std::vector<std::vector<std::string>> labels(qmax + 1);
    bool projective = true;
    std::vector<std::vector<Index>> seqs;
    std::vector<Index> cur;
    increasing_sequences(n, p + 1, cur, seqs);
    for (const auto& k : seqs) {
      std::vector<std::size_t> dims;
      std::string label;
      const Index top = k.back(), bottom = k.front();
      auto coeff = restrict_block(t, x, top, bottom);
      if (p == 0) {
        dims = cohomology_dims(build_bar_complex(t.algebra(top), coeff, qmax)).reliable_values();
        label = "HH(A" + level_name(top) + ")";
      } else {
        for (std::size_t i = 1; i + 1 < k.size(); ++i) projective = projective && is_separable(t.algebra(k[i]));
        auto mod = chain_product(t, k);
        dims = cohomology_dims(build_ext_complex(mod, coeff, qmax)).reliable_values();
        label = "Ext(M";
        for (auto it = k.rbegin(); it != k.rend(); ++it) label += level_name(*it);
        label += ")";
      }
      for (Index q = 0; q <= qmax; ++q) {
        pred[q] += dims[q];
        if (dims[q]) labels[q].push_back(label + "^" + std::to_string(q) + "=" + std::to_string(dims[q]));
      }
    }
    for (Index q = 0; q <= qmax; ++q) {
      E1Cell cell;
      cell.p = p;
      cell.q = q;
      cell.engine = pg.dim(p, p + q);
      cell.predicted = pred[q];
      cell.projective = projective;
      cell.summands = labels[q];
      if (!cell.agree() && cell.projective)
        rep.failures.push_back("E1 at p=" + std::to_string(p) + " q=" + std::to_string(q) + ": engine " +
                               std::to_string(cell.engine) + ", summands " + std::to_string(cell.predicted));
      rep.cells.push_back(std::move(cell));
    }
  }
  return rep;
}

template <class F>
DegenerationReport check_degeneration_A2k(const TriangularAlgebra<F>& t, const TBimodule<F>& x,
                                          const RelativeComplex<F>& rc, const SpectralSequence<F>& ss) {
  (void)x;
  if (t.n() != 3) throw std::invalid_argument("degeneration check needs three levels, got " + std::to_string(t.n()));
  if (!is_tensorial(t)) throw std::invalid_argument("degeneration check needs a tensorial algebra");
  if (ss.pages.size() < 3) throw std::invalid_argument("page 2 was not computed");
  DegenerationReport rep;
  rep.global_claim = t.algebra(1).dim == 1;
  if (!rep.global_claim) rep.details.push_back("A2 is not k: only the vanishing on the outer diagonal summands is checked");
  const auto& pg = ss.pages[2];
  const auto& win = rc.window;
  const F& field = win.field;
  for (Index l = 0; l < ss.cutoff; ++l) {
    if (rep.global_claim)
      for (Index p = 0; p < ss.columns; ++p)
        if (pg.d_reliable[p][l] && !pg.d[p][l].is_zero()) {
          rep.d2_zero = false;
          rep.details.push_back("d2 is nonzero at p=" + std::to_string(p) + " l=" + std::to_string(l));
        }
    if (ss.columns < 3) continue;
    // classes of E_2^{0,l} carried by the column-0 cells at levels 1 and 3
    std::vector<Index> coords;
    for (const auto& cell : rc.cells[l]) {
      const bool outer_diag = cell.tau.length() == 0 && (cell.tau.target() == 0 || cell.tau.target() == 2);
      for (Index i = 0; i < cell.dim(); ++i)
        if (outer_diag || cell.tau.length() > 0) coords.push_back(cell.offset + i);
    }
    auto allowed = Subspace<F>::coordinate(field, win.dims[l], coords);
    auto v = subspace_intersect(pg.basis[0][l].numerator(), allowed);
    const auto& target = pg.basis[2][l + 1];
    for (const auto& b : v.basis()) {
      auto c = target.sparse_coordinates(win.delta[l].apply(b));
      if (!c || !c->empty()) {
        rep.lemma_holds = false;
        rep.details.push_back("d2 does not vanish on an outer diagonal class in degree " + std::to_string(l));
        break;
      }
    }
  }
  return rep;
}

#define TRIHOCH_INSTANTIATE_SPECTRAL(F)                                                                           \
  template SpectralSequence<F> compute_spectral_sequence(const CochainWindow<F>&, Index, Index);                  \
  template SpectralPage<F> compute_page(const CochainWindow<F>&, Index, Index);                                   \
  template std::vector<std::string> check_spectral_sequence(const SpectralSequence<F>&, const GradedDims&);       \
  template SparseVec<F> cup_d1_general(const TriangularAlgebra<F>&, const TBimodule<F>&, const RelativeComplex<F>&, \
                                       Index, const SparseVec<F>&);                                               \
  template SparseVec<F> cup_d1_n3(const TriangularAlgebra<F>&, const TBimodule<F>&, const RelativeComplex<F>&,      \
                                  Index, const SparseVec<F>&, const SparseVec<F>&, const SparseVec<F>&);          \
  template std::vector<std::string> check_d1_against_cup(const TriangularAlgebra<F>&, const TBimodule<F>&,        \
                                                         const RelativeComplex<F>&, const SpectralSequence<F>&);  \
  template E1Report e1_structure_report(const TriangularAlgebra<F>&, const TBimodule<F>&,                         \
                                        const SpectralSequence<F>&);                                              \
  template DegenerationReport check_degeneration_A2k(const TriangularAlgebra<F>&, const TBimodule<F>&,            \
                                                     const RelativeComplex<F>&, const SpectralSequence<F>&);

TRIHOCH_INSTANTIATE_SPECTRAL(Rationals)
TRIHOCH_INSTANTIATE_SPECTRAL(PrimeField)

}  // namespace trihoch
