#include "trihoch/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace trihoch {

namespace {

template <class F>
using Terms = std::vector<std::pair<Index, typename F::value_type>>;

template <class F>
void add_scaled(const F& field, Terms<F>& acc, const typename F::value_type& c, const SparseVec<F>& v,
                Index shift = 0) {
  for (const auto& [i, x] : v) acc.emplace_back(i + shift, field.mul(c, x));
}

template <class F>
SparseVec<F> unit_vec(const F& field, Index i) {
  return {{i, field.one()}};
}

template <class F>
bool same_vec(const F& field, const SparseVec<F>& a, const SparseVec<F>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].first != b[k].first || !field.equal(a[k].second, b[k].second)) return false;
  return true;
}

template <class F>
bool same_algebra(const FiniteDimAlgebra<F>& a, const FiniteDimAlgebra<F>& b) {
  if (a.dim != b.dim) return false;
  for (std::size_t k = 0; k < a.table.size(); ++k)
    if (!same_vec(a.field, a.table[k], b.table[k])) return false;
  return same_vec(a.field, a.unit, b.unit);
}

std::string triple(Index a, Index b, Index c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

std::string alg_name(Index i) { return "A" + std::to_string(i + 1); }

std::string mod_name(Index j, Index i) {
  if (j < 9 && i < 9) return "M" + std::to_string(j + 1) + std::to_string(i + 1);
  return "M" + std::to_string(j + 1) + "_" + std::to_string(i + 1);
}

}  // namespace

// ---------------------------------------------------------------- algebras

template <class F>
SparseVec<F> FiniteDimAlgebra<F>::multiply(const SparseVec<F>& a, const SparseVec<F>& b) const {
  Terms<F> acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add_scaled(field, acc, field.mul(x, y), basis_product(i, j));
  return compress(field, std::move(acc));
}

template <class F>
FiniteDimAlgebra<F> FiniteDimAlgebra<F>::ground(F f) {
  return diagonal(f, 1);
}

template <class F>
FiniteDimAlgebra<F> FiniteDimAlgebra<F>::diagonal(F f, Index d) {
  FiniteDimAlgebra a(f, d);
  for (Index i = 0; i < d; ++i) {
    a.table[i * d + i] = unit_vec(f, i);
    a.unit.emplace_back(i, f.one());
  }
  return a;
}

template <class F>
FiniteDimAlgebra<F> FiniteDimAlgebra<F>::truncated_polynomial(F f, Index d) {
  FiniteDimAlgebra a(f, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; i + j < d; ++j) a.table[i * d + j] = unit_vec(f, i + j);
  if (d > 0) a.unit = unit_vec(f, 0);
  return a;
}

template <class F>
FiniteDimAlgebra<F> FiniteDimAlgebra<F>::matrices(F f, Index d) {
  FiniteDimAlgebra a(f, d * d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c)
      for (Index e = 0; e < d; ++e) a.table[(r * d + c) * d * d + c * d + e] = unit_vec(f, r * d + e);
  for (Index r = 0; r < d; ++r) a.unit.emplace_back(r * d + r, f.one());
  return a;
}

template <class F>
FiniteDimAlgebra<F> FiniteDimAlgebra<F>::upper_triangular(F f, Index d) {
  std::vector<std::pair<Index, Index>> basis;
  std::vector<std::vector<Index>> where(d, std::vector<Index>(d, 0));
  for (Index r = 0; r < d; ++r)
    for (Index c = r; c < d; ++c) {
      where[r][c] = static_cast<Index>(basis.size());
      basis.emplace_back(r, c);
    }
  FiniteDimAlgebra a(f, static_cast<Index>(basis.size()));
  for (Index u = 0; u < a.dim; ++u)
    for (Index v = 0; v < a.dim; ++v)
      if (basis[u].second == basis[v].first)
        a.table[u * a.dim + v] = unit_vec(f, where[basis[u].first][basis[v].second]);
  for (Index r = 0; r < d; ++r) a.unit.emplace_back(where[r][r], f.one());
  return a;
}

template <class F>
std::vector<std::string> check_algebra(const FiniteDimAlgebra<F>& a, const std::string& name) {
  std::vector<std::string> out;
  const F& field = a.field;
  const Index d = a.dim;
  if (a.table.size() != static_cast<std::size_t>(d) * d) {
    out.push_back(name + ": structure constant table has wrong size");
    return out;
  }
  for (const auto& v : a.table)
    for (const auto& e : v)
      if (e.first >= d) {
        out.push_back(name + ": product outside the algebra");
        return out;
      }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) {
        Terms<F> lhs, rhs;
        for (const auto& [c, x] : a.basis_product(i, j)) add_scaled(field, lhs, x, a.basis_product(c, k));
        for (const auto& [c, x] : a.basis_product(j, k)) add_scaled(field, rhs, x, a.basis_product(i, c));
        if (!same_vec(field, compress(field, std::move(lhs)), compress(field, std::move(rhs)))) {
          out.push_back(name + ": associativity fails at basis triple " + triple(i, j, k));
          return out;
        }
      }
  for (Index i = 0; i < d; ++i) {
    auto e = unit_vec(field, i);
    if (!same_vec(field, a.multiply(a.unit, e), e) || !same_vec(field, a.multiply(e, a.unit), e)) {
      out.push_back(name + ": unit is not two-sided at basis vector " + std::to_string(i));
      return out;
    }
  }
  return out;
}

template <class F>
Subspace<F> center(const FiniteDimAlgebra<F>& a) {
  const F& field = a.field;
  const Index d = a.dim;
  std::vector<typename Matrix<F>::Triplet> t;
  for (Index k = 0; k < d; ++k)
    for (Index i = 0; i < d; ++i) {
      auto diff = axpy(field, a.basis_product(k, i), field.from_int(-1), a.basis_product(i, k));
      for (const auto& [c, x] : diff) t.push_back({i * d + c, k, x});
    }
  return kernel(Matrix<F>::from_triplets(field, d * d, d, std::move(t)));
}

template <class F>
FiniteDimAlgebra<F> product_algebra(const std::vector<AlgebraPtr<F>>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  Index total = 0;
  for (const auto& f : factors) total += f->dim;
  FiniteDimAlgebra<F> p(factors[0]->field, total);
  Index off = 0;
  for (const auto& f : factors) {
    for (Index i = 0; i < f->dim; ++i)
      for (Index j = 0; j < f->dim; ++j)
        for (const auto& [c, x] : f->basis_product(i, j))
          p.table[(off + i) * total + off + j].emplace_back(off + c, x);
    for (const auto& [c, x] : f->unit) p.unit.emplace_back(off + c, x);
    off += f->dim;
  }
  return p;
}

template <class F>
bool is_separable(const FiniteDimAlgebra<F>& a) {
  const F& field = a.field;
  const Index d = a.dim;
  if (d == 0) return true;
  // Unknowns c_{uv} for e = sum c_{uv} b_u (x) b_v, plus z scaling the unit.
  const Index z = d * d;
  std::vector<typename Matrix<F>::Triplet> t;
  const auto minus_one = field.from_int(-1);
  for (Index s = 0; s < d; ++s)
    for (Index u = 0; u < d; ++u)
      for (Index v = 0; v < d; ++v) {
        Index col = u * d + v;
        for (const auto& [c, x] : a.basis_product(s, u)) t.push_back({(s * d + c) * d + v, col, x});
        for (const auto& [c, x] : a.basis_product(v, s))
          t.push_back({(s * d + u) * d + c, col, field.mul(minus_one, x)});
      }
  const Index base = d * d * d;
  for (Index u = 0; u < d; ++u)
    for (Index v = 0; v < d; ++v)
      for (const auto& [c, x] : a.basis_product(u, v)) t.push_back({base + c, u * d + v, x});
  for (const auto& [c, x] : a.unit) t.push_back({base + c, z, field.neg(x)});
  auto k = kernel(Matrix<F>::from_triplets(field, base + d, z + 1, std::move(t)));
  for (const auto& b : k.basis())
    if (!field.is_zero(entry(field, b, z))) return true;
  return false;
}

// ---------------------------------------------------------------- bimodules

template <class F>
Bimodule<F>::Bimodule(AlgebraPtr<F> l, AlgebraPtr<F> r, Index d)
    : left(std::move(l)), right(std::move(r)), dim(d),
      lact(static_cast<std::size_t>(left->dim) * d), ract(static_cast<std::size_t>(d) * right->dim) {}

template <class F>
SparseVec<F> Bimodule<F>::act_left(const SparseVec<F>& a, const SparseVec<F>& m) const {
  const F& field = left->field;
  Terms<F> acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : m) add_scaled(field, acc, field.mul(x, y), left_basis(i, j));
  return compress(field, std::move(acc));
}

template <class F>
SparseVec<F> Bimodule<F>::act_right(const SparseVec<F>& m, const SparseVec<F>& a) const {
  const F& field = left->field;
  Terms<F> acc;
  for (const auto& [j, y] : m)
    for (const auto& [i, x] : a) add_scaled(field, acc, field.mul(x, y), right_basis(j, i));
  return compress(field, std::move(acc));
}

template <class F>
Bimodule<F> Bimodule<F>::regular(AlgebraPtr<F> a) {
  Bimodule m(a, a, a->dim);
  for (Index i = 0; i < a->dim; ++i)
    for (Index j = 0; j < a->dim; ++j) {
      m.lact[i * a->dim + j] = a->basis_product(i, j);
      m.ract[j * a->dim + i] = a->basis_product(j, i);
    }
  return m;
}

template <class F>
std::vector<std::string> check_bimodule(const Bimodule<F>& m, const std::string& name) {
  std::vector<std::string> out;
  const auto& A = *m.left;
  const auto& B = *m.right;
  const F& field = A.field;
  const Index d = m.dim;
  if (m.lact.size() != static_cast<std::size_t>(A.dim) * d ||
      m.ract.size() != static_cast<std::size_t>(B.dim) * d) {
    out.push_back(name + ": action table has wrong size");
    return out;
  }
  for (const auto* tab : {&m.lact, &m.ract})
    for (const auto& v : *tab)
      for (const auto& e : v)
        if (e.first >= d) {
          out.push_back(name + ": action lands outside the module");
          return out;
        }
  for (Index a = 0; a < A.dim; ++a)
    for (Index b = 0; b < A.dim; ++b)
      for (Index x = 0; x < d; ++x) {
        Terms<F> lhs, rhs;
        for (const auto& [c, v] : m.left_basis(b, x)) add_scaled(field, lhs, v, m.left_basis(a, c));
        for (const auto& [c, v] : A.basis_product(a, b)) add_scaled(field, rhs, v, m.left_basis(c, x));
        if (!same_vec(field, compress(field, std::move(lhs)), compress(field, std::move(rhs)))) {
          out.push_back(name + ": left action not associative at " + triple(a, b, x));
          return out;
        }
      }
  for (Index x = 0; x < d; ++x)
    for (Index a = 0; a < B.dim; ++a)
      for (Index b = 0; b < B.dim; ++b) {
        Terms<F> lhs, rhs;
        for (const auto& [c, v] : m.right_basis(x, a)) add_scaled(field, lhs, v, m.right_basis(c, b));
        for (const auto& [c, v] : B.basis_product(a, b)) add_scaled(field, rhs, v, m.right_basis(x, c));
        if (!same_vec(field, compress(field, std::move(lhs)), compress(field, std::move(rhs)))) {
          out.push_back(name + ": right action not associative at " + triple(x, a, b));
          return out;
        }
      }
  for (Index x = 0; x < d; ++x) {
    auto e = unit_vec(field, x);
    if (!same_vec(field, m.act_left(A.unit, e), e)) {
      out.push_back(name + ": left unit does not act as identity on basis vector " + std::to_string(x));
      return out;
    }
    if (!same_vec(field, m.act_right(e, B.unit), e)) {
      out.push_back(name + ": right unit does not act as identity on basis vector " + std::to_string(x));
      return out;
    }
  }
  for (Index a = 0; a < A.dim; ++a)
    for (Index x = 0; x < d; ++x)
      for (Index b = 0; b < B.dim; ++b) {
        Terms<F> lhs, rhs;
        for (const auto& [c, v] : m.left_basis(a, x)) add_scaled(field, lhs, v, m.right_basis(c, b));
        for (const auto& [c, v] : m.right_basis(x, b)) add_scaled(field, rhs, v, m.left_basis(a, c));
        if (!same_vec(field, compress(field, std::move(lhs)), compress(field, std::move(rhs)))) {
          out.push_back(name + ": left and right actions do not commute at " + triple(a, x, b));
          return out;
        }
      }
  return out;
}

template <class F>
bool BimoduleMap<F>::is_zero() const {
  for (const auto& v : images)
    if (!v.empty()) return false;
  return true;
}

// ---------------------------------------------------------------- triangular algebras

template <class F>
TriangularAlgebra<F>::TriangularAlgebra(F field, std::vector<AlgebraPtr<F>> diag)
    : field_(field), n_(static_cast<Index>(diag.size())), diag_(std::move(diag)) {
  if (n_ == 0) throw std::invalid_argument("a triangular algebra needs at least one level");
  mods_.resize(static_cast<std::size_t>(n_) * n_);
  mus_.resize(static_cast<std::size_t>(n_) * n_ * n_);
  for (Index j = 0; j < n_; ++j)
    for (Index i = 0; i < j; ++i) mods_[j * n_ + i] = Bimodule<F>::zero(diag_[j], diag_[i]);
  rebuild_offsets();
}

template <class F>
void TriangularAlgebra<F>::set_module(Index j, Index i, Bimodule<F> m) {
  if (!(j < n_ && i < j)) throw std::out_of_range("module index must satisfy i < j < n");
  if (m.left->dim != diag_[j]->dim || m.right->dim != diag_[i]->dim)
    throw std::invalid_argument(mod_name(j, i) + ": acting algebras do not match the diagonal");
  mods_[j * n_ + i] = std::move(m);
  rebuild_offsets();
}

template <class F>
void TriangularAlgebra<F>::set_mu(Index l, Index j, Index i, BimoduleMap<F> mu) {
  if (!(l < n_ && j < l && i < j)) throw std::out_of_range("mu index must satisfy i < j < l < n");
  if (mu.left_dim != module(l, j).dim || mu.right_dim != module(j, i).dim ||
      mu.target_dim != module(l, i).dim || mu.images.size() != static_cast<std::size_t>(mu.left_dim) * mu.right_dim)
    throw std::invalid_argument("mu " + std::to_string(l + 1) + " " + std::to_string(j + 1) + " " +
                                std::to_string(i + 1) + ": dimensions do not match the modules");
  mus_[(l * n_ + j) * n_ + i] = std::move(mu);
}

template <class F>
void TriangularAlgebra<F>::rebuild_offsets() {
  offsets_.assign(static_cast<std::size_t>(n_) * n_ + 1, 0);
  for (Index j = 0; j < n_; ++j)
    for (Index i = 0; i < n_; ++i) offsets_[j * n_ + i + 1] = offsets_[j * n_ + i] + block_dim(j, i);
  block_of_.assign(offsets_.back(), 0);
  for (Index k = 0; k < n_ * n_; ++k)
    for (Index t = offsets_[k]; t < offsets_[k + 1]; ++t) block_of_[t] = k;
  // Reset mu maps whose shape no longer matches the modules.
  for (Index l = 0; l < n_; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        auto& mu = mus_[(l * n_ + j) * n_ + i];
        if (mu.left_dim != module(l, j).dim || mu.right_dim != module(j, i).dim ||
            mu.target_dim != module(l, i).dim || mu.images.size() != static_cast<std::size_t>(mu.left_dim) * mu.right_dim)
          mu = BimoduleMap<F>(module(l, j).dim, module(j, i).dim, module(l, i).dim);
      }
}

template <class F>
Index TriangularAlgebra<F>::block_dim(Index j, Index i) const {
  if (j < i) return 0;
  if (j == i) return diag_[i]->dim;
  return mods_[j * n_ + i].dim;
}

template <class F>
const SparseVec<F>& TriangularAlgebra<F>::block_product(Index l, Index j, Index i, Index y, Index x) const {
  if (l == j && j == i) return diag_[i]->basis_product(y, x);
  if (l == j) return module(j, i).left_basis(y, x);
  if (j == i) return module(l, i).right_basis(y, x);
  return mu(l, j, i).image(y, x);
}

template <class F>
std::pair<Index, Index> TriangularAlgebra<F>::block_of(Index t) const {
  Index k = block_of_.at(t);
  return {k / n_, k % n_};
}

template <class F>
std::vector<std::pair<Index, Index>> TriangularAlgebra<F>::zero_blocks() const {
  std::vector<std::pair<Index, Index>> z;
  for (Index j = 0; j < n_; ++j)
    for (Index i = 0; i < j; ++i)
      if (module(j, i).dim == 0) z.emplace_back(j, i);
  return z;
}

template <class F>
ValidationReport validate_triangular(const TriangularAlgebra<F>& t) {
  ValidationReport rep;
  const F& field = t.field();
  const Index n = t.n();
  auto add = [&](std::vector<std::string> v) {
    rep.violations.insert(rep.violations.end(), v.begin(), v.end());
  };
  for (Index i = 0; i < n; ++i) add(check_algebra(t.algebra(i), alg_name(i)));
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i) {
      const auto& m = t.module(j, i);
      if (!same_algebra(*m.left, t.algebra(j)))
        rep.violations.push_back(mod_name(j, i) + ": left algebra is not " + alg_name(j));
      else if (!same_algebra(*m.right, t.algebra(i)))
        rep.violations.push_back(mod_name(j, i) + ": right algebra is not " + alg_name(i));
      else
        add(check_bimodule(m, mod_name(j, i)));
      if (m.dim == 0) rep.notes.push_back("block " + mod_name(j, i) + " is zero");
    }
  if (!rep.ok()) return rep;

  // mu bilinearity
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        const std::string nm = "mu " + std::to_string(l + 1) + " " + std::to_string(j + 1) + " " + std::to_string(i + 1);
        const auto& Mlj = t.module(l, j);
        const auto& Mji = t.module(j, i);
        const auto& Mli = t.module(l, i);
        const auto& mu = t.mu(l, j, i);
        auto apply_mu = [&](const SparseVec<F>& ys, const SparseVec<F>& xs) {
          Terms<F> acc;
          for (const auto& [y, a] : ys)
            for (const auto& [x, b] : xs) add_scaled(field, acc, field.mul(a, b), mu.image(y, x));
          return compress(field, std::move(acc));
        };
        bool bad = false;
        for (Index y = 0; y < Mlj.dim && !bad; ++y)
          for (Index x = 0; x < Mji.dim && !bad; ++x) {
            auto ey = unit_vec(field, y), ex = unit_vec(field, x);
            for (Index a = 0; a < t.algebra(l).dim && !bad; ++a)
              if (!same_vec(field, apply_mu(Mlj.left_basis(a, y), ex),
                            Mli.act_left(unit_vec(field, a), mu.image(y, x)))) {
                rep.violations.push_back(nm + ": not left " + alg_name(l) + "-linear at " + triple(a, y, x));
                bad = true;
              }
            for (Index a = 0; a < t.algebra(i).dim && !bad; ++a)
              if (!same_vec(field, apply_mu(ey, Mji.right_basis(x, a)),
                            Mli.act_right(mu.image(y, x), unit_vec(field, a)))) {
                rep.violations.push_back(nm + ": not right " + alg_name(i) + "-linear at " + triple(y, x, a));
                bad = true;
              }
            for (Index b = 0; b < t.algebra(j).dim && !bad; ++b)
              if (!same_vec(field, apply_mu(Mlj.right_basis(y, b), ex), apply_mu(ey, Mji.left_basis(b, x)))) {
                rep.violations.push_back(nm + ": not " + alg_name(j) + "-balanced at " + triple(y, b, x));
                bad = true;
              }
          }
      }

  // pentagon: mu_{m,l,i}(z (x) mu_{l,j,i}(y (x) x)) = mu_{m,j,i}(mu_{m,l,j}(z (x) y) (x) x)
  for (Index m = 0; m < n; ++m)
    for (Index l = 0; l < m; ++l)
      for (Index j = 0; j < l; ++j)
        for (Index i = 0; i < j; ++i) {
          bool bad = false;
          for (Index z = 0; z < t.module(m, l).dim && !bad; ++z)
            for (Index y = 0; y < t.module(l, j).dim && !bad; ++y)
              for (Index x = 0; x < t.module(j, i).dim && !bad; ++x) {
                Terms<F> lhs, rhs;
                for (const auto& [c, v] : t.mu(l, j, i).image(y, x)) add_scaled(field, lhs, v, t.mu(m, l, i).image(z, c));
                for (const auto& [c, v] : t.mu(m, l, j).image(z, y)) add_scaled(field, rhs, v, t.mu(m, j, i).image(c, x));
                if (!same_vec(field, compress(field, std::move(lhs)), compress(field, std::move(rhs)))) {
                  rep.violations.push_back("associativity of mu fails for levels " + std::to_string(m + 1) + " " +
                                           std::to_string(l + 1) + " " + std::to_string(j + 1) + " " +
                                           std::to_string(i + 1) + " at " + triple(z, y, x));
                  bad = true;
                }
              }
        }
  if (!rep.ok()) return rep;
  add(check_algebra(assemble_total(t), "total algebra"));
  return rep;
}

template <class F>
FiniteDimAlgebra<F> assemble_total(const TriangularAlgebra<F>& t) {
  const Index n = t.n();
  const Index d = t.total_dim();
  FiniteDimAlgebra<F> T(t.field(), d);
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j <= l; ++j)
      for (Index i = 0; i <= j; ++i) {
        const Index oy = t.block_offset(l, j), ox = t.block_offset(j, i), oz = t.block_offset(l, i);
        for (Index y = 0; y < t.block_dim(l, j); ++y)
          for (Index x = 0; x < t.block_dim(j, i); ++x) {
            auto& slot = T.table[(oy + y) * d + ox + x];
            for (const auto& [c, v] : t.block_product(l, j, i, y, x)) slot.emplace_back(oz + c, v);
          }
      }
  for (Index i = 0; i < n; ++i)
    for (const auto& [c, v] : t.algebra(i).unit) T.unit.emplace_back(t.block_offset(i, i) + c, v);
  return T;
}

// ---------------------------------------------------------------- tensor products

namespace {

// W = V_0 (x)_k ... (x)_k V_{r-1} modulo relations, with the quotient basis
// given by the non-pivot coordinates of the canonical relation basis.
template <class F>
struct Quotient {
  Index wdim = 0;
  Subspace<F> rel;
  std::vector<Index> reps;
  std::vector<std::int64_t> slot;  // W index -> quotient index or -1

  void finish(F field, Index w, const std::vector<SparseVec<F>>& relations) {
    wdim = w;
    rel = Subspace<F>::span(field, w, relations);
    slot.assign(w, -1);
    std::vector<char> piv(w, 0);
    for (Index p : rel.pivots()) piv[p] = 1;
    for (Index s = 0; s < w; ++s)
      if (!piv[s]) {
        slot[s] = static_cast<std::int64_t>(reps.size());
        reps.push_back(s);
      }
  }

  SparseVec<F> project(const SparseVec<F>& v) const {
    SparseVec<F> out;
    for (const auto& [i, x] : rel.reduce(v)) out.emplace_back(static_cast<Index>(slot[i]), x);
    return out;
  }

  Matrix<F> projection_matrix(F field) const {
    std::vector<typename Matrix<F>::Triplet> t;
    for (Index s = 0; s < wdim; ++s)
      for (const auto& [q, x] : project(unit_vec(field, s))) t.push_back({q, s, x});
    return Matrix<F>::from_triplets(field, static_cast<Index>(reps.size()), wdim, std::move(t));
  }
};

}  // namespace

template <class F>
TensorProduct<F> tensor_over(const FiniteDimAlgebra<F>& mid, const Bimodule<F>& m, const Bimodule<F>& n) {
  if (!same_algebra(*m.right, mid) || !same_algebra(*n.left, mid))
    throw std::invalid_argument("tensor_over: module actions do not match the middle algebra");
  const F& field = mid.field;
  const Index dm = m.dim, dn = n.dim, w = dm * dn;
  std::vector<SparseVec<F>> rels;
  const auto minus_one = field.from_int(-1);
  for (Index y = 0; y < dm; ++y)
    for (Index a = 0; a < mid.dim; ++a)
      for (Index x = 0; x < dn; ++x) {
        Terms<F> r;
        for (const auto& [c, v] : m.right_basis(y, a)) r.emplace_back(c * dn + x, v);
        for (const auto& [c, v] : n.left_basis(a, x)) r.emplace_back(y * dn + c, field.mul(minus_one, v));
        auto rv = compress(field, std::move(r));
        if (!rv.empty()) rels.push_back(std::move(rv));
      }
  Quotient<F> q;
  q.finish(field, w, rels);
  TensorProduct<F> out;
  out.projection = q.projection_matrix(field);
  out.representatives = q.reps;
  const Index qd = static_cast<Index>(q.reps.size());
  Bimodule<F> res(m.left, n.right, qd);
  for (Index c = 0; c < qd; ++c) {
    const Index y = q.reps[c] / dn, x = q.reps[c] % dn;
    for (Index b = 0; b < m.left->dim; ++b) {
      SparseVec<F> v;
      for (const auto& [yy, val] : m.left_basis(b, y)) v.emplace_back(yy * dn + x, val);
      res.lact[b * qd + c] = q.project(v);
    }
    for (Index a = 0; a < n.right->dim; ++a) {
      SparseVec<F> v;
      for (const auto& [xx, val] : n.right_basis(x, a)) v.emplace_back(y * dn + xx, val);
      res.ract[c * n.right->dim + a] = q.project(v);
    }
  }
  out.module = std::move(res);
  return out;
}

template <class F>
TriangularAlgebra<F> build_tensorial(F field, const std::vector<AlgebraPtr<F>>& diag,
                                     const std::vector<Bimodule<F>>& adjacent) {
  const Index n = static_cast<Index>(diag.size());
  if (adjacent.size() + 1 != diag.size()) throw std::invalid_argument("build_tensorial: need n-1 adjacent bimodules");
  for (Index i = 0; i + 1 < n; ++i)
    if (!same_algebra(*adjacent[i].left, *diag[i + 1]) || !same_algebra(*adjacent[i].right, *diag[i]))
      throw std::invalid_argument("build_tensorial: " + mod_name(i + 1, i) + " does not act through " +
                                  alg_name(i + 1) + " and " + alg_name(i));
  TriangularAlgebra<F> t(field, diag);
  const auto minus_one = field.from_int(-1);
  // W_{l,i} = _lM_{l-1} (x) ... (x) _{i+1}M_i, mixed radix, leftmost factor most significant.
  std::vector<Quotient<F>> quot(static_cast<std::size_t>(n) * n);
  std::vector<std::vector<Index>> strides(static_cast<std::size_t>(n) * n);
  auto factor = [&](Index m) -> const Bimodule<F>& { return adjacent[m]; };  // _{m+1}M_m
  for (Index l = 1; l < n; ++l)
    for (Index i = 0; i < l; ++i) {
      // Factors in order: M_{l-1}, ..., M_i (index m means _{m+1}M_m).
      std::vector<Index> fs;
      for (Index m = l; m-- > i;) fs.push_back(m);
      const Index r = static_cast<Index>(fs.size());
      std::vector<Index> stride(r, 1);
      for (Index k = r - 1; k-- > 0;) stride[k] = stride[k + 1] * factor(fs[k + 1]).dim;
      const Index w = r ? stride[0] * factor(fs[0]).dim : 0;
      std::vector<SparseVec<F>> rels;
      // Junction between positions k and k+1 sits at algebra A_{fs[k+1]+1} = A_{fs[k]}.
      for (Index k = 0; k + 1 < r; ++k) {
        const auto& L = factor(fs[k]);
        const auto& R = factor(fs[k + 1]);
        const auto& A = *diag[fs[k]];
        for (Index s = 0; s < w; ++s) {
          const Index y = (s / stride[k]) % L.dim;
          const Index x = (s / stride[k + 1]) % R.dim;
          if (y != 0 || x != 0) continue;  // enumerate each context once
          const Index ctx = s;
          for (Index yy = 0; yy < L.dim; ++yy)
            for (Index xx = 0; xx < R.dim; ++xx)
              for (Index a = 0; a < A.dim; ++a) {
                Terms<F> rv;
                const Index base = ctx;
                for (const auto& [c, v] : L.right_basis(yy, a))
                  rv.emplace_back(base + c * stride[k] + xx * stride[k + 1], v);
                for (const auto& [c, v] : R.left_basis(a, xx))
                  rv.emplace_back(base + yy * stride[k] + c * stride[k + 1], field.mul(minus_one, v));
                auto cv = compress(field, std::move(rv));
                if (!cv.empty()) rels.push_back(std::move(cv));
              }
        }
      }
      quot[l * n + i].finish(field, w, rels);
      strides[l * n + i] = stride;
    }
  for (Index l = 1; l < n; ++l)
    for (Index i = 0; i < l; ++i) {
      const auto& q = quot[l * n + i];
      const auto& stride = strides[l * n + i];
      const Index qd = static_cast<Index>(q.reps.size());
      const auto& first = factor(l - 1);
      const auto& last = factor(i);
      Bimodule<F> m(diag[l], diag[i], qd);
      for (Index c = 0; c < qd; ++c) {
        const Index s = q.reps[c];
        const Index y = s / stride.front();
        const Index x = s % last.dim;
        for (Index a = 0; a < diag[l]->dim; ++a) {
          SparseVec<F> v;
          for (const auto& [yy, val] : first.left_basis(a, y)) v.emplace_back(s - y * stride.front() + yy * stride.front(), val);
          m.lact[a * qd + c] = q.project(compress(field, Terms<F>(v.begin(), v.end())));
        }
        for (Index a = 0; a < diag[i]->dim; ++a) {
          SparseVec<F> v;
          for (const auto& [xx, val] : last.right_basis(x, a)) v.emplace_back(s - x + xx, val);
          m.ract[c * diag[i]->dim + a] = q.project(compress(field, Terms<F>(v.begin(), v.end())));
        }
      }
      t.set_module(l, i, std::move(m));
    }
  for (Index l = 2; l < n; ++l)
    for (Index j = 1; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        const auto& ql = quot[l * n + j];
        const auto& qr = quot[j * n + i];
        const auto& qt = quot[l * n + i];
        BimoduleMap<F> mu(static_cast<Index>(ql.reps.size()), static_cast<Index>(qr.reps.size()),
                          static_cast<Index>(qt.reps.size()));
        for (Index y = 0; y < mu.left_dim; ++y)
          for (Index x = 0; x < mu.right_dim; ++x)
            mu.images[y * mu.right_dim + x] = qt.project(unit_vec(field, ql.reps[y] * qr.wdim + qr.reps[x]));
        t.set_mu(l, j, i, std::move(mu));
      }
  return t;
}

template <class F>
bool is_tensorial(const TriangularAlgebra<F>& t) {
  const F& field = t.field();
  const Index n = t.n();
  for (Index l = 0; l < n; ++l)
    for (Index j = 0; j < l; ++j)
      for (Index i = 0; i < j; ++i) {
        auto tp = tensor_over(t.algebra(j), t.module(l, j), t.module(j, i));
        const Index qd = tp.module.dim;
        if (qd != t.module(l, i).dim) return false;
        std::vector<typename Matrix<F>::Triplet> trip;
        const Index dn = t.module(j, i).dim;
        for (Index c = 0; c < qd; ++c)
          for (const auto& [z, v] : t.mu(l, j, i).image(tp.representatives[c] / dn, tp.representatives[c] % dn))
            trip.push_back({z, c, v});
        if (rank(Matrix<F>::from_triplets(field, t.module(l, i).dim, qd, std::move(trip))) != qd) return false;
      }
  return true;
}

template <class F>
Bimodule<F> adjacent_sum(const TriangularAlgebra<F>& t, AlgebraPtr<F> product) {
  const Index n = t.n();
  std::vector<Index> aoff(n + 1, 0), moff(n, 0);
  for (Index i = 0; i < n; ++i) aoff[i + 1] = aoff[i] + t.algebra(i).dim;
  if (product->dim != aoff[n]) throw std::invalid_argument("adjacent_sum: product algebra has the wrong dimension");
  for (Index i = 0; i + 1 < n; ++i) moff[i + 1] = moff[i] + t.module(i + 1, i).dim;
  const Index d = moff[n - 1];
  Bimodule<F> m(product, product, d);
  for (Index i = 0; i + 1 < n; ++i) {
    const auto& M = t.module(i + 1, i);
    for (Index x = 0; x < M.dim; ++x) {
      for (Index a = 0; a < t.algebra(i + 1).dim; ++a) {
        SparseVec<F> v;
        for (const auto& [c, val] : M.left_basis(a, x)) v.emplace_back(moff[i] + c, val);
        m.lact[(aoff[i + 1] + a) * d + moff[i] + x] = std::move(v);
      }
      for (Index a = 0; a < t.algebra(i).dim; ++a) {
        SparseVec<F> v;
        for (const auto& [c, val] : M.right_basis(x, a)) v.emplace_back(moff[i] + c, val);
        m.ract[(moff[i] + x) * product->dim + aoff[i] + a] = std::move(v);
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------- T-bimodules

template <class F>
TBimodule<F> TBimodule<F>::regular(const TriangularAlgebra<F>& t) {
  const Index n = t.n();
  auto T = assemble_total(t);
  TBimodule x;
  x.n = n;
  x.dim = T.dim;
  x.t_dim = T.dim;
  x.offsets.assign(static_cast<std::size_t>(n) * n + 1, 0);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) x.offsets[j * n + i + 1] = x.offsets[j * n + i] + t.block_dim(j, i);
  x.lact.resize(static_cast<std::size_t>(T.dim) * T.dim);
  x.ract.resize(static_cast<std::size_t>(T.dim) * T.dim);
  for (Index a = 0; a < T.dim; ++a)
    for (Index b = 0; b < T.dim; ++b) {
      x.lact[a * T.dim + b] = T.basis_product(a, b);
      x.ract[b * T.dim + a] = T.basis_product(b, a);
    }
  return x;
}

template <class F>
TBimodule<F> TBimodule<F>::dual(const TriangularAlgebra<F>& t) {
  const Index n = t.n();
  const F& field = t.field();
  auto T = assemble_total(t);
  const Index d = T.dim;
  TBimodule x;
  x.n = n;
  x.dim = d;
  x.t_dim = d;
  x.offsets.assign(static_cast<std::size_t>(n) * n + 1, 0);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) x.offsets[a * n + b + 1] = x.offsets[a * n + b] + t.block_dim(b, a);
  // phi_s for s in T-block (b,a) sits in X-block (a,b).
  std::vector<Index> xi(d);
  for (Index s = 0; s < d; ++s) {
    auto [b, a] = t.block_of(s);
    xi[s] = x.offsets[a * n + b] + (s - t.block_offset(b, a));
  }
  std::vector<Terms<F>> lacc(static_cast<std::size_t>(d) * d), racc(static_cast<std::size_t>(d) * d);
  for (Index u = 0; u < d; ++u)
    for (Index v = 0; v < d; ++v)
      for (const auto& [s, c] : T.basis_product(u, v)) {
        // (v . phi_s)(u) = phi_s(u v);  (phi_s . u)(v) = phi_s(u v)
        lacc[v * d + xi[s]].emplace_back(xi[u], c);
        racc[xi[s] * d + u].emplace_back(xi[v], c);
      }
  x.lact.resize(lacc.size());
  x.ract.resize(racc.size());
  for (std::size_t k = 0; k < lacc.size(); ++k) {
    x.lact[k] = compress(field, std::move(lacc[k]));
    x.ract[k] = compress(field, std::move(racc[k]));
  }
  return x;
}

template <class F>
Bimodule<F> as_bimodule(const TBimodule<F>& x, AlgebraPtr<F> total) {
  if (total->dim != x.t_dim) throw std::invalid_argument("as_bimodule: algebra dimension mismatch");
  Bimodule<F> m(total, total, x.dim);
  m.lact = x.lact;
  m.ract = x.ract;
  return m;
}

template <class F>
std::vector<std::string> check_tbimodule(const TriangularAlgebra<F>& t, const TBimodule<F>& x) {
  std::vector<std::string> out;
  const F& field = t.field();
  if (x.n != t.n() || x.t_dim != t.total_dim() || x.offsets.size() != static_cast<std::size_t>(x.n) * x.n + 1 ||
      x.offsets.back() != x.dim) {
    out.push_back("coefficient bimodule: shape does not match the algebra");
    return out;
  }
  auto T = std::make_shared<const FiniteDimAlgebra<F>>(assemble_total(t));
  out = check_bimodule(as_bimodule(x, T), "coefficient bimodule");
  if (!out.empty()) return out;
  const Index n = t.n();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < x.block_dim(j, i); ++k) {
        const Index v = x.block_offset(j, i) + k;
        const auto ev = unit_vec(field, v);
        for (Index a = 0; a < n; ++a) {
          SparseVec<F> e;
          for (const auto& [c, val] : t.algebra(a).unit) e.emplace_back(t.block_offset(a, a) + c, val);
          auto lv = compress(field, [&] {
            Terms<F> acc;
            for (const auto& [s, val] : e) add_scaled(field, acc, val, x.left_basis(s, v));
            return acc;
          }());
          auto rv = compress(field, [&] {
            Terms<F> acc;
            for (const auto& [s, val] : e) add_scaled(field, acc, val, x.right_basis(v, s));
            return acc;
          }());
          if (!same_vec(field, lv, a == j ? ev : SparseVec<F>{}) || !same_vec(field, rv, a == i ? ev : SparseVec<F>{})) {
            out.push_back("coefficient bimodule: basis vector " + std::to_string(v) + " is not in block e" +
                          std::to_string(j + 1) + " X e" + std::to_string(i + 1));
            return out;
          }
        }
      }
  return out;
}

template <class F>
Bimodule<F> restrict_block(const TriangularAlgebra<F>& t, const TBimodule<F>& x, Index j, Index i) {
  const Index d = x.block_dim(j, i), off = x.block_offset(j, i);
  Bimodule<F> m(t.algebra_ptr(j), t.algebra_ptr(i), d);
  const Index oj = t.block_offset(j, j), oi = t.block_offset(i, i);
  for (Index v = 0; v < d; ++v) {
    for (Index a = 0; a < t.algebra(j).dim; ++a) {
      SparseVec<F> r;
      for (const auto& [c, val] : x.left_basis(oj + a, off + v)) r.emplace_back(c - off, val);
      m.lact[a * d + v] = std::move(r);
    }
    for (Index a = 0; a < t.algebra(i).dim; ++a) {
      SparseVec<F> r;
      for (const auto& [c, val] : x.right_basis(off + v, oi + a)) r.emplace_back(c - off, val);
      m.ract[v * t.algebra(i).dim + a] = std::move(r);
    }
  }
  return m;
}

#define TRIHOCH_INSTANTIATE_ALGEBRA(F)                                                               \
  template struct FiniteDimAlgebra<F>;                                                               \
  template struct Bimodule<F>;                                                                       \
  template struct BimoduleMap<F>;                                                                    \
  template class TriangularAlgebra<F>;                                                               \
  template struct TBimodule<F>;                                                                      \
  template std::vector<std::string> check_algebra(const FiniteDimAlgebra<F>&, const std::string&);  \
  template Subspace<F> center(const FiniteDimAlgebra<F>&);                                           \
  template FiniteDimAlgebra<F> product_algebra(const std::vector<AlgebraPtr<F>>&);                   \
  template bool is_separable(const FiniteDimAlgebra<F>&);                                            \
  template std::vector<std::string> check_bimodule(const Bimodule<F>&, const std::string&);         \
  template ValidationReport validate_triangular(const TriangularAlgebra<F>&);                        \
  template FiniteDimAlgebra<F> assemble_total(const TriangularAlgebra<F>&);                          \
  template TensorProduct<F> tensor_over(const FiniteDimAlgebra<F>&, const Bimodule<F>&,              \
                                        const Bimodule<F>&);                                         \
  template TriangularAlgebra<F> build_tensorial(F, const std::vector<AlgebraPtr<F>>&,                \
                                                const std::vector<Bimodule<F>>&);                    \
  template bool is_tensorial(const TriangularAlgebra<F>&);                                           \
  template Bimodule<F> adjacent_sum(const TriangularAlgebra<F>&, AlgebraPtr<F>);                     \
  template std::vector<std::string> check_tbimodule(const TriangularAlgebra<F>&, const TBimodule<F>&); \
  template Bimodule<F> as_bimodule(const TBimodule<F>&, AlgebraPtr<F>);                              \
  template Bimodule<F> restrict_block(const TriangularAlgebra<F>&, const TBimodule<F>&, Index, Index);

TRIHOCH_INSTANTIATE_ALGEBRA(Rationals)
TRIHOCH_INSTANTIATE_ALGEBRA(PrimeField)

}  // namespace trihoch
