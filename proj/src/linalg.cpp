#include "trihoch/linalg.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "trihoch/simd/modarith.hpp"

namespace trihoch {

template <class F>
SparseVec<F> compress(const F& field, std::vector<std::pair<Index, typename F::value_type>> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<F> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second = field.add(out.back().second, t.second);
    } else {
      if (!out.empty() && field.is_zero(out.back().second)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && field.is_zero(out.back().second)) out.pop_back();
  return out;
}

template <class F>
SparseVec<F> axpy(const F& field, const SparseVec<F>& a, const typename F::value_type& c,
                  const SparseVec<F>& b) {
  SparseVec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto v = field.mul(c, b[j].second);
      if (!field.is_zero(v)) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      auto v = field.add(a[i].second, field.mul(c, b[j].second));
      if (!field.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
SparseVec<F> scale(const F& field, const SparseVec<F>& v, const typename F::value_type& c) {
  SparseVec<F> out;
  if (field.is_zero(c)) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, field.mul(c, x));
  return out;
}

template <class F>
typename F::value_type entry(const F& field, const SparseVec<F>& v, Index i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& e, Index k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return field.zero();
}

// ---------------------------------------------------------------- Matrix

template <class F>
Matrix<F>::Matrix(F field, Index rows, Index cols)
    : field_(field), rows_(rows), cols_(cols), row_data_(rows), col_data_(cols) {}

template <class F>
Matrix<F> Matrix<F>::from_rows(F field, Index rows, Index cols, std::vector<SparseVec<F>> row_data) {
  if (row_data.size() != rows) throw std::invalid_argument("row count mismatch");
  Matrix m(field, rows, cols);
  for (const auto& r : row_data)
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k].first >= cols) throw std::out_of_range("column index out of range");
      if (k > 0 && r[k - 1].first >= r[k].first) throw std::invalid_argument("row not sorted");
      if (field.is_zero(r[k].second)) throw std::invalid_argument("stored zero");
    }
  m.row_data_ = std::move(row_data);
  m.build_columns();
  return m;
}

template <class F>
Matrix<F> Matrix<F>::from_triplets(F field, Index rows, Index cols, std::vector<Triplet> triplets) {
  std::vector<std::vector<std::pair<Index, value_type>>> buckets(rows);
  for (auto& t : triplets) {
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("triplet index out of range");
    buckets[t.row].emplace_back(t.col, std::move(t.value));
  }
  std::vector<SparseVec<F>> data(rows);
  for (Index r = 0; r < rows; ++r) data[r] = compress(field, std::move(buckets[r]));
  Matrix m(field, rows, cols);
  m.row_data_ = std::move(data);
  m.build_columns();
  return m;
}

template <class F>
Matrix<F> Matrix<F>::from_dense(F field, const std::vector<std::vector<long long>>& entries) {
  Index rows = static_cast<Index>(entries.size());
  Index cols = rows ? static_cast<Index>(entries[0].size()) : 0;
  std::vector<Triplet> t;
  for (Index r = 0; r < rows; ++r) {
    if (entries[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (Index c = 0; c < cols; ++c)
      if (entries[r][c] != 0) t.push_back({r, c, field.from_int(entries[r][c])});
  }
  return from_triplets(field, rows, cols, std::move(t));
}

template <class F>
Matrix<F> Matrix<F>::identity(F field, Index n) {
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) t.push_back({i, i, field.one()});
  return from_triplets(field, n, n, std::move(t));
}

template <class F>
void Matrix<F>::build_columns() {
  col_data_.assign(cols_, {});
  for (Index r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_data_[r]) col_data_[c].emplace_back(r, v);
}

template <class F>
std::size_t Matrix<F>::nnz() const {
  std::size_t n = 0;
  for (const auto& r : row_data_) n += r.size();
  return n;
}

template <class F>
typename Matrix<F>::value_type Matrix<F>::at(Index r, Index c) const {
  return entry(field_, row_data_.at(r), c);
}

template <class F>
SparseVec<F> Matrix<F>::apply(const SparseVec<F>& x) const {
  std::vector<std::pair<Index, value_type>> terms;
  for (const auto& [c, xv] : x) {
    if (c >= cols_) throw std::out_of_range("vector longer than matrix domain");
    for (const auto& [r, mv] : col_data_[c]) terms.emplace_back(r, field_.mul(mv, xv));
  }
  return compress(field_, std::move(terms));
}

template <class F>
Matrix<F> Matrix<F>::transpose() const {
  Matrix t(field_, cols_, rows_);
  t.row_data_ = col_data_;
  t.col_data_ = row_data_;
  return t;
}

template <class F>
Matrix<F> Matrix<F>::multiply(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  std::vector<SparseVec<F>> data(rows_);
  for (Index r = 0; r < rows_; ++r) {
    std::vector<std::pair<Index, value_type>> terms;
    for (const auto& [k, a] : row_data_[r])
      for (const auto& [c, b] : rhs.row_data_[k]) terms.emplace_back(c, field_.mul(a, b));
    data[r] = compress(field_, std::move(terms));
  }
  return from_rows(field_, rows_, rhs.cols_, std::move(data));
}

template <class F>
Matrix<F> Matrix<F>::submatrix(const std::vector<bool>& keep_rows,
                               const std::vector<bool>& keep_cols) const {
  std::vector<Index> row_map(rows_, 0), col_map(cols_, 0);
  Index nr = 0, nc = 0;
  for (Index r = 0; r < rows_; ++r)
    if (keep_rows[r]) row_map[r] = nr++;
  for (Index c = 0; c < cols_; ++c)
    if (keep_cols[c]) col_map[c] = nc++;
  std::vector<SparseVec<F>> data(nr);
  for (Index r = 0; r < rows_; ++r) {
    if (!keep_rows[r]) continue;
    auto& out = data[row_map[r]];
    for (const auto& [c, v] : row_data_[r])
      if (keep_cols[c]) out.emplace_back(col_map[c], v);
  }
  return from_rows(field_, nr, nc, std::move(data));
}

template <class F>
bool Matrix<F>::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (Index r = 0; r < rows_; ++r) {
    const auto& a = row_data_[r];
    const auto& b = o.row_data_[r];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].first != b[k].first || !field_.equal(a[k].second, b[k].second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Echelon

template <class F>
Echelon<F>::Echelon(F field, Index ambient)
    : field_(field), ambient_(ambient), pivot_row_(ambient, -1), acc_(ambient, field.zero()),
      touched_(ambient, 0) {}

template <class F>
SparseVec<F> Echelon<F>::reduce(const SparseVec<F>& v) {
  std::priority_queue<Index, std::vector<Index>, std::greater<>> heap;
  std::vector<Index> touched_list;
  for (const auto& [i, x] : v) {
    if (i >= ambient_) throw std::out_of_range("vector exceeds ambient dimension");
    acc_[i] = x;
    touched_[i] = 1;
    touched_list.push_back(i);
    heap.push(i);
  }
  SparseVec<F> out;
  // Rows have their pivot as leading entry, so subtracting one only touches
  // larger indices: every index is popped exactly once.
  while (!heap.empty()) {
    Index j = heap.top();
    heap.pop();
    if (field_.is_zero(acc_[j])) continue;
    std::int64_t r = pivot_row_[j];
    if (r < 0) {
      out.emplace_back(j, acc_[j]);
      continue;
    }
    value_type c = acc_[j];
    for (const auto& [k, x] : rows_[r]) {
      if (k == j) {
        acc_[j] = field_.zero();
        continue;
      }
      field_.sub_mul(acc_[k], c, x);
      if (!touched_[k]) {
        touched_[k] = 1;
        touched_list.push_back(k);
        heap.push(k);
      }
    }
  }
  for (Index i : touched_list) {
    acc_[i] = field_.zero();
    touched_[i] = 0;
  }
  return out;
}

template <class F>
bool Echelon<F>::insert(const SparseVec<F>& v) {
  SparseVec<F> r = reduce(v);
  if (r.empty()) return false;
  value_type inv = field_.inv(r.front().second);
  for (auto& e : r) e.second = field_.mul(e.second, inv);
  pivot_row_[r.front().first] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

template <class F>
std::vector<SparseVec<F>> Echelon<F>::canonical_basis() const {
  std::vector<SparseVec<F>> rows = rows_;
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
  std::vector<std::int64_t> where(ambient_, -1);
  for (std::size_t i = 0; i < rows.size(); ++i) where[rows[i].front().first] = static_cast<std::int64_t>(i);
  // Back-substitute from the largest pivot down; a fully reduced row has
  // zeros at every other pivot, so the coefficients are read off the
  // unmodified row.
  for (std::size_t ii = rows.size(); ii-- > 0;) {
    const auto& row = rows[ii];
    std::vector<std::pair<Index, value_type>> terms(row.begin(), row.end());
    bool changed = false;
    for (std::size_t k = 1; k < row.size(); ++k) {
      std::int64_t j = where[row[k].first];
      if (j < 0) continue;
      changed = true;
      value_type c = field_.neg(row[k].second);
      for (const auto& [idx, x] : rows[j]) terms.emplace_back(idx, field_.mul(c, x));
    }
    if (changed) rows[ii] = compress(field_, std::move(terms));
  }
  return rows;
}

// ---------------------------------------------------------------- Subspace

template <class F>
Subspace<F>::Subspace(F field, Index ambient) : field_(field), ambient_(ambient) {}

template <class F>
Subspace<F> Subspace<F>::span(F field, Index ambient, const std::vector<SparseVec<F>>& vectors) {
  Echelon<F> ech(field, ambient);
  for (const auto& v : vectors) ech.insert(v);
  return from_canonical(field, ambient, ech.canonical_basis());
}

template <class F>
Subspace<F> Subspace<F>::full(F field, Index ambient) {
  std::vector<SparseVec<F>> basis(ambient);
  for (Index i = 0; i < ambient; ++i) basis[i] = {{i, field.one()}};
  return from_canonical(field, ambient, std::move(basis));
}

template <class F>
Subspace<F> Subspace<F>::coordinate(F field, Index ambient, const std::vector<Index>& coords) {
  std::vector<Index> c = coords;
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::vector<SparseVec<F>> basis;
  basis.reserve(c.size());
  for (Index i : c) {
    if (i >= ambient) throw std::out_of_range("coordinate outside ambient space");
    basis.push_back({{i, field.one()}});
  }
  return from_canonical(field, ambient, std::move(basis));
}

template <class F>
Subspace<F> Subspace<F>::from_canonical(F field, Index ambient, std::vector<SparseVec<F>> basis) {
  Subspace s(field, ambient);
  s.basis_ = std::move(basis);
  s.pivots_.reserve(s.basis_.size());
  for (const auto& b : s.basis_) s.pivots_.push_back(b.front().first);
  return s;
}

template <class F>
Matrix<F> Subspace<F>::basis_matrix() const {
  std::vector<typename Matrix<F>::Triplet> t;
  for (Index c = 0; c < basis_.size(); ++c)
    for (const auto& [r, v] : basis_[c]) t.push_back({r, c, v});
  return Matrix<F>::from_triplets(field_, ambient_, static_cast<Index>(basis_.size()), std::move(t));
}

template <class F>
SparseVec<F> Subspace<F>::reduce(const SparseVec<F>& v) const {
  std::vector<std::pair<Index, value_type>> terms(v.begin(), v.end());
  bool changed = false;
  for (const auto& [i, x] : v) {
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), i);
    if (it == pivots_.end() || *it != i) continue;
    changed = true;
    value_type c = field_.neg(x);
    for (const auto& [k, y] : basis_[it - pivots_.begin()]) terms.emplace_back(k, field_.mul(c, y));
  }
  if (!changed) return v;
  return compress(field_, std::move(terms));
}

template <class F>
bool Subspace<F>::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

template <class F>
bool Subspace<F>::operator==(const Subspace& o) const {
  if (ambient_ != o.ambient_ || basis_.size() != o.basis_.size()) return false;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto& a = basis_[i];
    const auto& b = o.basis_[i];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].first != b[k].first || !field_.equal(a[k].second, b[k].second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- operations

template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
  Echelon<F> ech(m.field(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  auto basis = ech.canonical_basis();
  std::vector<Index> pivots;
  for (const auto& b : basis) pivots.push_back(b.front().first);
  basis.resize(m.rows());
  return {Matrix<F>::from_rows(m.field(), m.rows(), m.cols(), std::move(basis)), std::move(pivots)};
}

namespace {

template <class F>
std::size_t sparse_rank(const Matrix<F>& m) {
  // Eliminate along the shorter side.
  if (m.rows() <= m.cols()) {
    Echelon<F> ech(m.field(), m.cols());
    for (Index r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
    return ech.rank();
  }
  Echelon<F> ech(m.field(), m.rows());
  for (Index c = 0; c < m.cols(); ++c) ech.insert(m.col(c));
  return ech.rank();
}

}  // namespace

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return sparse_rank(m);
}

// Over a prime field, matrices that are dense enough go through the vector
// kernels instead of the sparse heap elimination.
template <>
std::size_t rank(const Matrix<PrimeField>& m) {
  const std::size_t area = static_cast<std::size_t>(m.rows()) * m.cols();
  const bool dense = area > 0 && area <= (std::size_t{1} << 22) && m.nnz() * 8 >= area;
  if (!dense) return sparse_rank(m);
  bool by_rows = m.rows() <= m.cols();
  Index count = by_rows ? m.rows() : m.cols();
  Index width = by_rows ? m.cols() : m.rows();
  std::vector<std::vector<std::uint32_t>> rows(count, std::vector<std::uint32_t>(width, 0));
  for (Index i = 0; i < count; ++i)
    for (const auto& [k, v] : by_rows ? m.row(i) : m.col(i)) rows[i][k] = v;
  return dense_rank_mod_p(rows, m.field().modulus());
}

std::size_t dense_rank_mod_p(std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const std::size_t width = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    auto& prow = rows[rank];
    std::uint64_t base = prow[col], inv = 1, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    simd::scale_mod(prow.data() + col, static_cast<std::uint32_t>(inv), p, width - col);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      std::uint32_t x = rows[r][col];
      if (x == 0) continue;
      simd::axpy_mod(rows[r].data() + col, prow.data() + col, p - x, p, width - col);
    }
    ++rank;
  }
  return rank;
}

template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& field = m.field();
  Echelon<F> ech(field, m.cols());
  for (Index r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  auto basis = ech.canonical_basis();
  std::vector<char> is_pivot(m.cols(), 0);
  for (const auto& b : basis) is_pivot[b.front().first] = 1;
  // Column f of the reduced form, as (pivot, coefficient) pairs.
  std::vector<std::vector<std::pair<Index, typename F::value_type>>> col_terms(m.cols());
  for (const auto& b : basis) {
    Index p = b.front().first;
    for (std::size_t k = 1; k < b.size(); ++k) col_terms[b[k].first].emplace_back(p, b[k].second);
  }
  std::vector<SparseVec<F>> vectors;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::pair<Index, typename F::value_type>> terms;
    terms.emplace_back(f, field.one());
    for (const auto& [p, x] : col_terms[f]) terms.emplace_back(p, field.neg(x));
    vectors.push_back(compress(field, std::move(terms)));
  }
  return Subspace<F>::span(field, m.cols(), vectors);
}

template <class F>
Subspace<F> image(const Matrix<F>& m) {
  std::vector<SparseVec<F>> cols;
  cols.reserve(m.cols());
  for (Index c = 0; c < m.cols(); ++c)
    if (!m.col(c).empty()) cols.push_back(m.col(c));
  return Subspace<F>::span(m.field(), m.rows(), cols);
}

template <class F>
Subspace<F> map_subspace(const Matrix<F>& m, const Subspace<F>& u) {
  if (u.ambient_dim() != m.cols()) throw std::invalid_argument("subspace not in matrix domain");
  std::vector<SparseVec<F>> images;
  images.reserve(u.dim());
  for (const auto& b : u.basis()) images.push_back(m.apply(b));
  return Subspace<F>::span(m.field(), m.rows(), images);
}

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& u, const Subspace<F>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  if (v.dim() == 0) return u;
  if (u.dim() == 0) return v;
  Echelon<F> ech(u.field(), u.ambient_dim());
  for (const auto& b : u.basis()) ech.insert(b);
  for (const auto& b : v.basis()) ech.insert(b);
  return Subspace<F>::from_canonical(u.field(), u.ambient_dim(), ech.canonical_basis());
}

template <class F>
Subspace<F> subspace_intersect(const Subspace<F>& u, const Subspace<F>& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  const F& field = u.field();
  const Index n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace<F>(field, n);
  // Zassenhaus: rows (u|u) and (v|0); rows whose left half vanishes after
  // elimination carry a basis of the intersection in their right half.
  Echelon<F> ech(field, 2 * n);
  for (const auto& b : u.basis()) {
    SparseVec<F> row = b;
    for (const auto& [i, x] : b) row.emplace_back(i + n, x);
    ech.insert(row);
  }
  for (const auto& b : v.basis()) ech.insert(b);
  std::vector<SparseVec<F>> inter;
  for (const auto& row : ech.canonical_basis()) {
    if (row.front().first < n) continue;
    SparseVec<F> w;
    for (const auto& [i, x] : row) w.emplace_back(i - n, x);
    inter.push_back(std::move(w));
  }
  return Subspace<F>::span(field, n, inter);
}

template <class F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& v) {
  if (v.ambient_dim() != m.rows()) throw std::invalid_argument("subspace not in matrix codomain");
  // Compose m with the projection onto the coordinates v has no pivot at;
  // the kernel of that composite is the preimage.
  std::vector<std::int64_t> slot(m.rows(), -1);
  Index q = 0;
  {
    std::vector<char> piv(m.rows(), 0);
    for (Index p : v.pivots()) piv[p] = 1;
    for (Index i = 0; i < m.rows(); ++i)
      if (!piv[i]) slot[i] = q++;
  }
  std::vector<typename Matrix<F>::Triplet> t;
  for (Index c = 0; c < m.cols(); ++c)
    for (const auto& [i, x] : v.reduce(m.col(c))) t.push_back({static_cast<Index>(slot[i]), c, x});
  return kernel(Matrix<F>::from_triplets(m.field(), q, m.cols(), std::move(t)));
}

template <class F>
std::size_t quotient_dim(const Subspace<F>& u, const Subspace<F>& v) {
  if (!u.contains(v)) throw std::logic_error("quotient_dim: denominator is not a subspace of numerator");
  return u.dim() - v.dim();
}

template <class F>
QuotientBasis<F>::QuotientBasis(const Subspace<F>& numerator, const Subspace<F>& denominator)
    : numerator_(numerator), denominator_(denominator) {
  if (!numerator.contains(denominator))
    throw std::logic_error("quotient: denominator is not a subspace of numerator");
  std::vector<SparseVec<F>> reduced;
  for (const auto& b : numerator.basis()) {
    auto r = denominator.reduce(b);
    if (!r.empty()) reduced.push_back(std::move(r));
  }
  lifts_ = Subspace<F>::span(numerator.field(), numerator.ambient_dim(), reduced);
}

template <class F>
std::optional<SparseVec<F>> QuotientBasis<F>::sparse_coordinates(const SparseVec<F>& v) const {
  SparseVec<F> r = denominator_.reduce(v);
  SparseVec<F> coords;
  const auto& piv = lifts_.pivots();
  for (const auto& [i, x] : r) {
    auto it = std::lower_bound(piv.begin(), piv.end(), i);
    if (it != piv.end() && *it == i) coords.emplace_back(static_cast<Index>(it - piv.begin()), x);
  }
  if (!lifts_.reduce(r).empty()) return std::nullopt;
  return coords;
}

template <class F>
std::optional<std::vector<typename QuotientBasis<F>::value_type>> QuotientBasis<F>::coordinates(
    const SparseVec<F>& v) const {
  auto sparse = sparse_coordinates(v);
  if (!sparse) return std::nullopt;
  std::vector<value_type> coords(lifts_.dim(), numerator_.field().zero());
  for (auto& [k, x] : *sparse) coords[k] = std::move(x);
  return coords;
}

#define TRIHOCH_INSTANTIATE_LINALG(F)                                                     \
  template SparseVec<F> compress(const F&, std::vector<std::pair<Index, F::value_type>>); \
  template SparseVec<F> axpy(const F&, const SparseVec<F>&, const F::value_type&,          \
                             const SparseVec<F>&);                                       \
  template SparseVec<F> scale(const F&, const SparseVec<F>&, const F::value_type&);        \
  template F::value_type entry(const F&, const SparseVec<F>&, Index);                     \
  template class Matrix<F>;                                                               \
  template class Echelon<F>;                                                              \
  template class Subspace<F>;                                                             \
  template class QuotientBasis<F>;                                                        \
  template RrefResult<F> rref(const Matrix<F>&);                                          \
  template Subspace<F> kernel(const Matrix<F>&);                                          \
  template Subspace<F> image(const Matrix<F>&);                                           \
  template Subspace<F> map_subspace(const Matrix<F>&, const Subspace<F>&);                \
  template Subspace<F> subspace_sum(const Subspace<F>&, const Subspace<F>&);              \
  template Subspace<F> subspace_intersect(const Subspace<F>&, const Subspace<F>&);        \
  template Subspace<F> preimage(const Matrix<F>&, const Subspace<F>&);                    \
  template std::size_t quotient_dim(const Subspace<F>&, const Subspace<F>&);

TRIHOCH_INSTANTIATE_LINALG(Rationals)
TRIHOCH_INSTANTIATE_LINALG(PrimeField)
template std::size_t rank(const Matrix<Rationals>&);

}  // namespace trihoch
