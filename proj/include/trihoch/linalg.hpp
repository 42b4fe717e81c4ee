#pragma once

// Exact sparse linear algebra over a field F (Rationals or PrimeField):
// matrices, echelon forms, and the subspace calculus (kernel, image, sum,
// intersection, preimage, quotients) every dimension count rests on.
//
// Vectors are sparse: sorted (index, value) pairs with no stored zeros.
// Subspaces keep a canonical basis, the fully reduced row-echelon form with
// leading pivots normalized to one, so equal subspaces compare equal.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trihoch/field.hpp"

namespace trihoch {

using Index = std::uint32_t;

template <class F>
using SparseVec = std::vector<std::pair<Index, typename F::value_type>>;

/// Sorts, merges duplicate indices and drops zeros.
template <class F>
SparseVec<F> compress(const F& field, std::vector<std::pair<Index, typename F::value_type>> terms);

/// a + c * b
template <class F>
SparseVec<F> axpy(const F& field, const SparseVec<F>& a, const typename F::value_type& c,
                  const SparseVec<F>& b);

template <class F>
SparseVec<F> scale(const F& field, const SparseVec<F>& v, const typename F::value_type& c);

template <class F>
typename F::value_type entry(const F& field, const SparseVec<F>& v, Index i);

template <class F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  struct Triplet {
    Index row;
    Index col;
    value_type value;
  };

  Matrix() = default;
  Matrix(F field, Index rows, Index cols);

  /// Rows must already be in compressed form with indices below `cols`.
  static Matrix from_rows(F field, Index rows, Index cols, std::vector<SparseVec<F>> row_data);
  static Matrix from_triplets(F field, Index rows, Index cols, std::vector<Triplet> triplets);
  static Matrix from_dense(F field, const std::vector<std::vector<long long>>& entries);
  static Matrix identity(F field, Index n);

  const F& field() const { return field_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t nnz() const;
  const SparseVec<F>& row(Index r) const { return row_data_[r]; }
  const SparseVec<F>& col(Index c) const { return col_data_[c]; }
  value_type at(Index r, Index c) const;
  bool is_zero() const { return nnz() == 0; }

  /// this * x, for x indexed by columns.
  SparseVec<F> apply(const SparseVec<F>& x) const;
  Matrix transpose() const;
  Matrix multiply(const Matrix& rhs) const;
  /// Keeps the rows and columns whose flags are set, renumbering densely.
  Matrix submatrix(const std::vector<bool>& keep_rows, const std::vector<bool>& keep_cols) const;

  bool operator==(const Matrix& o) const;

 private:
  void build_columns();

  F field_{};
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<SparseVec<F>> row_data_;
  std::vector<SparseVec<F>> col_data_;
};

/// Incremental row-echelon form.  Rows are stored semi-reduced with leading
/// pivot equal to one; canonical_basis() back-substitutes to the fully
/// reduced form.  Not thread-safe (keeps a dense workspace).
template <class F>
class Echelon {
 public:
  using value_type = typename F::value_type;

  Echelon(F field, Index ambient);

  Index ambient() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }

  /// Remainder of v modulo the current span; has no entry at any pivot.
  SparseVec<F> reduce(const SparseVec<F>& v);
  /// Adds v to the span; returns false if it was already dependent.
  bool insert(const SparseVec<F>& v);
  std::vector<SparseVec<F>> canonical_basis() const;

 private:
  F field_;
  Index ambient_;
  std::vector<SparseVec<F>> rows_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<value_type> acc_;
  std::vector<char> touched_;
};

template <class F>
class Subspace {
 public:
  using value_type = typename F::value_type;

  Subspace() = default;
  /// The zero subspace.
  Subspace(F field, Index ambient);

  static Subspace span(F field, Index ambient, const std::vector<SparseVec<F>>& vectors);
  static Subspace full(F field, Index ambient);
  static Subspace coordinate(F field, Index ambient, const std::vector<Index>& coords);
  /// Trusts that `basis` is already canonical (sorted, fully reduced).
  static Subspace from_canonical(F field, Index ambient, std::vector<SparseVec<F>> basis);

  const F& field() const { return field_; }
  Index ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseVec<F>>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  /// Columns are the canonical basis vectors.
  Matrix<F> basis_matrix() const;

  /// v minus its component along the basis; zero iff v lies in the subspace.
  SparseVec<F> reduce(const SparseVec<F>& v) const;
  bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  F field_{};
  Index ambient_ = 0;
  std::vector<SparseVec<F>> basis_;
  std::vector<Index> pivots_;
};

template <class F>
struct RrefResult {
  Matrix<F> reduced;
  std::vector<Index> pivots;
};

template <class F>
RrefResult<F> rref(const Matrix<F>& m);

template <class F>
std::size_t rank(const Matrix<F>& m);

template <class F>
Subspace<F> kernel(const Matrix<F>& m);

template <class F>
Subspace<F> image(const Matrix<F>& m);

/// m applied to every vector of u.
template <class F>
Subspace<F> map_subspace(const Matrix<F>& m, const Subspace<F>& u);

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& u, const Subspace<F>& v);

template <class F>
Subspace<F> subspace_intersect(const Subspace<F>& u, const Subspace<F>& v);

/// { x : m x in v }.
template <class F>
Subspace<F> preimage(const Matrix<F>& m, const Subspace<F>& v);

/// dim(u) - dim(v); rejects v not contained in u.
template <class F>
std::size_t quotient_dim(const Subspace<F>& u, const Subspace<F>& v);

/// A basis of u / v made of canonical lifts, with a coordinate map.
///
/// The lifts are the canonical reduced basis of (u reduced modulo v); their
/// pivots avoid the pivots of v, so coordinates of any element of u are read
/// off directly after reducing modulo v.
template <class F>
class QuotientBasis {
 public:
  using value_type = typename F::value_type;

  QuotientBasis() = default;
  QuotientBasis(const Subspace<F>& numerator, const Subspace<F>& denominator);

  std::size_t dim() const { return lifts_.dim(); }
  const std::vector<SparseVec<F>>& lifts() const { return lifts_.basis(); }
  const Subspace<F>& numerator() const { return numerator_; }
  const Subspace<F>& denominator() const { return denominator_; }

  /// Coordinates of the class of v, or nullopt if v is not in the numerator.
  std::optional<std::vector<value_type>> coordinates(const SparseVec<F>& v) const;
  /// The same, indexed by lift, as a sparse vector.
  std::optional<SparseVec<F>> sparse_coordinates(const SparseVec<F>& v) const;

 private:
  Subspace<F> numerator_;
  Subspace<F> denominator_;
  Subspace<F> lifts_;
};

/// Dense row reduction over a prime field on top of the vector kernels in
/// trihoch/simd.  Returns the rank; `rows` is destroyed.
std::size_t dense_rank_mod_p(std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t p);

}  // namespace trihoch
