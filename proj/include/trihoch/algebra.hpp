#pragma once

// Finite-dimensional algebras, bimodules and triangular algebras given by
// structure constants.
//
// Levels are numbered 0..n-1 internally.  Block (j,i) with j >= i is the
// algebra A_i when j == i and the A_j-A_i bimodule _jM_i when j > i; an
// element of block (l,j) times an element of block (j,i) lies in block (l,i).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "trihoch/linalg.hpp"

namespace trihoch {

template <class F>
struct FiniteDimAlgebra {
  using value_type = typename F::value_type;

  F field{};
  Index dim = 0;
  std::vector<SparseVec<F>> table;  // table[i*dim+j] = b_i b_j
  SparseVec<F> unit;

  FiniteDimAlgebra() = default;
  FiniteDimAlgebra(F f, Index d) : field(f), dim(d), table(static_cast<std::size_t>(d) * d) {}

  const SparseVec<F>& basis_product(Index i, Index j) const { return table[i * dim + j]; }
  SparseVec<F> multiply(const SparseVec<F>& a, const SparseVec<F>& b) const;

  static FiniteDimAlgebra ground(F f);
  /// k x ... x k, basis the primitive idempotents.
  static FiniteDimAlgebra diagonal(F f, Index d);
  /// k[x]/(x^d), basis 1, x, ..., x^{d-1}.
  static FiniteDimAlgebra truncated_polynomial(F f, Index d);
  /// d x d matrices, basis E_{rc} at index r*d+c.
  static FiniteDimAlgebra matrices(F f, Index d);
  /// Upper triangular d x d matrices, basis E_{rc} (r <= c) in row-major order.
  static FiniteDimAlgebra upper_triangular(F f, Index d);
};

template <class F>
using AlgebraPtr = std::shared_ptr<const FiniteDimAlgebra<F>>;

template <class F>
std::vector<std::string> check_algebra(const FiniteDimAlgebra<F>& a, const std::string& name);

template <class F>
Subspace<F> center(const FiniteDimAlgebra<F>& a);

/// A x B with basis the disjoint union (A first).
template <class F>
FiniteDimAlgebra<F> product_algebra(const std::vector<AlgebraPtr<F>>& factors);

/// True iff a separability idempotent exists in A (x) A^op.
template <class F>
bool is_separable(const FiniteDimAlgebra<F>& a);

template <class F>
struct Bimodule {
  using value_type = typename F::value_type;

  AlgebraPtr<F> left;
  AlgebraPtr<F> right;
  Index dim = 0;
  std::vector<SparseVec<F>> lact;  // lact[a*dim+m] = b_a . m
  std::vector<SparseVec<F>> ract;  // ract[m*right->dim+a] = m . b_a

  Bimodule() = default;
  Bimodule(AlgebraPtr<F> l, AlgebraPtr<F> r, Index d);

  const SparseVec<F>& left_basis(Index a, Index m) const { return lact[a * dim + m]; }
  const SparseVec<F>& right_basis(Index m, Index a) const { return ract[m * right->dim + a]; }
  SparseVec<F> act_left(const SparseVec<F>& a, const SparseVec<F>& m) const;
  SparseVec<F> act_right(const SparseVec<F>& m, const SparseVec<F>& a) const;

  static Bimodule zero(AlgebraPtr<F> l, AlgebraPtr<F> r) { return Bimodule(l, r, 0); }
  static Bimodule regular(AlgebraPtr<F> a);
};

template <class F>
std::vector<std::string> check_bimodule(const Bimodule<F>& m, const std::string& name);

/// A k-linear map M (x)_k N -> P, basis of the source indexed y*n_dim + x.
template <class F>
struct BimoduleMap {
  Index left_dim = 0;
  Index right_dim = 0;
  Index target_dim = 0;
  std::vector<SparseVec<F>> images;

  BimoduleMap() = default;
  BimoduleMap(Index l, Index r, Index t)
      : left_dim(l), right_dim(r), target_dim(t), images(static_cast<std::size_t>(l) * r) {}
  const SparseVec<F>& image(Index y, Index x) const { return images[y * right_dim + x]; }
  bool is_zero() const;
};

template <class F>
class TriangularAlgebra {
 public:
  using value_type = typename F::value_type;

  TriangularAlgebra() = default;
  /// Diagonal algebras; all bimodules start at zero and all mu at zero.
  TriangularAlgebra(F field, std::vector<AlgebraPtr<F>> diag);

  void set_module(Index j, Index i, Bimodule<F> m);
  void set_mu(Index l, Index j, Index i, BimoduleMap<F> mu);

  const F& field() const { return field_; }
  Index n() const { return n_; }
  const FiniteDimAlgebra<F>& algebra(Index i) const { return *diag_[i]; }
  const AlgebraPtr<F>& algebra_ptr(Index i) const { return diag_[i]; }
  const Bimodule<F>& module(Index j, Index i) const { return mods_[j * n_ + i]; }
  /// Zero map if never set.
  const BimoduleMap<F>& mu(Index l, Index j, Index i) const { return mus_[(l * n_ + j) * n_ + i]; }

  /// dim A_i for j == i, dim _jM_i for j > i, 0 above the diagonal.
  Index block_dim(Index j, Index i) const;
  /// y in block (l,j) times x in block (j,i), in block (l,i) coordinates.
  const SparseVec<F>& block_product(Index l, Index j, Index i, Index y, Index x) const;

  Index total_dim() const { return offsets_.back(); }
  /// Offset of block (j,i) in the total basis; blocks are ordered by (j,i).
  Index block_offset(Index j, Index i) const { return offsets_[j * n_ + i]; }
  /// Block (j,i) containing total basis index t.
  std::pair<Index, Index> block_of(Index t) const;
  /// Blocks (j,i) with j > i and dim 0.
  std::vector<std::pair<Index, Index>> zero_blocks() const;

 private:
  void rebuild_offsets();

  F field_{};
  Index n_ = 0;
  std::vector<AlgebraPtr<F>> diag_;
  std::vector<Bimodule<F>> mods_;
  std::vector<BimoduleMap<F>> mus_;
  std::vector<Index> offsets_{0};
  std::vector<Index> block_of_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  /// Informational remarks (zero blocks), not violations.
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

template <class F>
ValidationReport validate_triangular(const TriangularAlgebra<F>& t);

/// The total algebra T, unit the sum of the e_i.
template <class F>
FiniteDimAlgebra<F> assemble_total(const TriangularAlgebra<F>& t);

template <class F>
struct TensorProduct {
  Bimodule<F> module;
  /// rows = dim of the quotient, cols = dim m * dim n (index y*dim n + x).
  Matrix<F> projection;
  /// Source index lifting each quotient basis vector.
  std::vector<Index> representatives;
};

/// m (x)_mid n, for m a right and n a left module over mid.
template <class F>
TensorProduct<F> tensor_over(const FiniteDimAlgebra<F>& mid, const Bimodule<F>& m,
                             const Bimodule<F>& n);

/// The tensorial triangular algebra with the given adjacent bimodules
/// adjacent[i] = _{i+1}M_i.
template <class F>
TriangularAlgebra<F> build_tensorial(F field, const std::vector<AlgebraPtr<F>>& diag,
                                     const std::vector<Bimodule<F>>& adjacent);

/// Whether every mu_{l,j,i} induces an isomorphism
/// _lM_j (x)_{A_j} _jM_i -> _lM_i.
template <class F>
bool is_tensorial(const TriangularAlgebra<F>& t);

/// M = (+) _{i+1}M_i as a bimodule over A = A_1 x ... x A_n.
template <class F>
Bimodule<F> adjacent_sum(const TriangularAlgebra<F>& t, AlgebraPtr<F> product);

/// A bimodule X over the total algebra whose basis is adapted to the blocks
/// e_j X e_i.  Blocks (j,i) are laid out in the order of j*n+i.
template <class F>
struct TBimodule {
  Index n = 0;
  Index dim = 0;
  Index t_dim = 0;
  std::vector<Index> offsets;  // n*n+1 entries
  std::vector<SparseVec<F>> lact;  // lact[t*dim+x]
  std::vector<SparseVec<F>> ract;  // ract[x*t_dim+t]

  Index block_dim(Index j, Index i) const { return offsets[j * n + i + 1] - offsets[j * n + i]; }
  Index block_offset(Index j, Index i) const { return offsets[j * n + i]; }
  const SparseVec<F>& left_basis(Index t, Index x) const { return lact[t * dim + x]; }
  const SparseVec<F>& right_basis(Index x, Index t) const { return ract[x * t_dim + t]; }

  static TBimodule regular(const TriangularAlgebra<F>& t);
  /// Hom_k(T, k) with (a f b)(u) = f(b u a).
  static TBimodule dual(const TriangularAlgebra<F>& t);
};

template <class F>
std::vector<std::string> check_tbimodule(const TriangularAlgebra<F>& t, const TBimodule<F>& x);

/// X viewed as a bimodule over the total algebra.
template <class F>
Bimodule<F> as_bimodule(const TBimodule<F>& x, AlgebraPtr<F> total);

/// The A_j-A_i bimodule e_j X e_i.
template <class F>
Bimodule<F> restrict_block(const TriangularAlgebra<F>& t, const TBimodule<F>& x, Index j, Index i);

}  // namespace trihoch
