#pragma once

// Cochain complexes computing Hochschild cohomology and its building blocks:
// the relative complex over R = k x ... x k, the classical bar complex used
// as an oracle, the two-sided Ext complex and the Tor chain complex.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trihoch/algebra.hpp"
#include "trihoch/trajectory.hpp"

namespace trihoch {

/// Degrees 0..cutoff+1 with differentials delta[l] : C^l -> C^{l+1} for l <= cutoff.
template <class F>
struct CochainWindow {
  F field{};
  Index cutoff = 0;
  std::vector<Index> dims;
  std::vector<Matrix<F>> delta;
  /// Filtration tag of every basis vector, per degree; empty when unfiltered.
  std::vector<std::vector<Index>> tags;

  bool filtered() const { return !tags.empty(); }
};

/// One summand Hom_k(M_tau, _{target}X_{source}) of C^l.  Its basis vector
/// u*x_dim + x sends the tensor basis vector u to the X basis vector x.
struct Cell {
  Trajectory tau;
  Index offset = 0;
  TensorIndex tensor;
  Index x_dim = 0;
  Index x_offset = 0;  // offset of the coefficient block inside X

  Index dim() const { return tensor.size * x_dim; }
};

template <class F>
struct RelativeComplex {
  CochainWindow<F> window;
  Index n = 0;
  std::vector<std::vector<Cell>> cells;  // per degree
  std::vector<std::map<std::vector<Index>, Index>> lookup;

  /// Cell of trajectory w in degree w.size()-1, or nullptr.
  const Cell* find(const std::vector<Index>& w) const;
};

/// Degrees 0..L+1 of Hom_{R-R}(T^{(x)_R l}, X), tagged by trajectory length.
template <class F>
RelativeComplex<F> build_relative_complex(const TriangularAlgebra<F>& t, const TBimodule<F>& x, Index L);

constexpr std::size_t kDefaultOracleBudget = 10'000'000;

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t required, std::size_t budget);
  std::size_t required;
  std::size_t budget;
};

/// Upper bound on the matrix entries of a bar window: sum over l <= L of
/// rows(l+1) * (2 dim X + l dim A).
std::size_t bar_budget_estimate(Index alg_dim, Index x_dim, Index L);

/// Hom_k(A^{(x)_k l}, X) with the Hochschild coboundary; throws BudgetExceeded.
template <class F>
CochainWindow<F> build_bar_complex(const FiniteDimAlgebra<F>& a, const Bimodule<F>& x, Index L,
                                   std::size_t budget = kDefaultOracleBudget);

template <class F>
CochainWindow<F> build_bar_complex(const TriangularAlgebra<F>& t, const TBimodule<F>& x, Index L,
                                   std::size_t budget = kDefaultOracleBudget);

/// Total complex of Hom_k(B^{(x)i} (x) N (x) A^{(x)j}, Y), i+j = l, for N and Y
/// two B-A bimodules; its cohomology is Ext_{B-A}(N, Y).
template <class F>
CochainWindow<F> build_ext_complex(const Bimodule<F>& n, const Bimodule<F>& y, Index L);

/// Degrees 0..L+1 with boundary[q] : C_q -> C_{q-1} for 1 <= q <= L+1.
template <class F>
struct ChainWindow {
  F field{};
  Index cutoff = 0;
  std::vector<Index> dims;
  std::vector<Matrix<F>> boundary;  // boundary[0] is an empty 0 x dims[0] map
};

/// m2 (x) mid^{(x)q} (x) m1 with
/// d(y,b_1..b_q,x) = -(yb_1,..) + sum (-1)^{i+1}(..b_ib_{i+1}..) + (-1)^{q+1}(..,b_qx).
template <class F>
ChainWindow<F> build_tor_complex(const Bimodule<F>& m2, const Bimodule<F>& m1, const FiniteDimAlgebra<F>& mid,
                                 Index L);

/// dim H^l for l = 0..cutoff+1; the top degree lacks its outgoing
/// differential and is marked unreliable.
struct GradedDims {
  std::vector<std::size_t> value;
  std::vector<bool> reliable;

  std::vector<std::size_t> reliable_values() const;
};

template <class F>
GradedDims cohomology_dims(const CochainWindow<F>& w);

/// dim H_q for q = 0..cutoff.
template <class F>
std::vector<std::size_t> homology_dims(const ChainWindow<F>& w);

/// First l with delta[l+1] * delta[l] != 0.
template <class F>
std::optional<Index> square_zero_failure(const CochainWindow<F>& w);

/// First degree where some basis vector of tag t has a coboundary touching a
/// tag below t.
template <class F>
std::optional<Index> filtration_failure(const CochainWindow<F>& w);

}  // namespace trihoch
