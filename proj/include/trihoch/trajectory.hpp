#pragma once

// l-trajectories of the linear level quiver 0 -> 1 -> ... -> n-1.
//
// A trajectory of degree l is stored as its vertex sequence
// w[0] >= w[1] >= ... >= w[l] in tensor order: factor m (1-based) of
// M_tau lies in block (w[m-1], w[m]) of T, a stay when the two agree and a
// jump otherwise.  The target is w[0], the source w[l].

#include <vector>

#include "trihoch/algebra.hpp"

namespace trihoch {

struct Trajectory {
  std::vector<Index> w;

  Index degree() const { return static_cast<Index>(w.size()) - 1; }
  Index target() const { return w.front(); }
  Index source() const { return w.back(); }
  /// Number of jumps.
  Index length() const;
  /// Visited vertices k_1 < ... < k_{t+1}.
  std::vector<Index> visited() const;
  /// Stays at each visited vertex, p_1 (at the source) first.
  std::vector<Index> profile() const;
  bool is_jump(Index m) const { return w[m - 1] != w[m]; }

  bool operator==(const Trajectory& o) const { return w == o.w; }
  bool operator<(const Trajectory& o) const { return w < o.w; }
};

/// Every degree-l trajectory over n vertices, ordered by source, then by the
/// moves read from the source upward.  l = 0 gives the n trivial ones.
std::vector<Trajectory> enumerate_trajectories(Index n, Index l);

/// Mixed-radix indexing of a tensor of factors, leftmost most significant.
struct TensorIndex {
  std::vector<Index> dims;
  std::vector<Index> strides;
  Index size = 1;

  TensorIndex() = default;
  explicit TensorIndex(std::vector<Index> d);
  Index digit(Index flat, std::size_t m) const { return (flat / strides[m]) % dims[m]; }
  std::vector<Index> decode(Index flat) const;
  Index encode(const std::vector<Index>& digits) const;
};

/// Factor dimensions of M_tau, in tensor order.
template <class F>
std::vector<Index> factor_dims(const TriangularAlgebra<F>& t, const Trajectory& tau);

/// dim M_tau.
template <class F>
Index module_dim(const TriangularAlgebra<F>& t, const Trajectory& tau);

}  // namespace trihoch
