#include "trihoch/trajectory.hpp"

#include <algorithm>

namespace trihoch {

Index Trajectory::length() const {
  Index c = 0;
  for (Index m = 1; m < w.size(); ++m) c += w[m - 1] != w[m];
  return c;
}

std::vector<Index> Trajectory::visited() const {
  std::vector<Index> v(w.rbegin(), w.rend());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Index> Trajectory::profile() const {
  auto v = visited();
  std::vector<Index> p(v.size(), 0);
  std::size_t k = 0;
  for (Index m = degree(); m >= 1; --m) {
    if (w[m - 1] == w[m])
      ++p[k];
    else
      ++k;
  }
  return p;
}

std::vector<Trajectory> enumerate_trajectories(Index n, Index l) {
  std::vector<Trajectory> out;
  // rev holds w read from the source: non-decreasing sequences of length l+1.
  std::vector<Index> rev(l + 1, 0);
  auto emit = [&] { out.push_back({std::vector<Index>(rev.rbegin(), rev.rend())}); };
  if (n == 0) return out;
  while (true) {
    emit();
    std::size_t k = l + 1;
    while (k > 0 && rev[k - 1] == n - 1) --k;
    if (k == 0) break;
    ++rev[k - 1];
    for (std::size_t m = k; m <= l; ++m) rev[m] = rev[k - 1];
  }
  return out;
}

TensorIndex::TensorIndex(std::vector<Index> d) : dims(std::move(d)), strides(dims.size(), 1) {
  for (std::size_t m = dims.size(); m-- > 1;) strides[m - 1] = strides[m] * dims[m];
  size = dims.empty() ? 1 : strides[0] * dims[0];
}

std::vector<Index> TensorIndex::decode(Index flat) const {
  std::vector<Index> d(dims.size());
  for (std::size_t m = 0; m < dims.size(); ++m) d[m] = digit(flat, m);
  return d;
}

Index TensorIndex::encode(const std::vector<Index>& digits) const {
  Index f = 0;
  for (std::size_t m = 0; m < dims.size(); ++m) f += digits[m] * strides[m];
  return f;
}

template <class F>
std::vector<Index> factor_dims(const TriangularAlgebra<F>& t, const Trajectory& tau) {
  std::vector<Index> d;
  for (Index m = 1; m <= tau.degree(); ++m) d.push_back(t.block_dim(tau.w[m - 1], tau.w[m]));
  return d;
}

template <class F>
Index module_dim(const TriangularAlgebra<F>& t, const Trajectory& tau) {
  Index d = 1;
  for (Index x : factor_dims(t, tau)) d *= x;
  return d;
}

template std::vector<Index> factor_dims(const TriangularAlgebra<Rationals>&, const Trajectory&);
template std::vector<Index> factor_dims(const TriangularAlgebra<PrimeField>&, const Trajectory&);
template Index module_dim(const TriangularAlgebra<Rationals>&, const Trajectory&);
template Index module_dim(const TriangularAlgebra<PrimeField>&, const Trajectory&);

}  // namespace trihoch
