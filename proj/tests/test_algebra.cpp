#include <doctest.h>

#include "trihoch/algebra.hpp"

using namespace trihoch;

namespace {

using Q = Rationals;

AlgebraPtr<Q> share(FiniteDimAlgebra<Q> a) { return std::make_shared<const FiniteDimAlgebra<Q>>(std::move(a)); }

// Bimodule over diagonal algebras with one basis vector per (target, source) pair.
Bimodule<Q> arrows(AlgebraPtr<Q> l, AlgebraPtr<Q> r, const std::vector<std::pair<Index, Index>>& ends) {
  Q f;
  Bimodule<Q> m(l, r, static_cast<Index>(ends.size()));
  for (Index k = 0; k < m.dim; ++k) {
    m.lact[ends[k].first * m.dim + k] = {{k, f.one()}};
    m.ract[k * r->dim + ends[k].second] = {{k, f.one()}};
  }
  return m;
}

TriangularAlgebra<Q> example_quiver() {
  Q f;
  auto k = share(FiniteDimAlgebra<Q>::ground(f));
  auto k2 = share(FiniteDimAlgebra<Q>::diagonal(f, 2));
  return build_tensorial<Q>(f, {k, k, k2}, {arrows(k, k, {{0, 0}}), arrows(k2, k, {{0, 0}, {0, 0}, {1, 0}, {1, 0}})});
}

}  // namespace

TEST_CASE("standard algebras are valid") {
  Q f;
  CHECK(check_algebra(FiniteDimAlgebra<Q>::ground(f), "k").empty());
  CHECK(check_algebra(FiniteDimAlgebra<Q>::diagonal(f, 3), "k3").empty());
  CHECK(check_algebra(FiniteDimAlgebra<Q>::truncated_polynomial(f, 3), "k[x]/x3").empty());
  CHECK(check_algebra(FiniteDimAlgebra<Q>::matrices(f, 2), "M2").empty());
  CHECK(check_algebra(FiniteDimAlgebra<Q>::upper_triangular(f, 3), "T3").empty());
  CHECK(FiniteDimAlgebra<Q>::upper_triangular(f, 3).dim == 6);

  auto bad = FiniteDimAlgebra<Q>::truncated_polynomial(f, 2);
  bad.table[1 * 2 + 1] = {{0, f.one()}};  // k[x]/(x^2-1), still associative
  CHECK(check_algebra(bad, "k[x]/(x2-1)").empty());
  bad.unit = {{1, f.one()}};
  CHECK(!check_algebra(bad, "broken").empty());
}

TEST_CASE("center dimensions") {
  Q f;
  CHECK(center(FiniteDimAlgebra<Q>::diagonal(f, 4)).dim() == 4);
  CHECK(center(FiniteDimAlgebra<Q>::matrices(f, 2)).dim() == 1);
  CHECK(center(FiniteDimAlgebra<Q>::upper_triangular(f, 2)).dim() == 1);
  auto T = assemble_total(example_quiver());
  CHECK(T.dim == 13);
  auto z = center(T);
  CHECK(z.dim() == 1);
  CHECK(z.contains(T.unit));
}

TEST_CASE("separability") {
  Q f;
  CHECK(is_separable(FiniteDimAlgebra<Q>::diagonal(f, 3)));
  CHECK(is_separable(FiniteDimAlgebra<Q>::matrices(f, 2)));
  CHECK(!is_separable(FiniteDimAlgebra<Q>::truncated_polynomial(f, 2)));
  CHECK(!is_separable(FiniteDimAlgebra<Q>::upper_triangular(f, 2)));
}

TEST_CASE("validate and assemble small triangular algebras") {
  Q f;
  auto k = share(FiniteDimAlgebra<Q>::ground(f));
  TriangularAlgebra<Q> one(f, {k});
  CHECK(validate_triangular(one).ok());
  CHECK(assemble_total(one).dim == 1);

  TriangularAlgebra<Q> two(f, {k, k});
  two.set_module(1, 0, arrows(k, k, {{0, 0}}));
  CHECK(validate_triangular(two).ok());
  auto T = assemble_total(two);
  CHECK(T.dim == 3);
  Index m = two.block_offset(1, 0);
  CHECK(T.basis_product(m, m).empty());

  TriangularAlgebra<Q> zero(f, {k, k});
  auto rep = validate_triangular(zero);
  CHECK(rep.ok());
  CHECK(rep.notes.size() == 1);
}

TEST_CASE("path algebra blocks through the tensorial builder") {
  auto t = example_quiver();
  auto rep = validate_triangular(t);
  CHECK(rep.ok());
  CHECK(t.module(1, 0).dim == 1);
  CHECK(t.module(2, 1).dim == 4);
  CHECK(t.module(2, 0).dim == 4);
  CHECK(is_tensorial(t));
}

TEST_CASE("perturbed mu is reported") {
  auto t = example_quiver();
  auto mu = t.mu(2, 1, 0);
  Q f;
  mu.images[0] = {{2, f.one()}};  // send an arrow ending at c to one ending at d
  t.set_mu(2, 1, 0, mu);
  auto rep = validate_triangular(t);
  REQUIRE(!rep.ok());
  CHECK(rep.violations.front().find("mu 3 2 1") != std::string::npos);
  CHECK(!is_tensorial(t));
}

TEST_CASE("tensor products over intermediate algebras") {
  Q f;
  auto k = share(FiniteDimAlgebra<Q>::ground(f));
  auto k2 = share(FiniteDimAlgebra<Q>::diagonal(f, 2));
  auto reg = Bimodule<Q>::regular(k2);
  CHECK(tensor_over(*k2, reg, reg).module.dim == 2);

  auto m = arrows(k, k, {{0, 0}, {0, 0}});
  auto n = arrows(k, k, {{0, 0}, {0, 0}, {0, 0}});
  auto tp = tensor_over(*k, m, n);
  CHECK(tp.module.dim == 6);
  CHECK(tp.projection.rows() == 6);
  CHECK(tensor_over(*k, Bimodule<Q>::zero(k, k), n).module.dim == 0);

  // k2 acting diagonally on both sides of the middle.
  auto left = arrows(k, k2, {{0, 0}, {0, 1}});
  auto right = arrows(k2, k, {{0, 0}, {1, 0}});
  auto t = build_tensorial<Q>(f, {k, k2, k}, {right, left});
  CHECK(validate_triangular(t).ok());
  CHECK(t.module(2, 0).dim == 2);

  // the middle idempotents separate: only one composable pair survives
  auto t2 = build_tensorial<Q>(f, {k, k2, k}, {arrows(k2, k, {{0, 0}}), arrows(k, k2, {{0, 0}, {0, 1}})});
  CHECK(t2.module(2, 0).dim == 1);

  std::vector<AlgebraPtr<Q>> ks(4, k);
  std::vector<Bimodule<Q>> adj(3, arrows(k, k, {{0, 0}}));
  auto chain = build_tensorial<Q>(f, ks, adj);
  CHECK(validate_triangular(chain).ok());
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < j; ++i) CHECK(chain.module(j, i).dim == 1);
}

TEST_CASE("iterated tensor powers match the tensorial blocks") {
  Q f;
  auto k = share(FiniteDimAlgebra<Q>::ground(f));
  auto a1 = share(FiniteDimAlgebra<Q>::truncated_polynomial(f, 2));
  auto k2 = share(FiniteDimAlgebra<Q>::diagonal(f, 2));
  // k[x]/x^2 acting regularly on the right of a one-dimensional-over-it module
  Bimodule<Q> m21(k2, a1, 4);
  // k2 (x) k[x]/x^2 as a free bimodule: basis (e, x^s), index e*2+s
  for (Index e = 0; e < 2; ++e)
    for (Index s = 0; s < 2; ++s) {
      Index v = e * 2 + s;
      m21.lact[e * 4 + v] = {{v, f.one()}};
      for (Index a = 0; a < 2; ++a)
        if (s + a < 2) m21.ract[v * 2 + a] = {{e * 2 + s + a, f.one()}};
    }
  REQUIRE(check_bimodule(m21, "M21").empty());
  auto m32 = arrows(k, k2, {{0, 0}, {0, 1}, {0, 1}});
  auto t = build_tensorial<Q>(f, {a1, k2, k}, {m21, m32});
  REQUIRE(validate_triangular(t).ok());
  CHECK(is_tensorial(t));
  CHECK(t.module(2, 0).dim == 2 + 2 * 2);

  auto prod = share(product_algebra<Q>({t.algebra_ptr(0), t.algebra_ptr(1), t.algebra_ptr(2)}));
  auto M = adjacent_sum(t, prod);
  auto mv = check_bimodule(M, "M");
  if (!mv.empty()) MESSAGE(mv.front());
  REQUIRE(mv.empty());
  auto M2 = tensor_over(*prod, M, M).module;
  CHECK(M2.dim == t.module(2, 0).dim);
  CHECK(tensor_over(*prod, M2, M).module.dim == 0);
}

TEST_CASE("coefficient bimodules") {
  auto t = example_quiver();
  auto reg = TBimodule<Q>::regular(t);
  CHECK(check_tbimodule(t, reg).empty());
  auto dual = TBimodule<Q>::dual(t);
  CHECK(check_tbimodule(t, dual).empty());
  CHECK(dual.block_dim(0, 2) == 4);
  CHECK(dual.block_dim(2, 0) == 0);
  auto blk = restrict_block(t, reg, 2, 1);
  CHECK(check_bimodule(blk, "block").empty());
  CHECK(blk.dim == 4);
}
