#pragma once

// The spectral sequence of the trajectory-length filtration.
//
// Pages are indexed by the filtration column p and the total degree l; the
// complementary degree is q = l - p.  With tags in 0..n-1,
//
//   Z_r^p(l) = { x in F^p C^l : delta x in F^{p+r} C^{l+1} }  (F^p = C for p < 0)
//   E_r^p(l) = Z_r^p(l) / (Z_{r-1}^{p+1}(l) + delta Z_{r-1}^{p-r+1}(l-1))
//
// and d_r is read off by lifting, applying delta and taking coordinates in
// the target quotient.

#include <string>
#include <vector>

#include "trihoch/hochcomplex.hpp"

namespace trihoch {

template <class F>
struct SpectralPage {
  Index r = 0;
  Index columns = 0;
  Index cutoff = 0;
  // all indexed [p][l], l = 0..cutoff
  std::vector<std::vector<QuotientBasis<F>>> basis;
  std::vector<std::vector<Matrix<F>>> d;  // d_r : E_r^p(l) -> E_r^{p+r}(l+1)
  std::vector<std::vector<bool>> d_reliable;

  std::size_t dim(Index p, Index l) const { return p < columns && l <= cutoff ? basis[p][l].dim() : 0; }
  /// dim E_r^{p,q}; zero outside the column range.
  std::size_t at(Index p, int q) const { return q < 0 ? 0 : dim(p, p + static_cast<Index>(q)); }
};

template <class F>
struct SpectralSequence {
  Index columns = 0;
  Index cutoff = 0;
  std::vector<SpectralPage<F>> pages;  // r = 0..max_page
};

/// Pages 0..max_page of a filtered window whose tags lie in 0..columns-1.
template <class F>
SpectralSequence<F> compute_spectral_sequence(const CochainWindow<F>& w, Index columns, Index max_page);

template <class F>
SpectralPage<F> compute_page(const CochainWindow<F>& w, Index columns, Index r);

/// Violations of d_r d_r = 0, of the page recurrence and of convergence to
/// the cohomology of the window; empty when all hold.
template <class F>
std::vector<std::string> check_spectral_sequence(const SpectralSequence<F>& ss, const GradedDims& hh);

/// The column-(t+1) part of the coboundary of a cochain f in C^l supported on
/// cells of trajectory length t: left cups with the bimodules leaving the
/// target, right cups with those entering the source (sign (-1)^{l+1}), and
/// f composed with mu splitting one jump (sign (-1)^m, m the position of the
/// first new factor).
template <class F>
SparseVec<F> cup_d1_general(const TriangularAlgebra<F>& t, const TBimodule<F>& x, const RelativeComplex<F>& rc,
                            Index l, const SparseVec<F>& f);

/// For n = 3: f, g, h cocycles of the bar complexes of A_1, A_2, A_3 with
/// coefficients in the diagonal blocks of X, in degree l.  Returns
/// 1_{M21} f + (-1)^{l+1} g 1_{M21} + 1_{M32} g + (-1)^{l+1} h 1_{M32}
///   + 1_{M31} f + (-1)^{l+1} h 1_{M31}
/// in C^{l+1}.  Throws std::invalid_argument on a non-cocycle.
template <class F>
SparseVec<F> cup_d1_n3(const TriangularAlgebra<F>& t, const TBimodule<F>& x, const RelativeComplex<F>& rc, Index l,
                       const SparseVec<F>& f, const SparseVec<F>& g, const SparseVec<F>& h);

/// Compares the machinery d_1 with cup_d1_general on the column part of every
/// E_1 lift.  Returns the mismatches.
template <class F>
std::vector<std::string> check_d1_against_cup(const TriangularAlgebra<F>& t, const TBimodule<F>& x,
                                              const RelativeComplex<F>& rc, const SpectralSequence<F>& ss);

struct E1Cell {
  Index p = 0;
  Index q = 0;
  std::size_t engine = 0;
  std::size_t predicted = 0;
  /// Intermediate algebras separable, so the iterated tensor products are the
  /// right objects; always true for p <= 1.
  bool projective = true;
  std::vector<std::string> summands;

  bool agree() const { return engine == predicted; }
};

struct E1Report {
  std::vector<E1Cell> cells;
  /// Disagreements in cells where the prediction is claimed.
  std::vector<std::string> failures;
};

/// E_1 computed summand by summand: HH(A_i, X_ii) in column 0, Ext of the
/// bimodules in column 1, Ext of iterated tensor products beyond.
template <class F>
E1Report e1_structure_report(const TriangularAlgebra<F>& t, const TBimodule<F>& x, const SpectralSequence<F>& ss);

struct DegenerationReport {
  /// n = 3, tensorial, A_2 = k: the claim that d_2 vanishes is made.
  bool global_claim = false;
  bool d2_zero = true;
  bool lemma_holds = true;
  std::vector<std::string> details;

  bool ok() const { return (!global_claim || d2_zero) && lemma_holds; }
};

/// Refuses (std::invalid_argument) unless t has three levels and is tensorial.
template <class F>
DegenerationReport check_degeneration_A2k(const TriangularAlgebra<F>& t, const TBimodule<F>& x,
                                          const RelativeComplex<F>& rc, const SpectralSequence<F>& ss);

}  // namespace trihoch
