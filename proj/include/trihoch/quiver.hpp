#pragma once

// Finite quivers, their level structures and path algebras, and simplicial
// complexes with their incidence algebras.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trihoch/algebra.hpp"

namespace trihoch {

struct Arrow {
  std::string label;
  Index source = 0;
  Index target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  /// Throws on a duplicate label.
  Index add_vertex(const std::string& label);
  void add_arrow(const std::string& label, Index source, Index target);
  std::optional<Index> find_vertex(const std::string& label) const;
};

/// False iff the quiver has a directed cycle (loops included).
bool check_acyclic(const Quiver& q);

/// Levels are 0-based here; level 0 holds the vertices with no incoming arrow.
struct LevelAssignment {
  std::vector<Index> level;
  Index n = 0;
};

/// Longest-path layering.  Throws std::invalid_argument on a cyclic quiver.
LevelAssignment compute_levels(const Quiver& q);

/// True iff every arrow strictly raises the level.
bool levels_valid(const Quiver& q, const LevelAssignment& lv);

struct Path {
  Index source = 0;
  Index target = 0;
  std::vector<Index> arrows;  // in order of traversal
};

/// All paths, trivial ones first, then by length and lexicographically by
/// arrow sequence.  Throws on a cyclic quiver.
std::vector<Path> enumerate_paths(const Quiver& q);

/// A_r spanned by the level-r vertices, _sM_r by the paths from level r to
/// level s, mu by concatenation.
template <class F>
TriangularAlgebra<F> path_algebra(F field, const Quiver& q, const LevelAssignment& lv);

struct SimplicialComplex {
  std::vector<std::string> vertices;
  std::vector<std::vector<Index>> facets;

  Index vertex(const std::string& label);
  void add_facet(std::vector<Index> f);
  /// Every nonempty face, sorted by dimension and then lexicographically.
  std::vector<std::vector<Index>> faces() const;
  int dimension() const;
};

/// Incidence algebra of the face poset: level d holds the d-simplices, and
/// _eM_d has one basis vector per pair sigma in tau, dim sigma = d, dim tau = e.
template <class F>
TriangularAlgebra<F> incidence_algebra(F field, const SimplicialComplex& s);

/// dim H^l(s; F) for l = 0..max_degree from the simplicial cochain complex.
template <class F>
std::vector<std::size_t> simplicial_cohomology(F field, const SimplicialComplex& s, Index max_degree);

}  // namespace trihoch
