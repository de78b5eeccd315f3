#pragma once

#include <cstddef>
#include <vector>

#include "asympl/fourier.hpp"
#include "asympl/integer_matrix.hpp"

namespace asympl {

/// U * V = H with U unimodular and H in row Hermite normal form: the nonzero
/// rows come first, pivots are positive and strictly move right, entries above
/// a pivot lie in [0, pivot), everything below a pivot is zero.
struct HermiteDecomposition {
  IntegerMatrix H;
  IntegerMatrix U;
};
HermiteDecomposition hermite_normal_form(const IntegerMatrix& V);

/// U * V * W = D with U, W unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix W;
  /// Number of nonzero diagonal entries.
  std::size_t rank = 0;
};
SmithDecomposition smith_normal_form(const IntegerMatrix& V);

/// Saturated sublattice spanned by a set of harmonic directions together
/// with the unimodular change of labels that moves it onto the first r slots.
struct LatticeNormalization {
  std::size_t n = 0;
  std::vector<HarmonicIndex> generators;
  /// r primitive vectors, a Z-basis of span_R(generators) intersected with Z^n.
  std::vector<HarmonicIndex> saturation_basis;
  /// n - r vectors completing the saturation basis to a Z-basis of Z^n.
  std::vector<HarmonicIndex> completion;
  /// M * u_i = e_i for the basis vectors above; harmonic labels map as nu -> M nu.
  IntegerMatrix M;
  IntegerMatrix M_inv;
  std::size_t r = 0;

  std::size_t k() const { return n - r; }
};

/// Saturation plus basis completion. Generators may be empty (r = 0, M = I).
LatticeNormalization saturate_and_complete(const std::vector<HarmonicIndex>& generators,
                                           std::size_t n);

/// True if the rows span a saturated lattice, i.e. all elementary divisors are 1.
bool is_saturated(const std::vector<HarmonicIndex>& rows, std::size_t n);

}  // namespace asympl
