#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asympl/chart.hpp"
#include "asympl/fourier.hpp"

namespace asympl {

/// Nonzero harmonic indices carrying a nonzero coefficient, sorted.
struct Spectrum {
  std::vector<HarmonicIndex> support;

  bool empty() const { return support.empty(); }
  bool contains(const HarmonicIndex& nu) const;
};

Spectrum spectrum(const FourierFunction& F);
/// Harmonics whose coefficient pair does not vanish at the rational point a.
Spectrum spectrum_at(const FourierFunction& F, std::span<const Rational> a);

/// Evidence that F is not fully-Hamiltonian: sum_k C_ijk(a) nu_k times the
/// harmonic coefficient is nonzero at `point`.
struct ClassificationWitness {
  HarmonicIndex nu;
  std::size_t i = 0;
  std::size_t j = 0;
  RationalVector point;
  /// (sum_k C_ijk(point) nu_k) * coefficient(point), nonzero.
  Rational value;
  bool sine_part = false;

  std::string describe() const;
};

struct FullHamiltonianVerdict {
  bool accepted = false;
  std::optional<ClassificationWitness> witness;

  explicit operator bool() const { return accepted; }
};

/// Exact decision: F is fully-Hamiltonian iff for every harmonic nu in its
/// support the polynomial contraction (C nu)_ij annihilates both coefficients.
FullHamiltonianVerdict is_fully_hamiltonian(const AlmostSymplecticChart& chart,
                                            const FourierFunction& F);
FullHamiltonianVerdict is_fully_hamiltonian(const AlmostSymplecticChart& chart, const CTensor& C,
                                            const FourierFunction& F);

/// Euclidean norm of C(a) dF/dalpha (a, alpha), the pointwise form of the test.
double full_hamiltonian_residual(const CTensor& C, const FourierFunction& F,
                                 std::span<const double> a, std::span<const double> alpha);

/// A rational point of the box where the nonzero polynomial p does not vanish.
/// Searches a product grid with deg_i + 1 distinct values on axis i, which
/// cannot be a common zero set of p; degenerate axes borrow points outside the
/// box, so nullopt means p is the zero polynomial.
std::optional<RationalVector> find_nonzero_point(const Polynomial& p, const Box& box);

enum class GenericityCondition { FG1, FG2 };
enum class GenericityStatus { holds, fails, inconclusive };

std::string to_string(GenericityCondition c);
std::string to_string(GenericityStatus s);

struct DirectionVerdict {
  HarmonicIndex direction;
  GenericityStatus status = GenericityStatus::inconclusive;
  std::string certificate;
};

struct GenericityVerdict {
  GenericityCondition condition = GenericityCondition::FG1;
  std::vector<DirectionVerdict> directions;

  /// holds iff every direction holds; fails if any fails; otherwise inconclusive.
  GenericityStatus overall() const;
};

/// FG1 / FG2 on the closed domain box. FG2 uses a sound, incomplete
/// certifier: it may answer inconclusive but never a false "holds".
GenericityVerdict genericity_check(const AlmostSymplecticChart& chart, const FourierFunction& F,
                                   GenericityCondition which);

/// Certifies that p has no zero on the box (bounded coordinates only) by exact
/// interval bounds with bisection up to `max_depth` levels.
bool certify_nonvanishing(const Polynomial& p, const Box& box, unsigned max_depth = 10);

struct RankBoundReport {
  bool symplectic = false;  // C is identically zero
  std::size_t samples = 0;
  std::size_t nonzero_points = 0;  // points with C(a) != 0
  std::size_t violations = 0;      // dim ker C(a) > n - 3 at a point with C(a) != 0
  std::map<std::size_t, std::size_t> kernel_dimensions;  // dimension -> count
};

/// Samples `samples` rational points of the domain (bounded by [-2, 2] on
/// unbounded sides) with the given seed and checks dim ker C(a) <= n - 3.
RankBoundReport verify_rank_bound(const AlmostSymplecticChart& chart, std::size_t samples,
                                  std::uint64_t seed);

/// Random rational point in the box; unbounded sides are clipped to [-2, 2]
/// around the finite endpoint. Denominators up to `denominator`.
template <class Rng>
RationalVector random_point(const Box& box, Rng& rng, long denominator = 16);

}  // namespace asympl

#include "asympl/detail/random_point.hpp"
