#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "asympl/chart.hpp"
#include "asympl/dynamics.hpp"
#include "asympl/normalize.hpp"
#include "asympl/spectra.hpp"

namespace asympl {

/// Coordinates (I, J, phi, psi): I = first r actions, J = last k actions,
/// phi / psi the matching angles.
struct NormalizedSplit {
  std::size_t n = 0;
  std::size_t k = 0;

  std::size_t r() const { return n - k; }
  static NormalizedSplit of(const NormalizedSystem& s) { return {s.chart.n(), s.k}; }
};

/// Symplectic (for r <= 2) system on the level J = c, in (I, phi).
struct ReducedSystem {
  std::size_t r = 0;
  RationalVector c;
  /// Chart in I with A_II(I, c); domain is the I-part of the box.
  AlmostSymplecticChart chart;
  FourierFunction f_c;
  /// k x r block A_{J_m, I_j}(I, c), used by the reconstruction equation.
  std::vector<std::vector<Polynomial>> A_JI;
  /// dF/dJ_m restricted to J = c, as functions of (I, phi).
  std::vector<FourierFunction> dF_dJ;

  AAVectorField vector_field() const { return hamiltonian_vector_field(chart, f_c); }
};

/// Throws DomainError if c lies outside the J-projection of the domain and
/// ValidationError if F depends on psi.
ReducedSystem reduce(const AlmostSymplecticChart& chart, const FourierFunction& F,
                     const NormalizedSplit& split, const RationalVector& c);

/// psi(t) on the reduced trajectory's time grid, unwrapped, by Gauss-Legendre
/// quadrature of dpsi/dt = dF/dJ + A_JI dF/dphi over its dense output.
/// The trajectory must have been integrated with keep_dense.
std::vector<std::vector<double>> reconstruct(const ReducedSystem& reduced,
                                             const Trajectory& reduced_traj,
                                             std::span<const double> psi0);

/// chi = psi + G(I, J) with G_i = int_{I0}^{I} A_{J_i, I}(x, J) dx.
struct SymplectizedSystem {
  NormalizedSplit split;
  Rational I0;
  /// G_i as polynomials in the n actions (one per J slot).
  std::vector<Polynomial> G;
  AATransform transform;
  /// Chart and Hamiltonian in (I, J, phi, chi). Its J-J block may stay nonzero;
  /// it only multiplies dF/dchi, which vanishes.
  AlmostSymplecticChart chart;
  FourierFunction F;
  /// Push-forward of X_F equals the canonical Hamiltonian field of F, exactly.
  bool exact_identity = false;
};

/// r = 1 only; RegimeError otherwise. I0 defaults to the midpoint of the
/// I-interval (0 or the finite end when unbounded).
SymplectizedSystem symplectize(const AlmostSymplecticChart& chart, const FourierFunction& F,
                               const NormalizedSplit& split,
                               std::optional<Rational> I0 = std::nullopt);

/// Push-forward of X under a pure angle shift (Z = I, z = 0): the angle
/// components gain sum_j dG_i/da_j X_{a_j}.
AAVectorField push_forward_shift(const AAVectorField& X, const std::vector<Polynomial>& G);

enum class Regime { vertical, symplectizable, reduced_family };
std::string to_string(Regime r);

struct PipelineReport {
  std::size_t n = 0;
  bool symplectic_chart = false;
  FullHamiltonianVerdict verdict;
  GenericityVerdict fg1;
  GenericityVerdict fg2;
  std::optional<NormalizedSystem> normalized;
  Regime regime = Regime::vertical;
  std::string summary;
  std::optional<SymplectizedSystem> symplectized;
  std::vector<ReducedSystem> reduced;
  /// Reduced levels whose chart is still non-closed are normalized and reduced again.
  std::vector<PipelineReport> nested;
};

/// Classification -> genericity -> normalization -> regime-specific step.
/// Throws RejectedHamiltonian when F is not fully-Hamiltonian.
PipelineReport pipeline(const AlmostSymplecticChart& chart, const FourierFunction& F,
                        const std::vector<RationalVector>& levels = {});

}  // namespace asympl
