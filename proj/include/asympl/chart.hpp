#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "asympl/fourier.hpp"
#include "asympl/integer_matrix.hpp"
#include "asympl/polynomial.hpp"
#include "asympl/rational_linalg.hpp"

namespace asympl {

/// Closed interval with optional (infinite) endpoints.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  bool bounded() const { return lo && hi; }
  bool degenerate() const { return bounded() && *lo == *hi; }
  bool contains(const Rational& x) const { return (!lo || *lo <= x) && (!hi || x <= *hi); }
  bool contains(double x) const { return (!lo || lo->get_d() <= x) && (!hi || x <= hi->get_d()); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box of action values.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {}
  static Box unbounded(std::size_t n) { return Box(std::vector<Interval>(n)); }

  std::size_t dim() const { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains(std::span<const Rational> a) const;
  bool contains(std::span<const double> a) const;
  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// Action-angle chart (A subset of R^n) x T^n carrying
///   sigma = sum_i da_i ^ dalpha_i + 1/2 sum_ij A_ij(a) da_i ^ da_j
/// with A an antisymmetric matrix of polynomials in the actions.
class AlmostSymplecticChart {
 public:
  /// `A` is the full n x n matrix; antisymmetry is verified exactly.
  AlmostSymplecticChart(std::vector<std::vector<Polynomial>> A, Box domain);
  /// Builds A from its strictly upper entries (i < j); missing entries are zero.
  static AlmostSymplecticChart from_upper(std::size_t n,
                                          const std::map<std::pair<std::size_t, std::size_t>,
                                                         Polynomial>& upper,
                                          Box domain);
  /// A = 0: the canonical symplectic chart.
  static AlmostSymplecticChart canonical(std::size_t n, Box domain);

  std::size_t n() const { return n_; }
  const Polynomial& A(std::size_t i, std::size_t j) const { return A_[i][j]; }
  const std::vector<std::vector<Polynomial>>& matrix() const { return A_; }
  const Box& domain() const { return domain_; }
  bool has_constant_form() const;
  friend bool operator==(const AlmostSymplecticChart&, const AlmostSymplecticChart&) = default;

 private:
  std::size_t n_;
  std::vector<std::vector<Polynomial>> A_;
  Box domain_;
};

/// Totally antisymmetric tensor C_ijk = dA_ij/da_k + dA_ki/da_j + dA_jk/da_i,
/// the coordinate form of d sigma. Only i < j < k entries are stored.
class CTensor {
 public:
  explicit CTensor(std::size_t n);

  std::size_t n() const { return n_; }
  /// Any index order; sign follows the permutation parity, repeated indices give 0.
  Polynomial operator()(std::size_t i, std::size_t j, std::size_t k) const;
  const std::map<std::array<std::size_t, 3>, Polynomial>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  void set(std::size_t i, std::size_t j, std::size_t k, Polynomial p);

  /// Rows of the n(n-1)/2 x n matrix (i<j, k) -> C_ijk(a).
  RationalRows matrix_at(std::span<const Rational> a) const;
  /// Same, in doubles.
  std::vector<std::vector<double>> matrix_at(std::span<const double> a) const;

 private:
  std::size_t n_;
  std::map<std::array<std::size_t, 3>, Polynomial> entries_;
};

CTensor c_tensor(const AlmostSymplecticChart& chart);

/// Exact rational basis of ker C(a). Throws DomainError if a lies outside the domain.
RationalRows kernel_at(const CTensor& C, const Box& domain, std::span<const Rational> a);

/// Vector field on the chart: action components then angle components.
struct AAVectorField {
  std::size_t n = 0;
  std::vector<FourierFunction> da;
  std::vector<FourierFunction> dalpha;

  explicit AAVectorField(std::size_t n_ = 0);
  AAVectorField operator-() const;
  friend bool operator==(const AAVectorField&, const AAVectorField&) = default;
};

/// X_F: da_i/dt = -dF/dalpha_i, dalpha_i/dt = dF/da_i + sum_j A_ij dF/dalpha_j.
AAVectorField hamiltonian_vector_field(const AlmostSymplecticChart& chart, const FourierFunction& F);

/// {F,G} = -sigma(X_F, X_G) = -L_{X_F} G
///       = sum_i (dF/dalpha_i dG/da_i - dF/da_i dG/dalpha_i) + sum_ij A_ij dF/dalpha_i dG/dalpha_j.
FourierFunction almost_poisson_bracket(const AlmostSymplecticChart& chart, const FourierFunction& F,
                                       const FourierFunction& G);

/// sum_i dX_{a_i}/da_i + dX_{alpha_i}/dalpha_i.
FourierFunction divergence(const AAVectorField& X);

/// Directional derivative L_X G.
FourierFunction lie_derivative(const AAVectorField& X, const FourierFunction& G);

/// Vector-field commutator [X,Y] = X(Y) - Y(X), componentwise.
AAVectorField lie_bracket(const AAVectorField& X, const AAVectorField& Y);

/// Action-angle coordinate change
///   a~ = Z a + z,   alpha~ = Z^{-T} alpha + G(a)   (mod 2 pi).
/// Harmonic labels transform as nu~ = Z nu so that nu~ . alpha~ = nu . alpha
/// whenever nu~ . G vanishes.
struct AATransform {
  IntegerMatrix Z;
  RationalVector z;
  /// Angle shifts as polynomials in the ORIGINAL actions a.
  std::vector<Polynomial> G;

  static AATransform identity(std::size_t n);
  static AATransform linear(IntegerMatrix Z);
  std::size_t n() const { return Z.rows(); }
};

struct TransformedSystem {
  AlmostSymplecticChart chart;
  FourierFunction F;
};

/// Pushes (chart, F) through T. The new form is
///   A~(a~) = Z^{-T} A(a) Z^{-1} - (K - K^T),   K_ij = d G_i / d a~_j,
/// and F~(a~, alpha~) = F(a, alpha). Throws ValidationError for non-unimodular Z
/// and DomainError when a harmonic of F is not invariant under the angle shift.
TransformedSystem apply_transform(const AlmostSymplecticChart& chart, const FourierFunction& F,
                                  const AATransform& T);

/// Image of an action point / angle point under T (numeric, used by tests and dynamics).
std::vector<double> transform_actions(const AATransform& T, std::span<const double> a);
std::vector<double> transform_angles(const AATransform& T, std::span<const double> a,
                                     std::span<const double> alpha);

}  // namespace asympl
