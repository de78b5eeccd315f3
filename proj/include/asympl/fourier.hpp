#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "asympl/polynomial.hpp"

namespace asympl {

/// Integer harmonic index nu in Z^n.
using HarmonicIndex = std::vector<std::int64_t>;

/// True when the first nonzero entry is positive, or nu = 0.
bool is_canonical(const HarmonicIndex& nu);
bool is_zero_index(const HarmonicIndex& nu);
/// nu / gcd(nu) with the canonical sign; nu must be nonzero.
HarmonicIndex primitive_direction(const HarmonicIndex& nu);
std::string to_string(const HarmonicIndex& nu);

/// Coefficient pair of one harmonic: cos_coeff(a) cos(nu.alpha) + sin_coeff(a) sin(nu.alpha).
struct Harmonic {
  Polynomial cos_coeff;
  Polynomial sin_coeff;

  bool is_zero() const { return cos_coeff.is_zero() && sin_coeff.is_zero(); }
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Finite real Fourier series on R^n x T^n with polynomial coefficients in the
/// actions. Stored indices are canonical (first nonzero entry positive); the
/// zero harmonic carries no sine part and zero harmonics are never stored.
class FourierFunction {
 public:
  using Harmonics = std::map<HarmonicIndex, Harmonic>;

  explicit FourierFunction(std::size_t n = 0) : n_(n) {}

  /// Angle-independent function.
  static FourierFunction basic(const Polynomial& p);
  static FourierFunction cosine(const HarmonicIndex& nu, const Polynomial& coeff);
  static FourierFunction sine(const HarmonicIndex& nu, const Polynomial& coeff);
  static FourierFunction constant(std::size_t n, const Rational& c);
  /// The action a_var as a function.
  static FourierFunction action(std::size_t n, std::size_t var);

  std::size_t n() const { return n_; }
  const Harmonics& harmonics() const { return harmonics_; }
  bool is_zero() const { return harmonics_.empty(); }
  bool is_angle_independent() const;
  /// True when no stored harmonic has a nonzero entry at `angle`.
  bool independent_of_angle(std::size_t angle) const;
  /// Zero-harmonic coefficient (zero polynomial if absent).
  Polynomial mean() const;

  /// Accumulates c cos(nu.alpha) + s sin(nu.alpha); nu may be non-canonical.
  void add_harmonic(const HarmonicIndex& nu, const Polynomial& c, const Polynomial& s);

  FourierFunction operator-() const;
  FourierFunction& operator+=(const FourierFunction& g);
  FourierFunction& operator-=(const FourierFunction& g);
  FourierFunction& operator*=(const Polynomial& p);
  FourierFunction& operator*=(const Rational& c);
  friend FourierFunction operator+(FourierFunction f, const FourierFunction& g) { return f += g; }
  friend FourierFunction operator-(FourierFunction f, const FourierFunction& g) { return f -= g; }
  /// Harmonic convolution by the product-to-sum identities.
  friend FourierFunction operator*(const FourierFunction& f, const FourierFunction& g);
  friend FourierFunction operator*(FourierFunction f, const Polynomial& p) { return f *= p; }
  friend FourierFunction operator*(FourierFunction f, const Rational& c) { return f *= c; }
  friend FourierFunction operator*(const Rational& c, FourierFunction f) { return f *= c; }
  friend bool operator==(const FourierFunction&, const FourierFunction&) = default;

  FourierFunction d_action(std::size_t var) const;
  FourierFunction d_angle(std::size_t var) const;

  /// Substitutes the coefficient variables (see Polynomial::compose); the
  /// harmonic indices are untouched, so images define the new action count.
  FourierFunction compose_actions(std::span<const Polynomial> images) const;

  double evaluate(std::span<const double> a, std::span<const double> alpha) const;
  /// Exact value when every angle is a multiple of pi/2: alpha_i = quarter_turns[i] * pi/2.
  Rational evaluate_exact(std::span<const Rational> a, std::span<const int> quarter_turns) const;

  std::string to_string() const;

 private:
  void check_same_n(const FourierFunction& g) const;

  std::size_t n_;
  Harmonics harmonics_;
};

/// FourierFunction compiled to doubles for repeated evaluation (integrator hot path).
class NumericFourier {
 public:
  NumericFourier() = default;
  explicit NumericFourier(const FourierFunction& f);

  double evaluate(std::span<const double> a, std::span<const double> alpha) const;
  /// Uses caller-prepared action powers (see fill_powers).
  double evaluate(const std::vector<std::vector<double>>& powers,
                  std::span<const double> alpha) const;
  unsigned max_degree() const { return max_degree_; }

 private:
  struct Mode {
    std::vector<double> nu;
    NumericPolynomial cos_coeff;
    NumericPolynomial sin_coeff;
  };
  std::vector<Mode> modes_;
  unsigned max_degree_ = 0;
};

}  // namespace asympl
