#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "asympl/rational.hpp"

namespace asympl {

/// Sparse multivariate polynomial with exact rational coefficients in the
/// action variables a_1..a_n. Terms with zero coefficient are never stored,
/// so structural equality is mathematical equality.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t var);
  static Polynomial monomial(Exponents exps, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// True when the polynomial does not involve variable `var`.
  bool independent_of(std::size_t var) const;
  unsigned degree_in(std::size_t var) const;
  unsigned total_degree() const;

  /// Adds c * x^exps, dropping the term if it cancels.
  void add_term(const Exponents& exps, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend bool operator==(const Polynomial& p, const Polynomial& q) = default;

  Polynomial pow(unsigned e) const;
  Polynomial derivative(std::size_t var) const;
  /// Antiderivative in `var` with zero constant of integration.
  Polynomial antiderivative(std::size_t var) const;
  /// Integral over x_var from `lower` to the symbolic upper limit x_upper_var.
  Polynomial definite_integral(std::size_t var, const Rational& lower,
                               std::size_t upper_var) const;

  /// Substitutes x_i -> images[i]; every image must share one nvars, which
  /// becomes the nvars of the result.
  Polynomial compose(std::span<const Polynomial> images) const;
  /// Fixes x_var = value, keeping nvars.
  Polynomial substitute(std::size_t var, const Rational& value) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Human-readable form, e.g. "1/2*a1^2 - a2".
  std::string to_string() const;

 private:
  void check_same_nvars(const Polynomial& other) const;
  void check_var(std::size_t var) const;

  std::size_t nvars_;
  Terms terms_;
};

/// Polynomial compiled to double coefficients for repeated fast evaluation.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const Polynomial& p);

  bool is_zero() const { return coeffs_.empty(); }
  /// `powers[i][e]` must hold x_i^e for every exponent the polynomial uses.
  double evaluate(const std::vector<std::vector<double>>& powers) const;
  double evaluate(std::span<const double> point) const;
  unsigned max_degree() const { return max_degree_; }

 private:
  std::size_t nvars_ = 0;
  std::vector<double> coeffs_;
  std::vector<unsigned> exponents_;  // row-major, nvars_ per term
  unsigned max_degree_ = 0;
};

/// Fills `powers[i][e] = x_i^e` for e <= max_degree.
void fill_powers(std::span<const double> point, unsigned max_degree,
                 std::vector<std::vector<double>>& powers);

}  // namespace asympl
