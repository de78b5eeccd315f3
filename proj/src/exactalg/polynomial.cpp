#include "asympl/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "asympl/errors.hpp"

namespace asympl {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var) {
  Polynomial p(nvars);
  p.check_var(var);
  Exponents e(nvars, 0);
  e[var] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& c) {
  Polynomial p(exps.size());
  p.add_term(exps, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](unsigned e) { return e == 0; }));
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::independent_of(std::size_t var) const { return degree_in(var) == 0; }

unsigned Polynomial::degree_in(std::size_t var) const {
  check_var(var);
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != nvars_)
    throw DimensionError("monomial has " + std::to_string(exps.size()) +
                         " exponents, polynomial has " + std::to_string(nvars_) + " variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_same_nvars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_same_nvars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same_nvars(q);
  Polynomial r(p.nvars_);
  Polynomial::Exponents e(p.nvars_);
  for (const auto& [ep, cp] : p.terms_) {
    for (const auto& [eq, cq] : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
      r.add_term(e, cp * cq);
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  check_var(var);
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::antiderivative(std::size_t var) const {
  check_var(var);
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] += 1;
    r.add_term(d, c / Rational(d[var]));
  }
  return r;
}

Polynomial Polynomial::definite_integral(std::size_t var, const Rational& lower,
                                         std::size_t upper_var) const {
  check_var(var);
  check_var(upper_var);
  const Polynomial prim = antiderivative(var);
  std::vector<Polynomial> upper_images;
  upper_images.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) upper_images.push_back(variable(nvars_, i));
  upper_images[var] = variable(nvars_, upper_var);
  return prim.compose(upper_images) - prim.substitute(var, lower);
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
  if (images.size() != nvars_)
    throw DimensionError("compose needs " + std::to_string(nvars_) + " images, got " +
                         std::to_string(images.size()));
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  for (const auto& img : images)
    if (img.nvars() != target) throw DimensionError("compose images differ in nvars");

  // powers[i][e] = images[i]^e, filled lazily.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };

  Polynomial result(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    result += term;
  }
  return result;
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& value) const {
  check_var(var);
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] = 0;
    Rational v;
    mpz_pow_ui(v.get_num_mpz_t(), value.get_num_mpz_t(), e[var]);
    mpz_pow_ui(v.get_den_mpz_t(), value.get_den_mpz_t(), e[var]);
    v.canonicalize();
    r.add_term(d, c * v);
  }
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
  Rational sum(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  return NumericPolynomial(*this).evaluate(point);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest-degree terms first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](unsigned x) { return x > 0; });
    bool print_coeff = !has_var || mag != 1;
    if (print_coeff) os << asympl::to_string(mag);
    bool need_star = print_coeff;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "a" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

void Polynomial::check_same_nvars(const Polynomial& other) const {
  if (other.nvars_ != nvars_)
    throw DimensionError("polynomials in " + std::to_string(nvars_) + " and " +
                         std::to_string(other.nvars_) + " variables");
}

void Polynomial::check_var(std::size_t var) const {
  if (var >= nvars_)
    throw DomainError("variable index " + std::to_string(var) + " out of range for " +
                      std::to_string(nvars_) + " variables");
}

NumericPolynomial::NumericPolynomial(const Polynomial& p) : nvars_(p.nvars()) {
  coeffs_.reserve(p.size());
  exponents_.reserve(p.size() * nvars_);
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c.get_d());
    for (unsigned x : e) {
      exponents_.push_back(x);
      max_degree_ = std::max(max_degree_, x);
    }
  }
}

double NumericPolynomial::evaluate(const std::vector<std::vector<double>>& powers) const {
  double sum = 0.0;
  const unsigned* e = exponents_.data();
  for (double c : coeffs_) {
    double t = c;
    for (std::size_t i = 0; i < nvars_; ++i, ++e)
      if (*e != 0) t *= powers[i][*e];
    sum += t;
  }
  return sum;
}

double NumericPolynomial::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point has wrong dimension");
  std::vector<std::vector<double>> powers;
  fill_powers(point, max_degree_, powers);
  return evaluate(powers);
}

void fill_powers(std::span<const double> point, unsigned max_degree,
                 std::vector<std::vector<double>>& powers) {
  powers.resize(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    auto& row = powers[i];
    row.resize(max_degree + 1);
    row[0] = 1.0;
    for (unsigned e = 1; e <= max_degree; ++e) row[e] = row[e - 1] * point[i];
  }
}

}  // namespace asympl
