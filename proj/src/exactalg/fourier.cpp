#include "asympl/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "asympl/errors.hpp"

namespace asympl {

bool is_zero_index(const HarmonicIndex& nu) {
  return std::all_of(nu.begin(), nu.end(), [](std::int64_t x) { return x == 0; });
}

bool is_canonical(const HarmonicIndex& nu) {
  for (std::int64_t x : nu)
    if (x != 0) return x > 0;
  return true;
}

HarmonicIndex primitive_direction(const HarmonicIndex& nu) {
  std::int64_t g = 0;
  for (std::int64_t x : nu) g = std::gcd(g, x);
  if (g == 0) throw DomainError("zero harmonic has no direction");
  HarmonicIndex d(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) d[i] = nu[i] / g;
  if (!is_canonical(d))
    for (auto& x : d) x = -x;
  return d;
}

std::string to_string(const HarmonicIndex& nu) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < nu.size(); ++i) os << (i ? "," : "") << nu[i];
  os << ")";
  return os.str();
}

FourierFunction FourierFunction::basic(const Polynomial& p) {
  FourierFunction f(p.nvars());
  f.add_harmonic(HarmonicIndex(p.nvars(), 0), p, Polynomial(p.nvars()));
  return f;
}

FourierFunction FourierFunction::cosine(const HarmonicIndex& nu, const Polynomial& coeff) {
  FourierFunction f(coeff.nvars());
  f.add_harmonic(nu, coeff, Polynomial(coeff.nvars()));
  return f;
}

FourierFunction FourierFunction::sine(const HarmonicIndex& nu, const Polynomial& coeff) {
  FourierFunction f(coeff.nvars());
  f.add_harmonic(nu, Polynomial(coeff.nvars()), coeff);
  return f;
}

FourierFunction FourierFunction::constant(std::size_t n, const Rational& c) {
  return basic(Polynomial::constant(n, c));
}

FourierFunction FourierFunction::action(std::size_t n, std::size_t var) {
  return basic(Polynomial::variable(n, var));
}

bool FourierFunction::is_angle_independent() const {
  return std::all_of(harmonics_.begin(), harmonics_.end(),
                     [](const auto& h) { return is_zero_index(h.first); });
}

bool FourierFunction::independent_of_angle(std::size_t angle) const {
  if (angle >= n_) throw DomainError("angle index out of range");
  return std::all_of(harmonics_.begin(), harmonics_.end(),
                     [angle](const auto& h) { return h.first[angle] == 0; });
}

Polynomial FourierFunction::mean() const {
  auto it = harmonics_.find(HarmonicIndex(n_, 0));
  return it == harmonics_.end() ? Polynomial(n_) : it->second.cos_coeff;
}

void FourierFunction::add_harmonic(const HarmonicIndex& nu, const Polynomial& c,
                                   const Polynomial& s) {
  if (nu.size() != n_) throw DimensionError("harmonic index has wrong length");
  if (c.nvars() != n_ || s.nvars() != n_)
    throw DimensionError("harmonic coefficient has wrong number of variables");
  const bool zero = is_zero_index(nu);
  const bool flip = !is_canonical(nu);
  if (c.is_zero() && (zero || s.is_zero())) return;
  HarmonicIndex key = nu;
  if (flip)
    for (auto& x : key) x = -x;
  auto& h = harmonics_[key];
  if (h.cos_coeff.nvars() != n_) h = Harmonic{Polynomial(n_), Polynomial(n_)};
  h.cos_coeff += c;
  if (!zero) {
    if (flip)
      h.sin_coeff -= s;
    else
      h.sin_coeff += s;
  }
  if (h.is_zero()) harmonics_.erase(key);
}

FourierFunction FourierFunction::operator-() const {
  FourierFunction r(*this);
  for (auto& [nu, h] : r.harmonics_) {
    h.cos_coeff = -h.cos_coeff;
    h.sin_coeff = -h.sin_coeff;
  }
  return r;
}

FourierFunction& FourierFunction::operator+=(const FourierFunction& g) {
  check_same_n(g);
  for (const auto& [nu, h] : g.harmonics_) add_harmonic(nu, h.cos_coeff, h.sin_coeff);
  return *this;
}

FourierFunction& FourierFunction::operator-=(const FourierFunction& g) {
  check_same_n(g);
  for (const auto& [nu, h] : g.harmonics_) add_harmonic(nu, -h.cos_coeff, -h.sin_coeff);
  return *this;
}

FourierFunction& FourierFunction::operator*=(const Polynomial& p) {
  if (p.nvars() != n_) throw DimensionError("polynomial factor has wrong number of variables");
  Harmonics out;
  for (auto& [nu, h] : harmonics_) {
    Harmonic m{h.cos_coeff * p, h.sin_coeff * p};
    if (!m.is_zero()) out.emplace(nu, std::move(m));
  }
  harmonics_ = std::move(out);
  return *this;
}

FourierFunction& FourierFunction::operator*=(const Rational& c) {
  if (c == 0) {
    harmonics_.clear();
    return *this;
  }
  for (auto& [nu, h] : harmonics_) {
    h.cos_coeff *= c;
    h.sin_coeff *= c;
  }
  return *this;
}

FourierFunction operator*(const FourierFunction& f, const FourierFunction& g) {
  f.check_same_n(g);
  const std::size_t n = f.n_;
  const Rational half(1, 2);
  FourierFunction r(n);
  HarmonicIndex plus(n), minus(n);
  for (const auto& [nu1, h1] : f.harmonics_) {
    for (const auto& [nu2, h2] : g.harmonics_) {
      for (std::size_t i = 0; i < n; ++i) {
        plus[i] = nu1[i] + nu2[i];
        minus[i] = nu1[i] - nu2[i];
      }
      const Polynomial cc = h1.cos_coeff * h2.cos_coeff;
      const Polynomial ss = h1.sin_coeff * h2.sin_coeff;
      const Polynomial sc = h1.sin_coeff * h2.cos_coeff;
      const Polynomial cs = h1.cos_coeff * h2.sin_coeff;
      // (c1 cos A + s1 sin A)(c2 cos B + s2 sin B)
      r.add_harmonic(plus, (cc - ss) * half, (sc + cs) * half);
      r.add_harmonic(minus, (cc + ss) * half, (sc - cs) * half);
    }
  }
  return r;
}

FourierFunction FourierFunction::d_action(std::size_t var) const {
  if (var >= n_) throw DomainError("action index out of range");
  FourierFunction r(n_);
  for (const auto& [nu, h] : harmonics_)
    r.add_harmonic(nu, h.cos_coeff.derivative(var), h.sin_coeff.derivative(var));
  return r;
}

FourierFunction FourierFunction::d_angle(std::size_t var) const {
  if (var >= n_) throw DomainError("angle index out of range");
  FourierFunction r(n_);
  for (const auto& [nu, h] : harmonics_) {
    if (nu[var] == 0) continue;
    const Rational k(static_cast<long>(nu[var]));
    r.add_harmonic(nu, h.sin_coeff * k, h.cos_coeff * (-k));
  }
  return r;
}

FourierFunction FourierFunction::compose_actions(std::span<const Polynomial> images) const {
  const std::size_t target = images.empty() ? 0 : images.front().nvars();
  if (images.size() != n_ || target != n_)
    throw DimensionError("compose_actions needs n images in n variables");
  FourierFunction r(n_);
  for (const auto& [nu, h] : harmonics_)
    r.add_harmonic(nu, h.cos_coeff.compose(images), h.sin_coeff.compose(images));
  return r;
}

double FourierFunction::evaluate(std::span<const double> a, std::span<const double> alpha) const {
  return NumericFourier(*this).evaluate(a, alpha);
}

Rational FourierFunction::evaluate_exact(std::span<const Rational> a,
                                         std::span<const int> quarter_turns) const {
  if (a.size() != n_ || quarter_turns.size() != n_)
    throw DimensionError("evaluation point has wrong dimension");
  static constexpr int kCos[4] = {1, 0, -1, 0};
  static constexpr int kSin[4] = {0, 1, 0, -1};
  Rational sum(0);
  for (const auto& [nu, h] : harmonics_) {
    std::int64_t q = 0;
    for (std::size_t i = 0; i < n_; ++i) q += nu[i] * quarter_turns[i];
    const int phase = static_cast<int>(((q % 4) + 4) % 4);
    if (kCos[phase] != 0) sum += h.cos_coeff.evaluate(a) * kCos[phase];
    if (kSin[phase] != 0) sum += h.sin_coeff.evaluate(a) * kSin[phase];
  }
  return sum;
}

std::string FourierFunction::to_string() const {
  if (harmonics_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  auto angle = [](const HarmonicIndex& nu) {
    std::ostringstream s;
    bool lead = true;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu[i] == 0) continue;
      const std::int64_t m = nu[i] < 0 ? -nu[i] : nu[i];
      if (!lead || nu[i] < 0) s << (nu[i] < 0 ? "-" : "+");
      if (m != 1) s << m << "*";
      s << "alpha" << (i + 1);
      lead = false;
    }
    return s.str();
  };
  for (const auto& [nu, h] : harmonics_) {
    const bool zero = is_zero_index(nu);
    if (!h.cos_coeff.is_zero()) {
      os << (first ? "" : " + ") << "(" << h.cos_coeff.to_string() << ")";
      if (!zero) os << "*cos(" << angle(nu) << ")";
      first = false;
    }
    if (!h.sin_coeff.is_zero()) {
      os << (first ? "" : " + ") << "(" << h.sin_coeff.to_string() << ")*sin(" << angle(nu)
         << ")";
      first = false;
    }
  }
  return os.str();
}

void FourierFunction::check_same_n(const FourierFunction& g) const {
  if (g.n_ != n_)
    throw DimensionError("Fourier functions with " + std::to_string(n_) + " and " +
                         std::to_string(g.n_) + " degrees of freedom");
}

NumericFourier::NumericFourier(const FourierFunction& f) {
  for (const auto& [nu, h] : f.harmonics()) {
    Mode m;
    m.nu.assign(nu.begin(), nu.end());
    m.cos_coeff = NumericPolynomial(h.cos_coeff);
    m.sin_coeff = NumericPolynomial(h.sin_coeff);
    max_degree_ = std::max({max_degree_, m.cos_coeff.max_degree(), m.sin_coeff.max_degree()});
    modes_.push_back(std::move(m));
  }
}

double NumericFourier::evaluate(std::span<const double> a, std::span<const double> alpha) const {
  std::vector<std::vector<double>> powers;
  fill_powers(a, max_degree_, powers);
  return evaluate(powers, alpha);
}

double NumericFourier::evaluate(const std::vector<std::vector<double>>& powers,
                                std::span<const double> alpha) const {
  double sum = 0.0;
  for (const auto& m : modes_) {
    double phase = 0.0;
    for (std::size_t i = 0; i < m.nu.size(); ++i) phase += m.nu[i] * alpha[i];
    if (!m.cos_coeff.is_zero()) sum += m.cos_coeff.evaluate(powers) * std::cos(phase);
    if (!m.sin_coeff.is_zero()) sum += m.sin_coeff.evaluate(powers) * std::sin(phase);
  }
  return sum;
}

}  // namespace asympl
