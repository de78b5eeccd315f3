#include "asympl/chart.hpp"
#include "asympl/errors.hpp"

namespace asympl {

AAVectorField::AAVectorField(std::size_t n_)
    : n(n_), da(n_, FourierFunction(n_)), dalpha(n_, FourierFunction(n_)) {}

AAVectorField AAVectorField::operator-() const {
  AAVectorField r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.da[i] = -da[i];
    r.dalpha[i] = -dalpha[i];
  }
  return r;
}

AAVectorField hamiltonian_vector_field(const AlmostSymplecticChart& chart,
                                       const FourierFunction& F) {
  const std::size_t n = chart.n();
  if (F.n() != n) throw DimensionError("Hamiltonian and chart differ in degrees of freedom");
  std::vector<FourierFunction> dF_dalpha;
  dF_dalpha.reserve(n);
  for (std::size_t j = 0; j < n; ++j) dF_dalpha.push_back(F.d_angle(j));
  AAVectorField X(n);
  for (std::size_t i = 0; i < n; ++i) {
    X.da[i] = -dF_dalpha[i];
    FourierFunction rate = F.d_action(i);
    for (std::size_t j = 0; j < n; ++j)
      if (!chart.A(i, j).is_zero() && !dF_dalpha[j].is_zero())
        rate += dF_dalpha[j] * chart.A(i, j);
    X.dalpha[i] = std::move(rate);
  }
  return X;
}

FourierFunction almost_poisson_bracket(const AlmostSymplecticChart& chart,
                                       const FourierFunction& F, const FourierFunction& G) {
  const std::size_t n = chart.n();
  if (F.n() != n || G.n() != n) throw DimensionError("bracket operands differ from chart");
  std::vector<FourierFunction> Fa, Falpha, Ga, Galpha;
  for (std::size_t i = 0; i < n; ++i) {
    Fa.push_back(F.d_action(i));
    Falpha.push_back(F.d_angle(i));
    Ga.push_back(G.d_action(i));
    Galpha.push_back(G.d_angle(i));
  }
  FourierFunction out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out += Falpha[i] * Ga[i];
    out -= Fa[i] * Galpha[i];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (chart.A(i, j).is_zero() || Falpha[i].is_zero() || Galpha[j].is_zero()) continue;
      out += (Falpha[i] * Galpha[j]) * chart.A(i, j);
    }
  return out;
}

FourierFunction divergence(const AAVectorField& X) {
  FourierFunction d(X.n);
  for (std::size_t i = 0; i < X.n; ++i) {
    d += X.da[i].d_action(i);
    d += X.dalpha[i].d_angle(i);
  }
  return d;
}

FourierFunction lie_derivative(const AAVectorField& X, const FourierFunction& G) {
  if (G.n() != X.n) throw DimensionError("vector field and function differ in dimension");
  FourierFunction out(X.n);
  for (std::size_t i = 0; i < X.n; ++i) {
    if (!X.da[i].is_zero()) out += X.da[i] * G.d_action(i);
    if (!X.dalpha[i].is_zero()) out += X.dalpha[i] * G.d_angle(i);
  }
  return out;
}

AAVectorField lie_bracket(const AAVectorField& X, const AAVectorField& Y) {
  if (X.n != Y.n) throw DimensionError("vector fields differ in dimension");
  AAVectorField B(X.n);
  for (std::size_t m = 0; m < X.n; ++m) {
    B.da[m] = lie_derivative(X, Y.da[m]) - lie_derivative(Y, X.da[m]);
    B.dalpha[m] = lie_derivative(X, Y.dalpha[m]) - lie_derivative(Y, X.dalpha[m]);
  }
  return B;
}

}  // namespace asympl
