#include "asympl/chart.hpp"
#include "asympl/errors.hpp"

namespace asympl {

namespace {

Rational as_rational(const Integer& z) { return Rational(z); }

void validate(const AATransform& T, std::size_t n) {
  if (T.Z.rows() != n || T.Z.cols() != n) throw DimensionError("transform matrix must be n x n");
  if (T.z.size() != n || T.G.size() != n) throw DimensionError("transform shift has wrong length");
  for (const auto& g : T.G)
    if (g.nvars() != n) throw DimensionError("angle shift must be a polynomial in the n actions");
  if (!T.Z.is_unimodular()) throw ValidationError("transform matrix is not unimodular");
}

// Interval image of sum_j coeff_j * [lo_j, hi_j] + shift.
Interval affine_hull(const IntegerMatrix& Z, std::size_t row, const Rational& shift,
                     const Box& box) {
  Interval out{Rational(shift), Rational(shift)};
  for (std::size_t j = 0; j < Z.cols(); ++j) {
    const Integer& c = Z(row, j);
    if (c == 0) continue;
    const Interval& iv = box[j];
    const auto& low_end = c > 0 ? iv.lo : iv.hi;
    const auto& high_end = c > 0 ? iv.hi : iv.lo;
    if (out.lo) {
      if (low_end)
        *out.lo += as_rational(c) * *low_end;
      else
        out.lo.reset();
    }
    if (out.hi) {
      if (high_end)
        *out.hi += as_rational(c) * *high_end;
      else
        out.hi.reset();
    }
  }
  return out;
}

}  // namespace

AATransform AATransform::identity(std::size_t n) { return linear(IntegerMatrix::identity(n)); }

AATransform AATransform::linear(IntegerMatrix Z) {
  const std::size_t n = Z.rows();
  return AATransform{std::move(Z), RationalVector(n, Rational(0)),
                     std::vector<Polynomial>(n, Polynomial(n))};
}

TransformedSystem apply_transform(const AlmostSymplecticChart& chart, const FourierFunction& F,
                                  const AATransform& T) {
  const std::size_t n = chart.n();
  if (F.n() != n) throw DimensionError("Hamiltonian and chart differ in degrees of freedom");
  validate(T, n);
  const IntegerMatrix Zinv = T.Z.inverse_unimodular();

  // a = Z^{-1} (a~ - z) as polynomials in a~.
  std::vector<Polynomial> old_actions;
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial p(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (Zinv(j, k) == 0) continue;
      const Rational c = as_rational(Zinv(j, k));
      p += (Polynomial::variable(n, k) - Polynomial::constant(n, T.z[k])) * c;
    }
    old_actions.push_back(std::move(p));
  }

  std::vector<std::vector<Polynomial>> Ac(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Ac[i][j] = chart.A(i, j).compose(old_actions);
      Ac[j][i] = -Ac[i][j];
    }

  // B = Z^{-T} A Z^{-1}, then subtract the exterior derivative of the shift.
  std::vector<std::vector<Polynomial>> B(n, std::vector<Polynomial>(n, Polynomial(n)));
  std::vector<Polynomial> shifted;
  for (const auto& g : T.G) shifted.push_back(g.compose(old_actions));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      Polynomial s(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (Zinv(i, k) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (Zinv(j, l) == 0 || Ac[i][j].is_zero()) continue;
          s += Ac[i][j] * as_rational(Zinv(i, k) * Zinv(j, l));
        }
      }
      s -= shifted[k].derivative(l) - shifted[l].derivative(k);
      B[k][l] = s;
      B[l][k] = -s;
    }

  std::vector<Interval> hull;
  for (std::size_t i = 0; i < n; ++i) hull.push_back(affine_hull(T.Z, i, T.z[i], chart.domain()));

  FourierFunction Fn(n);
  for (const auto& [nu, h] : F.harmonics()) {
    HarmonicIndex mapped(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < n; ++j) s += T.Z(i, j) * static_cast<long>(nu[j]);
      if (!s.fits_slong_p()) throw DomainError("relabeled harmonic index exceeds 64 bits");
      mapped[i] = s.get_si();
    }
    Polynomial phase_shift(n);
    for (std::size_t i = 0; i < n; ++i)
      if (mapped[i] != 0) phase_shift += T.G[i] * Rational(static_cast<long>(mapped[i]));
    if (!phase_shift.is_zero())
      throw DomainError("harmonic " + to_string(nu) +
                        " is not invariant under the angle shift; result has non-polynomial "
                        "coefficients");
    Fn.add_harmonic(mapped, h.cos_coeff.compose(old_actions), h.sin_coeff.compose(old_actions));
  }

  return {AlmostSymplecticChart(std::move(B), Box(std::move(hull))), std::move(Fn)};
}

std::vector<double> transform_actions(const AATransform& T, std::span<const double> a) {
  const std::size_t n = T.n();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = T.z[i].get_d();
    for (std::size_t j = 0; j < n; ++j) s += T.Z(i, j).get_d() * a[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> transform_angles(const AATransform& T, std::span<const double> a,
                                     std::span<const double> alpha) {
  const std::size_t n = T.n();
  const IntegerMatrix Zinv = T.Z.inverse_unimodular();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = T.G[i].evaluate(a);
    for (std::size_t j = 0; j < n; ++j) s += Zinv(j, i).get_d() * alpha[j];
    out[i] = s;
  }
  return out;
}

}  // namespace asympl
