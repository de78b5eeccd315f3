#include "asympl/reduction.hpp"

#include <array>
#include <cmath>

#include "asympl/errors.hpp"

namespace asympl {

namespace {

// Sets the last k actions to c and drops them from the variable list.
Polynomial restrict_to_level(const Polynomial& p, std::size_t r, const RationalVector& c) {
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < r; ++i) images.push_back(Polynomial::variable(r, i));
  for (const auto& cm : c) images.push_back(Polynomial::constant(r, cm));
  return p.compose(images);
}

FourierFunction restrict_to_level(const FourierFunction& F, std::size_t r, const RationalVector& c) {
  FourierFunction out(r);
  for (const auto& [nu, h] : F.harmonics()) {
    for (std::size_t i = r; i < nu.size(); ++i)
      if (nu[i] != 0)
        throw ValidationError("Hamiltonian depends on the reduced angle psi_" +
                              std::to_string(i - r + 1) + " (harmonic " + to_string(nu) + ")");
    HarmonicIndex head(nu.begin(), nu.begin() + static_cast<std::ptrdiff_t>(r));
    out.add_harmonic(head, restrict_to_level(h.cos_coeff, r, c), restrict_to_level(h.sin_coeff, r, c));
  }
  return out;
}

void require_psi_independent(const FourierFunction& F, std::size_t r) {
  for (const auto& [nu, h] : F.harmonics())
    for (std::size_t i = r; i < nu.size(); ++i)
      if (nu[i] != 0)
        throw ValidationError("Hamiltonian is not normalized: harmonic " + to_string(nu) +
                              " involves the last k angles");
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267,
                                         -0.5255324099163290, -0.1834346424956498,
                                         0.1834346424956498,  0.5255324099163290,
                                         0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745,
                                           0.3137066458778873, 0.3626837833783620,
                                           0.3626837833783620, 0.3137066458778873,
                                           0.2223810344533745, 0.1012285362903763};

}  // namespace

ReducedSystem reduce(const AlmostSymplecticChart& chart, const FourierFunction& F,
                     const NormalizedSplit& split, const RationalVector& c) {
  const std::size_t n = chart.n();
  if (split.n != n || F.n() != n) throw DimensionError("split, chart and Hamiltonian differ in n");
  if (split.k > n) throw DimensionError("split has k > n");
  const std::size_t r = split.r();
  if (r == 0) throw RegimeError("nothing to reduce: r = 0 (the flow is vertical)");
  if (c.size() != split.k) throw DimensionError("momentum level must have k entries");
  for (std::size_t m = 0; m < split.k; ++m)
    if (!chart.domain()[r + m].contains(c[m]))
      throw DomainError("momentum level c_" + std::to_string(m + 1) + " = " + to_string(c[m]) +
                        " lies outside the domain");
  require_psi_independent(F, r);

  std::vector<std::vector<Polynomial>> A(r, std::vector<Polynomial>(r, Polynomial(r)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A[i][j] = restrict_to_level(chart.A(i, j), r, c);
  std::vector<Interval> box(chart.domain().intervals().begin(),
                            chart.domain().intervals().begin() + static_cast<std::ptrdiff_t>(r));

  ReducedSystem red{r, c, AlmostSymplecticChart(std::move(A), Box(std::move(box))),
                    restrict_to_level(F, r, c), {}, {}};
  for (std::size_t m = 0; m < split.k; ++m) {
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < r; ++j) row.push_back(restrict_to_level(chart.A(r + m, j), r, c));
    red.A_JI.push_back(std::move(row));
    red.dF_dJ.push_back(restrict_to_level(F.d_action(r + m), r, c));
  }
  return red;
}

std::vector<std::vector<double>> reconstruct(const ReducedSystem& reduced,
                                             const Trajectory& traj,
                                             std::span<const double> psi0) {
  const std::size_t r = reduced.r;
  const std::size_t k = reduced.dF_dJ.size();
  if (traj.n != r) throw DimensionError("trajectory does not belong to the reduced system");
  if (psi0.size() != k) throw DimensionError("psi0 must have k entries");
  if (traj.dense.empty()) throw ValidationError("reconstruction needs a trajectory with dense output");
  if (std::abs(traj.dense.front().t0 - traj.times.front()) > 1e-12 ||
      traj.dense.back().t1 < traj.times.back() - 1e-9)
    throw ValidationError("time grid of the trajectory does not match its dense output");

  std::vector<NumericFourier> rates;
  for (std::size_t m = 0; m < k; ++m) {
    FourierFunction rate = reduced.dF_dJ[m];
    for (std::size_t j = 0; j < r; ++j) rate += reduced.f_c.d_angle(j) * reduced.A_JI[m][j];
    rates.emplace_back(rate);
  }
  std::vector<double> acc(psi0.begin(), psi0.end());
  auto integrate_piece = [&](const DenseStep& step, double a, double b, std::vector<double>& out) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
      const std::vector<double> x = step.evaluate(mid + half * kNodes[q]);
      std::span<const double> xs(x);
      for (std::size_t m = 0; m < k; ++m)
        out[m] += kWeights[q] * half * rates[m].evaluate(xs.subspan(0, r), xs.subspan(r, r));
    }
  };

  std::vector<std::vector<double>> psi;
  std::size_t step = 0;
  double step_start = traj.dense.front().t0;
  for (double t : traj.times) {
    while (step < traj.dense.size() && traj.dense[step].t1 <= t) {
      integrate_piece(traj.dense[step], step_start, traj.dense[step].t1, acc);
      step_start = traj.dense[step].t1;
      ++step;
    }
    std::vector<double> value = acc;
    if (step < traj.dense.size() && t > step_start) integrate_piece(traj.dense[step], step_start, t, value);
    psi.push_back(std::move(value));
  }
  return psi;
}

AAVectorField push_forward_shift(const AAVectorField& X, const std::vector<Polynomial>& G) {
  const std::size_t n = X.n;
  if (G.size() != n) throw DimensionError("angle shift must have n entries");
  // The shift must leave every component's angle dependence untouched.
  auto involves_shifted = [&](const FourierFunction& f) {
    for (const auto& [nu, h] : f.harmonics())
      for (std::size_t i = 0; i < n; ++i)
        if (nu[i] != 0 && !G[i].is_zero()) return true;
    return false;
  };
  AAVectorField Y = X;
  for (std::size_t i = 0; i < n; ++i) {
    if (involves_shifted(X.da[i]) || involves_shifted(X.dalpha[i]))
      throw DomainError("vector field depends on a shifted angle");
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial dG = G[i].derivative(j);
      if (!dG.is_zero()) Y.dalpha[i] += X.da[j] * dG;
    }
  }
  return Y;
}

SymplectizedSystem symplectize(const AlmostSymplecticChart& chart, const FourierFunction& F,
                               const NormalizedSplit& split, std::optional<Rational> I0) {
  const std::size_t n = chart.n();
  if (split.n != n || F.n() != n) throw DimensionError("split, chart and Hamiltonian differ in n");
  if (split.r() != 1)
    throw RegimeError("symplectize needs r = 1 (got r = " + std::to_string(split.r()) +
                      "); use reduce at momentum levels instead");
  require_psi_independent(F, 1);

  const Interval& iv = chart.domain()[0];
  Rational base = I0 ? *I0
                  : iv.bounded() ? Rational((*iv.lo + *iv.hi) / 2)
                  : iv.lo        ? *iv.lo
                  : iv.hi        ? *iv.hi
                                 : Rational(0);
  if (!iv.contains(base)) throw DomainError("base point I0 lies outside the I-interval");

  SymplectizedSystem out{split, base, {}, AATransform::identity(n), chart, F, false};
  for (std::size_t m = 1; m < n; ++m) {
    Polynomial g = chart.A(m, 0).definite_integral(0, base, 0);
    out.transform.G[m] = g;
    out.G.push_back(std::move(g));
  }
  TransformedSystem sys = apply_transform(chart, F, out.transform);
  out.chart = std::move(sys.chart);
  out.F = std::move(sys.F);

  const AAVectorField pushed = push_forward_shift(hamiltonian_vector_field(chart, F), out.transform.G);
  const AAVectorField canonical =
      hamiltonian_vector_field(AlmostSymplecticChart::canonical(n, out.chart.domain()), out.F);
  out.exact_identity = pushed == canonical && hamiltonian_vector_field(out.chart, out.F) == canonical;
  return out;
}

}  // namespace asympl
