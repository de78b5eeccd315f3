#include "asympl/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "asympl/errors.hpp"

namespace asympl {

namespace {

std::vector<Rational> axis_values(const Interval& iv, unsigned count) {
  std::vector<Rational> values;
  values.reserve(count);
  if (iv.bounded() && *iv.lo < *iv.hi) {
    for (unsigned t = 0; t < count; ++t) {
      Rational frac(t + 1, count + 1);
      frac.canonicalize();
      values.push_back(*iv.lo + (*iv.hi - *iv.lo) * frac);
    }
    return values;
  }
  // Unbounded or degenerate: integer steps away from the finite endpoint.
  const Rational start = iv.lo ? *iv.lo : (iv.hi ? *iv.hi : Rational(0));
  const int dir = iv.lo ? 1 : (iv.hi ? -1 : 1);
  for (unsigned t = 0; t < count; ++t) values.push_back(start + Rational(dir * static_cast<int>(t)));
  return values;
}

}  // namespace

bool Spectrum::contains(const HarmonicIndex& nu) const {
  return std::binary_search(support.begin(), support.end(), nu);
}

Spectrum spectrum(const FourierFunction& F) {
  Spectrum s;
  for (const auto& [nu, h] : F.harmonics())
    if (!is_zero_index(nu) && !h.is_zero()) s.support.push_back(nu);
  return s;
}

Spectrum spectrum_at(const FourierFunction& F, std::span<const Rational> a) {
  Spectrum s;
  for (const auto& [nu, h] : F.harmonics()) {
    if (is_zero_index(nu)) continue;
    if (h.cos_coeff.evaluate(a) != 0 || h.sin_coeff.evaluate(a) != 0) s.support.push_back(nu);
  }
  return s;
}

std::optional<RationalVector> find_nonzero_point(const Polynomial& p, const Box& box) {
  if (p.is_zero()) return std::nullopt;
  const std::size_t n = p.nvars();
  if (box.dim() != n) throw DimensionError("box and polynomial differ in dimension");
  std::vector<std::vector<Rational>> axes;
  for (std::size_t i = 0; i < n; ++i) axes.push_back(axis_values(box[i], p.degree_in(i) + 1));
  // Odometer over the product grid; the first hit is returned.
  std::vector<std::size_t> idx(n, 0);
  RationalVector point(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) point[i] = axes[i][idx[i]];
    if (p.evaluate(point) != 0) return point;
    std::size_t i = 0;
    while (i < n && ++idx[i] == axes[i].size()) idx[i++] = 0;
    if (i == n) break;
  }
  throw Error("internal: nonzero polynomial vanished on its nonvanishing grid");
}

std::string ClassificationWitness::describe() const {
  std::ostringstream os;
  os << "harmonic " << to_string(nu) << ": sum_k C_{" << i + 1 << "," << j + 1
     << ",k} nu_k times the " << (sine_part ? "sine" : "cosine") << " coefficient equals "
     << asympl::to_string(value) << " at a = (";
  for (std::size_t t = 0; t < point.size(); ++t)
    os << (t ? ", " : "") << asympl::to_string(point[t]);
  os << ")";
  return os.str();
}

FullHamiltonianVerdict is_fully_hamiltonian(const AlmostSymplecticChart& chart,
                                            const FourierFunction& F) {
  return is_fully_hamiltonian(chart, c_tensor(chart), F);
}

FullHamiltonianVerdict is_fully_hamiltonian(const AlmostSymplecticChart& chart, const CTensor& C,
                                            const FourierFunction& F) {
  const std::size_t n = chart.n();
  if (F.n() != n || C.n() != n) throw DimensionError("function, chart and C tensor differ in n");
  if (C.is_zero()) return {true, std::nullopt};
  for (const auto& nu : spectrum(F).support) {
    const Harmonic& h = F.harmonics().at(nu);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Polynomial contraction(n);
        for (std::size_t k = 0; k < n; ++k)
          if (nu[k] != 0) contraction += C(i, j, k) * Rational(static_cast<long>(nu[k]));
        if (contraction.is_zero()) continue;
        const bool sine = h.cos_coeff.is_zero();
        const Polynomial product = contraction * (sine ? h.sin_coeff : h.cos_coeff);
        auto point = find_nonzero_point(product, chart.domain());
        ClassificationWitness w{nu, i, j, *point, product.evaluate(*point), sine};
        return {false, std::move(w)};
      }
  }
  return {true, std::nullopt};
}

double full_hamiltonian_residual(const CTensor& C, const FourierFunction& F,
                                 std::span<const double> a, std::span<const double> alpha) {
  const std::size_t n = C.n();
  std::vector<double> grad(n);
  for (std::size_t k = 0; k < n; ++k) grad[k] = F.d_angle(k).evaluate(a, alpha);
  const auto Ca = C.matrix_at(a);
  double sum = 0.0;
  for (const auto& row : Ca) {
    double v = 0.0;
    for (std::size_t k = 0; k < n; ++k) v += row[k] * grad[k];
    sum += v * v;
  }
  return std::sqrt(sum);
}

RankBoundReport verify_rank_bound(const AlmostSymplecticChart& chart, std::size_t samples,
                                  std::uint64_t seed) {
  const std::size_t n = chart.n();
  const CTensor C = c_tensor(chart);
  RankBoundReport report;
  report.samples = samples;
  report.symplectic = C.is_zero();
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const RationalVector a = random_point(chart.domain(), rng);
    const RationalRows m = C.matrix_at(a);
    const bool nonzero = std::any_of(m.begin(), m.end(), [](const RationalVector& row) {
      return std::any_of(row.begin(), row.end(), [](const Rational& x) { return x != 0; });
    });
    const std::size_t dim = kernel_at(C, chart.domain(), a).size();
    ++report.kernel_dimensions[dim];
    if (nonzero) {
      ++report.nonzero_points;
      if (n < 3 || dim > n - 3) ++report.violations;
    }
  }
  return report;
}

}  // namespace asympl
