#include "asympl/normalize.hpp"

#include "asympl/errors.hpp"

namespace asympl {

NormalizedSystem normalize_hamiltonian(const AlmostSymplecticChart& chart,
                                       const FourierFunction& F) {
  const std::size_t n = chart.n();
  if (F.n() != n) throw DimensionError("Hamiltonian and chart differ in degrees of freedom");
  const CTensor C = c_tensor(chart);
  auto verdict = is_fully_hamiltonian(chart, C, F);
  if (!verdict) throw RejectedHamiltonian(std::move(*verdict.witness));

  LatticeNormalization lattice = saturate_and_complete(spectrum(F).support, n);
  AATransform T = AATransform::linear(lattice.M);
  TransformedSystem sys = apply_transform(chart, F, T);

  for (const auto& [nu, h] : sys.F.harmonics())
    for (std::size_t i = lattice.r; i < n; ++i)
      if (nu[i] != 0) throw Error("internal: normalized spectrum leaves the first r slots");
  if (!C.is_zero() && lattice.k() < 3)
    throw Error("internal: fully-Hamiltonian spectrum of rank above n - 3 on a non-closed chart");

  const std::size_t r = lattice.r;
  const std::size_t k = lattice.k();
  return NormalizedSystem{std::move(sys.chart), std::move(sys.F), std::move(lattice),
                          std::move(T),        r,                k,
                          C.is_zero()};
}

}  // namespace asympl
