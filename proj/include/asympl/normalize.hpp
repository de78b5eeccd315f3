#pragma once

#include <cstddef>

#include "asympl/chart.hpp"
#include "asympl/errors.hpp"
#include "asympl/lattice.hpp"
#include "asympl/spectra.hpp"

namespace asympl {

/// Result of pushing a fully-Hamiltonian pair into angle-normalized coordinates:
/// the spectrum of F' lives in the first r index slots, the last k angles are absent.
struct NormalizedSystem {
  AlmostSymplecticChart chart;
  FourierFunction F;
  LatticeNormalization lattice;
  AATransform transform;
  std::size_t r = 0;
  std::size_t k = 0;
  /// C of the INPUT chart vanishes identically (every F is fully-Hamiltonian).
  bool symplectic = false;
};

/// Throws ClassificationError (message carries the witness) if F is not
/// fully-Hamiltonian on the chart.
NormalizedSystem normalize_hamiltonian(const AlmostSymplecticChart& chart, const FourierFunction& F);

/// ClassificationError that keeps the structured witness.
class RejectedHamiltonian : public ClassificationError {
 public:
  explicit RejectedHamiltonian(ClassificationWitness w)
      : ClassificationError("not fully-Hamiltonian: " + w.describe()), witness_(std::move(w)) {}
  const ClassificationWitness& witness() const { return witness_; }

 private:
  ClassificationWitness witness_;
};

}  // namespace asympl
