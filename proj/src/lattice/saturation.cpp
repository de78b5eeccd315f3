#include "asympl/errors.hpp"
#include "asympl/lattice.hpp"

namespace asympl {

namespace {

IntegerMatrix rows_to_matrix(const std::vector<HarmonicIndex>& rows, std::size_t n) {
  IntegerMatrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) throw DimensionError("lattice vector has wrong length");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return m;
}

HarmonicIndex matrix_row(const IntegerMatrix& m, std::size_t r) {
  HarmonicIndex v(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!m(r, c).fits_slong_p()) throw DomainError("lattice vector entry exceeds 64 bits");
    v[c] = m(r, c).get_si();
  }
  return v;
}

HarmonicIndex unit_vector(std::size_t n, std::size_t j) {
  HarmonicIndex e(n, 0);
  e[j] = 1;
  return e;
}

}  // namespace

bool is_saturated(const std::vector<HarmonicIndex>& rows, std::size_t n) {
  if (rows.empty()) return true;
  const auto snf = smith_normal_form(rows_to_matrix(rows, n));
  if (snf.rank != rows.size()) return false;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) return false;
  return true;
}

LatticeNormalization saturate_and_complete(const std::vector<HarmonicIndex>& generators,
                                           std::size_t n) {
  LatticeNormalization out;
  out.n = n;
  out.generators = generators;

  if (!generators.empty()) {
    // U G W = D gives G = U^-1 D W^-1: the first r rows of W^-1 are a Z-basis
    // of span_R(G) intersected with Z^n.
    const auto snf = smith_normal_form(rows_to_matrix(generators, n));
    out.r = snf.rank;
    if (out.r > 0) {
      const IntegerMatrix W_inv = snf.W.inverse_unimodular();
      IntegerMatrix basis(out.r, n);
      for (std::size_t i = 0; i < out.r; ++i)
        for (std::size_t c = 0; c < n; ++c) basis(i, c) = W_inv(i, c);
      // The Hermite form is a canonical basis of the lattice.
      const auto hnf = hermite_normal_form(basis);
      for (std::size_t i = 0; i < out.r; ++i) out.saturation_basis.push_back(matrix_row(hnf.H, i));
    }
  }

  // Completion: prefer unit vectors in index order, then fall back to the
  // Smith factor of the partial basis.
  std::vector<HarmonicIndex> current = out.saturation_basis;
  for (std::size_t j = 0; j < n && current.size() < n; ++j) {
    auto candidate = current;
    candidate.push_back(unit_vector(n, j));
    if (is_saturated(candidate, n)) {
      current = std::move(candidate);
      out.completion.push_back(unit_vector(n, j));
    }
  }
  if (current.size() < n) {
    const auto snf = smith_normal_form(rows_to_matrix(current, n));
    const IntegerMatrix W_inv = snf.W.inverse_unimodular();
    for (std::size_t i = current.size(); i < n; ++i) out.completion.push_back(matrix_row(W_inv, i));
  }

  std::vector<HarmonicIndex> all = out.saturation_basis;
  all.insert(all.end(), out.completion.begin(), out.completion.end());
  const IntegerMatrix P = rows_to_matrix(all, n);
  if (!P.is_unimodular()) throw Error("internal: basis completion is not unimodular");
  out.M_inv = P.transpose();
  out.M = P.inverse_unimodular().transpose();
  return out;
}

}  // namespace asympl
