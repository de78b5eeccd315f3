#include "asympl/chart.hpp"

#include "asympl/errors.hpp"

namespace asympl {

bool Box::contains(std::span<const Rational> a) const {
  if (a.size() != intervals_.size()) throw DimensionError("point and box differ in dimension");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!intervals_[i].contains(a[i])) return false;
  return true;
}

bool Box::contains(std::span<const double> a) const {
  if (a.size() != intervals_.size()) throw DimensionError("point and box differ in dimension");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!intervals_[i].contains(a[i])) return false;
  return true;
}

AlmostSymplecticChart::AlmostSymplecticChart(std::vector<std::vector<Polynomial>> A, Box domain)
    : n_(A.size()), A_(std::move(A)), domain_(std::move(domain)) {
  if (domain_.dim() != n_)
    throw DimensionError("chart domain has dimension " + std::to_string(domain_.dim()) +
                         ", expected " + std::to_string(n_));
  for (const auto& iv : domain_.intervals())
    if (iv.bounded() && *iv.lo > *iv.hi) throw ValidationError("empty domain interval");
  for (std::size_t i = 0; i < n_; ++i) {
    if (A_[i].size() != n_) throw DimensionError("A must be square");
    for (std::size_t j = 0; j < n_; ++j)
      if (A_[i][j].nvars() != n_)
        throw DimensionError("A entries must be polynomials in the n actions");
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if (A_[i][j] != -A_[j][i])
        throw ValidationError("A is not antisymmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
}

AlmostSymplecticChart AlmostSymplecticChart::from_upper(
    std::size_t n, const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& upper,
    Box domain) {
  std::vector<std::vector<Polynomial>> A(n, std::vector<Polynomial>(n, Polynomial(n)));
  for (const auto& [ij, p] : upper) {
    const auto [i, j] = ij;
    if (i >= n || j >= n || i >= j)
      throw ValidationError("upper entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") must satisfy i < j <= n");
    A[i][j] = p;
    A[j][i] = -p;
  }
  return AlmostSymplecticChart(std::move(A), std::move(domain));
}

AlmostSymplecticChart AlmostSymplecticChart::canonical(std::size_t n, Box domain) {
  return from_upper(n, {}, std::move(domain));
}

bool AlmostSymplecticChart::has_constant_form() const {
  for (const auto& row : A_)
    for (const auto& p : row)
      if (!p.is_constant()) return false;
  return true;
}

}  // namespace asympl
