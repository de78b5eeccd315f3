#include <algorithm>

#include "asympl/chart.hpp"
#include "asympl/errors.hpp"

namespace asympl {

CTensor::CTensor(std::size_t n) : n_(n) {}

Polynomial CTensor::operator()(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= n_ || j >= n_ || k >= n_) throw DomainError("C tensor index out of range");
  if (i == j || j == k || i == k) return Polynomial(n_);
  std::array<std::size_t, 3> idx{i, j, k};
  // Parity of the sorting permutation.
  int sign = 1;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (idx[a] > idx[b]) sign = -sign;
  std::sort(idx.begin(), idx.end());
  auto it = entries_.find(idx);
  if (it == entries_.end()) return Polynomial(n_);
  return sign > 0 ? it->second : -it->second;
}

void CTensor::set(std::size_t i, std::size_t j, std::size_t k, Polynomial p) {
  if (!(i < j && j < k && k < n_)) throw DomainError("CTensor::set needs i < j < k < n");
  if (p.is_zero())
    entries_.erase({i, j, k});
  else
    entries_[{i, j, k}] = std::move(p);
}

RationalRows CTensor::matrix_at(std::span<const Rational> a) const {
  RationalRows rows;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      RationalVector row(n_, Rational(0));
      for (std::size_t k = 0; k < n_; ++k) row[k] = (*this)(i, j, k).evaluate(a);
      rows.push_back(std::move(row));
    }
  return rows;
}

std::vector<std::vector<double>> CTensor::matrix_at(std::span<const double> a) const {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      std::vector<double> row(n_, 0.0);
      for (std::size_t k = 0; k < n_; ++k) row[k] = (*this)(i, j, k).evaluate(a);
      rows.push_back(std::move(row));
    }
  return rows;
}

CTensor c_tensor(const AlmostSymplecticChart& chart) {
  const std::size_t n = chart.n();
  CTensor C(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        C.set(i, j, k,
              chart.A(i, j).derivative(k) + chart.A(k, i).derivative(j) +
                  chart.A(j, k).derivative(i));
  return C;
}

RationalRows kernel_at(const CTensor& C, const Box& domain, std::span<const Rational> a) {
  if (a.size() != C.n()) throw DimensionError("kernel_at point has wrong dimension");
  if (!domain.contains(a)) throw DomainError("kernel_at point outside the chart domain");
  return null_space(C.matrix_at(a), C.n());
}

}  // namespace asympl
