#include <doctest.h>

#include <random>

#include "asympl/errors.hpp"
#include "asympl/lattice.hpp"
#include "asympl/rational_linalg.hpp"
#include "oracles.hpp"

using namespace asympl;
using namespace oracle;

TEST_CASE("integer matrix basics") {
  const IntegerMatrix A = IntegerMatrix::from_rows({{2, 1}, {1, 1}});
  CHECK(A.determinant() == 1);
  CHECK(A.is_unimodular());
  CHECK(A * A.inverse_unimodular() == IntegerMatrix::identity(2));
  CHECK_THROWS_AS(IntegerMatrix::from_rows({{2, 0}, {0, 1}}).inverse_unimodular(), ValidationError);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_integer_matrix(rng, 4, 4, 6);
    CHECK(m.determinant() == cofactor_determinant(m));
  }
}

TEST_CASE("hermite normal form examples") {
  auto I = IntegerMatrix::identity(3);
  auto hI = hermite_normal_form(I);
  CHECK(hI.H == I);
  CHECK(hI.U == I);

  const IntegerMatrix V = IntegerMatrix::from_rows({{2, 4}, {0, 6}});
  const auto h = hermite_normal_form(V);
  CHECK(h.U * V == h.H);
  CHECK(abs(h.U.determinant()) == 1);
  CHECK(is_row_hermite(h.H));

  const IntegerMatrix Z(2, 3);
  const auto hz = hermite_normal_form(Z);
  CHECK(hz.H.is_zero());
  CHECK(hz.U == IntegerMatrix::identity(2));
}

TEST_CASE("smith normal form examples") {
  const auto d26 = smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 6}}));
  CHECK(d26.D == IntegerMatrix::from_rows({{2, 0}, {0, 6}}));
  const auto d23 = smith_normal_form(IntegerMatrix::from_rows({{2, 0}, {0, 3}}));
  CHECK(d23.D == IntegerMatrix::from_rows({{1, 0}, {0, 6}}));
  CHECK(d23.U * IntegerMatrix::from_rows({{2, 0}, {0, 3}}) * d23.W == d23.D);
  CHECK(smith_normal_form(IntegerMatrix::identity(3)).D == IntegerMatrix::identity(3));
}

TEST_CASE("normal forms of random rectangular matrices") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto V = random_integer_matrix(rng, static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)), 9);
    const auto h = hermite_normal_form(V);
    CHECK(h.U * V == h.H);
    CHECK(abs(h.U.determinant()) == 1);
    CHECK(is_row_hermite(h.H));
    const auto s = smith_normal_form(V);
    CHECK(s.U * V * s.W == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.W.determinant()) == 1);
    CHECK(is_smith_diagonal(s.D));
    CHECK(s.rank == rank(to_rational_rows(V), V.cols()));
  }
}

TEST_CASE("saturation examples") {
  const auto L = saturate_and_complete({{2, 0, 0, 0}, {0, 2, 0, 0}}, 4);
  CHECK(L.r == 2);
  CHECK(same_lattice(L.saturation_basis, {{1, 0, 0, 0}, {0, 1, 0, 0}}));

  const auto E = saturate_and_complete({}, 3);
  CHECK(E.r == 0);
  CHECK(E.M == IntegerMatrix::identity(3));

  const auto D = saturate_and_complete({{1, 1, 1}}, 3);
  CHECK(D.r == 1);
  CHECK(D.saturation_basis.front() == HarmonicIndex{1, 1, 1});
  IntegerMatrix P(3, 3);
  std::vector<HarmonicIndex> rows = D.saturation_basis;
  rows.insert(rows.end(), D.completion.begin(), D.completion.end());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) P(i, j) = Integer(static_cast<long>(rows[i][j]));
  CHECK(abs(P.determinant()) == 1);
}

TEST_CASE("saturation agrees with brute-force enumeration") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const auto gens = random_generators(rng, n, 1 + trial % 3, 3);
    const auto L = saturate_and_complete(gens, n);
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens) rows.push_back(to_q(g));
    const std::size_t r = rank_of(rows);
    CHECK(L.r == r);
    for (const auto& u : L.saturation_basis) rows.push_back(to_q(u));
    CHECK(rank_of(rows) == r);  // basis stays inside the real span
    // Every integer point of the span in the box is an integer combination of the basis.
    for (const auto& p : lattice_points_in_span(gens, n, 3)) CHECK(in_integer_span(L.saturation_basis, p));
    CHECK(is_saturated(L.saturation_basis, n));
    // M maps the saturation basis to the first r unit vectors.
    for (std::size_t i = 0; i < L.r; ++i) {
      std::vector<Integer> u;
      for (auto v : L.saturation_basis[i]) u.push_back(Integer(static_cast<long>(v)));
      const auto e = L.M * u;
      for (std::size_t j = 0; j < n; ++j) CHECK(e[j] == (i == j ? 1 : 0));
    }
    CHECK(L.M * L.M_inv == IntegerMatrix::identity(n));
  }
}

TEST_CASE("is_saturated") {
  CHECK(is_saturated({{1, 0}, {0, 1}}, 2));
  CHECK_FALSE(is_saturated({{2, 0}}, 2));
  CHECK_FALSE(is_saturated({{1, 1}, {1, -1}}, 2));
}
