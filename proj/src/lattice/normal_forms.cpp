#include <algorithm>

#include "asympl/lattice.hpp"

namespace asympl {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteDecomposition hermite_normal_form(const IntegerMatrix& V) {
  const std::size_t m = V.rows();
  const std::size_t n = V.cols();
  IntegerMatrix H = V;
  IntegerMatrix U = IntegerMatrix::identity(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool have_pivot = false;
    while (true) {
      // Smallest nonzero magnitude in column c at or below row r.
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i) {
        if (H(i, c) == 0) continue;
        if (p == m || abs(H(i, c)) < abs(H(p, c))) p = i;
      }
      if (p == m) break;
      have_pivot = true;
      H.swap_rows(r, p);
      U.swap_rows(r, p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        const Integer q = floor_div(H(i, c), H(r, c));
        H.add_row_multiple(i, r, -q);
        U.add_row_multiple(i, r, -q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (H(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(H(i, c), H(r, c));
      H.add_row_multiple(i, r, -q);
      U.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return {std::move(H), std::move(U)};
}

SmithDecomposition smith_normal_form(const IntegerMatrix& V) {
  const std::size_t m = V.rows();
  const std::size_t n = V.cols();
  IntegerMatrix D = V;
  IntegerMatrix U = IntegerMatrix::identity(m);
  IntegerMatrix W = IntegerMatrix::identity(n);
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (D(i, j) == 0) continue;
        if (pr == m || abs(D(i, j)) < abs(D(pr, pc))) {
          pr = i;
          pc = j;
        }
      }
    if (pr == m) break;
    D.swap_rows(t, pr);
    U.swap_rows(t, pr);
    D.swap_cols(t, pc);
    W.swap_cols(t, pc);

    while (true) {
      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        const Integer q = floor_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        const Integer q = floor_div(D(t, j), D(t, t));
        D.add_col_multiple(j, t, -q);
        W.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) residue = true;
      }
      if (residue) {
        // Move the smallest remainder in row/column t onto the diagonal.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < abs(D(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < abs(D(bi, bj))) {
            bi = t;
            bj = j;
          }
        if (bi != t) {
          D.swap_rows(t, bi);
          U.swap_rows(t, bi);
        } else if (bj != t) {
          D.swap_cols(t, bj);
          W.swap_cols(t, bj);
        }
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      D.add_row_multiple(t, bad, 1);
      U.add_row_multiple(t, bad, 1);
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return {std::move(U), std::move(D), std::move(W), t};
}

}  // namespace asympl
