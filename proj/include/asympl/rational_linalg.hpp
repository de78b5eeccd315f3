#pragma once

#include <cstddef>
#include <vector>

#include "asympl/rational.hpp"

namespace asympl {

using RationalVector = std::vector<Rational>;
using RationalRows = std::vector<RationalVector>;

/// Reduced row echelon form in place with first-nonzero pivoting; returns
/// the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(RationalRows& rows, std::size_t cols);

std::size_t rank(RationalRows rows, std::size_t cols);

/// Basis of {u : rows * u = 0}, one vector per free column, with a 1 in that
/// column (standard RREF null-space basis).
RationalRows null_space(RationalRows rows, std::size_t cols);

}  // namespace asympl
