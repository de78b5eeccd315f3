#pragma once

#include <string>

#include <json.hpp>

#include "asympl/chart.hpp"
#include "asympl/fourier.hpp"
#include "asympl/integer_matrix.hpp"
#include "asympl/polynomial.hpp"

namespace asympl {

using json = nlohmann::ordered_json;

// Every reader throws ValidationError prefixed with the JSON path of the
// offending field, e.g. "chart.A[2].poly[0].coeff: ...".

json to_json(const Rational& q);
Rational rational_from_json(const json& j, const std::string& path);
json to_json(const RationalVector& v);
RationalVector rational_vector_from_json(const json& j, const std::string& path);

/// [{"exponents": [...], "coeff": "p/q"}, ...]
json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j, std::size_t nvars, const std::string& path);

/// [{"nu": [...], "cos": poly, "sin": poly}, ...]; cos/sin may be omitted.
json to_json(const FourierFunction& f);
FourierFunction fourier_from_json(const json& j, std::size_t n, const std::string& path);

/// {"n", "domain": [[lo, hi] | null, ...], "A": [{"i", "j", "poly"}]}, 1-based i < j.
json to_json(const AlmostSymplecticChart& chart);
AlmostSymplecticChart chart_from_json(const json& j, const std::string& path);

json to_json(const IntegerMatrix& m);
json to_json(const HarmonicIndex& nu);

}  // namespace asympl
