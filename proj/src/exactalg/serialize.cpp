#include "asympl/serialize.hpp"

#include "asympl/errors.hpp"

namespace asympl {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t index_from_json(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer index");
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n)
    fail(path, "index " + std::to_string(v) + " outside 1.." + std::to_string(n));
  return static_cast<std::size_t>(v - 1);
}

std::optional<Rational> endpoint(const json& j, const std::string& path) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j, path);
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

RationalVector rational_vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rationals");
  RationalVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

json to_json(const Polynomial& p) {
  json out = json::array();
  for (const auto& [exps, c] : p.terms()) out.push_back({{"exponents", exps}, {"coeff", to_string(c)}});
  return out;
}

Polynomial polynomial_from_json(const json& j, std::size_t nvars, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of terms");
  Polynomial p(nvars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& e = field(j[t], "exponents", tp);
    if (!e.is_array() || e.size() != nvars)
      fail(tp + ".exponents", "expected " + std::to_string(nvars) + " exponents");
    Polynomial::Exponents exps;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<long long>() < 0)
        fail(tp + ".exponents", "exponents must be non-negative integers");
      exps.push_back(x.get<unsigned>());
    }
    p.add_term(exps, rational_from_json(field(j[t], "coeff", tp), tp + ".coeff"));
  }
  return p;
}

json to_json(const HarmonicIndex& nu) { return json(nu); }

json to_json(const FourierFunction& f) {
  json out = json::array();
  for (const auto& [nu, h] : f.harmonics()) {
    json e = {{"nu", nu}, {"cos", to_json(h.cos_coeff)}};
    if (!h.sin_coeff.is_zero()) e["sin"] = to_json(h.sin_coeff);
    out.push_back(std::move(e));
  }
  return out;
}

FourierFunction fourier_from_json(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of harmonics");
  FourierFunction f(n);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& nuj = field(j[t], "nu", tp);
    if (!nuj.is_array() || nuj.size() != n)
      fail(tp + ".nu", "expected " + std::to_string(n) + " integers");
    HarmonicIndex nu;
    for (const auto& x : nuj) {
      if (!x.is_number_integer()) fail(tp + ".nu", "harmonic index entries must be integers");
      nu.push_back(x.get<std::int64_t>());
    }
    Polynomial c(n), s(n);
    if (j[t].contains("cos")) c = polynomial_from_json(j[t]["cos"], n, tp + ".cos");
    if (j[t].contains("sin")) s = polynomial_from_json(j[t]["sin"], n, tp + ".sin");
    if (is_zero_index(nu) && !s.is_zero()) fail(tp + ".sin", "the zero harmonic has no sine part");
    f.add_harmonic(nu, c, s);
  }
  return f;
}

json to_json(const AlmostSymplecticChart& chart) {
  json domain = json::array();
  for (const auto& iv : chart.domain().intervals()) {
    if (!iv.lo && !iv.hi) {
      domain.push_back(nullptr);
      continue;
    }
    domain.push_back({iv.lo ? json(to_string(*iv.lo)) : json(nullptr),
                      iv.hi ? json(to_string(*iv.hi)) : json(nullptr)});
  }
  json A = json::array();
  for (std::size_t i = 0; i < chart.n(); ++i)
    for (std::size_t j = i + 1; j < chart.n(); ++j)
      if (!chart.A(i, j).is_zero()) A.push_back({{"i", i + 1}, {"j", j + 1}, {"poly", to_json(chart.A(i, j))}});
  return {{"n", chart.n()}, {"domain", domain}, {"A", A}};
}

AlmostSymplecticChart chart_from_json(const json& j, const std::string& path) {
  const json& nj = field(j, "n", path);
  if (!nj.is_number_integer() || nj.get<long long>() < 1) fail(path + ".n", "n must be a positive integer");
  const auto n = nj.get<std::size_t>();

  std::vector<Interval> box(n);
  if (j.contains("domain") && !j["domain"].is_null()) {
    const json& d = j["domain"];
    if (!d.is_array() || d.size() != n) fail(path + ".domain", "expected " + std::to_string(n) + " intervals");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string ip = path + ".domain[" + std::to_string(i) + "]";
      if (d[i].is_null()) continue;
      if (!d[i].is_array() || d[i].size() != 2) fail(ip, "expected [lo, hi] or null");
      box[i] = Interval{endpoint(d[i][0], ip + "[0]"), endpoint(d[i][1], ip + "[1]")};
      if (box[i].bounded() && *box[i].lo > *box[i].hi) fail(ip, "lo exceeds hi");
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, Polynomial> upper;
  if (j.contains("A")) {
    const json& A = j["A"];
    if (!A.is_array()) fail(path + ".A", "expected a list of entries");
    for (std::size_t t = 0; t < A.size(); ++t) {
      const std::string tp = path + ".A[" + std::to_string(t) + "]";
      const std::size_t i = index_from_json(field(A[t], "i", tp), n, tp + ".i");
      const std::size_t k = index_from_json(field(A[t], "j", tp), n, tp + ".j");
      if (i >= k) fail(tp, "entries must have i < j (the lower triangle follows by antisymmetry)");
      if (upper.count({i, k})) fail(tp, "duplicate entry");
      upper[{i, k}] = polynomial_from_json(field(A[t], "poly", tp), n, tp + ".poly");
    }
  }
  return AlmostSymplecticChart::from_upper(n, upper, Box(std::move(box)));
}

json to_json(const IntegerMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).fits_slong_p())
        row.push_back(m(r, c).get_si());
      else
        row.push_back(to_string(m(r, c)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace asympl
