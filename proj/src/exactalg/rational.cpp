#include "asympl/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "asympl/errors.hpp"

namespace asympl {

namespace {

bool is_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  const std::string_view num = trim(s.substr(0, slash));
  const std::string_view den = slash == std::string_view::npos ? "1" : trim(s.substr(slash + 1));
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-')
    throw ValidationError("invalid rational '" + std::string(text) + "' (expected p/q)");
  const std::string num_s(num.front() == '+' ? num.substr(1) : num);
  const std::string den_s(den.front() == '+' ? den.substr(1) : den);
  Integer p(num_s, 10);
  Integer q(den_s, 10);
  if (q == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value cannot be made exact");
  Rational r(x);
  r.canonicalize();
  return r;
}

}  // namespace asympl
