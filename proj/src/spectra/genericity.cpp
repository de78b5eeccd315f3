#include <algorithm>
#include <map>
#include <sstream>

#include "asympl/errors.hpp"
#include "asympl/spectra.hpp"

namespace asympl {

namespace {

struct RationalRange {
  Rational lo, hi;
};

RationalRange mul(const RationalRange& x, const RationalRange& y) {
  const Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalRange power(const RationalRange& x, unsigned e) {
  if (e == 0) return {1, 1};
  Rational plo = 1, phi = 1;
  for (unsigned t = 0; t < e; ++t) {
    plo *= x.lo;
    phi *= x.hi;
  }
  if (e % 2 == 1) return {plo, phi};
  if (x.lo >= 0) return {plo, phi};
  if (x.hi <= 0) return {phi, plo};
  return {0, std::max(plo, phi)};
}

// Natural interval extension, term by term.
RationalRange enclose(const Polynomial& p, const std::vector<RationalRange>& box) {
  RationalRange sum{0, 0};
  for (const auto& [exps, c] : p.terms()) {
    RationalRange m{c, c};
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i]) m = mul(m, power(box[i], exps[i]));
    sum.lo += m.lo;
    sum.hi += m.hi;
  }
  return sum;
}

// Monomial enclosure intersected with the one of p re-expanded at the box
// centre; the latter loses cancellations only to second order in the width.
RationalRange enclose_centered(const Polynomial& p, const std::vector<RationalRange>& box) {
  RationalRange r = enclose(p, box);
  const std::size_t n = box.size();
  std::vector<Polynomial> shift;
  std::vector<RationalRange> centered;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mid = (box[i].lo + box[i].hi) / 2;
    shift.push_back(Polynomial::variable(n, i) + Polynomial::constant(n, mid));
    centered.push_back({box[i].lo - mid, box[i].hi - mid});
  }
  const RationalRange c = enclose(p.compose(shift), centered);
  r.lo = std::max(r.lo, c.lo);
  r.hi = std::min(r.hi, c.hi);
  return r;
}

bool certify(const Polynomial& p, std::vector<RationalRange>& box, unsigned depth) {
  const RationalRange r = enclose_centered(p, box);
  if (r.lo > 0 || r.hi < 0) return true;
  if (depth == 0) return false;
  std::size_t widest = 0;
  for (std::size_t i = 1; i < box.size(); ++i)
    if (box[i].hi - box[i].lo > box[widest].hi - box[widest].lo) widest = i;
  const RationalRange saved = box[widest];
  if (saved.hi == saved.lo) return false;
  const Rational mid = (saved.lo + saved.hi) / 2;
  box[widest] = {saved.lo, mid};
  bool ok = certify(p, box, depth - 1);
  if (ok) {
    box[widest] = {mid, saved.hi};
    ok = certify(p, box, depth - 1);
  }
  box[widest] = saved;
  return ok;
}

// Fixes the degenerate coordinates of the box.
Polynomial restrict_to(const Polynomial& p, const Box& box) {
  Polynomial q = p;
  for (std::size_t i = 0; i < box.dim(); ++i)
    if (box[i].degenerate()) q = q.substitute(i, *box[i].lo);
  return q;
}

}  // namespace

std::string to_string(GenericityCondition c) { return c == GenericityCondition::FG1 ? "FG1" : "FG2"; }

std::string to_string(GenericityStatus s) {
  switch (s) {
    case GenericityStatus::holds: return "holds";
    case GenericityStatus::fails: return "fails";
    case GenericityStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

GenericityStatus GenericityVerdict::overall() const {
  bool inconclusive = false;
  for (const auto& d : directions) {
    if (d.status == GenericityStatus::fails) return GenericityStatus::fails;
    if (d.status == GenericityStatus::inconclusive) inconclusive = true;
  }
  return inconclusive ? GenericityStatus::inconclusive : GenericityStatus::holds;
}

bool certify_nonvanishing(const Polynomial& p, const Box& box, unsigned max_depth) {
  if (p.nvars() != box.dim()) throw DimensionError("box and polynomial differ in dimension");
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  std::vector<RationalRange> b;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (!box[i].bounded()) {
      if (!p.independent_of(i)) return false;
      b.push_back({0, 0});
    } else {
      b.push_back({*box[i].lo, *box[i].hi});
    }
  }
  return certify(p, b, max_depth);
}

GenericityVerdict genericity_check(const AlmostSymplecticChart& chart, const FourierFunction& F,
                                   GenericityCondition which) {
  if (chart.n() != F.n()) throw DimensionError("chart and function differ in n");
  const Box& box = chart.domain();
  std::map<HarmonicIndex, std::vector<std::pair<HarmonicIndex, Polynomial>>> by_direction;
  for (const auto& [nu, h] : F.harmonics()) {
    if (is_zero_index(nu)) continue;
    auto& list = by_direction[primitive_direction(nu)];
    if (!h.cos_coeff.is_zero()) list.emplace_back(nu, h.cos_coeff);
    if (!h.sin_coeff.is_zero()) list.emplace_back(nu, h.sin_coeff);
  }

  std::size_t free_dims = 0;
  for (std::size_t i = 0; i < box.dim(); ++i) free_dims += box[i].degenerate() ? 0 : 1;

  GenericityVerdict verdict;
  verdict.condition = which;
  for (const auto& [dir, coeffs] : by_direction) {
    DirectionVerdict d{dir, GenericityStatus::inconclusive, ""};
    std::vector<Polynomial> restricted;
    for (const auto& [nu, c] : coeffs) {
      Polynomial q = restrict_to(c, box);
      if (!q.is_zero()) restricted.push_back(std::move(q));
    }
    if (restricted.empty()) {
      d.status = GenericityStatus::holds;
      d.certificate = "every parallel coefficient vanishes identically on the domain";
      verdict.directions.push_back(std::move(d));
      continue;
    }
    if (which == GenericityCondition::FG1) {
      // A nonzero polynomial has a nowhere dense zero set.
      d.status = GenericityStatus::holds;
      d.certificate = "coefficient " + restricted.front().to_string() +
                      " is a nonzero polynomial, so its nonvanishing set is open and dense";
      verdict.directions.push_back(std::move(d));
      continue;
    }
    for (std::size_t t = 0; t < restricted.size(); ++t) {
      const Polynomial& q = restricted[t];
      if (q.is_constant()) {
        d.status = GenericityStatus::holds;
        d.certificate = "coefficient is the nonzero constant " + to_string(q.constant_term());
        break;
      }
      if (free_dims <= 1) {
        d.status = GenericityStatus::holds;
        d.certificate = "domain has one free action, so " + q.to_string() +
                        " has finitely many zeros";
        break;
      }
      if (certify_nonvanishing(q, box)) {
        d.status = GenericityStatus::holds;
        d.certificate = "interval bounds exclude zero for " + q.to_string() + " on the domain";
        break;
      }
    }
    if (d.status != GenericityStatus::holds)
      d.certificate = "no certificate found for the common zero set of the parallel coefficients";
    verdict.directions.push_back(std::move(d));
  }
  return verdict;
}

}  // namespace asympl
