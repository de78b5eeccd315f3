#pragma once

#include <random>

namespace asympl {

template <class Rng>
RationalVector random_point(const Box& box, Rng& rng, long denominator) {
  RationalVector p;
  p.reserve(box.dim());
  std::uniform_int_distribution<long> pick(0, denominator);
  for (const auto& iv : box.intervals()) {
    const Rational lo = iv.lo ? *iv.lo : (iv.hi ? *iv.hi - 4 : Rational(-2));
    const Rational hi = iv.hi ? *iv.hi : (iv.lo ? *iv.lo + 4 : Rational(2));
    Rational t(pick(rng), denominator);
    t.canonicalize();
    p.push_back(lo + (hi - lo) * t);
  }
  return p;
}

}  // namespace asympl
