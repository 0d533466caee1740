#include "riglab/real.hpp"

namespace riglab {

namespace {

// Core: sin(pi*r) and cos(pi*r) for r in [0, 1/4], guard bits on top.
void sincos_pi_core(const BigRat& r, long prec, Real& s, Real& c) {
  long wp = prec + 32;
  Real x = Real::of(r, wp);
  Real px = Real::pi(wp) * x;
  Real ss(wp), cc(wp);
  mpfr_sin_cos(ss.raw(), cc.raw(), px.raw(), MPFR_RNDN);
  s = ss.with_prec(prec);
  c = cc.with_prec(prec);
}

}  // namespace

void sincos_pi(const BigRat& x, long prec, Real& s, Real& c) {
  // Reduce mod 2 to [0, 2).
  BigRat r = x / 2;
  r = frac_part(r) * 2;
  int s_sign = 1, c_sign = 1;
  // [1, 2) -> [0, 1) with both signs flipped.
  if (r >= 1) {
    r -= 1;
    s_sign = -s_sign;
    c_sign = -c_sign;
  }
  // [1/2, 1) -> [0, 1/2): sin keeps, cos flips.
  if (r * 2 >= 1) {
    r = BigRat(1) - r;
    c_sign = -c_sign;
  }
  // [1/4, 1/2] -> complementary angle swaps sin and cos.
  bool swapped = false;
  if (r * 4 > 1) {
    r = BigRat(1, 2) - r;
    swapped = true;
  }
  Real ss(prec), cc(prec);
  sincos_pi_core(r, prec, ss, cc);
  if (swapped) std::swap(ss, cc);
  if (s_sign < 0) ss = -ss;
  if (c_sign < 0) cc = -cc;
  s = std::move(ss);
  c = std::move(cc);
}

Real sin_pi(const BigRat& x, long prec) {
  Real s(prec), c(prec);
  sincos_pi(x, prec, s, c);
  return s;
}

Real cos_pi(const BigRat& x, long prec) {
  Real s(prec), c(prec);
  sincos_pi(x, prec, s, c);
  return c;
}

std::pair<BigRat, BigRat> rational_bounds(const Real& x, long slack_bits) {
  BigRat v = x.to_rational_exact();
  BigRat w = rat_abs(v) * pow2_rat(slack_bits - x.prec());
  return {v - w, v + w};
}

}  // namespace riglab
