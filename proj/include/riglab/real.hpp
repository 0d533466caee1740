#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "riglab/bigint.hpp"

namespace riglab {

// Precision policy: 256-bit default, hard cap 2^22 bits. Operations that
// involve an exponent n escalate to bit_length(n) + 64 where needed.
inline constexpr long kDefaultPrecBits = 256;
inline constexpr long kPrecCapBits = 1L << 22;

// RAII wrapper around mpfr_t. Arithmetic allocates the result at the larger
// of the operand precisions; rounding is to nearest everywhere.
class Real {
 public:
  explicit Real(long prec = kDefaultPrecBits) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.prec());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(double x, long prec = kDefaultPrecBits) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(const BigInt& x, long prec = kDefaultPrecBits) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real of(const BigRat& x, long prec = kDefaultPrecBits) {
    Real r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real pi(long prec = kDefaultPrecBits) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  long prec() const { return mpfr_get_prec(v_); }
  Real with_prec(long prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  // Exponent e with |x| in [2^(e-1), 2^e); only valid for nonzero values.
  long exponent() const { return mpfr_get_exp(v_); }

  // Exact value as a rational (every finite mpfr value is m * 2^e).
  BigRat to_rational_exact() const {
    if (is_zero()) return BigRat(0);
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    BigRat r(m);
    return r * pow2_rat(static_cast<long>(e));
  }

  friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend Real operator*(const Real& a, double b) {
    Real r(a.prec());
    mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, double b) {
    Real r(a.prec());
    mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  bool operator<(double b) const { return mpfr_cmp_d(v_, b) < 0; }
  bool operator<=(double b) const { return mpfr_cmp_d(v_, b) <= 0; }
  bool operator>(double b) const { return mpfr_cmp_d(v_, b) > 0; }
  bool operator>=(double b) const { return mpfr_cmp_d(v_, b) >= 0; }

  friend Real abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& a) {
    Real r(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real asin(const Real& a) {
    Real r(a.prec());
    mpfr_asin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& a) {
    Real r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  // a * 2^e
  friend Real ldexp2(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

  // Shortest decimal that still identifies the double value; reports store
  // Real values via this after an explicit to_double().
  std::string str(int digits = 20) const {
    char buf[64];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
    return std::string(buf);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  using MpfrBin = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(const Real& a, const Real& b, MpfrBin f) {
    Real r(a.prec() > b.prec() ? a.prec() : b.prec());
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

// sin(pi*x) and cos(pi*x) for exact rational x. The argument is reduced with
// exact rational symmetries to [0, 1/4] before any rounding happens, so the
// results carry only the final rounding error (a few ulp), even for x within
// 2^-100000 of an integer.
Real sin_pi(const BigRat& x, long prec);
Real cos_pi(const BigRat& x, long prec);
void sincos_pi(const BigRat& x, long prec, Real& s, Real& c);

// Rational enclosure [lo, hi] of a computed Real, widened outward by
// 2^-(prec - slack_bits) relative so that verdicts derived from it stay
// rigorous for short computation chains.
std::pair<BigRat, BigRat> rational_bounds(const Real& x, long slack_bits);

}  // namespace riglab
