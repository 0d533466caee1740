#pragma once

#include <string>

#include "riglab/real.hpp"

namespace riglab {

// Rectangular complex number over Real. Not std::complex: that template is
// only specified for the builtin floating types.
struct Cplx {
  Real re, im;

  explicit Cplx(long prec = kDefaultPrecBits) : re(prec), im(prec) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static Cplx of(double r, double i, long prec = kDefaultPrecBits) {
    return Cplx(Real::of(r, prec), Real::of(i, prec));
  }
  static Cplx one(long prec = kDefaultPrecBits) { return of(1.0, 0.0, prec); }

  long prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }

  friend Cplx operator+(const Cplx& a, const Cplx& b) { return Cplx(a.re + b.re, a.im + b.im); }
  friend Cplx operator-(const Cplx& a, const Cplx& b) { return Cplx(a.re - b.re, a.im - b.im); }
  Cplx operator-() const { return Cplx(-re, -im); }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return Cplx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Cplx operator*(const Cplx& a, const Real& b) { return Cplx(a.re * b, a.im * b); }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return Cplx((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  friend Cplx operator/(const Cplx& a, const Real& b) { return Cplx(a.re / b, a.im / b); }
  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o) { return *this = *this * o; }

  friend Cplx conj(const Cplx& a) { return Cplx(a.re, -a.im); }
  friend Real abs2(const Cplx& a) { return a.re * a.re + a.im * a.im; }
  friend Real abs(const Cplx& a) { return sqrt(abs2(a)); }

  std::string str() const { return re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "i"; }
};

}  // namespace riglab
