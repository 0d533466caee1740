#pragma once

#include <optional>
#include <string>
#include <utility>

#include "riglab/bigint.hpp"
#include "riglab/complexhp.hpp"
#include "riglab/error.hpp"
#include "riglab/real.hpp"

namespace riglab {

// A point of the circle stored as a fraction of a turn: either an exact
// reduced rational in [0, 1), or a P-bit fixed-point mantissa (value
// mant / 2^P) with an absolute error bound in turns. All mod-1 reduction is
// exact integer arithmetic in both forms.
class Angle {
 public:
  enum class Kind { Rational, Fixed };

  Angle() : kind_(Kind::Rational), rat_(0) {}

  // p/q reduced into [0, 1); q > 0 required, p may be any integer.
  static Angle rational(const BigInt& p, const BigInt& q);
  static Angle rational(const BigRat& r);
  // Fractional part of x as a P-bit fixed-point angle; err is the caller's
  // bound on |true - x| in turns (quantization to the grid adds 2^-P).
  static Angle fixed_from_real(const Real& x, long pbits, const BigRat& err);
  static Angle fixed(const BigInt& mant, long pbits, const BigRat& err);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Rational; }
  const BigRat& rat() const { return rat_; }  // only for Kind::Rational
  const BigInt& mantissa() const { return mant_; }
  long pbits() const { return pbits_; }
  const BigRat& err() const { return err_; }

  // Stored value as an exact rational (the fixed-point grid value).
  BigRat value_rat() const;
  // Enclosure [value - err, value + err]; not reduced mod 1.
  std::pair<BigRat, BigRat> interval() const;
  Real value(long prec) const { return Real::of(value_rat(), prec); }

  // n * theta mod 1. Exact for rational angles (modular arithmetic on the
  // numerator); fixed-point results carry error |n| * err and require
  // pbits >= bit_length(n) + 64 and |n| * err <= 2^-32.
  Angle pow(const BigInt& n) const;
  // Sum / difference of angles mod 1 (angle of a product of unimodular
  // points). Mixed forms quantize the rational operand onto the fixed grid.
  Angle add(const Angle& o) const;
  Angle sub(const Angle& o) const;
  // 1 - theta mod 1 (complex conjugation).
  Angle negate() const;

  bool operator==(const Angle& o) const;
  bool operator<(const Angle& o) const { return value_rat() < o.value_rat(); }

  std::string str() const;

 private:
  Kind kind_;
  BigRat rat_;   // canonical, in [0,1)
  BigInt mant_;  // in [0, 2^pbits)
  long pbits_ = 0;
  BigRat err_ = 0;

  void check_fixed_invariants() const;
};

// lambda = exp(2*pi*i*theta). Canonical representation is the angle itself;
// Cartesian coordinates only ever appear as derived values.
class UnimodularPoint {
 public:
  UnimodularPoint() = default;
  explicit UnimodularPoint(Angle a) : angle_(std::move(a)) {}
  static UnimodularPoint one() { return UnimodularPoint(Angle()); }

  const Angle& angle() const { return angle_; }
  UnimodularPoint pow(const BigInt& n) const { return UnimodularPoint(angle_.pow(n)); }
  UnimodularPoint mul(const UnimodularPoint& o) const {
    return UnimodularPoint(angle_.add(o.angle_));
  }
  UnimodularPoint conj() const { return UnimodularPoint(angle_.negate()); }
  bool operator==(const UnimodularPoint& o) const { return angle_ == o.angle_; }

  // Cartesian value cos(2*pi*theta) + i*sin(2*pi*theta).
  Cplx unit(long prec) const;

 private:
  Angle angle_;
};

// |lambda - mu| = 2|sin(pi*(theta_l - theta_m))|, evaluated from the exact
// angle difference (no cancellation).
Real chord(const UnimodularPoint& a, const UnimodularPoint& b, long prec = kDefaultPrecBits);

// lambda - mu as a complex number in the factored form
// 2 sin(pi*d) * exp(i*pi*(ta + tb + 1/2)), d = ta - tb. Exact-angle route, so
// the difference of two nearby points keeps full relative accuracy.
Cplx unit_diff(const UnimodularPoint& a, const UnimodularPoint& b, long prec = kDefaultPrecBits);

// |lambda^n - 1|.
Real dist_one_pow(const UnimodularPoint& lam, const BigInt& n, long prec = kDefaultPrecBits);

}  // namespace riglab
