#include "riglab/angle.hpp"

#include <sstream>

namespace riglab {

namespace {

BigInt pow2z(long e) {
  BigInt n = 1;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e));
  return n;
}

const BigRat kMaxPowErr(1, BigInt(pow2z(32)));

}  // namespace

Angle Angle::rational(const BigInt& p, const BigInt& q) {
  if (q <= 0) fail(Errc::InvalidSpec, "angle denominator must be positive");
  Angle a;
  a.kind_ = Kind::Rational;
  a.rat_ = BigRat(mod_floor(p, q), q);
  a.rat_.canonicalize();
  return a;
}

Angle Angle::rational(const BigRat& r) {
  Angle a;
  a.kind_ = Kind::Rational;
  a.rat_ = frac_part(r);
  return a;
}

Angle Angle::fixed(const BigInt& mant, long pbits, const BigRat& err) {
  Angle a;
  a.kind_ = Kind::Fixed;
  a.pbits_ = pbits;
  a.mant_ = mod_floor(mant, pow2z(pbits));
  a.err_ = err;
  a.check_fixed_invariants();
  return a;
}

Angle Angle::fixed_from_real(const Real& x, long pbits, const BigRat& err) {
  // Quantize frac(x) onto the 2^-pbits grid; grid rounding adds one step.
  BigRat v = frac_part(x.to_rational_exact());
  BigInt scaled;
  BigRat t = v * BigRat(pow2z(pbits));
  mpz_fdiv_q(scaled.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  Angle a = fixed(scaled, pbits, err + pow2_rat(-pbits));
  // Freshly created angles must sit well inside the representable scale;
  // derived angles (powers, sums) are only held to the 2^-32 cap.
  if (a.err_ > pow2_rat(-(pbits - 8)))
    fail(Errc::PrecisionExceeded,
         "error bound too large for a fresh " + std::to_string(pbits) + "-bit angle");
  return a;
}

void Angle::check_fixed_invariants() const {
  if (pbits_ < 16 || pbits_ > kPrecCapBits)
    fail(Errc::PrecisionExceeded, "fixed-point precision out of range");
  if (err_ < 0) fail(Errc::InvalidSpec, "negative error bound");
  if (err_ > kMaxPowErr)
    fail(Errc::PrecisionExceeded, "accumulated error exceeds 2^-32 turns");
}

BigRat Angle::value_rat() const {
  if (kind_ == Kind::Rational) return rat_;
  BigRat v(mant_, pow2z(pbits_));
  v.canonicalize();
  return v;
}

std::pair<BigRat, BigRat> Angle::interval() const {
  BigRat v = value_rat();
  return {v - err_, v + err_};
}

Angle Angle::pow(const BigInt& n) const {
  if (kind_ == Kind::Rational) {
    const BigInt& q = rat_.get_den();
    return rational(mod_floor(n * rat_.get_num(), q), q);
  }
  std::size_t nb = bit_length(n);
  if (static_cast<long>(nb) + 64 > pbits_)
    fail(Errc::PrecisionExceeded, "exponent needs " + std::to_string(nb + 64) +
                                      " bits, angle has " + std::to_string(pbits_));
  BigRat nerr = err_ * rat_abs(BigRat(n));
  if (nerr > kMaxPowErr)
    fail(Errc::PrecisionExceeded, "accumulated error after power exceeds 2^-32 turns");
  return fixed(mod_floor(n * mant_, pow2z(pbits_)), pbits_, nerr);
}

Angle Angle::add(const Angle& o) const {
  if (kind_ == Kind::Rational && o.kind_ == Kind::Rational) return rational(rat_ + o.rat_);
  long p = std::max(kind_ == Kind::Fixed ? pbits_ : 0, o.kind_ == Kind::Fixed ? o.pbits_ : 0);
  auto to_mant = [p](const Angle& a) -> std::pair<BigInt, BigRat> {
    if (a.kind_ == Kind::Fixed) {
      BigInt m = a.mant_;
      mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p - a.pbits_));
      return {m, a.err_};
    }
    BigRat t = a.rat_ * BigRat(pow2z(p));
    BigInt m;
    mpz_fdiv_q(m.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return {m, pow2_rat(-p)};
  };
  auto [ma, ea] = to_mant(*this);
  auto [mb, eb] = to_mant(o);
  return fixed(ma + mb, p, ea + eb);
}

Angle Angle::sub(const Angle& o) const { return add(o.negate()); }

Angle Angle::negate() const {
  if (kind_ == Kind::Rational) return rational(-rat_);
  return fixed(-mant_, pbits_, err_);
}

bool Angle::operator==(const Angle& o) const {
  if (kind_ != o.kind_) return value_rat() == o.value_rat() && err_ == 0 && o.err_ == 0;
  if (kind_ == Kind::Rational) return rat_ == o.rat_;
  return pbits_ == o.pbits_ && mant_ == o.mant_ && err_ == o.err_;
}

std::string Angle::str() const {
  std::ostringstream os;
  if (kind_ == Kind::Rational) {
    os << rat_.get_num() << "/" << rat_.get_den();
  } else {
    os << "fixed(" << mant_.get_str(16) << "h, P=" << pbits_ << ", err<=" << err_.get_d() << ")";
  }
  return os.str();
}

Cplx UnimodularPoint::unit(long prec) const {
  Real s(prec), c(prec);
  sincos_pi(angle_.value_rat() * 2, prec, s, c);
  return Cplx(std::move(c), std::move(s));
}

Real chord(const UnimodularPoint& a, const UnimodularPoint& b, long prec) {
  BigRat d = a.angle().value_rat() - b.angle().value_rat();
  return abs(sin_pi(d, prec)) * 2.0;
}

Cplx unit_diff(const UnimodularPoint& a, const UnimodularPoint& b, long prec) {
  BigRat ta = a.angle().value_rat(), tb = b.angle().value_rat();
  Real m = sin_pi(ta - tb, prec) * 2.0;
  Real s(prec), c(prec);
  sincos_pi(ta + tb + BigRat(1, 2), prec, s, c);
  return Cplx(c * m, s * m);
}

Real dist_one_pow(const UnimodularPoint& lam, const BigInt& n, long prec) {
  Angle a = lam.angle().pow(n);
  return abs(sin_pi(a.value_rat(), prec)) * 2.0;
}

}  // namespace riglab
