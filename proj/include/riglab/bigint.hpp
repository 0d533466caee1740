#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace riglab {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt big_factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Number of bits in |n|; 0 for n = 0.
inline std::size_t bit_length(const BigInt& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// a mod b with result in [0, b), b > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::string dec(const BigInt& n) { return n.get_str(10); }
inline std::string dec(const BigRat& q) { return q.get_str(10); }

// Fractional part in [0, 1); input may be any rational.
inline BigRat frac_part(const BigRat& q) {
  BigRat r = q;
  r.canonicalize();
  BigInt fl = floor_div(r.get_num(), r.get_den());
  r -= BigRat(fl);
  return r;
}

inline BigRat rat_abs(const BigRat& q) { return q >= 0 ? q : BigRat(-q); }

// 2^e as a rational, e may be negative.
inline BigRat pow2_rat(long e) {
  BigRat r;
  if (e >= 0) {
    mpz_class n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e));
    r = BigRat(n);
  } else {
    mpz_class d = 1;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-e));
    r = BigRat(1, d);
  }
  return r;
}

}  // namespace riglab
