#pragma once

#include <string>
#include <vector>

#include "riglab/bigint.hpp"
#include "riglab/error.hpp"

namespace riglab {

// Continued fraction [a0; a1, a2, ...]; a0 >= 0, a_i >= 1 for i >= 1.
// Canonical terminating expansions never end in a trailing 1 (except the
// one-element expansion of an integer).
struct CFExpansion {
  std::vector<BigInt> a;
  bool terminating = true;  // false: certified prefix of an irrational

  void validate() const;
  // Collapse zero partial quotients [..., x, 0, y, ...] -> [..., x+y, ...]
  // and strip a trailing 1 into the previous quotient.
  void normalize();
  BigRat value() const;  // terminating expansions only
};

// Rows (p_n, q_n): p_0/q_0 = a_0/1, p_1/q_1 = (a_1 a_0 + 1)/a_1, and
// p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}.
struct ConvergentTable {
  std::vector<BigInt> p, q;
  std::size_t size() const { return p.size(); }
};

CFExpansion cf_of_rational(const BigInt& num, const BigInt& den);
ConvergentTable convergents(const CFExpansion& cf);

// Exact rational enclosure of a real number; err = 0 for exact values.
struct RatInterval {
  BigRat lo, hi;
  static RatInterval exact(const BigRat& v) { return {v, v}; }
  bool is_exact() const { return lo == hi; }
};

// CF digits of a number known only through an enclosure. A digit is emitted
// only when the whole interval yields the same quotient; otherwise
// InsufficientPrecision.
CFExpansion cf_of_interval(RatInterval x, std::size_t max_digits);

struct Eq10Row {
  std::size_t n = 0;
  bool lower_ok = false;  // 1/(2 q_n q_{n+1}) <= |alpha - p_n/q_n|
  bool upper_ok = false;  // |alpha - p_n/q_n| < 1/(q_n q_{n+1})
  std::string note;
};

// Verifies the two-sided convergent inequality for rows n = 0..size-2.
// Endpoint comparisons are exact rational arithmetic on the enclosure, so a
// returned verdict is never a rounding artifact; an enclosure too wide to
// decide a row raises InsufficientPrecision.
std::vector<Eq10Row> check_eq10(const RatInterval& alpha, const ConvergentTable& t);

// Partial sum sum_{k=0}^{v} m^{-(k+1)!}, exact.
BigRat liouville_partial(long m, long v);

// CF of the partial sum built by the doubling splice rule
//   [a_0,...,a_{N_v}, m^{v(v+1)!}-1, 1, a_{N_v}-1, a_{N_v-1},..., a_2, a_1],
// normalized, then cross-checked against the Euclidean expansion of the
// exact partial sum. A mismatch is an implementation/convention bug and
// raises PatternMismatch rather than being papered over.
CFExpansion shallit_expand(long m, long v);

// CF digits a_1, a_2, ... of frac(sqrt(d)) by the exact integer recurrence
// for quadratic surds. d must not be a perfect square.
std::vector<BigInt> surd_cf_digits(const BigInt& d, std::size_t count);

}  // namespace riglab
