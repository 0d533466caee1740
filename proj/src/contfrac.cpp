#include "riglab/contfrac.hpp"

namespace riglab {

void CFExpansion::validate() const {
  if (a.empty()) fail(Errc::InvalidSpec, "empty continued fraction");
  if (a[0] < 0) fail(Errc::InvalidSpec, "a0 must be nonnegative");
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < 1) fail(Errc::InvalidSpec, "partial quotient a" + std::to_string(i) + " < 1");
}

void CFExpansion::normalize() {
  // [., x, 0, y, .] -> [., x+y, .]; repeat until no zero remains at i >= 1.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
      if (a[i] == 0) {
        a[i - 1] += a[i + 1];
        a.erase(a.begin() + i, a.begin() + i + 2);
        changed = true;
        break;
      }
    }
    if (!a.empty() && a.size() >= 2 && a.back() == 0) {
      // a trailing zero cannot be produced by the splice rule; reject loudly
      fail(Errc::PatternMismatch, "trailing zero partial quotient");
    }
  }
  if (terminating && a.size() >= 2 && a.back() == 1) {
    a.pop_back();
    a.back() += 1;
  }
}

BigRat CFExpansion::value() const {
  if (!terminating) fail(Errc::InvalidSpec, "value() of non-terminating expansion");
  BigRat v(a.back());
  for (std::size_t i = a.size() - 1; i-- > 0;) v = BigRat(a[i]) + BigRat(1) / v;
  return v;
}

CFExpansion cf_of_rational(const BigInt& num, const BigInt& den) {
  if (den < 1) fail(Errc::InvalidSpec, "denominator must be >= 1");
  if (num < 0) fail(Errc::InvalidSpec, "numerator must be >= 0");
  CFExpansion cf;
  BigInt p = num, q = den;
  while (q != 0) {
    BigInt a = floor_div(p, q);
    cf.a.push_back(a);
    BigInt r = p - a * q;
    p = q;
    q = r;
  }
  cf.normalize();
  return cf;
}

ConvergentTable convergents(const CFExpansion& cf) {
  cf.validate();
  ConvergentTable t;
  BigInt pm2 = 1, pm1 = cf.a[0], qm2 = 0, qm1 = 1;
  t.p.push_back(pm1);
  t.q.push_back(qm1);
  for (std::size_t i = 1; i < cf.a.size(); ++i) {
    BigInt p = cf.a[i] * pm1 + pm2;
    BigInt q = cf.a[i] * qm1 + qm2;
    t.p.push_back(p);
    t.q.push_back(q);
    pm2 = pm1;
    pm1 = p;
    qm2 = qm1;
    qm1 = q;
  }
  return t;
}

CFExpansion cf_of_interval(RatInterval x, std::size_t max_digits) {
  if (x.lo > x.hi) fail(Errc::InvalidSpec, "inverted interval");
  if (x.is_exact()) {
    BigRat v = x.lo;
    CFExpansion cf = cf_of_rational(v.get_num(), v.get_den());
    if (cf.a.size() > max_digits) cf.a.resize(max_digits);
    return cf;
  }
  CFExpansion cf;
  cf.terminating = false;
  for (std::size_t i = 0; i < max_digits; ++i) {
    BigInt alo = floor_div(x.lo.get_num(), x.lo.get_den());
    BigInt ahi = floor_div(x.hi.get_num(), x.hi.get_den());
    if (alo != ahi)
      fail(Errc::InsufficientPrecision,
           "interval spans a quotient boundary at digit " + std::to_string(i));
    cf.a.push_back(alo);
    BigRat flo = x.lo - BigRat(alo), fhi = x.hi - BigRat(alo);
    if (flo == 0 || fhi == 0)
      fail(Errc::InsufficientPrecision, "interval touches an integer at digit " + std::to_string(i));
    // 1/x reverses the interval.
    x = {BigRat(1) / fhi, BigRat(1) / flo};
  }
  return cf;
}

std::vector<Eq10Row> check_eq10(const RatInterval& alpha, const ConvergentTable& t) {
  std::vector<Eq10Row> rows;
  if (t.size() < 2) return rows;
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    BigRat conv(t.p[n], t.q[n]);
    conv.canonicalize();
    // |alpha - p_n/q_n| over the enclosure.
    BigRat dlo, dhi;
    if (alpha.lo >= conv) {
      dlo = alpha.lo - conv;
      dhi = alpha.hi - conv;
    } else if (alpha.hi <= conv) {
      dlo = conv - alpha.hi;
      dhi = conv - alpha.lo;
    } else {
      dlo = 0;
      dhi = std::max(alpha.hi - conv, conv - alpha.lo);
    }
    BigRat qq(1, t.q[n] * t.q[n + 1]);
    qq.canonicalize();
    BigRat lower = qq / 2;
    if (!alpha.is_exact() && alpha.hi - alpha.lo >= lower / 2)
      fail(Errc::InsufficientPrecision,
           "enclosure wider than 1/(4 q_n q_{n+1}) at row " + std::to_string(n));
    Eq10Row row;
    row.n = n;
    if (dlo >= lower) {
      row.lower_ok = true;
    } else if (dhi < lower) {
      row.lower_ok = false;
    } else {
      fail(Errc::InsufficientPrecision, "cannot decide lower bound at row " + std::to_string(n));
    }
    if (dhi < qq) {
      row.upper_ok = true;
    } else if (dlo >= qq) {
      row.upper_ok = false;
    } else {
      fail(Errc::InsufficientPrecision, "cannot decide upper bound at row " + std::to_string(n));
    }
    if (!row.lower_ok && dhi == 0) row.note = "alpha equals this convergent";
    rows.push_back(row);
  }
  // A terminating alpha equal to the final convergent has distance 0 there:
  // the strict lower bound fails by definition on that row.
  if (alpha.is_exact()) {
    std::size_t last = t.size() - 1;
    BigRat conv(t.p[last], t.q[last]);
    conv.canonicalize();
    if (alpha.lo == conv) {
      Eq10Row row;
      row.n = last;
      row.lower_ok = false;
      row.upper_ok = true;
      row.note = "alpha equals this convergent";
      rows.push_back(row);
    }
  }
  return rows;
}

BigRat liouville_partial(long m, long v) {
  if (m < 2) fail(Errc::InvalidSpec, "m must be >= 2");
  if (v < 0) fail(Errc::InvalidSpec, "v must be >= 0");
  if (v > 12) fail(Errc::DepthTooLarge, "liouville depth v > 12");
  // sum_{k=0}^{v} m^{-(k+1)!} = (sum_k m^{(v+1)! - (k+1)!}) / m^{(v+1)!}
  BigInt top_fac = big_factorial(static_cast<unsigned long>(v) + 1);
  if (bit_length(top_fac) > 40) fail(Errc::DepthTooLarge, "factorial exponent too large");
  BigInt num = 0;
  for (long k = 0; k <= v; ++k) {
    BigInt e = top_fac - big_factorial(static_cast<unsigned long>(k) + 1);
    num += big_pow(BigInt(m), e.get_ui());
  }
  BigInt den = big_pow(BigInt(m), top_fac.get_ui());
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

CFExpansion shallit_expand(long m, long v) {
  if (m < 2) fail(Errc::InvalidSpec, "m must be >= 2");
  if (v < 0) fail(Errc::InvalidSpec, "v must be >= 0");
  if (v > 6) fail(Errc::DepthTooLarge, "shallit depth v > 6 (factorial exponents explode)");
  CFExpansion cf;
  if (v == 0) {
    cf.a = {BigInt(0), BigInt(m)};
  } else {
    // The doubling recursion runs on the formal pattern: zero quotients that
    // appear for m = 2 are kept until the end, because later splices index
    // into the uncollapsed entries (N_{v+1} = 2 N_v + 2).
    std::vector<BigInt> pat = {BigInt(0), BigInt(m - 1), BigInt(m + 1)};
    for (long w = 2; w <= v; ++w) {
      std::vector<BigInt> next = pat;
      BigInt ez = big_factorial(static_cast<unsigned long>(w)) * BigInt(w - 1);
      unsigned long e = ez.get_ui();
      next.push_back(big_pow(BigInt(m), e) - 1);
      next.push_back(1);
      next.push_back(pat.back() - 1);
      for (std::size_t i = pat.size() - 2; i >= 1; --i) next.push_back(pat[i]);
      pat = std::move(next);
    }
    cf.a = std::move(pat);
  }
  cf.normalize();
  BigRat target = liouville_partial(m, v);
  CFExpansion ref = cf_of_rational(target.get_num(), target.get_den());
  if (cf.a != ref.a)
    fail(Errc::PatternMismatch, "splice-rule expansion disagrees with Euclid for m=" +
                                    std::to_string(m) + ", v=" + std::to_string(v));
  return cf;
}

std::vector<BigInt> surd_cf_digits(const BigInt& d, std::size_t count) {
  if (d < 2) fail(Errc::InvalidSpec, "surd parameter must be >= 2");
  BigInt a0 = isqrt(d);
  if (a0 * a0 == d) fail(Errc::InvalidSpec, "perfect square has a rational root");
  // Integer recurrence for sqrt(d) = [a0; a1, a2, ...].
  std::vector<BigInt> digits;
  BigInt m = 0, den = 1, a = a0;
  for (std::size_t i = 0; i < count; ++i) {
    m = den * a - m;
    den = (d - m * m) / den;
    a = floor_div(a0 + m, den);
    digits.push_back(a);
  }
  return digits;
}

}  // namespace riglab
