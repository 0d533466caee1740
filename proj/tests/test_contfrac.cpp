#include <doctest.h>

#include "riglab/contfrac.hpp"
#include "riglab/philox.hpp"
#include "riglab/real.hpp"

using namespace riglab;

namespace {

std::vector<long> digits_of(const CFExpansion& cf) {
  std::vector<long> out;
  for (const auto& a : cf.a) out.push_back(a.get_si());
  return out;
}

}  // namespace

TEST_CASE("cf_of_rational basics") {
  CHECK(digits_of(cf_of_rational(3, 4)) == std::vector<long>{0, 1, 3});
  CHECK(digits_of(cf_of_rational(1, 7)) == std::vector<long>{0, 7});
  CHECK(digits_of(cf_of_rational(4, 9)) == std::vector<long>{0, 2, 4});
  // unreduced input
  CHECK(digits_of(cf_of_rational(8, 18)) == std::vector<long>{0, 2, 4});
  // canonical form never ends in 1
  CHECK(digits_of(cf_of_rational(7, 4)) == std::vector<long>{1, 1, 3});
  CHECK(cf_of_rational(7, 4).value() == BigRat(7, 4));
}

TEST_CASE("convergents recurrence and determinant") {
  CFExpansion cf;
  cf.a = {BigInt(0), BigInt(2), BigInt(2), BigInt(2), BigInt(2), BigInt(2)};
  ConvergentTable t = convergents(cf);
  std::vector<long> q{1, 2, 5, 12, 29, 70};
  REQUIRE(t.size() == q.size());
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(t.q[i] == q[i]);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    BigInt det = t.p[i] * t.q[i + 1] - t.p[i + 1] * t.q[i];
    CHECK(abs(det) == 1);
  }
  CFExpansion single;
  single.a = {BigInt(0), BigInt(5)};
  ConvergentTable ts = convergents(single);
  CHECK(ts.p[1] == 1);
  CHECK(ts.q[1] == 5);
  CFExpansion three;
  three.a = {BigInt(0), BigInt(1), BigInt(3)};
  ConvergentTable t3 = convergents(three);
  CHECK(t3.p[0] == 0);
  CHECK(t3.q[0] == 1);
  CHECK(t3.p[1] == 1);
  CHECK(t3.q[1] == 1);
  CHECK(t3.p[2] == 3);
  CHECK(t3.q[2] == 4);
}

TEST_CASE("eq10 for sqrt(2), first rows all pass") {
  // alpha = frac(sqrt 2) as a 300-bit enclosure
  Real r = sqrt(Real::of(2.0, 320)) - Real::of(1.0, 320);
  auto [lo, hi] = rational_bounds(r, 24);
  RatInterval alpha{lo, hi};
  CFExpansion cf;
  cf.a.push_back(0);
  for (int i = 0; i < 11; ++i) cf.a.push_back(2);
  auto rows = check_eq10(alpha, convergents(cf));
  REQUIRE(rows.size() >= 10);
  for (const auto& row : rows) {
    CHECK(row.lower_ok);
    CHECK(row.upper_ok);
  }
}

TEST_CASE("eq10 for the golden ratio fractional part") {
  Real r = (sqrt(Real::of(5.0, 320)) - Real::of(1.0, 320)) / 2.0;
  auto [lo, hi] = rational_bounds(r, 24);
  CFExpansion cf;
  cf.a.push_back(0);
  for (int i = 0; i < 12; ++i) cf.a.push_back(1);
  auto rows = check_eq10({lo, hi}, convergents(cf));
  REQUIRE(rows.size() >= 10);
  for (const auto& row : rows) {
    CHECK(row.lower_ok);
    CHECK(row.upper_ok);
  }
}

TEST_CASE("eq10 terminating rational: zero-distance row fails the lower bound") {
  BigRat v(7, 24);
  CFExpansion cf = cf_of_rational(v.get_num(), v.get_den());
  auto rows = check_eq10(RatInterval::exact(v), convergents(cf));
  REQUIRE(!rows.empty());
  CHECK_FALSE(rows.back().lower_ok);
  CHECK(rows.back().note == "alpha equals this convergent");
}

TEST_CASE("cf_of_interval needs enough precision") {
  RatInterval wide{BigRat(1, 3) - BigRat(1, 10), BigRat(1, 3) + BigRat(1, 10)};
  CHECK_THROWS_AS((void)cf_of_interval(wide, 6), Error);
}

TEST_CASE("liouville partial sums") {
  CHECK(liouville_partial(3, 1) == BigRat(4, 9));
  CHECK(liouville_partial(5, 0) == BigRat(1, 5));
  CHECK(liouville_partial(2, 2) == BigRat(49, 64));
  CHECK_THROWS_AS((void)liouville_partial(2, 13), Error);
}

TEST_CASE("shallit_expand matches Euclid") {
  CHECK(digits_of(shallit_expand(3, 1)) == std::vector<long>{0, 2, 4});
  CHECK(digits_of(shallit_expand(3, 2)) == std::vector<long>{0, 2, 4, 8, 1, 3, 2});
  CHECK(digits_of(shallit_expand(4, 1)) == std::vector<long>{0, 3, 5});
  // m = 2 exercises the zero-quotient normalization
  CHECK(digits_of(shallit_expand(2, 2)) == std::vector<long>{0, 1, 3, 3, 1, 3});
  for (long m : {3, 4, 5}) {
    for (long v = 0; v <= 3; ++v) {
      CFExpansion got = shallit_expand(m, v);
      BigRat target = liouville_partial(m, v);
      CFExpansion ref = cf_of_rational(target.get_num(), target.get_den());
      CHECK(got.a == ref.a);
    }
  }
  CHECK_THROWS_AS((void)shallit_expand(3, 7), Error);
}

TEST_CASE("shallit m=2 deeper splice still collapses correctly") {
  CFExpansion got = shallit_expand(2, 3);
  BigRat target = liouville_partial(2, 3);
  CFExpansion ref = cf_of_rational(target.get_num(), target.get_den());
  CHECK(got.a == ref.a);
}

TEST_CASE("eq10 random dyadic alphas, small batch") {
  // 256-bit random dyadics are exact rationals: verdicts are exact arithmetic.
  int violations = 0;
  for (int i = 0; i < 20; ++i) {
    BigInt num = 0;
    for (int w = 0; w < 4; ++w)
      num = (num << 64) | BigInt(static_cast<unsigned long>(philox_u64(42, i, w, 0)));
    BigInt den = BigInt(1) << 256;
    BigRat alpha(num, den);
    alpha.canonicalize();
    CFExpansion cf = cf_of_rational(alpha.get_num(), alpha.get_den());
    if (cf.a.size() > 21) cf.a.resize(21);
    auto rows = check_eq10(RatInterval::exact(alpha), convergents(cf));
    for (const auto& row : rows)
      if (!row.lower_ok || !row.upper_ok) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("surd digits") {
  auto d2 = surd_cf_digits(2, 8);
  for (const auto& d : d2) CHECK(d == 2);
  auto d7 = surd_cf_digits(7, 8);  // sqrt(7) = [2; 1,1,1,4, ...]
  std::vector<long> want{1, 1, 1, 4, 1, 1, 1, 4};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(d7[i] == want[i]);
  CHECK_THROWS_AS((void)surd_cf_digits(9, 4), Error);  // perfect square
}
