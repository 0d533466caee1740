#include <doctest.h>

#include "riglab/seq.hpp"

using namespace riglab;

TEST_CASE("chain family all-2 multipliers") {
  SequenceSpec spec{.family = "chain", .params = Json{{"seed", 1}, {"multipliers", {2}}}};
  SequencePrefix p = generate(spec, 6);
  std::vector<long> want{1, 2, 4, 8, 16, 32};
  REQUIRE(p.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(p.terms[i] == want[i]);
  DiagnosticsReport d = ratio_diagnostics(p);
  CHECK(d.min_ratio == 2);
  CHECK(d.max_ratio == 2);
  CHECK(d.divides_next);
}

TEST_CASE("superlinear square family reproduces 2^(2^k)") {
  SequenceSpec spec{.family = "superlinear", .params = Json{{"seed", 2}}};
  SequencePrefix p = generate(spec, 5);
  CHECK(p.terms[0] == 2);
  CHECK(p.terms[1] == 4);
  CHECK(p.terms[2] == 16);
  CHECK(p.terms[3] == 256);
  CHECK(p.terms[4] == 65536);
}

TEST_CASE("polynomial family") {
  SequenceSpec spec{.family = "poly", .params = Json{{"coeffs", {0, 0, 1}}}};
  SequencePrefix p = generate(spec, 5);
  std::vector<long> want{1, 4, 9, 16, 25};
  for (std::size_t i = 0; i < 5; ++i) CHECK(p.terms[i] == want[i]);

  SequenceSpec dec{.family = "poly", .params = Json{{"coeffs", {10, -1}}}};
  CHECK_THROWS_AS((void)generate(dec, 5), Error);  // not increasing
}

TEST_CASE("primes and density table") {
  SequenceSpec spec{.family = "primes"};
  SequencePrefix p = generate(spec, 100);
  CHECK(p.terms.back() == 541);
  DiagnosticsReport d = ratio_diagnostics(p);
  CHECK_FALSE(d.divides_next);
  // count of primes <= 541 is the full prefix
  CHECK(d.density.back().count == 100);
  CHECK(d.density.back().density.get_d() == doctest::Approx(100.0 / 541));
  // density at n_K/4 = 135: 33 primes below
  CHECK(d.density.front().count == 32);
  CHECK(d.density.front().density.get_d() == doctest::Approx(32.0 / 135).epsilon(1e-12));
}

TEST_CASE("ex77 block A_2 with k1=1, k2=3") {
  SequencePrefix p = ex77_generate({1, 3}, 1);
  std::vector<long> want{2, 3, 4, 6, 8, 12, 16, 24, 32, 48};
  REQUIRE(p.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(p.terms[i] == want[i]);
}

TEST_CASE("ex77 first element and block boundary ratio") {
  SequencePrefix p = ex77_generate({1, 3, 9}, 2);
  CHECK(p.terms[0] == 2);  // N_0^{k_1}
  // boundary: last of block 0 is 48, first of block 1 is 4^3 = 64
  bool found = false;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p.terms[i - 1] == 48) {
      CHECK(p.terms[i] == 64);
      found = true;
    }
  }
  CHECK(found);
  // within block 1 (N_1 = 4), crossing k -> k+1: ratio = N_2/(N_2 - 1) = 16/15
  BigRat boundary(BigInt(16), BigInt(15));
  bool ratio_seen = false;
  for (std::size_t i = 1; i < p.size(); ++i) {
    BigRat r(p.terms[i], p.terms[i - 1]);
    r.canonicalize();
    if (r == boundary) ratio_seen = true;
  }
  CHECK(ratio_seen);
}

TEST_CASE("ex77 in-block ratio bound 1 + 1/N_p, exactly in rationals") {
  SequencePrefix p = ex77_generate({1, 4, 12}, 2);
  // Ratios are classified by the block of the earlier term: block 0 (N_0 = 2)
  // owns everything below 4^{k_2} = 256, block 1 (N_1 = 4) the rest. The
  // block transition ratio N_{p+1}/(N_{p+1}-1) also obeys the old block's
  // 1 + 1/N_p bound.
  for (std::size_t i = 1; i < p.size(); ++i) {
    BigRat r(p.terms[i], p.terms[i - 1]);
    if (p.terms[i - 1] < 256)
      CHECK(r <= BigRat(3, 2));
    else
      CHECK(r <= BigRat(5, 4));
  }
}

TEST_CASE("ex77 schedule validation") {
  CHECK_THROWS_AS((void)ex77_generate({2, 3}, 1), Error);     // k_1 != 1
  CHECK_THROWS_AS((void)ex77_generate({1, 3, 2}, 2), Error);  // not increasing
  CHECK_THROWS_AS((void)ex77_generate({1, 3}, 2), Error);     // too short
}

TEST_CASE("divisibility chain tail sum bound") {
  SequenceSpec spec{.family = "chain", .params = Json{{"seed", 3}, {"multipliers", {2, 4, 2, 8}}}};
  SequencePrefix p = generate(spec, 10);
  // n_k * sum_{j>k} 1/n_j <= 2, exactly in rationals
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    BigRat s(0);
    for (std::size_t j = k + 1; j < p.size(); ++j) s += BigRat(1, p.terms[j]);
    CHECK(BigRat(p.terms[k]) * s <= 2);
  }
}

TEST_CASE("cf-denominators families") {
  SequenceSpec surd{.family = "cf-denominators",
                    .params = Json{{"alpha", {{"kind", "surd"}, {"d", 2}}}}};
  SequencePrefix q = generate(surd, 6);
  std::vector<long> want{2, 5, 12, 29, 70, 169};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(q.terms[i] == want[i]);
  // bounded convergent-denominator ratios for a quadratic surd
  DiagnosticsReport d = ratio_diagnostics(q);
  CHECK(d.max_ratio <= 3);

  SequenceSpec liou{.family = "cf-denominators",
                    .params = Json{{"alpha", {{"kind", "liouville"}, {"m", 3}, {"v", 2}}}}};
  SequencePrefix ql = generate(liou, 5);
  CHECK(ql.size() == 5);

  SequenceSpec digits{.family = "cf-denominators",
                      .params = Json{{"alpha", {{"kind", "digits"}, {"a", {1, 1, 1, 1, 1, 1}}}}}};
  SequencePrefix qf = generate(digits, 5);
  std::vector<long> fib{1, 2, 3, 5, 8};  // golden ratio q-sequence (duplicate q dropped)
  for (std::size_t i = 0; i < fib.size(); ++i) CHECK(qf.terms[i] == fib[i]);
}

TEST_CASE("explicit family and errors") {
  SequenceSpec ex{.family = "explicit", .params = Json{{"terms", {"5", "17", "121"}}}};
  SequencePrefix p = generate(ex, 3);
  CHECK(p.terms[2] == 121);
  CHECK_THROWS_AS((void)generate(ex, 4), Error);
  SequenceSpec bad{.family = "nope"};
  CHECK_THROWS_AS((void)generate(bad, 3), Error);
}

TEST_CASE("prefix json round trip") {
  SequenceSpec spec{.family = "superlinear", .params = Json{{"seed", 3}}};
  SequencePrefix p = generate(spec, 8);
  Json j = p.to_json();
  SequencePrefix q = SequencePrefix::from_json(j);
  CHECK(q.terms == p.terms);
  // big terms serialize as decimal strings
  CHECK(j.back().is_string());
}

TEST_CASE("every generated prefix is strictly increasing (checked)") {
  for (const char* fam : {"primes", "superlinear", "chain"}) {
    SequenceSpec spec{.family = fam};
    SequencePrefix p = generate(spec, 20);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p.terms[i] > p.terms[i - 1]);
  }
}
