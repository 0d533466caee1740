#include <doctest.h>

#include "riglab/circle.hpp"

using namespace riglab;

namespace {

SequencePrefix prefix_of(std::initializer_list<long> xs) {
  SequencePrefix p;
  for (long x : xs) p.terms.push_back(BigInt(x));
  p.validate();
  return p;
}

Angle sqrt2_angle(long pbits) {
  Real r = sqrt(Real::of(2.0, pbits + 16));
  return Angle::fixed_from_real(r, pbits, pow2_rat(-(pbits + 12)));
}

}  // namespace

TEST_CASE("angle_pow on exact rationals") {
  Angle third = Angle::rational(BigInt(1), BigInt(3));
  CHECK(third.pow(BigInt(3)).value_rat() == 0);  // cube root of unity
  Angle quarter = Angle::rational(BigInt(1), BigInt(4));
  CHECK(quarter.pow(BigInt(2)).value_rat() == BigRat(1, 2));
  // composition law holds exactly for rationals
  Angle a = Angle::rational(BigInt(5), BigInt(17));
  CHECK(a.pow(BigInt(6 * 35)).value_rat() == a.pow(BigInt(6)).pow(BigInt(35)).value_rat());
}

TEST_CASE("angle_pow fixed-point agrees with doubled-precision recomputation") {
  BigInt n = 1000000000;  // 10^9
  Angle a256 = sqrt2_angle(256);
  Angle a512 = sqrt2_angle(512);
  BigRat v1 = a256.pow(n).value_rat();
  BigRat v2 = a512.pow(n).value_rat();
  BigRat diff = rat_abs(v1 - v2);
  CHECK(diff <= pow2_rat(-180));  // >= 180 agreeing bits
}

TEST_CASE("angle_pow precision guard") {
  Angle a = sqrt2_angle(128);
  BigInt huge = BigInt(1) << 100;  // needs 101 + 64 > 128 bits
  CHECK_THROWS_AS((void)a.pow(huge), Error);
}

TEST_CASE("chord values") {
  UnimodularPoint one = UnimodularPoint::one();
  UnimodularPoint minus(Angle::rational(BigInt(1), BigInt(2)));
  UnimodularPoint i_pt(Angle::rational(BigInt(1), BigInt(4)));
  UnimodularPoint sixth(Angle::rational(BigInt(1), BigInt(6)));
  CHECK(chord(one, minus).to_double() == doctest::Approx(2.0).epsilon(1e-30));
  CHECK(chord(one, i_pt).to_double() == doctest::Approx(std::sqrt(2.0)));
  CHECK(chord(sixth, one).to_double() == doctest::Approx(1.0));  // 2 sin(pi/6)
  // symmetric, zero iff equal
  CHECK(chord(i_pt, one).to_double() == chord(one, i_pt).to_double());
  CHECK(chord(i_pt, i_pt).is_zero());
}

TEST_CASE("dist_one_pow") {
  UnimodularPoint eighth(Angle::rational(BigInt(1), BigInt(8)));
  CHECK(dist_one_pow(eighth, BigInt(4)).to_double() == doctest::Approx(2.0));
  CHECK(dist_one_pow(eighth, BigInt(8)).is_zero());
  UnimodularPoint third(Angle::rational(BigInt(1), BigInt(3)));
  CHECK(dist_one_pow(third, BigInt(5)).to_double() == doctest::Approx(std::sqrt(3.0)));
  // identity |lambda^n - 1|^2 = 2 (1 - Re lambda^n) at working precision
  long prec = 256;
  UnimodularPoint lam(Angle::rational(BigInt(7), BigInt(97)));
  BigInt n(12345);
  Real lhs = dist_one_pow(lam, n, prec);
  Cplx z = lam.pow(n).unit(prec);
  Real rhs = (Real::of(1.0, prec) - z.re) * 2.0;
  CHECK(abs(lhs * lhs - rhs).to_double() <= std::ldexp(1.0, -(256 - 16)));
}

TEST_CASE("d_trunc") {
  SequencePrefix p = prefix_of({1, 2, 4});
  UnimodularPoint i_pt(Angle::rational(BigInt(1), BigInt(4)));
  UnimodularPoint one = UnimodularPoint::one();
  CHECK(d_trunc(i_pt, one, p).to_double() == doctest::Approx(2.0));
  CHECK(d_trunc(i_pt, i_pt, p).is_zero());
  SequencePrefix single = prefix_of({1});
  UnimodularPoint minus(Angle::rational(BigInt(1), BigInt(2)));
  CHECK(d_trunc(minus, one, single).to_double() == doctest::Approx(2.0));
}

TEST_CASE("d_trunc pseudometric properties on sampled triples") {
  SequencePrefix p = prefix_of({1, 3, 9, 27});
  std::vector<UnimodularPoint> pts;
  for (long r : {1, 5, 11, 17, 23}) pts.push_back(UnimodularPoint(Angle::rational(BigInt(r), BigInt(64))));
  for (const auto& a : pts)
    for (const auto& b : pts) {
      Real dab = d_trunc(a, b, p);
      Real dba = d_trunc(b, a, p);
      CHECK(abs(dab - dba).to_double() <= 1e-60);
      for (const auto& c : pts) {
        Real dac = d_trunc(a, c, p);
        Real dcb = d_trunc(c, b, p);
        CHECK(dab.to_double() <= dac.to_double() + dcb.to_double() + 1e-12);
      }
      // with n_0 = 1 the pseudometric dominates the chord
      CHECK(dab.to_double() >= chord(a, b).to_double() - 1e-12);
    }
}

TEST_CASE("jamison_scan single power") {
  SequencePrefix p = prefix_of({1});
  ScanConfig cfg;
  cfg.coarse = 1u << 12;
  ScanReport rep = jamison_scan(p, cfg);
  CHECK(rep.argmin == BigRat(1, BigInt(1) << 12));  // smallest grid angle
  CHECK(rep.estimate == doctest::Approx(2 * std::sin(M_PI / 4096)).epsilon(1e-12));
  CHECK(rep.estimate < 0.01);
}

TEST_CASE("jamison_scan integers 16 terms finds the cube-root basin") {
  std::vector<long> xs;
  for (long i = 1; i <= 16; ++i) xs.push_back(i);
  SequencePrefix p;
  for (long x : xs) p.terms.push_back(BigInt(x));
  ScanConfig cfg;
  cfg.coarse = 1u << 14;
  ScanReport rep = jamison_scan(p, cfg);
  // inf over the full integer sequence is sqrt(3) at theta = 1/3; a short
  // truncation can dip somewhat below
  CHECK(rep.estimate > 1.0);
  CHECK(rep.estimate < 1.75);
  CHECK(rep.profile.size() == 16);
}

TEST_CASE("jamison_scan monotone under grid refinement") {
  std::vector<long> xs;
  for (long i = 1; i <= 12; ++i) xs.push_back(i);
  SequencePrefix p;
  for (long x : xs) p.terms.push_back(BigInt(x));
  ScanConfig coarse_cfg;
  coarse_cfg.coarse = 1u << 8;
  ScanConfig fine_cfg;
  fine_cfg.coarse = 1u << 14;
  ScanReport a = jamison_scan(p, coarse_cfg);
  ScanReport b = jamison_scan(p, fine_cfg);
  CHECK(b.estimate <= a.estimate + 1e-15);
}

TEST_CASE("jamison_scan pinned rounds below 2 n_K raises GridTooCoarse") {
  SequencePrefix p = prefix_of({1, 2, 4, 8, 1 << 20});
  ScanConfig cfg;
  cfg.coarse = 1u << 8;
  cfg.rounds = 0;
  CHECK_THROWS_AS((void)jamison_scan(p, cfg), Error);
}

TEST_CASE("jamison_scan deterministic") {
  SequencePrefix p = prefix_of({1, 2, 4, 8, 16, 32});
  ScanConfig cfg;
  cfg.coarse = 1u << 10;
  ScanReport a = jamison_scan(p, cfg);
  ScanReport b = jamison_scan(p, cfg);
  CHECK(a.to_json().dump() == b.to_json().dump());
}
