#include "riglab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace riglab {

Real d_trunc(const UnimodularPoint& a, const UnimodularPoint& b, const SequencePrefix& prefix,
             long prec) {
  prefix.validate();
  Real best(prec);
  for (const auto& n : prefix.terms) {
    Real d = chord(a.pow(n), b.pow(n), prec);
    if (d > best) best = d;
  }
  return best;
}

namespace {

// v / 2^g as a double; v may have thousands of bits. Values below the
// subnormal range flush to zero, which for scan purposes reads "0 at double
// resolution".
double dyadic_to_double(const BigInt& v, long g) {
  if (v == 0) return 0.0;
  long bits = static_cast<long>(bit_length(v));
  long shift = bits > 53 ? bits - 53 : 0;
  BigInt top = v >> static_cast<unsigned long>(shift);
  double hi = top.get_d();
  long e = shift - g;
  if (e < -1100) return 0.0;
  return std::ldexp(hi, static_cast<int>(e));
}

// max_k 2|sin(pi * l * n_k / 2^g)| with residues r_k = n_k mod 2^g.
double eval_point(const BigInt& l, long g, const std::vector<BigInt>& residues) {
  double worst = 0.0;
  BigInt v;
  for (const auto& r : residues) {
    v = r * l;
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(g));
    // fold to [0, 2^(g-1)]
    if (mpz_tstbit(v.get_mpz_t(), static_cast<mp_bitcnt_t>(g - 1)) != 0) {
      BigInt full = 1;
      mpz_mul_2exp(full.get_mpz_t(), full.get_mpz_t(), static_cast<unsigned long>(g));
      v = full - v;
    }
    double x = dyadic_to_double(v, g);
    double d = 2.0 * std::sin(M_PI * x);
    if (d > worst) worst = d;
    if (worst >= 2.0) return worst;
  }
  return worst;
}

// Fast path when the lattice and residues fit machine words.
double eval_point_u64(std::uint64_t l, long g, const std::vector<std::uint64_t>& residues) {
  double worst = 0.0;
  const std::uint64_t mask = (g == 64) ? ~0ull : ((1ull << g) - 1);
  const std::uint64_t half = 1ull << (g - 1);
  for (std::uint64_t r : residues) {
    std::uint64_t v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * l)) & mask;
    if (v > half) v = (mask + 1) - v;
    double x = std::ldexp(static_cast<double>(v), static_cast<int>(-g));
    double d = 2.0 * std::sin(M_PI * x);
    if (d > worst) worst = d;
    if (worst >= 2.0) return worst;
  }
  return worst;
}

struct Candidate {
  double value;
  BigInt l;
  long g;
  BigRat angle() const {
    BigRat r(l, BigInt(1) << static_cast<unsigned long>(g));
    r.canonicalize();
    return r;
  }
  bool better_than(const Candidate& o) const {
    if (value != o.value) return value < o.value;
    return angle() < o.angle();
  }
};

long ceil_log2(const BigInt& n) {
  std::size_t b = bit_length(n);
  BigInt p = BigInt(1) << static_cast<unsigned long>(b - 1);
  return static_cast<long>(p == n ? b - 1 : b);
}

}  // namespace

Json ScanReport::to_json() const {
  Json prof = Json::array();
  for (double d : profile) prof.push_back(d);
  return Json{{"estimate", estimate},
              {"argmin", {{"num", dec(argmin.get_num())}, {"den", dec(argmin.get_den())}}},
              {"argmin_value", argmin.get_d()},
              {"profile", prof},
              {"coarse_grid", coarse},
              {"rounds_run", rounds_run},
              {"final_lattice_log2", final_lattice_log2},
              {"evaluations", evaluations},
              {"bound_kind", "upper bound of the truncated infimum"}};
}

ScanReport jamison_scan(const SequencePrefix& prefix, const ScanConfig& cfg) {
  prefix.validate();
  const auto& terms = prefix.terms;

  long g0 = 4;
  while ((1ull << g0) < cfg.coarse && g0 < 30) ++g0;
  long gf = std::max(g0, ceil_log2(2 * prefix.back()));
  int factor_log2 = 6;
  {
    int f = cfg.refine_factor;
    if (f < 2 || (f & (f - 1)) != 0) fail(Errc::InvalidSpec, "refine factor must be a power of two");
    factor_log2 = 0;
    while ((1 << factor_log2) < f) ++factor_log2;
  }
  if (cfg.rounds.has_value()) {
    long reach = g0 + static_cast<long>(*cfg.rounds) * factor_log2;
    if (reach < gf)
      fail(Errc::GridTooCoarse, "pinned plan reaches 2^" + std::to_string(reach) +
                                    " < 2*n_K; need 2^" + std::to_string(gf));
    gf = std::min(gf, reach);
  }

  ScanReport rep;
  rep.coarse = 1ull << g0;
  rep.final_lattice_log2 = gf;

  // Domain regularization: at finite truncation the objective collapses as
  // theta -> 0 (every finite power goes small), so multi-term scans are
  // floored at theta >= 1/(2 n_K), where the finest power completes a half
  // oscillation. A single-power prefix keeps the raw grid: its infimum is
  // genuinely approached at the smallest angle.
  auto l_floor = [&](long g) -> BigInt {
    if (terms.size() < 2) return BigInt(1);
    BigInt num = BigInt(1) << static_cast<unsigned long>(g);
    BigInt den = 2 * prefix.back();
    BigInt q = -floor_div(-num, den);  // ceil
    return q < 1 ? BigInt(1) : q;
  };

  // Coarse pass over l/2^g0.
  std::vector<std::uint64_t> res64;
  bool small = g0 <= 62;
  if (small) {
    for (const auto& n : terms) {
      BigInt r = mod_floor(n, BigInt(1) << static_cast<unsigned long>(g0));
      res64.push_back(r.get_ui());
    }
  }
  std::vector<Candidate> kept;
  Candidate best{4.0, BigInt(1), g0};
  {
    std::uint64_t half = 1ull << (g0 - 1);
    BigInt lf = l_floor(g0);
    std::uint64_t lmin = lf > BigInt(static_cast<unsigned long>(half)) ? half : lf.get_ui();
    std::vector<std::pair<double, std::uint64_t>> vals;
    vals.reserve(half);
    for (std::uint64_t l = lmin; l <= half; ++l) {
      double v = eval_point_u64(l, g0, res64);
      ++rep.evaluations;
      vals.emplace_back(v, l);
    }
    std::sort(vals.begin(), vals.end());
    // Keep the best cfg.keep points, spaced at least 2 lattice steps apart
    // so one basin does not hog every slot.
    for (const auto& [v, l] : vals) {
      bool close = false;
      for (const auto& c : kept)
        if (c.g == g0) {
          BigInt d = c.l - BigInt(l);
          if (abs(d) <= 2) close = true;
        }
      if (close) continue;
      kept.push_back(Candidate{v, BigInt(l), g0});
      if (static_cast<int>(kept.size()) >= cfg.keep) break;
    }
    best = kept.front();
    for (const auto& c : kept)
      if (c.better_than(best)) best = c;
  }

  // Refinement rounds on nested power-of-two lattices up to 2^gf.
  long g = g0;
  while (g < gf) {
    long gn = std::min(g + factor_log2, gf);
    long up = gn - g;
    std::set<BigInt> seen;
    std::vector<Candidate> next;
    std::vector<BigInt> res;
    std::vector<std::uint64_t> r64;
    bool use64 = gn <= 62;
    if (use64) {
      for (const auto& n : terms)
        r64.push_back(mod_floor(n, BigInt(1) << static_cast<unsigned long>(gn)).get_ui());
    } else {
      for (const auto& n : terms) res.push_back(mod_floor(n, BigInt(1) << static_cast<unsigned long>(gn)));
    }
    BigInt half = BigInt(1) << static_cast<unsigned long>(gn - 1);
    BigInt lmin = l_floor(gn);
    for (const auto& c : kept) {
      BigInt center = c.l << static_cast<unsigned long>(up);
      BigInt radius = BigInt(1) << static_cast<unsigned long>(up);
      BigInt lo = center - radius, hi = center + radius;
      if (lo < lmin) lo = lmin;
      if (hi > half) hi = half;
      for (BigInt l = lo; l <= hi; l += 1) {
        if (!seen.insert(l).second) continue;
        double v = use64 ? eval_point_u64(l.get_ui(), gn, r64) : eval_point(l, gn, res);
        ++rep.evaluations;
        next.push_back(Candidate{v, l, gn});
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Candidate& a, const Candidate& b) { return a.better_than(b); });
    if (static_cast<int>(next.size()) > cfg.keep) next.resize(cfg.keep);
    for (const auto& c : next)
      if (c.better_than(best)) best = c;
    kept = std::move(next);
    if (kept.empty()) break;
    g = gn;
    ++rep.rounds_run;
  }

  rep.estimate = best.value;
  rep.argmin = best.angle();
  UnimodularPoint lam(Angle::rational(rep.argmin));
  for (const auto& n : terms) rep.profile.push_back(dist_one_pow(lam, n, 128).to_double());
  return rep;
}

}  // namespace riglab
