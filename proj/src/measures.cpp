#include "riglab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "riglab/philox.hpp"

namespace riglab {

void ChainMeasure::validate() const {
  if (chain.empty() || chain.size() != weights.size())
    fail(Errc::InvalidSpec, "chain and weights must be nonempty and aligned");
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (chain[j] < 2) fail(Errc::InvalidSpec, "chain elements must be >= 2");
    if (j > 0 && !mpz_divisible_p(chain[j].get_mpz_t(), chain[j - 1].get_mpz_t()))
      fail(Errc::NotAChain, "m_" + std::to_string(j) + " does not divide m_" + std::to_string(j + 1));
    if (weights[j] <= 0 || weights[j] >= 1)
      fail(Errc::InvalidSpec, "weights must lie in (0,1)");
    if (j > 0 && weights[j] > weights[j - 1])
      fail(Errc::InvalidSpec, "weights must be nonincreasing");
  }
}

ChainMeasure ChainMeasure::harmonic(std::vector<BigInt> chain) {
  ChainMeasure m;
  m.chain = std::move(chain);
  for (std::size_t j = 1; j <= m.chain.size(); ++j) m.weights.emplace_back(1, BigInt(j + 1));
  m.weight_rule = "1/(j+1)";
  m.validate();
  return m;
}

void CoinMeasure::validate() const {
  if (digits.empty()) fail(Errc::InvalidSpec, "coin measure needs digits");
  for (std::size_t p = 0; p < digits.size(); ++p) {
    if (digits[p] < 2) fail(Errc::InvalidSpec, "digit denominators must be >= 2");
    if (p > 0 && digits[p] <= digits[p - 1])
      fail(Errc::InvalidSpec, "digit denominators must increase");
    if (p > 0 && !mpz_divisible_p(digits[p].get_mpz_t(), digits[p - 1].get_mpz_t()))
      fail(Errc::NotAChain, "digit denominators must form a divisibility chain");
  }
  if (tail_sum < 0) fail(Errc::InvalidSpec, "negative tail bound");
}

FourierValue bern_fourier(const ChainMeasure& mu, const BigInt& n, long prec,
                          std::optional<double> max_tail) {
  mu.validate();
  if (n < 1) fail(Errc::InvalidSpec, "n must be >= 1");
  Cplx prod = Cplx::one(prec);
  for (std::size_t j = 0; j < mu.chain.size(); ++j) {
    const BigInt& m = mu.chain[j];
    if (mpz_divisible_p(n.get_mpz_t(), m.get_mpz_t())) continue;  // factor is exactly 1
    BigRat x(mod_floor(n, m), m);
    x.canonicalize();
    Real s(prec), c(prec);
    sincos_pi(x * 2, prec, s, c);
    Real a = Real::of(mu.weights[j], prec);
    // 1 - a_j (1 - e^{2 pi i x})
    Cplx factor(Real::of(1.0, prec) - a * (Real::of(1.0, prec) - c), a * s);
    prod *= factor;
  }
  // Chain-extension tail: weights beyond J are <= a_J, sum_{j>J} 1/m_j <= 1/m_J.
  const std::size_t J = mu.chain.size();
  Real tail = Real::of(mu.weights[J - 1], prec) * Real::of(n, prec) * Real::pi(prec) * 2.0 /
              Real::of(mu.chain[J - 1], prec);
  // Roundoff slack for J complex factor multiplications.
  tail = tail + ldexp2(Real::of(static_cast<double>(8 * J), prec), -(prec - 8));
  if (max_tail && tail > *max_tail)
    fail(Errc::DepthInsufficient,
         "tail bound " + tail.str(6) + " exceeds requested tolerance");
  return {prod, tail};
}

FourierValue coin_fourier(const CoinMeasure& nu, const BigInt& n, long prec,
                          std::optional<double> max_tail) {
  nu.validate();
  if (n < 1) fail(Errc::InvalidSpec, "n must be >= 1");
  Cplx prod = Cplx::one(prec);
  for (const auto& d : nu.digits) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) continue;
    BigRat x(mod_floor(n, d), d);
    x.canonicalize();
    Real s(prec), c(prec);
    sincos_pi(x * 2, prec, s, c);
    prod *= Cplx((Real::of(1.0, prec) + c) / 2.0, s / 2.0);
  }
  Real tail = Real::pi(prec) * Real::of(n, prec) * Real::of(nu.tail_sum, prec);
  tail = tail + ldexp2(Real::of(static_cast<double>(8 * nu.digits.size()), prec), -(prec - 8));
  if (max_tail && tail > *max_tail)
    fail(Errc::DepthInsufficient, "tail bound " + tail.str(6) + " exceeds requested tolerance");
  return {prod, tail};
}

McEstimate coin_fourier_mc(const CoinMeasure& nu, const BigInt& n, std::uint64_t trials,
                           std::uint64_t seed) {
  nu.validate();
  // Per digit, the phase contribution of eps_p = 1 is 2 pi (n mod d_p)/d_p.
  std::vector<double> phase;
  for (const auto& d : nu.digits) {
    BigRat x(mod_floor(n, d), d);
    phase.push_back(x.get_d());
  }
  double sr = 0, si = 0, sr2 = 0, si2 = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    double frac = 0;
    for (std::size_t p = 0; p < phase.size(); ++p) {
      std::uint64_t bits = philox_u64(seed, t, p / 64, 0);
      if ((bits >> (p % 64)) & 1u) frac += phase[p];
    }
    double re = std::cos(2 * M_PI * frac), im = std::sin(2 * M_PI * frac);
    sr += re;
    si += im;
    sr2 += re * re;
    si2 += im * im;
  }
  McEstimate e;
  e.trials = trials;
  e.seed = seed;
  double N = static_cast<double>(trials);
  e.re = sr / N;
  e.im = si / N;
  e.se_re = std::sqrt(std::max(0.0, sr2 / N - e.re * e.re) / N);
  e.se_im = std::sqrt(std::max(0.0, si2 / N - e.im * e.im) / N);
  return e;
}

namespace {

Json cplx_json(const Cplx& z) {
  return Json{{"re", z.re.str()}, {"im", z.im.str()}};
}

}  // namespace

Json CertificateReport::to_json() const {
  Json rws = Json::array();
  for (const auto& r : rows)
    rws.push_back(Json{{"n", dec(r.n)},
                       {"sigma_hat", cplx_json(r.sigma_hat)},
                       {"dist_one", r.dist_one},
                       {"trunc_err", r.trunc_err},
                       {"bound", r.bound},
                       {"pass", r.pass},
                       {"note", r.note}});
  return Json{{"rows", rws}, {"verdict", verdict}, {"meta", meta}};
}

std::string CertificateReport::to_csv() const {
  std::string out = "k,n,re,im,dist_one,trunc_err,bound,pass\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    out += std::to_string(k) + "," + dec(r.n) + "," + r.sigma_hat.re.str() + "," +
           r.sigma_hat.im.str() + "," + std::to_string(r.dist_one) + "," +
           std::to_string(r.trunc_err) + "," + std::to_string(r.bound) + "," +
           (r.pass ? "1" : "0") + "\n";
  }
  return out;
}

CertificateReport verify_prop33(const ChainMeasure& mu, const SequencePrefix& prefix, long prec) {
  mu.validate();
  prefix.validate();
  CertificateReport rep;
  Real pi4 = Real::pi(prec) * 4.0;
  for (const auto& t : prefix.terms) {
    // Each term must divide into the chain.
    bool related = false;
    for (const auto& m : mu.chain)
      if (mpz_divisible_p(m.get_mpz_t(), t.get_mpz_t())) {
        related = true;
        break;
      }
    if (!related)
      fail(Errc::PrefixChainMismatch, "prefix term " + dec(t) + " does not divide into the chain");
    std::size_t idx = 0;  // largest 1-based j with m_j | t, 0 if none
    for (std::size_t j = 0; j < mu.chain.size(); ++j)
      if (mpz_divisible_p(t.get_mpz_t(), mu.chain[j].get_mpz_t())) idx = j + 1;
    CertRow row;
    row.n = t;
    FourierValue f = bern_fourier(mu, t, prec);
    row.sigma_hat = f.value;
    Real dist = abs(f.value - Cplx::one(prec));
    row.dist_one = dist.to_double();
    row.trunc_err = f.error.to_double();
    BigRat a_next = idx < mu.weights.size() ? mu.weights[idx] : mu.weights.back();
    Real bound = pi4 * Real::of(a_next, prec);
    row.bound = bound.to_double();
    row.pass = (dist + f.error) <= bound;
    if (idx >= mu.weights.size()) row.note = "beyond stored weights: a_{J} used for a_{k+1}";
    rep.rows.push_back(std::move(row));
  }
  rep.verdict = std::all_of(rep.rows.begin(), rep.rows.end(),
                            [](const CertRow& r) { return r.pass; });
  rep.meta = Json{{"measure", "bernoulli-chain"},
                  {"depth", mu.depth()},
                  {"weight_rule", mu.weight_rule},
                  {"continuity", "divergent weight series (symbolic certificate, rule above)"},
                  {"check", "|sigma_hat(n_k) - 1| + err <= 4*pi*a_{k+1}"}};
  return rep;
}

// ---------------------------------------------------------------------------
// Block-sequence certificate.

namespace {

// a_k = 1/(k log k) for k >= 2, a_0 = a_1 = 1, as a 128-bit rational.
BigRat ex77_a(long k) {
  if (k <= 1) return BigRat(1);
  Real v = Real::of(1.0, 192) / (Real::of(static_cast<double>(k), 192) *
                                 log(Real::of(static_cast<double>(k), 192)));
  return v.to_rational_exact();
}

}  // namespace

CertificateReport ex77_certificate(const std::vector<long>& schedule,
                                   const SequencePrefix& prefix, long prec) {
  prefix.validate();
  if (schedule.size() < 2) fail(Errc::ScheduleInconsistent, "schedule needs at least k_1, k_2");
  // Locate every prefix term inside the block structure and find the number
  // of blocks spanned.
  struct Loc {
    std::size_t p;
    long k;
    BigInt l;
  };
  std::vector<Loc> locs;
  std::size_t max_block = 0;
  for (const auto& t : prefix.terms) {
    bool found = false;
    for (std::size_t pb = 0; pb + 1 < schedule.size() && !found; ++pb) {
      BigInt Np = big_pow(BigInt(2), 1UL << pb);
      long k_lo = schedule[pb], k_hi = 2 * schedule[pb + 1] - 1;
      for (long k = k_lo; k <= k_hi && !found; ++k) {
        BigInt base = big_pow(Np, static_cast<unsigned long>(k));
        BigInt step = big_pow(Np, static_cast<unsigned long>(k - 1));
        if (t < base) break;
        BigInt l = (t - base) / step;
        if (l < (Np - 1) * Np && base + l * step == t) {
          locs.push_back({pb, k, l});
          max_block = std::max(max_block, pb);
          found = true;
        }
      }
    }
    if (!found)
      fail(Errc::ScheduleInconsistent,
           "prefix term " + dec(t) + " is not a block term of this schedule");
  }
  if (schedule.size() < max_block + 3)
    fail(Errc::ScheduleInconsistent,
         "schedule must extend two entries past the last prefix block to bound tails");

  // Chain (1 dropped: the m=1 factor is a no-op) and weights b_j / (4 pi).
  std::vector<BigInt> chain;
  std::vector<BigRat> bseq;
  BigRat corr(1);
  for (std::size_t pb = 0; pb + 1 < schedule.size(); ++pb) {
    BigInt Np = big_pow(BigInt(2), 1UL << pb);
    long k_lo = (pb == 0) ? 1 : schedule[pb];
    long k_hi = 2 * schedule[pb + 1] - 1;
    if (pb > 0) corr *= ex77_a(2 * schedule[pb] - 1) / ex77_a(schedule[pb]);
    for (long k = k_lo; k <= k_hi; ++k) {
      chain.push_back(big_pow(Np, static_cast<unsigned long>(k)));
      bseq.push_back(corr * ex77_a(k));
    }
  }
  Real pi4 = Real::pi(prec) * 4.0;
  BigRat inv4pi = (Real::of(1.0, 192) / (Real::pi(192) * 4.0)).to_rational_exact();
  ChainMeasure mu;
  mu.chain = chain;
  for (auto& b : bseq) mu.weights.push_back(b * inv4pi);
  mu.weight_rule = "b_j/(4*pi), b_j = cumulative-corrected 1/(k log k)";
  mu.validate();

  CertificateReport rep;
  // sigma_hat at the two powers each row needs, cached.
  std::map<BigInt, FourierValue> cache;
  auto eval = [&](const BigInt& n) -> const FourierValue& {
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, bern_fourier(mu, n, prec)).first;
    return it->second;
  };
  for (std::size_t i = 0; i < prefix.terms.size(); ++i) {
    const auto& t = prefix.terms[i];
    const Loc& loc = locs[i];
    BigInt Np = big_pow(BigInt(2), 1UL << loc.p);
    BigInt nk = big_pow(Np, static_cast<unsigned long>(loc.k));
    BigInt nk1 = big_pow(Np, static_cast<unsigned long>(loc.k - 1));
    const FourierValue& fk = eval(nk);
    Real dk = abs(fk.value - Cplx::one(prec)) + fk.error;
    Real tri = dk;
    if (loc.l > 0) {
      const FourierValue& fk1 = eval(nk1);
      Real dk1 = abs(fk1.value - Cplx::one(prec)) + fk1.error;
      tri = dk + dk1 * Real::of(loc.l, prec);
    }
    CertRow row;
    row.n = t;
    FourierValue direct = eval(t);
    row.sigma_hat = direct.value;
    row.dist_one = abs(direct.value - Cplx::one(prec)).to_double();
    row.trunc_err = tri.to_double();  // triangle-decomposition bound incl. errors
    row.bound = std::ldexp(1.0, -static_cast<int>(loc.p));
    row.pass = tri <= row.bound;
    row.note = "block p=" + std::to_string(loc.p) + ", k=" + std::to_string(loc.k) +
               ", l=" + dec(loc.l);
    rep.rows.push_back(std::move(row));
  }
  rep.verdict = std::all_of(rep.rows.begin(), rep.rows.end(),
                            [](const CertRow& r) { return r.pass; });

  // Schedule largeness diagnostics (with the unscaled a_k).
  Json conds = Json::array();
  for (std::size_t pb = 0; pb + 1 < schedule.size(); ++pb) {
    BigInt Np = big_pow(BigInt(2), 1UL << pb);
    Json c = Json::object();
    c["p"] = pb;
    BigRat lhs2 = BigRat(Np * (Np - 1)) * ex77_a(2 * schedule[pb + 1] - 1);
    c["block_target"] = (lhs2 <= pow2_rat(-static_cast<long>(pb)));
    if (pb >= 1) {
      // divergence credit: (a_{2 k_p - 1}/a_{k_p}) * sum_{k=k_p}^{2 k_{p+1}-1} a_k >= 1
      BigRat s(0);
      for (long k = schedule[pb - 1]; k <= 2 * schedule[pb] - 1; ++k) s += ex77_a(k);
      BigRat credit = (ex77_a(2 * schedule[pb - 1] - 1) / ex77_a(schedule[pb - 1])) * s;
      c["divergence_credit"] = credit.get_d();
      c["divergence_ok"] = (credit >= 1);
      // boundary case k = k_{p+1}
      BigRat lhs3 = (BigRat(1) + BigRat(Np * (Np - 1) - 1) * (ex77_a(2 * schedule[pb] - 2) /
                                                              ex77_a(schedule[pb]))) *
                    ex77_a(2 * schedule[pb + 1] - 2);
      c["boundary_target"] = (lhs3 <= pow2_rat(-static_cast<long>(pb)));
    }
    conds.push_back(c);
  }
  rep.meta = Json{{"measure", "ex77-chain"},
                  {"chain_depth", mu.depth()},
                  {"weight_rule", mu.weight_rule},
                  {"continuity", "divergent weight series by schedule largeness (see conditions)"},
                  {"check", "|s(N_p^k)-1| + l*|s(N_p^{k-1})-1| <= 2^-p"},
                  {"schedule_conditions", conds}};
  return rep;
}

double weyl_average(const SequencePrefix& prefix, const Angle& theta, std::size_t N) {
  prefix.validate();
  if (N < 1 || N > prefix.size())
    fail(Errc::InvalidSpec, "N must be in [1, prefix length]");
  double sr = 0, si = 0;
  for (std::size_t k = 0; k < N; ++k) {
    Angle a = theta.pow(prefix.terms[k]);
    double x = a.value_rat().get_d();
    sr += std::cos(2 * M_PI * x);
    si += std::sin(2 * M_PI * x);
  }
  double n = static_cast<double>(N);
  return std::hypot(sr / n, si / n);
}

Json NonrigidityReport::to_json() const {
  Json arr = Json::array();
  for (double a : averages) arr.push_back(a);
  return Json{{"averages_sorted", arr},
              {"p95", p95},
              {"evidence", evidence},
              {"note", verdict_note},
              {"meta", meta}};
}

NonrigidityReport nonrigidity_scan(const SequencePrefix& prefix, const ThetaSampleSpec& spec,
                                   std::size_t N) {
  prefix.validate();
  if (spec.count < 4) fail(Errc::InvalidSpec, "need at least 4 samples");
  NonrigidityReport rep;
  std::vector<Angle> thetas;
  // Structural probes t/n_m, newest first, at most a quarter of the budget.
  std::size_t probes = 0;
  for (std::size_t i = prefix.size(); i-- > 0 && probes < spec.count / 4;) {
    if (prefix.terms[i] <= spec.min_denominator) break;  // excluded denominators
    thetas.push_back(Angle::rational(BigInt(1), prefix.terms[i]));
    ++probes;
  }
  // Uniform dyadic samples l / 2^64 (exact rationals; the reduced denominator
  // stays far above any practical exclusion bound).
  BigInt den64 = BigInt(1) << 64;
  for (std::size_t i = thetas.size(); i < spec.count; ++i) {
    std::uint64_t l = philox_u64(spec.seed, 0xA11CE, i, 0);
    l |= 1;  // odd numerator: the denominator stays 2^64 after reduction
    thetas.push_back(Angle::rational(BigInt(static_cast<unsigned long>(l)), den64));
  }
  for (const auto& th : thetas) rep.averages.push_back(weyl_average(prefix, th, N));
  std::sort(rep.averages.begin(), rep.averages.end());
  std::size_t idx95 = static_cast<std::size_t>(std::ceil(0.95 * spec.count)) - 1;
  rep.p95 = rep.averages[std::min(idx95, rep.averages.size() - 1)];
  if (prefix.size() < 2) {
    rep.evidence = false;
    rep.verdict_note = "inconclusive: single-term prefix, all averages are 1";
  } else if (rep.p95 <= 1.0 - spec.delta) {
    rep.evidence = true;
    rep.verdict_note = "non-rigidity evidence: 95th percentile of |avg| <= 1 - delta";
  } else {
    rep.evidence = false;
    rep.verdict_note = "no evidence: averages stay near 1 on part of the sample";
  }
  rep.meta = Json{{"samples", spec.count},
                  {"structural_probes", probes},
                  {"seed", spec.seed},
                  {"min_denominator", dec(spec.min_denominator)},
                  {"delta", spec.delta},
                  {"N", N}};
  return rep;
}

std::vector<std::pair<BigRat, BigRat>> atomize(const ChainMeasure& mu, std::size_t depth) {
  mu.validate();
  depth = std::min(depth, mu.depth());
  if (depth > 20) fail(Errc::DepthTooLarge, "atomization depth > 20");
  std::map<BigRat, BigRat> acc;
  acc[BigRat(0)] = BigRat(1);
  for (std::size_t j = 0; j < depth; ++j) {
    std::map<BigRat, BigRat> next;
    BigRat step(1, mu.chain[j]);
    step.canonicalize();
    for (const auto& [pos, w] : acc) {
      next[pos] += w * (BigRat(1) - mu.weights[j]);
      next[frac_part(pos + step)] += w * mu.weights[j];
    }
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

std::vector<std::pair<BigRat, BigRat>> atomize(const CoinMeasure& nu, std::size_t depth) {
  nu.validate();
  depth = std::min(depth, nu.depth());
  if (depth > 20) fail(Errc::DepthTooLarge, "atomization depth > 20");
  std::map<BigRat, BigRat> acc;
  acc[BigRat(0)] = BigRat(1);
  for (std::size_t p = 0; p < depth; ++p) {
    std::map<BigRat, BigRat> next;
    BigRat step(1, nu.digits[p]);
    step.canonicalize();
    for (const auto& [pos, w] : acc) {
      next[pos] += w / 2;
      next[frac_part(pos + step)] += w / 2;
    }
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

L2IdentityResult l2_identity_check(const std::vector<std::pair<BigRat, BigRat>>& atoms,
                                   const BigInt& n, long prec) {
  if (atoms.empty()) fail(Errc::InvalidSpec, "no atoms");
  Real lhs(prec);
  Cplx hat = Cplx::of(0, 0, prec);
  for (const auto& [pos, w] : atoms) {
    BigRat x = frac_part(pos * BigRat(n));
    Real s(prec), c(prec);
    sincos_pi(x * 2, prec, s, c);
    Real wr = Real::of(w, prec);
    // |e^{2 pi i n x} - 1|^2 = (c-1)^2 + s^2
    Real one = Real::of(1.0, prec);
    lhs += wr * ((c - one) * (c - one) + s * s);
    hat += Cplx(wr * c, wr * s);
  }
  Real rhs = (Real::of(1.0, prec) - hat.re) * 2.0;
  return {lhs, rhs, abs(lhs - rhs)};
}

}  // namespace riglab
