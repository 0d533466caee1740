#include "riglab/seq.hpp"

#include <algorithm>

#include "riglab/contfrac.hpp"

namespace riglab {

BigInt json_to_big(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<long>());
  fail(Errc::InvalidSpec, "expected integer or decimal string, got " + j.dump());
}

BigRat json_to_rat(const Json& j) {
  if (j.is_object() && j.contains("num") && j.contains("den"))
    return BigRat(json_to_big(j["num"]), json_to_big(j["den"]));
  if (j.is_number_float()) {
    BigRat r;
    mpq_set_d(r.get_mpq_t(), j.get<double>());
    return r;
  }
  return BigRat(json_to_big(j));
}

void SequencePrefix::validate() const {
  if (terms.empty()) fail(Errc::InvalidSpec, "empty prefix");
  if (terms[0] < 1) fail(Errc::InvalidSpec, "n_0 must be >= 1");
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i] <= terms[i - 1])
      fail(Errc::InvalidSpec, "prefix not strictly increasing at index " + std::to_string(i));
}

Json SequencePrefix::to_json() const {
  Json arr = Json::array();
  for (const auto& t : terms) arr.push_back(dec(t));
  return arr;
}

SequencePrefix SequencePrefix::from_json(const Json& j) {
  SequencePrefix p;
  if (!j.is_array()) fail(Errc::InvalidSpec, "prefix must be a JSON array");
  for (const auto& e : j) p.terms.push_back(json_to_big(e));
  p.validate();
  return p;
}

Json SequenceSpec::to_json() const { return Json{{"family", family}, {"params", params}}; }

SequenceSpec SequenceSpec::from_json(const Json& j) {
  SequenceSpec s;
  if (!j.is_object() || !j.contains("family"))
    fail(Errc::InvalidSpec, "sequence spec must be {\"family\", \"params\"}");
  s.family = j["family"].get<std::string>();
  s.params = j.value("params", Json::object());
  return s;
}

namespace {

std::vector<BigInt> gen_primes(std::size_t count) {
  std::size_t bound = std::max<std::size_t>(1000, count * 20);
  for (;;) {
    std::vector<bool> sieve(bound + 1, true);
    std::vector<BigInt> out;
    for (std::size_t i = 2; i <= bound && out.size() < count; ++i) {
      if (!sieve[i]) continue;
      out.push_back(BigInt(static_cast<unsigned long>(i)));
      for (std::size_t m = i * i; m <= bound; m += i) sieve[m] = false;
    }
    if (out.size() >= count) return out;
    bound *= 2;
  }
}

std::vector<BigInt> cf_denominators(const Json& alpha, std::size_t count) {
  if (!alpha.is_object() || !alpha.contains("kind"))
    fail(Errc::InvalidSpec, "alpha spec must have a kind");
  std::string kind = alpha["kind"].get<std::string>();
  std::vector<BigInt> digits;  // a_1, a_2, ... (fractional-part expansion)
  if (kind == "surd") {
    digits = surd_cf_digits(json_to_big(alpha.at("d")), count + 2);
  } else if (kind == "liouville") {
    long m = alpha.at("m").get<long>();
    long v = alpha.at("v").get<long>();
    BigRat a = liouville_partial(m, v);
    CFExpansion cf = cf_of_rational(a.get_num(), a.get_den());
    digits.assign(cf.a.begin() + 1, cf.a.end());
  } else if (kind == "digits") {
    for (const auto& e : alpha.at("a")) digits.push_back(json_to_big(e));
  } else {
    fail(Errc::InvalidSpec, "unknown alpha kind " + kind);
  }
  for (const auto& d : digits)
    if (d < 1) fail(Errc::InvalidSpec, "partial quotient < 1 in alpha spec");
  CFExpansion cf;
  cf.a.push_back(0);
  cf.a.insert(cf.a.end(), digits.begin(), digits.end());
  ConvergentTable t = convergents(cf);
  std::vector<BigInt> out;
  for (std::size_t i = 1; i < t.size() && out.size() < count; ++i) {
    if (!out.empty() && t.q[i] <= out.back()) continue;  // q_1 may repeat q_0
    out.push_back(t.q[i]);
  }
  return out;
}

}  // namespace

SequencePrefix generate(const SequenceSpec& spec, std::size_t count) {
  if (count < 1) fail(Errc::InvalidSpec, "count must be >= 1");
  SequencePrefix out;
  out.provenance = spec.to_json();
  const Json& p = spec.params;

  if (spec.family == "explicit") {
    if (!p.contains("terms")) fail(Errc::InvalidSpec, "explicit family needs terms");
    for (const auto& e : p["terms"]) out.terms.push_back(json_to_big(e));
    if (out.terms.size() < count)
      fail(Errc::InvalidSpec, "explicit list shorter than requested count");
    out.terms.resize(count);
  } else if (spec.family == "superlinear") {
    BigInt n = p.contains("seed") ? json_to_big(p["seed"]) : BigInt(2);
    BigInt mult = p.contains("mult") ? json_to_big(p["mult"]) : BigInt(1);
    std::string rule = p.value("rule", std::string("square"));
    if (rule != "square") fail(Errc::InvalidSpec, "unknown superlinear rule " + rule);
    if (n < 2) fail(Errc::InvalidSpec, "superlinear seed must be >= 2");
    if (mult < 1) fail(Errc::InvalidSpec, "mult must be >= 1");
    for (std::size_t k = 0; k < count; ++k) {
      out.terms.push_back(n);
      n = mult * n * n;
    }
  } else if (spec.family == "chain") {
    BigInt n = p.contains("seed") ? json_to_big(p["seed"]) : BigInt(1);
    std::vector<BigInt> mult;
    if (p.contains("multipliers"))
      for (const auto& e : p["multipliers"]) mult.push_back(json_to_big(e));
    if (mult.empty()) mult.push_back(BigInt(2));
    for (const auto& m : mult)
      if (m < 2) fail(Errc::InvalidSpec, "chain multipliers must be >= 2");
    if (n < 1) fail(Errc::InvalidSpec, "chain seed must be >= 1");
    for (std::size_t k = 0; k < count; ++k) {
      out.terms.push_back(n);
      n *= mult[std::min(k, mult.size() - 1)];
    }
  } else if (spec.family == "poly") {
    if (!p.contains("coeffs")) fail(Errc::InvalidSpec, "poly family needs coeffs");
    std::vector<BigInt> c;
    for (const auto& e : p["coeffs"]) c.push_back(json_to_big(e));
    BigInt k = p.contains("start") ? json_to_big(p["start"]) : BigInt(1);
    for (std::size_t i = 0; i < count; ++i, k += 1) {
      BigInt v = 0;
      for (std::size_t d = c.size(); d-- > 0;) v = v * k + c[d];
      if (v < 1) fail(Errc::InvalidSpec, "polynomial value < 1 at k=" + dec(k));
      if (!out.terms.empty() && v <= out.terms.back())
        fail(Errc::InvalidSpec, "polynomial not strictly increasing at k=" + dec(k));
      out.terms.push_back(v);
    }
  } else if (spec.family == "primes") {
    out.terms = gen_primes(count);
  } else if (spec.family == "cf-denominators") {
    if (!p.contains("alpha")) fail(Errc::InvalidSpec, "cf-denominators needs alpha spec");
    out.terms = cf_denominators(p["alpha"], count);
    if (out.terms.size() < count)
      fail(Errc::InvalidSpec, "alpha expansion too short for requested count");
  } else if (spec.family == "ex77") {
    if (!p.contains("schedule")) fail(Errc::InvalidSpec, "ex77 family needs schedule");
    std::vector<long> schedule;
    for (const auto& e : p["schedule"]) schedule.push_back(e.get<long>());
    // Grow blocks until enough terms are available.
    for (std::size_t blocks = 1; blocks + 1 <= schedule.size(); ++blocks) {
      SequencePrefix full = ex77_generate(schedule, blocks);
      if (full.terms.size() >= count) {
        out.terms.assign(full.terms.begin(), full.terms.begin() + count);
        break;
      }
    }
    if (out.terms.size() < count)
      fail(Errc::InvalidSpec, "ex77 schedule too short for requested count");
  } else {
    fail(Errc::InvalidSpec, "unknown family " + spec.family);
  }
  out.validate();
  return out;
}

DiagnosticsReport ratio_diagnostics(const SequencePrefix& prefix) {
  prefix.validate();
  if (prefix.size() < 2) fail(Errc::InvalidSpec, "diagnostics need at least 2 terms");
  DiagnosticsReport r;
  r.divides_next = true;
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    BigRat ratio(prefix.terms[i], prefix.terms[i - 1]);
    ratio.canonicalize();
    if (i == 1 || ratio < r.min_ratio) r.min_ratio = ratio;
    if (i == 1 || ratio > r.max_ratio) r.max_ratio = ratio;
    if (!mpz_divisible_p(prefix.terms[i].get_mpz_t(), prefix.terms[i - 1].get_mpz_t()))
      r.divides_next = false;
  }
  const BigInt& nK = prefix.back();
  for (const BigInt& thr : {BigInt(nK / 4), BigInt(nK / 2), nK}) {
    if (thr < 1) continue;
    DensityRow row;
    row.threshold = thr;
    for (const auto& t : prefix.terms)
      if (t <= thr) ++row.count;
    row.density = BigRat(BigInt(static_cast<unsigned long>(row.count)), thr);
    row.density.canonicalize();
    r.density.push_back(row);
  }
  return r;
}

Json DiagnosticsReport::to_json() const {
  Json d = Json::array();
  for (const auto& row : density)
    d.push_back(Json{{"N", dec(row.threshold)},
                     {"count", row.count},
                     {"density", row.density.get_d()}});
  return Json{{"min_ratio", dec(min_ratio)},
              {"max_ratio", dec(max_ratio)},
              {"min_ratio_value", min_ratio.get_d()},
              {"max_ratio_value", max_ratio.get_d()},
              {"divides_next", divides_next},
              {"density", d}};
}

SequencePrefix ex77_generate(const std::vector<long>& schedule, std::size_t blocks) {
  if (schedule.empty() || schedule[0] != 1)
    fail(Errc::ScheduleInconsistent, "schedule must start with k_1 = 1");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      fail(Errc::ScheduleInconsistent, "schedule must be strictly increasing");
  if (blocks < 1) fail(Errc::ScheduleInconsistent, "need at least one block");
  if (schedule.size() < blocks + 1)
    fail(Errc::ScheduleInconsistent, "schedule too short: block p needs k_{p+2}");

  constexpr std::size_t kMaxTerms = 1u << 21;
  SequencePrefix out;
  out.provenance = Json{{"family", "ex77"}, {"schedule", schedule}, {"blocks", blocks}};
  for (std::size_t pb = 0; pb < blocks; ++pb) {
    BigInt Np = big_pow(BigInt(2), 1UL << pb);  // 2^(2^p)
    long k_lo = schedule[pb];                   // k_{p+1}
    long k_hi = 2 * schedule[pb + 1] - 1;       // 2 k_{p+2} - 1
    BigInt l_count = (Np - 1) * Np;             // l in [0, (Np-1)Np - 1]
    // Ordering claim: the previous block ends below N_p^{k_{p+1}}.
    if (!out.terms.empty() && out.terms.back() >= big_pow(Np, static_cast<unsigned long>(k_lo)))
      fail(Errc::ScheduleInconsistent,
           "block " + std::to_string(pb) + " does not start above block " + std::to_string(pb - 1));
    for (long k = k_lo; k <= k_hi; ++k) {
      BigInt base = big_pow(Np, static_cast<unsigned long>(k));
      BigInt step = big_pow(Np, static_cast<unsigned long>(k - 1));
      for (BigInt l = 0; l < l_count; l += 1) {
        BigInt term = base + l * step;
        if (!out.terms.empty() && term <= out.terms.back())
          fail(Errc::ScheduleInconsistent, "blocks overlap at " + dec(term));
        out.terms.push_back(term);
        if (out.terms.size() > kMaxTerms)
          fail(Errc::DepthTooLarge, "ex77 expansion exceeds " + std::to_string(kMaxTerms) + " terms");
      }
    }
  }
  out.validate();
  return out;
}

}  // namespace riglab
