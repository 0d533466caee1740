#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "riglab/bigint.hpp"
#include "riglab/error.hpp"

namespace riglab {

using Json = nlohmann::ordered_json;

BigInt json_to_big(const Json& j);
BigRat json_to_rat(const Json& j);

// Strictly increasing positive integers n_0 < n_1 < ... with provenance.
struct SequencePrefix {
  std::vector<BigInt> terms;
  Json provenance = Json::object();

  void validate() const;
  std::size_t size() const { return terms.size(); }
  const BigInt& back() const { return terms.back(); }

  Json to_json() const;  // array of decimal strings (values exceed 64 bits)
  static SequencePrefix from_json(const Json& j);
};

// {"family": string, "params": object}. Families:
//   explicit     params: {"terms": [dec strings]}
//   superlinear  params: {"seed": n0 >= 2, "rule": "square", "mult": c >= 1}
//                generates n_{k+1} = c * n_k^2
//   chain        params: {"seed": n0 >= 1, "multipliers": [m_k >= 2, ...]}
//                (the last multiplier repeats when the list runs out)
//   poly         params: {"coeffs": [c0, c1, ...], "start": k0}
//   primes       params: {}
//   cf-denominators  params: {"alpha": {"kind": "surd", "d": int}
//                             | {"kind": "liouville", "m": int, "v": int}
//                             | {"kind": "digits", "a": [ints]}}
//   ex77         params: {"schedule": [k1=1 < k2 < ...]}
struct SequenceSpec {
  std::string family;
  Json params = Json::object();

  Json to_json() const;
  static SequenceSpec from_json(const Json& j);
};

SequencePrefix generate(const SequenceSpec& spec, std::size_t count);

struct DensityRow {
  BigInt threshold;
  std::size_t count = 0;
  BigRat density;  // count / threshold, exact
};

struct DiagnosticsReport {
  BigRat min_ratio, max_ratio;  // consecutive n_{k+1}/n_k, exact
  bool divides_next = false;    // n_k | n_{k+1} for every k
  std::vector<DensityRow> density;  // at n_K/4, n_K/2, n_K

  Json to_json() const;
};

DiagnosticsReport ratio_diagnostics(const SequencePrefix& prefix);

// Block family: N_p = 2^(2^p), block p is the union of
//   A_{N_p,k} = { N_p^k + l*N_p^(k-1) : 0 <= l <= (N_p-1)*N_p - 1 }
// over k in [k_{p+1}, 2*k_{p+2} - 1]. The schedule (k_1=1 < k_2 < ...) is
// caller input; the generator verifies the ordering claim that consecutive
// blocks are disjoint and increasing, and fails with ScheduleInconsistent
// otherwise.
SequencePrefix ex77_generate(const std::vector<long>& schedule, std::size_t blocks);

}  // namespace riglab
