#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riglab/angle.hpp"
#include "riglab/circle.hpp"
#include "riglab/seq.hpp"

namespace riglab {

// Infinite Bernoulli convolution *_j ((1-a_j) delta_0 + a_j delta_{1/m_j})
// along a divisibility chain m_1 | m_2 | ..., truncated at depth J. The
// continuity certificate (divergence of sum a_j) is symbolic: it names the
// weight rule; finitely many weights can never witness it numerically.
struct ChainMeasure {
  std::vector<BigInt> chain;    // m_1 | m_2 | ... | m_J
  std::vector<BigRat> weights;  // a_j in (0,1), nonincreasing
  std::string weight_rule;      // e.g. "1/(j+1)"; "" = unspecified

  void validate() const;
  std::size_t depth() const { return chain.size(); }
  // a_j = 1/(j+1) on the given chain.
  static ChainMeasure harmonic(std::vector<BigInt> chain);
};

// Fair-coin measure on digit points theta = sum_p eps_p / d_p. The digit
// denominators come from a divisibility chain; tail_sum bounds
// sum_{p > P} 1/d_p for the undigitized tail.
struct CoinMeasure {
  std::vector<BigInt> digits;  // d_1 < d_2 < ... (each divides the next)
  BigRat tail_sum = 0;

  void validate() const;
  std::size_t depth() const { return digits.size(); }
};

struct FourierValue {
  Cplx value;
  Real error;  // |exact - value| <= error, truncation + extension tail
};

// Truncated product prod_{j<=J} (1 - a_j (1 - e^{2 pi i n / m_j})). Factors
// with m_j | n contribute exactly 1 and are skipped. The tail for j > J uses
// the chain-extension bound 2 pi n a_J sum_{j>J} 1/m_j <= 2 pi n a_J / m_J.
// If max_tail is given and the bound exceeds it: DepthInsufficient.
FourierValue bern_fourier(const ChainMeasure& mu, const BigInt& n, long prec = kDefaultPrecBits,
                          std::optional<double> max_tail = std::nullopt);

// prod_{p<=P} (1 + e^{2 pi i n / d_p}) / 2 with tail error pi n sum_{p>P} 1/d_p.
FourierValue coin_fourier(const CoinMeasure& nu, const BigInt& n, long prec = kDefaultPrecBits,
                          std::optional<double> max_tail = std::nullopt);

// Monte-Carlo estimate of the coin Fourier coefficient from `trials` sampled
// digit strings; returns (re, im, se_re, se_im).
struct McEstimate {
  double re = 0, im = 0, se_re = 0, se_im = 0;
  std::uint64_t trials = 0, seed = 0;
};
McEstimate coin_fourier_mc(const CoinMeasure& nu, const BigInt& n, std::uint64_t trials,
                           std::uint64_t seed);

struct CertRow {
  BigInt n;
  Cplx sigma_hat;
  double dist_one = 0;   // |sigma_hat - 1|
  double trunc_err = 0;  // rigorous truncation error
  double bound = 0;      // applicable bound for this row
  bool pass = false;
  std::string note;
};

struct CertificateReport {
  std::vector<CertRow> rows;
  bool verdict = false;  // all rows pass
  Json meta = Json::object();

  Json to_json() const;
  std::string to_csv() const;
};

// Row k: |sigma_hat(n_k) - 1| + truncation error <= 4 pi a_{idx(n_k)+1},
// where idx(t) is the largest chain index with m_idx | t. Every prefix term
// must divide into the chain (PrefixChainMismatch otherwise).
CertificateReport verify_prop33(const ChainMeasure& mu, const SequencePrefix& prefix,
                                long prec = kDefaultPrecBits);

// Certificate for the block sequence: builds the chain measure whose chain is
//   (1, 2, 4, ..., 2^{2 k_2 - 1}, 4^{k_2}, 4^{k_2 + 1}, ...)
// with weights b_j / (4 pi)  (b_0..: a_0, a_1, ..., a_{2k_2-1}, then blocks
// scaled by the cumulative factor prod_q a_{2k_{q+1}-1}/a_{k_{q+1}};
// a_k = 1/(k log k), a_0 = a_1 = 1). Each prefix row n = N_p^k + l N_p^{k-1}
// is bounded through |sigma(N_p^k)-1| + l |sigma(N_p^{k-1})-1| against the
// per-block target 2^-p. Rows of an under-grown schedule fail (verdict
// false), they do not error.
CertificateReport ex77_certificate(const std::vector<long>& schedule,
                                   const SequencePrefix& prefix, long prec = kDefaultPrecBits);

// |1/N sum_{k=1}^{N} e^{2 pi i n_k theta}|; exact big-integer angle
// reduction, double accumulation.
double weyl_average(const SequencePrefix& prefix, const Angle& theta, std::size_t N);

struct ThetaSampleSpec {
  std::size_t count = 512;
  std::uint64_t seed = 1;
  BigInt min_denominator = 64;  // rationals with denominator <= bound are excluded
  double delta = 0.5;           // evidence threshold: 95th percentile <= 1 - delta
};

struct NonrigidityReport {
  std::vector<double> averages;  // sorted ascending
  double p95 = 0;
  bool evidence = false;
  std::string verdict_note;
  Json meta = Json::object();
  Json to_json() const;
};

// Histogram of weyl_average over sampled theta: uniform dyadic samples plus
// structural probes t/n_m drawn from the prefix itself (the probes are where
// a rigidity-like prefix shows averages near 1, which correctly blocks the
// "non-rigidity evidence" flag).
NonrigidityReport nonrigidity_scan(const SequencePrefix& prefix, const ThetaSampleSpec& spec,
                                   std::size_t N);

// Finite-depth atoms (position, weight) of a chain measure.
std::vector<std::pair<BigRat, BigRat>> atomize(const ChainMeasure& mu, std::size_t depth);
std::vector<std::pair<BigRat, BigRat>> atomize(const CoinMeasure& nu, std::size_t depth);

struct L2IdentityResult {
  Real lhs, rhs, residual;
};

// Checks int |lambda^n - 1|^2 dsigma = 2 (1 - Re sigma_hat(n)) on the
// depth-limited atomic approximation; residual must sit at roundoff level.
L2IdentityResult l2_identity_check(const std::vector<std::pair<BigRat, BigRat>>& atoms,
                                   const BigInt& n, long prec = kDefaultPrecBits);

}  // namespace riglab
