#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riglab/cantor.hpp"
#include "riglab/circle.hpp"

namespace riglab {

// j(n) = n - 2^floor(log2(n-1)): j(n) < n, and every value k is hit once per
// dyadic block 2^m >= k, hence infinitely often.
long jmap(long n);

// T = D + B on the L-truncation: D e_n = lambda_n e_n, B e_n = alpha_{n-1}
// e_{n-1} with alpha_1 = omega_1 |lambda_2 - lambda_{j(2)}| and
// alpha_n = omega_n |lambda_{n+1} - lambda_{j(n+1)}| / |lambda_n - lambda_{j(n)}|.
// T maps span(e_1..e_l) into itself, so every entry t_{k,l} with k,l <= L of
// any power is exact for the truncation.
struct OperatorModel {
  std::size_t L = 0;
  std::vector<UnimodularPoint> lambda;  // lambda[i] = lambda_{i+1}
  std::vector<BigRat> omega;            // omega[i] = omega_{i+1}, size L-1
  double delta = 0;
  long prec = kDefaultPrecBits;
  SequencePrefix window;            // verified prefix terms
  std::vector<BigRat> tol_schedule; // accepted d_trunc tolerance per level
  Json meta = Json::object();

  void validate() const;
  // |lambda_l - lambda_{j(l)}|, l >= 2 (1-based).
  Real chord_gap(std::size_t l) const;
  // alpha_i, i in [1, L-1] (1-based).
  Real alpha(std::size_t i) const;
  // Product alpha_{l-1} ... alpha_k in the factored omega/chord-ratio form.
  Real alpha_product(std::size_t k, std::size_t l) const;
  Real min_separation() const;
  Json to_json() const;
};

// Coefficients c_j^{(k,l)} of the closed form; they depend only on
// lambda_1..lambda_{l-1}. Recursion: c^{(k,k+1)} = {1};
//   c_j^{(k,l+1)} = -lambda_j c_j^{(k,l)} / (lambda_l - lambda_j),
//   c_l^{(k,l+1)} = sum_j lambda_l c_j^{(k,l)} / (lambda_l - lambda_j).
class CTable {
 public:
  CTable() = default;
  CTable(const std::vector<UnimodularPoint>& lambda, long prec);
  // c^{(k,l)} as a vector indexed j - k, for 1 <= k < l <= size.
  const std::vector<Cplx>& get(std::size_t k, std::size_t l) const;
  std::size_t size() const { return L_; }
  long prec() const { return prec_; }

 private:
  std::size_t L_ = 0;
  long prec_ = kDefaultPrecBits;
  std::vector<std::vector<std::vector<Cplx>>> c_;  // c_[k-1][l-k-1]
};

CTable build_ctable(const std::vector<UnimodularPoint>& lambda, long prec);

// s_{k,l}^{(n)} = sum_j c_j^{(k,l)} (lambda_l^M - lambda_j^M)/(lambda_l -
// lambda_j), M = n+1-(l-k); O(l-k) big powers regardless of n's size.
// SeparationTooSmall when cancellation eats the working precision.
Cplx s_closed(const CTable& table, const std::vector<UnimodularPoint>& lambda, std::size_t k,
              std::size_t l, const BigInt& n);

// Complete homogeneous sum h_{n-(l-k)}(lambda_k..lambda_l) by the
// add-one-variable recurrence; independent oracle for s_closed.
Cplx s_direct(const std::vector<UnimodularPoint>& lambda, std::size_t k, std::size_t l,
              const BigInt& n, long prec);

// Entry <T^n e_l, e_k>.
Cplx t_entry(const OperatorModel& model, const CTable& table, std::size_t k, std::size_t l,
             const BigInt& n);

// T^n by repeated squaring of the dense truncation; n <= 10^9.
std::vector<std::vector<Cplx>> matpow_oracle(const OperatorModel& model, const BigInt& n);

struct EigvecRecord {
  std::size_t n = 0;
  std::vector<Cplx> coords;  // length n ( = e_1 + ... )
  double residual = 0;       // ||T u - lambda_n u||
  double norm = 0;
};

EigvecRecord eigenvector(const OperatorModel& model, std::size_t n);

// max over 0 <= p <= l-k-1 of |sum_j c_j (lambda_l^{1-(l-k-p)} -
// lambda_j^{1-(l-k-p)})/(lambda_l - lambda_j)|, raw and scaled by the largest
// term magnitude. All sums vanish identically.
struct Lemma6Residual {
  double raw = 0;
  double scaled = 0;
};
Lemma6Residual verify_lemma6(const CTable& table, const std::vector<UnimodularPoint>& lambda,
                             std::size_t k, std::size_t l);

struct SelectOptions {
  long prec = 512;
  int max_halvings = 64;
  std::uint64_t report_seed = 0x5EED;
};

// Stagewise construction: omega_{l-1} = max(2^l, enough to push
// omega_{l-1}^-2...omega_1^-2 below delta^2 2^-(l+3)); then halve tol_l,
// drawing lambda_l = lambda_{j(l)} * mu from the supply with d_trunc(mu,1) <=
// tol_l, until (a) every alpha <= delta, (b) ||u^(l) - u^(j(l))|| <= 2^-l,
// (c) column budgets sum_k |t_{k,l}^{(n_p)}|^2 <= delta^2 2^-l for every
// window term. Precision escalates (x2, up to the cap) when separations
// drop below 2^-(prec/4) or cancellation is detected.
OperatorModel select_parameters(const SequencePrefix& prefix, double delta, SeedSupply& supply,
                                std::size_t L, const SelectOptions& opts = {});

struct RigidityRow {
  BigInt n;
  double hs_bound = 0;        // Hilbert-Schmidt bound on ||T^n - D^n|| (truncation)
  double sigma_max = 0;       // largest singular value of the truncated T^n
  double diag_sup = 0;        // sup_l |lambda_l^n - 1|
  double norm_bound = 0;      // 1 + hs_bound
  bool budget_ok = false;     // all column budgets pass at this n
};

struct RigidityReport {
  std::vector<RigidityRow> rows;
  bool verdict = false;
  Json meta;
  Json to_json() const;
  std::string to_csv() const;
};

RigidityReport rigidity_report(const OperatorModel& model, const SequencePrefix& prefix);

struct SpectralCheck {
  bool distinct_eigenvalues = false;
  bool leading_coords_nonzero = false;
  // per i: best witness n != i with small ||u^(n) - u^(i)||
  struct Approx {
    std::size_t i = 0, n = 0;
    double dist = 0, threshold = 0;
    bool ok = false;
  };
  std::vector<Approx> approximations;
  Json to_json() const;
};

SpectralCheck spectral_criterion_check(const OperatorModel& model);

}  // namespace riglab
