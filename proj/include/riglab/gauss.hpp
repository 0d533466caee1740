#pragma once

#include <cstdint>
#include <vector>

#include "riglab/measures.hpp"

namespace riglab {

// Finite atomic stand-in for a spectral measure: atoms theta_i with weights
// w_i >= 0 summing to 1. Real-valued path synthesis needs the symmetrized
// (conjugation-invariant) form.
struct AtomicSpectralMeasure {
  std::vector<BigRat> atoms;    // angles in [0,1)
  std::vector<BigRat> weights;  // sum to 1
  bool symmetrized = false;

  void validate() const;
  static AtomicSpectralMeasure from_atoms(const std::vector<std::pair<BigRat, BigRat>>& atoms);
  // rho = (sigma + conj sigma)/2: atoms closed under theta -> 1-theta.
  AtomicSpectralMeasure symmetrize() const;
  // Re sigma_hat(n) = sum_i w_i cos(2 pi n theta_i), at high precision.
  Real re_hat(const BigInt& n, long prec = kDefaultPrecBits) const;
};

struct SimulationConfig {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::vector<BigInt> indices;  // the n_k's and 0

  void validate() const;
};

// X_n = sum_i sqrt(w_i) (xi_i cos(2 pi n theta_i) + eta_i sin(2 pi n theta_i))
// per trial; result indexed [trial][index].
struct PathSample {
  std::vector<BigInt> indices;
  std::vector<std::vector<double>> x;  // trials x indices
  std::uint64_t seed = 0;
};

PathSample sample_paths(const AtomicSpectralMeasure& mu, const SimulationConfig& cfg);

struct RigidityCell {
  BigInt n;
  double empirical = 0;  // mean of (X_n - X_0)^2
  double theory = 0;     // 2 (1 - Re mu_hat(n))
  double se = 0;
  double z = 0;          // 0 when both sides vanish identically
};

struct RigidityStatReport {
  std::vector<RigidityCell> cells;
  std::size_t within_3se = 0;
  Json meta;
  Json to_json() const;
  std::string to_csv() const;
};

// E|X_{n_k} - X_0|^2 = 2 (1 - Re mu_hat(n_k)) cell by cell; IndexMissing if
// the paths lack 0 or a prefix term.
RigidityStatReport rigidity_statistic(const PathSample& paths, const SequencePrefix& prefix,
                                      const AtomicSpectralMeasure& mu);

}  // namespace riglab
