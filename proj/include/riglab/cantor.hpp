#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "riglab/circle.hpp"

namespace riglab {

// Source of circle points with small truncated distance to 1. draw(tol)
// returns the largest-available unused point with d_trunc(mu, 1) <= tol, or
// nothing when the supply cannot reach tol. Structurally tied to a sequence:
// a prefix without usable structure simply runs dry.
class SeedSupply {
 public:
  virtual ~SeedSupply() = default;
  virtual std::optional<UnimodularPoint> draw(const Real& tol) = 0;
  virtual std::string describe() const = 0;
};

// Points t/n_m where n_m runs over the prefix terms and, when the generating
// family can be extended deterministically, over further terms of the same
// family. d_trunc is always measured against the fixed prefix.
class DigitChainSupply : public SeedSupply {
 public:
  DigitChainSupply(SequencePrefix prefix, std::optional<SequenceSpec> family, long prec = 192);
  std::optional<UnimodularPoint> draw(const Real& tol) override;
  std::string describe() const override;

 private:
  Real d_to_one(const BigInt& t, const BigInt& den) const;
  SequencePrefix prefix_;
  std::vector<BigInt> denoms_;  // prefix terms + family extension
  std::optional<SequenceSpec> family_;
  long prec_;
  std::vector<std::pair<BigInt, BigInt>> used_;  // (t, den)
};

// A fixed list of candidate points, drawn largest-d_trunc-first.
class ListSupply : public SeedSupply {
 public:
  ListSupply(std::vector<UnimodularPoint> points, const SequencePrefix& prefix, long prec = 192);
  std::optional<UnimodularPoint> draw(const Real& tol) override;
  std::string describe() const override;

 private:
  std::vector<std::pair<Real, UnimodularPoint>> pool_;  // sorted by d ascending
  std::vector<bool> taken_;
};

// ---------------------------------------------------------------------------
// Nested-arc tree: level k arcs {x : |x - l/n_k| <= theta_k/(pi n_k)} with
// gamma_k = 5 pi sup_{j>=k}(n_{j-1}/n_j), sin(theta_k) = gamma_k. Every point
// of a level-k arc has |lambda^{n_k} - 1| <= 2 gamma_k.
struct ArcLevel {
  std::size_t k = 0;  // index into the prefix
  BigInt n;
  double gamma = 0;
  double theta = 0;
  BigRat width_lo, width_hi;  // rigorous enclosure of the half width in turns
  BigInt child_budget;        // floor((1/pi)((n_{k+1}/n_k) theta_k - theta_{k+1}))
};

struct ArcNode {
  std::size_t level = 0;  // index into levels
  BigInt offset;          // center offset / n_k
  int parent = -1;
  std::vector<int> children;
};

struct ArcTree {
  std::vector<ArcLevel> levels;
  std::vector<ArcNode> nodes;  // level-major order; node 0.. are roots
  std::size_t k1 = 0;          // first admissible prefix index
  BigInt root_label_count;     // 2 n_{k1}: offset-label count in the
                               // half-turn parametrization (n_{k1} distinct
                               // arcs on the circle)
  std::vector<int> zero_chain;  // the l = 0 node at each level

  UnimodularPoint center(int node) const;
  std::vector<UnimodularPoint> leaves(long prec = kDefaultPrecBits) const;
  Json to_json() const;
};

// Builds the tree to `depth` levels above the first admissible one. Only
// `branch_cap` children per node are materialized (plus the l = 0 chain);
// the full available child count is recorded per level. RatiosTooSmall when
// no admissible level exists in the prefix or the prefix is too short.
ArcTree build_prop3(const SequencePrefix& prefix, std::size_t depth, std::size_t branch_cap = 2,
                    std::size_t root_cap = 6);

// ---------------------------------------------------------------------------
// Digit set: points theta_eps = sum_p eps_p / n_{k_p} for binary strings eps.
struct DigitSet {
  std::vector<std::size_t> positions;  // indices k_p into the prefix
  std::vector<BigInt> denoms;          // n_{k_p}
  std::vector<BigRat> tail_sum;        // per p: sum_{j>p} 1/n_{k_j} + extension
  SequencePrefix prefix;
  std::size_t depth = 0;

  UnimodularPoint point(const std::vector<bool>& eps) const;
  std::vector<UnimodularPoint> leaves() const;  // all 2^depth points
  // Uniform bound for |lambda^{n_k} - 1| on the set, per prefix index k.
  Real level_bound(std::size_t k, long prec = kDefaultPrecBits) const;
  Json to_json() const;
};

DigitSet build_prop22(const SequencePrefix& chain_prefix, const std::vector<std::size_t>& positions,
                      std::size_t depth);

// ---------------------------------------------------------------------------
// Binary product tree of Lemma-5 type: children multiply by mu_{n} or its
// conjugate; admissibility ladder d(mu_n, 1) < 4^-n d(mu_{n-1}, conj mu_{n-1})
// in the truncated metric.
struct TreeSet {
  std::vector<UnimodularPoint> seeds;
  std::vector<double> seed_d_one;    // d_trunc(mu_n, 1)
  std::vector<double> seed_d_conj;   // d_trunc(mu_n, conj mu_n)
  std::vector<std::vector<UnimodularPoint>> levels;  // level n: 2^n points
  // certified_bound[n][i][k]: |node^{n_k} - 1| <= parent direct + ladder tail
  std::vector<std::vector<std::vector<double>>> certified;
  SequencePrefix prefix;

  const std::vector<UnimodularPoint>& leaves() const { return levels.back(); }
  Json to_json() const;
};

TreeSet build_lemma5_tree(SeedSupply& supply, const SequencePrefix& prefix, std::size_t depth,
                          long prec = kDefaultPrecBits);

// ---------------------------------------------------------------------------
struct UniformReport {
  std::vector<std::size_t> ks;      // prefix indices verified
  std::vector<double> max_dist;     // per k: max over sample of |lambda^{n_k}-1|
  std::vector<double> target;       // per k
  std::vector<bool> pass;
  bool verdict = false;
  bool monotone_downward = false;   // max_dist nonincreasing where defined
  std::size_t sample_size = 0;
  Json to_json() const;
};

UniformReport verify_uniform(const std::vector<UnimodularPoint>& sample,
                             const SequencePrefix& prefix, const std::vector<std::size_t>& ks,
                             const std::vector<Real>& targets, long prec = kDefaultPrecBits);

}  // namespace riglab
