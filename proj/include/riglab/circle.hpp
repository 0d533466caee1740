#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riglab/angle.hpp"
#include "riglab/seq.hpp"

namespace riglab {

// Truncated pseudometric max_{k <= K} |lambda^{n_k} - mu^{n_k}|. A lower
// bound of the untruncated supremum, by construction.
Real d_trunc(const UnimodularPoint& a, const UnimodularPoint& b, const SequencePrefix& prefix,
             long prec = kDefaultPrecBits);

struct ScanConfig {
  std::uint64_t coarse = 1u << 20;  // rounded up to a power of two
  int keep = 16;                    // minima kept per refinement round
  int refine_factor = 64;           // lattice growth per round (power of two)
  // Refinement rounds; empty means: refine until the lattice reaches the
  // canonical final resolution 2^ceil(log2(2 n_K)). A pinned value whose
  // final lattice stays below 2 n_K raises GridTooCoarse.
  std::optional<int> rounds;
  int threads = 0;  // 0 = library default; result independent of the value
};

struct ScanReport {
  double estimate = 0;  // min over evaluated points of max_k |.|; an upper
                        // bound of the true infimum of the truncated sup
  BigRat argmin;        // smaller angle wins ties
  std::vector<double> profile;  // |argmin^{n_k} - 1| per k
  std::uint64_t coarse = 0;
  int rounds_run = 0;
  long final_lattice_log2 = 0;
  std::uint64_t evaluations = 0;

  Json to_json() const;
};

// Multi-resolution estimate of inf_{lambda != 1} max_{k <= K} |lambda^{n_k}-1|
// over theta in (0, 1/2] (the other half is conjugate-symmetric). Lattices
// are nested powers of two, so a scan at a finer coarse grid evaluates a
// superset of the coarser scan's lattice.
ScanReport jamison_scan(const SequencePrefix& prefix, const ScanConfig& cfg = {});

}  // namespace riglab
