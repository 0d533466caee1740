#include "riglab/cantor.hpp"

#include <algorithm>
#include <cmath>

namespace riglab {

// ---------------------------------------------------------------------------
// Supplies

DigitChainSupply::DigitChainSupply(SequencePrefix prefix, std::optional<SequenceSpec> family,
                                   long prec)
    : prefix_(std::move(prefix)), family_(std::move(family)), prec_(prec) {
  prefix_.validate();
  denoms_ = prefix_.terms;
}

Real DigitChainSupply::d_to_one(const BigInt& t, const BigInt& den) const {
  UnimodularPoint mu(Angle::rational(t, den));
  return d_trunc(mu, UnimodularPoint::one(), prefix_, prec_);
}

std::optional<UnimodularPoint> DigitChainSupply::draw(const Real& tol) {
  if (tol <= 0.0) return std::nullopt;
  for (std::size_t ext = 0;; ++ext) {
    // Smallest denominator whose unit point already satisfies tol.
    for (const auto& den : denoms_) {
      if (d_to_one(1, den) > tol) continue;
      // Largest multiplier t with d(t/den) <= tol. The distance is monotone
      // in t while every power angle stays in [0, 1/2]; cap t accordingly.
      BigInt tmax = den / (2 * prefix_.back());
      if (tmax < 1) tmax = 1;
      BigInt lo = 1, hi = tmax;
      while (lo < hi) {
        BigInt mid = (lo + hi + 1) / 2;
        if (d_to_one(mid, den) <= tol)
          lo = mid;
        else
          hi = mid - 1;
      }
      // Skip multipliers already used for this denominator.
      BigInt t = lo;
      while (t >= 1) {
        bool used = false;
        for (const auto& [ut, ud] : used_)
          if (ud == den && ut == t) used = true;
        if (!used) {
          used_.emplace_back(t, den);
          return UnimodularPoint(Angle::rational(t, den));
        }
        t -= 1;
      }
    }
    // Extend the family by one more term, if the family allows it.
    if (!family_) return std::nullopt;
    if (bit_length(denoms_.back()) > (1u << 21)) return std::nullopt;
    try {
      SequencePrefix ext_prefix = generate(*family_, denoms_.size() + 1);
      if (ext_prefix.terms.size() <= denoms_.size()) return std::nullopt;
      denoms_.push_back(ext_prefix.terms[denoms_.size()]);
    } catch (const Error&) {
      return std::nullopt;
    }
    (void)ext;
  }
}

std::string DigitChainSupply::describe() const {
  return "digit-chain supply over " + std::to_string(denoms_.size()) + " denominators";
}

ListSupply::ListSupply(std::vector<UnimodularPoint> points, const SequencePrefix& prefix,
                       long prec) {
  for (auto& p : points) {
    if (p == UnimodularPoint::one()) continue;
    pool_.emplace_back(d_trunc(p, UnimodularPoint::one(), prefix, prec), std::move(p));
  }
  std::sort(pool_.begin(), pool_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  taken_.assign(pool_.size(), false);
}

std::optional<UnimodularPoint> ListSupply::draw(const Real& tol) {
  // Largest d <= tol, unused.
  for (std::size_t i = pool_.size(); i-- > 0;) {
    if (taken_[i] || pool_[i].first > tol) continue;
    taken_[i] = true;
    return pool_[i].second;
  }
  return std::nullopt;
}

std::string ListSupply::describe() const {
  return "list supply of " + std::to_string(pool_.size()) + " points";
}

// ---------------------------------------------------------------------------
// Nested-arc tree

namespace {

// Exact max of n_{j-1}/n_j over j in [k, K].
BigRat sup_ratio(const SequencePrefix& prefix, std::size_t k) {
  BigRat best(0);
  for (std::size_t j = std::max<std::size_t>(k, 1); j < prefix.size(); ++j) {
    BigRat r(prefix.terms[j - 1], prefix.terms[j]);
    r.canonicalize();
    if (r > best) best = r;
  }
  return best;
}

}  // namespace

UnimodularPoint ArcTree::center(int node) const {
  const ArcNode& nd = nodes[node];
  return UnimodularPoint(Angle::rational(nd.offset, levels[nd.level].n));
}

std::vector<UnimodularPoint> ArcTree::leaves(long) const {
  std::vector<UnimodularPoint> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].level == levels.size() - 1) out.push_back(center(static_cast<int>(i)));
  return out;
}

Json ArcTree::to_json() const {
  Json lv = Json::array();
  for (const auto& l : levels)
    lv.push_back(Json{{"k", l.k},
                      {"n", dec(l.n)},
                      {"gamma", l.gamma},
                      {"theta", l.theta},
                      {"width_lo", {{"num", dec(l.width_lo.get_num())}, {"den", dec(l.width_lo.get_den())}}},
                      {"child_budget", dec(l.child_budget)}});
  Json nd = Json::array();
  for (const auto& n : nodes)
    nd.push_back(Json{{"level", n.level}, {"offset", dec(n.offset)}, {"parent", n.parent}});
  return Json{{"construction", "nested-arc tree"},
              {"k1", k1},
              {"root_label_count", dec(root_label_count)},
              {"levels", lv},
              {"nodes", nd}};
}

ArcTree build_prop3(const SequencePrefix& prefix, std::size_t depth, std::size_t branch_cap,
                    std::size_t root_cap) {
  prefix.validate();
  const long prec = 192;
  ArcTree tree;

  // First admissible level: gamma_k <= 1/2, certified on the upper bound of
  // the enclosure. theta_k >= sin theta_k = gamma_k = 5 pi s_k > 4 pi s_k
  // holds automatically, so admissibility is the single condition.
  std::size_t k1 = prefix.size();
  for (std::size_t k = 1; k < prefix.size(); ++k) {
    BigRat s = sup_ratio(prefix, k);
    BigRat gamma_hi = rational_bounds(Real::pi(prec) * Real::of(s, prec) * 5.0, 16).second;
    if (gamma_hi <= BigRat(1, 2)) {
      k1 = k;
      break;
    }
  }
  if (k1 >= prefix.size())
    fail(Errc::RatiosTooSmall, "no admissible level: gamma_k > 1/2 across the stored prefix");
  if (k1 + depth >= prefix.size())
    fail(Errc::RatiosTooSmall, "prefix too short for requested depth");
  tree.k1 = k1;
  tree.root_label_count = 2 * prefix.terms[k1];

  // Level data with rigorous half-width enclosures.
  for (std::size_t k = k1; k <= k1 + depth; ++k) {
    ArcLevel lv;
    lv.k = k;
    lv.n = prefix.terms[k];
    BigRat s = sup_ratio(prefix, k);
    Real gamma = Real::pi(prec) * Real::of(s, prec) * 5.0;
    Real theta = asin(gamma);
    lv.gamma = gamma.to_double();
    lv.theta = theta.to_double();
    Real w = theta / (Real::pi(prec) * Real::of(lv.n, prec));
    auto [wlo, whi] = rational_bounds(w, 24);
    lv.width_lo = wlo;
    lv.width_hi = whi;
    tree.levels.push_back(std::move(lv));
  }
  // Child budgets: floor((1/pi)((n_{k+1}/n_k) theta_k - theta_{k+1})).
  for (std::size_t i = 0; i + 1 < tree.levels.size(); ++i) {
    const auto& a = tree.levels[i];
    const auto& b = tree.levels[i + 1];
    Real ratio = Real::of(b.n, prec) / Real::of(a.n, prec);
    Real cnt = (ratio * Real::of(a.theta, prec) - Real::of(b.theta, prec)) / Real::pi(prec);
    BigRat lo = rational_bounds(cnt, 24).first;
    tree.levels[i].child_budget = floor_div(lo.get_num(), lo.get_den());
    if (tree.levels[i].child_budget < 2)
      fail(Errc::RatiosTooSmall, "child budget below 2 at level " + std::to_string(a.k));
  }

  // Roots: the l = 0 arc plus root_cap-1 further offsets.
  for (std::size_t r = 0; r < std::min(root_cap, std::size_t(4096)); ++r) {
    BigInt off(static_cast<unsigned long>(r));
    if (off >= tree.levels[0].n) break;
    ArcNode node;
    node.level = 0;
    node.offset = off;
    tree.nodes.push_back(node);
    if (r == 0) tree.zero_chain.push_back(0);
  }

  // Expand level by level. Containment is checked outward: child center range
  // uses the child's upper width and the parent's lower width.
  std::size_t level_begin = 0, level_end = tree.nodes.size();
  for (std::size_t li = 0; li + 1 < tree.levels.size(); ++li) {
    const ArcLevel& pl = tree.levels[li];
    const ArcLevel& cl = tree.levels[li + 1];
    for (std::size_t ni = level_begin; ni < level_end; ++ni) {
      BigRat center(tree.nodes[ni].offset, pl.n);
      center.canonicalize();
      // r/n_child in [center - (w_p^lo - w_c^hi), center + (w_p^lo - w_c^hi)]
      BigRat margin = pl.width_lo - cl.width_hi;
      if (margin <= 0) fail(Errc::RatiosTooSmall, "child arcs wider than parent");
      BigRat lo = (center - margin) * BigRat(cl.n);
      BigRat hi = (center + margin) * BigRat(cl.n);
      BigInt rlo = -floor_div(-lo.get_num(), lo.get_den());  // ceil
      BigInt rhi = floor_div(hi.get_num(), hi.get_den());
      if (rhi - rlo + 1 < tree.levels[li].child_budget)
        fail(Errc::RatiosTooSmall, "fewer children available than the recorded budget");
      bool parent_is_zero = tree.nodes[ni].offset == 0;
      std::size_t take = branch_cap;
      BigInt r = rlo;
      if (parent_is_zero) {
        // keep the l = 0 chain: child r = 0 first
        ArcNode node;
        node.level = li + 1;
        node.offset = 0;
        node.parent = static_cast<int>(ni);
        tree.nodes[ni].children.push_back(static_cast<int>(tree.nodes.size()));
        tree.zero_chain.push_back(static_cast<int>(tree.nodes.size()));
        tree.nodes.push_back(node);
        if (take > 0) --take;
        r = 1;  // continue with positive offsets
      }
      for (std::size_t c = 0; c < take && r <= rhi; ++c, r += 1) {
        if (parent_is_zero && r == 0) continue;
        ArcNode node;
        node.level = li + 1;
        node.offset = r;
        node.parent = static_cast<int>(ni);
        tree.nodes[ni].children.push_back(static_cast<int>(tree.nodes.size()));
        tree.nodes.push_back(node);
      }
    }
    level_begin = level_end;
    level_end = tree.nodes.size();
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Digit set

UnimodularPoint DigitSet::point(const std::vector<bool>& eps) const {
  BigRat theta(0);
  for (std::size_t p = 0; p < eps.size() && p < denoms.size(); ++p)
    if (eps[p]) theta += BigRat(1, denoms[p]);
  return UnimodularPoint(Angle::rational(theta));
}

std::vector<UnimodularPoint> DigitSet::leaves() const {
  if (depth > 20) fail(Errc::DepthTooLarge, "too many leaves to enumerate");
  std::vector<UnimodularPoint> out;
  out.reserve(1u << depth);
  for (std::size_t mask = 0; mask < (1u << depth); ++mask) {
    std::vector<bool> eps(depth);
    for (std::size_t p = 0; p < depth; ++p) eps[p] = (mask >> p) & 1;
    out.push_back(point(eps));
  }
  return out;
}

Real DigitSet::level_bound(std::size_t k, long prec) const {
  if (k >= prefix.size()) fail(Errc::InvalidSpec, "level index out of range");
  // p(k): number of positions with n_{k_p} <= n_k; bound 2 pi n_k * tail(p).
  std::size_t p = 0;
  while (p < positions.size() && prefix.terms[positions[p]] <= prefix.terms[k]) ++p;
  BigRat tail = p < tail_sum.size() ? tail_sum[p] : tail_sum.back();
  return Real::pi(prec) * Real::of(BigRat(prefix.terms[k]) * tail, prec) * 2.0;
}

Json DigitSet::to_json() const {
  Json ds = Json::array();
  for (const auto& d : denoms) ds.push_back(dec(d));
  return Json{{"construction", "digit set"},
              {"positions", positions},
              {"denominators", ds},
              {"depth", depth}};
}

DigitSet build_prop22(const SequencePrefix& chain_prefix, const std::vector<std::size_t>& positions,
                      std::size_t depth) {
  chain_prefix.validate();
  for (std::size_t i = 1; i < chain_prefix.size(); ++i)
    if (!mpz_divisible_p(chain_prefix.terms[i].get_mpz_t(), chain_prefix.terms[i - 1].get_mpz_t()))
      fail(Errc::NotAChain, "prefix is not a divisibility chain at index " + std::to_string(i));
  if (positions.empty() || depth == 0 || depth > positions.size())
    fail(Errc::InvalidSpec, "need 1 <= depth <= |positions|");
  for (std::size_t p = 0; p < positions.size(); ++p) {
    if (positions[p] >= chain_prefix.size()) fail(Errc::InvalidSpec, "position out of range");
    if (p > 0 && positions[p] <= positions[p - 1])
      fail(Errc::InvalidSpec, "positions must increase");
  }
  // Ratio growth along positions: n_{k_p}/n_{k_p - 1} strictly increasing.
  BigRat prev(0);
  for (std::size_t p = 0; p < positions.size(); ++p) {
    if (positions[p] == 0) continue;
    BigRat r(chain_prefix.terms[positions[p]], chain_prefix.terms[positions[p] - 1]);
    r.canonicalize();
    if (r <= prev)
      fail(Errc::RatiosTooSmall, "position ratios must grow (checked on the stored prefix)");
    prev = r;
  }
  DigitSet ds;
  ds.prefix = chain_prefix;
  ds.positions.assign(positions.begin(), positions.begin() + depth);
  ds.depth = depth;
  for (std::size_t p = 0; p < depth; ++p) ds.denoms.push_back(chain_prefix.terms[positions[p]]);
  // tail_sum[p] = sum over digits past the first p, plus 1/denom_last for the
  // undigitized chain extension (ratios >= 2 keep that sum below 1/d_P).
  for (std::size_t p = 0; p <= depth; ++p) {
    BigRat s(0);
    for (std::size_t j = p; j < depth; ++j) s += BigRat(1, ds.denoms[j]);
    s += BigRat(1, ds.denoms.back());
    s.canonicalize();
    ds.tail_sum.push_back(s);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Lemma-5 product tree

Json TreeSet::to_json() const {
  Json seeds_j = Json::array();
  for (std::size_t i = 0; i < seeds.size(); ++i)
    seeds_j.push_back(Json{{"d_one", seed_d_one[i]}, {"d_conj", seed_d_conj[i]}});
  return Json{{"construction", "binary product tree"},
              {"depth", levels.empty() ? 0 : levels.size() - 1},
              {"leaves", levels.empty() ? 0 : levels.back().size()},
              {"seeds", seeds_j},
              {"metric", "d_(n_k) truncated to the stored prefix"}};
}

TreeSet build_lemma5_tree(SeedSupply& supply, const SequencePrefix& prefix, std::size_t depth,
                          long prec) {
  prefix.validate();
  if (depth < 1 || depth > 16) fail(Errc::InvalidSpec, "depth must be in [1, 16]");
  TreeSet ts;
  ts.prefix = prefix;
  UnimodularPoint one = UnimodularPoint::one();

  Real target(prec);
  target = Real::of(0.25, prec);
  Real prev_dconj(prec);
  for (std::size_t n = 1; n <= depth; ++n) {
    // Ladder: d(mu_n, 1) < 4^-n * d(mu_{n-1}, conj mu_{n-1}); additionally
    // d(mu_n, conj mu_n) must not increase. Shrink the draw tolerance a hair
    // so the recorded inequalities are strict.
    Real tol = target * (1.0 - 0x1.0p-24);
    std::optional<UnimodularPoint> mu;
    for (int tries = 0; tries < 64; ++tries) {
      mu = supply.draw(tol);
      if (!mu) break;
      Real dconj = d_trunc(*mu, mu->conj(), prefix, prec);
      if (n == 1 || dconj <= prev_dconj) break;
      tol = tol / 2.0;
      mu.reset();
    }
    if (!mu)
      fail(Errc::SupplyExhausted,
           "no admissible seed at ladder step " + std::to_string(n) + " (" + supply.describe() + ")");
    Real d1 = d_trunc(*mu, one, prefix, prec);
    Real dconj = d_trunc(*mu, mu->conj(), prefix, prec);
    ts.seeds.push_back(*mu);
    ts.seed_d_one.push_back(d1.to_double());
    ts.seed_d_conj.push_back(dconj.to_double());
    prev_dconj = dconj;
    target = ldexp2(dconj, -2 * static_cast<long>(n + 1));  // 4^-(n+1) * d_conj
  }

  // Build levels: level n multiplies level n-1 by mu_n / conj(mu_n).
  ts.levels.push_back({ts.seeds[0], ts.seeds[0].conj()});
  for (std::size_t n = 2; n <= depth; ++n) {
    std::vector<UnimodularPoint> next;
    next.reserve(ts.levels.back().size() * 2);
    for (const auto& node : ts.levels.back()) {
      next.push_back(node.mul(ts.seeds[n - 1]));
      next.push_back(node.mul(ts.seeds[n - 1].conj()));
    }
    ts.levels.push_back(std::move(next));
  }

  // Certified bounds: node at level n (1-based), parent at level n-1:
  // |node^{n_k} - 1| <= |parent^{n_k} - 1| + (2/3) 4^-(n-1) d(mu_{n-1}, conj).
  ts.certified.resize(ts.levels.size());
  for (std::size_t li = 0; li < ts.levels.size(); ++li) {
    ts.certified[li].resize(ts.levels[li].size());
    for (std::size_t i = 0; i < ts.levels[li].size(); ++i) {
      std::vector<double>& bounds = ts.certified[li][i];
      bounds.resize(prefix.size());
      for (std::size_t k = 0; k < prefix.size(); ++k) {
        if (li == 0) {
          bounds[k] =
              dist_one_pow(ts.levels[0][i], prefix.terms[k], prec).to_double() * (1 + 1e-12);
        } else {
          // parent has string length li; one extension step costs
          // d(mu_{li+1}, 1) < 4^-(li+1) d(mu_li, conj) <= (2/3) 4^-li d(mu_li, conj)
          const UnimodularPoint& parent = ts.levels[li - 1][i / 2];
          double pd = dist_one_pow(parent, prefix.terms[k], prec).to_double();
          double ladder = (2.0 / 3.0) * std::ldexp(ts.seed_d_conj[li - 1], -2 * static_cast<int>(li));
          bounds[k] = pd + ladder;
        }
      }
    }
  }
  return ts;
}

// ---------------------------------------------------------------------------

Json UniformReport::to_json() const {
  Json rows = Json::array();
  for (std::size_t i = 0; i < ks.size(); ++i)
    rows.push_back(Json{{"k", ks[i]},
                        {"max_dist", max_dist[i]},
                        {"target", target[i]},
                        {"pass", static_cast<bool>(pass[i])}});
  return Json{{"rows", rows},
              {"verdict", verdict},
              {"monotone_downward", monotone_downward},
              {"sample_size", sample_size},
              {"scope", "finite sample at the stored truncation, not the infinite set"}};
}

UniformReport verify_uniform(const std::vector<UnimodularPoint>& sample,
                             const SequencePrefix& prefix, const std::vector<std::size_t>& ks,
                             const std::vector<Real>& targets, long prec) {
  if (sample.empty()) fail(Errc::InvalidSpec, "empty sample");
  if (ks.size() != targets.size()) fail(Errc::InvalidSpec, "ks/targets mismatch");
  UniformReport rep;
  rep.sample_size = sample.size();
  rep.ks = ks;
  rep.verdict = true;
  rep.monotone_downward = true;
  double prev = 2.0 + 1;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    Real worst(prec);
    for (const auto& pt : sample) {
      Real d = dist_one_pow(pt, prefix.terms[ks[i]], prec);
      if (d > worst) worst = d;
    }
    rep.max_dist.push_back(worst.to_double());
    rep.target.push_back(targets[i].to_double());
    bool ok = worst <= targets[i];
    rep.pass.push_back(ok);
    rep.verdict = rep.verdict && ok;
    if (rep.max_dist.back() > prev) rep.monotone_downward = false;
    prev = rep.max_dist.back();
  }
  return rep;
}

}  // namespace riglab
