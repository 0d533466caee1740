#include "riglab/opmodel.hpp"

#include <algorithm>
#include <cmath>

namespace riglab {

long jmap(long n) {
  if (n < 2) fail(Errc::InvalidSpec, "jmap needs n >= 2");
  long m = n - 1;
  long p = 1;
  while (2 * p <= m) p *= 2;
  return n - p;
}

void OperatorModel::validate() const {
  if (L < 2 || lambda.size() != L || omega.size() != L - 1)
    fail(Errc::InvalidSpec, "model arrays inconsistent with L");
  for (const auto& w : omega)
    if (w <= 0) fail(Errc::InvalidSpec, "omega must be positive");
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j)
      if (lambda[i] == lambda[j]) fail(Errc::InvalidSpec, "eigenvalues must be distinct");
}

Real OperatorModel::chord_gap(std::size_t l) const {
  if (l < 2 || l > L) fail(Errc::InvalidSpec, "chord_gap index");
  return chord(lambda[l - 1], lambda[jmap(static_cast<long>(l)) - 1], prec);
}

Real OperatorModel::alpha(std::size_t i) const {
  if (i < 1 || i > L - 1) fail(Errc::InvalidSpec, "alpha index");
  Real w = Real::of(omega[i - 1], prec);
  if (i == 1) return w * chord_gap(2);
  return w * chord_gap(i + 1) / chord_gap(i);
}

Real OperatorModel::alpha_product(std::size_t k, std::size_t l) const {
  if (k < 1 || l <= k || l > L) fail(Errc::InvalidSpec, "alpha_product range");
  BigRat wprod(1);
  for (std::size_t i = k; i <= l - 1; ++i) wprod *= omega[i - 1];
  Real r = Real::of(wprod, prec) * chord_gap(l);
  if (k >= 2) r /= chord_gap(k);
  return r;
}

Real OperatorModel::min_separation() const {
  Real best(prec);
  best = Real::of(4.0, prec);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j) {
      Real d = chord(lambda[i], lambda[j], prec);
      if (d < best) best = d;
    }
  return best;
}

Json OperatorModel::to_json() const {
  Json lam = Json::array();
  for (const auto& l : lambda) {
    BigRat r = l.angle().value_rat();
    lam.push_back(Json{{"num", dec(r.get_num())}, {"den", dec(r.get_den())}});
  }
  Json om = Json::array();
  for (const auto& w : omega) om.push_back(dec(w));
  Json tol = Json::array();
  for (const auto& t : tol_schedule) tol.push_back(t.get_d());
  return Json{{"L", L},
              {"delta", delta},
              {"precision_bits", prec},
              {"jmap", "n - 2^floor(log2(n-1))"},
              {"lambda_angles", lam},
              {"omega", om},
              {"tolerance_schedule", tol},
              {"min_separation", min_separation().to_double()},
              {"window", window.to_json()},
              {"meta", meta}};
}

// ---------------------------------------------------------------------------

CTable::CTable(const std::vector<UnimodularPoint>& lambda, long prec) : prec_(prec) {
  L_ = lambda.size();
  if (L_ < 1) fail(Errc::InvalidSpec, "ctable needs eigenvalues");
  // Separation floor tied to precision: the (lambda_l - lambda_j)
  // denominators are the numerical hazard.
  Real floor_sep = ldexp2(Real::of(1.0, 64), -(prec / 4));
  for (std::size_t i = 0; i < L_; ++i)
    for (std::size_t j = i + 1; j < L_; ++j) {
      Real d = chord(lambda[i], lambda[j], 64);
      if (d < floor_sep)
        fail(Errc::SeparationTooSmall, "separation below 2^-(P/4) at precision " +
                                           std::to_string(prec) + " bits");
    }
  c_.resize(L_);
  for (std::size_t k = 1; k <= L_; ++k) {
    auto& row = c_[k - 1];
    row.push_back({Cplx::one(prec_)});  // c^{(k,k+1)} = {1}
    for (std::size_t l = k + 1; l <= L_; ++l) {
      const auto& prev = row.back();  // c^{(k,l)}
      std::vector<Cplx> next;
      next.reserve(l - k + 1);
      const UnimodularPoint& lam_l = lambda[l - 1];
      Cplx lsum = Cplx::of(0, 0, prec_);
      Real maxterm(prec_);
      for (std::size_t j = k; j <= l - 1; ++j) {
        Cplx denom = unit_diff(lam_l, lambda[j - 1], prec_);
        Cplx ratio = prev[j - k] / denom;
        next.push_back(-(lambda[j - 1].unit(prec_) * ratio));
        Cplx term = lam_l.unit(prec_) * ratio;
        Real mag = abs(term);
        if (mag > maxterm) maxterm = mag;
        lsum += term;
      }
      Real guard = ldexp2(maxterm, -(prec_ - 20));
      if (!maxterm.is_zero() && abs(lsum) < guard && l - k > 1)
        fail(Errc::SeparationTooSmall,
             "cancellation in c-table exceeds working precision " + std::to_string(prec_));
      next.push_back(lsum);
      row.push_back(std::move(next));
    }
  }
}

const std::vector<Cplx>& CTable::get(std::size_t k, std::size_t l) const {
  if (k < 1 || l <= k || k > L_ || l > L_ + 1) fail(Errc::InvalidSpec, "ctable pair out of range");
  return c_[k - 1][l - k - 1];
}

CTable build_ctable(const std::vector<UnimodularPoint>& lambda, long prec) {
  return CTable(lambda, prec);
}

Cplx s_closed(const CTable& table, const std::vector<UnimodularPoint>& lambda, std::size_t k,
              std::size_t l, const BigInt& n) {
  if (l <= k || l > lambda.size()) fail(Errc::InvalidSpec, "s_closed needs 1 <= k < l <= L");
  if (n < BigInt(static_cast<unsigned long>(l - k)))
    fail(Errc::InvalidSpec, "s_closed needs n >= l - k");
  const long prec = table.prec();
  const auto& c = table.get(k, l);
  BigInt M = n + 1 - BigInt(static_cast<unsigned long>(l - k));
  const UnimodularPoint& lam_l = lambda[l - 1];
  UnimodularPoint lam_l_M = lam_l.pow(M);
  Cplx sum = Cplx::of(0, 0, prec);
  Real maxterm(prec);
  for (std::size_t j = k; j <= l - 1; ++j) {
    const UnimodularPoint& lam_j = lambda[j - 1];
    Cplx num = unit_diff(lam_l_M, lam_j.pow(M), prec);
    Cplx den = unit_diff(lam_l, lam_j, prec);
    Cplx term = c[j - k] * (num / den);
    Real mag = abs(term);
    if (mag > maxterm) maxterm = mag;
    sum += term;
  }
  Real guard = ldexp2(maxterm, -(prec - 20));
  if (!maxterm.is_zero() && abs(sum) < guard)
    fail(Errc::SeparationTooSmall,
         "cancellation in closed form exceeds working precision " + std::to_string(prec));
  return sum;
}

Cplx s_direct(const std::vector<UnimodularPoint>& lambda, std::size_t k, std::size_t l,
              const BigInt& n, long prec) {
  if (l <= k || l > lambda.size()) fail(Errc::InvalidSpec, "s_direct needs 1 <= k < l <= L");
  BigInt Mz = n - BigInt(static_cast<unsigned long>(l - k));
  if (Mz < 0) fail(Errc::InvalidSpec, "s_direct needs n >= l - k");
  if (Mz > 1000000) fail(Errc::OracleScaleExceeded, "homogeneous-sum oracle capped at degree 10^6");
  unsigned long M = Mz.get_ui();
  // h_M(x_1..x_r) by adding one variable at a time:
  // with x added, H'[m] = H[m] + x * H'[m-1].
  std::vector<Cplx> H(M + 1, Cplx::of(0, 0, prec));
  H[0] = Cplx::one(prec);
  for (std::size_t v = k; v <= l; ++v) {
    Cplx x = lambda[v - 1].unit(prec);
    for (unsigned long m = 1; m <= M; ++m) H[m] += x * H[m - 1];
  }
  return H[M];
}

Cplx t_entry(const OperatorModel& model, const CTable& table, std::size_t k, std::size_t l,
             const BigInt& n) {
  if (k < 1 || l < k || l > model.L) fail(Errc::InvalidSpec, "t_entry needs 1 <= k <= l <= L");
  if (n < 0) fail(Errc::InvalidSpec, "t_entry needs n >= 0");
  const long prec = model.prec;
  if (k == l) return model.lambda[k - 1].pow(n).unit(prec);
  if (BigInt(static_cast<unsigned long>(l - k)) > n) return Cplx::of(0, 0, prec);
  Cplx s = s_closed(table, model.lambda, k, l, n);
  return s * model.alpha_product(k, l);
}

std::vector<std::vector<Cplx>> matpow_oracle(const OperatorModel& model, const BigInt& n) {
  if (n < 0 || n > 1000000000) fail(Errc::OracleScaleExceeded, "matpow oracle capped at n <= 10^9");
  const long prec = model.prec;
  const std::size_t L = model.L;
  auto ident = [&] {
    std::vector<std::vector<Cplx>> m(L, std::vector<Cplx>(L, Cplx::of(0, 0, prec)));
    for (std::size_t i = 0; i < L; ++i) m[i][i] = Cplx::one(prec);
    return m;
  };
  auto mul = [&](const auto& a, const auto& b) {
    std::vector<std::vector<Cplx>> r(L, std::vector<Cplx>(L, Cplx::of(0, 0, prec)));
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t t = 0; t < L; ++t) {
        if (a[i][t].re.is_zero() && a[i][t].im.is_zero()) continue;
        for (std::size_t j = 0; j < L; ++j) r[i][j] += a[i][t] * b[t][j];
      }
    return r;
  };
  std::vector<std::vector<Cplx>> base = ident();
  for (std::size_t i = 0; i < L; ++i) {
    base[i][i] = model.lambda[i].unit(prec);
    if (i + 1 < L) base[i][i + 1] = Cplx(model.alpha(i + 1), Real::of(0.0, prec));
  }
  std::vector<std::vector<Cplx>> acc = ident();
  BigInt e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = mul(acc, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return acc;
}

EigvecRecord eigenvector(const OperatorModel& model, std::size_t n) {
  if (n < 1 || n > model.L) fail(Errc::InvalidSpec, "eigenvector index out of range");
  const long prec = model.prec;
  EigvecRecord rec;
  rec.n = n;
  rec.coords.push_back(Cplx::one(prec));
  for (std::size_t k = 2; k <= n; ++k) {
    Cplx num = unit_diff(model.lambda[n - 1], model.lambda[k - 2], prec);
    Cplx next = rec.coords.back() * num / Cplx(model.alpha(k - 1), Real::of(0.0, prec));
    rec.coords.push_back(next);
  }
  // Residual of (T - lambda_n) u over the first n+1 coordinates.
  Real res2(prec), norm2(prec);
  for (std::size_t k = 1; k <= n; ++k) {
    Cplx r = unit_diff(model.lambda[k - 1], model.lambda[n - 1], prec) * rec.coords[k - 1];
    if (k < n) r += rec.coords[k] * model.alpha(k);
    res2 += abs2(r);
    norm2 += abs2(rec.coords[k - 1]);
  }
  rec.residual = sqrt(res2).to_double();
  rec.norm = sqrt(norm2).to_double();
  return rec;
}

Lemma6Residual verify_lemma6(const CTable& table, const std::vector<UnimodularPoint>& lambda,
                             std::size_t k, std::size_t l) {
  if (l <= k || l > lambda.size()) fail(Errc::InvalidSpec, "verify_lemma6 needs k < l <= L");
  const long prec = table.prec();
  const auto& c = table.get(k, l);
  Lemma6Residual out;
  Real scale(prec);
  scale = Real::of(1.0, prec);
  for (long p = 0; p <= static_cast<long>(l - k) - 1; ++p) {
    BigInt e = 1 - (static_cast<long>(l - k) - p);
    Cplx sum = Cplx::of(0, 0, prec);
    for (std::size_t j = k; j <= l - 1; ++j) {
      Cplx num = unit_diff(lambda[l - 1].pow(e), lambda[j - 1].pow(e), prec);
      Cplx den = unit_diff(lambda[l - 1], lambda[j - 1], prec);
      Cplx term = c[j - k] * (num / den);
      Real mag = abs(term);
      if (mag > scale) scale = mag;
      sum += term;
    }
    double raw = abs(sum).to_double();
    if (raw > out.raw) out.raw = raw;
  }
  out.scaled = out.raw / scale.to_double();
  return out;
}

// ---------------------------------------------------------------------------

OperatorModel select_parameters(const SequencePrefix& prefix, double delta, SeedSupply& supply,
                                std::size_t L, const SelectOptions& opts) {
  prefix.validate();
  if (!(delta > 0) || delta > 2.0) fail(Errc::InvalidSpec, "delta must be in (0, 2]");
  if (L < 2) fail(Errc::InvalidSpec, "L must be >= 2");

  OperatorModel model;
  model.L = L;
  model.delta = delta;
  model.prec = opts.prec;
  model.window = prefix;
  model.lambda.push_back(UnimodularPoint::one());  // lambda_1 = 1

  BigRat delta_q;
  mpq_set_d(delta_q.get_mpq_t(), delta);
  BigRat om_prod2(1);
  Json levels = Json::array();

  for (std::size_t l = 2; l <= L; ++l) {
    // omega_{l-1}: at least 2^l, and large enough that
    // prod_{i<=l-1} omega_i^2 >= 2^{l+3} / delta^2.
    BigRat need = pow2_rat(static_cast<long>(l) + 3) / (delta_q * delta_q);
    BigRat om = pow2_rat(static_cast<long>(l));
    while (om_prod2 * om * om < need) om *= 2;
    model.omega.push_back(om);
    om_prod2 *= om * om;

    long jl = jmap(static_cast<long>(l));
    // Initial tolerance: half of what the shift-weight condition needs.
    Real tol(model.prec);
    if (l == 2) {
      tol = Real::of(delta_q / om, model.prec) / 2.0;
    } else {
      tol = Real::of(delta_q / om, model.prec) * model.chord_gap(l - 1) / 2.0;
    }
    Real two_ml = ldexp2(Real::of(1.0, model.prec), -static_cast<long>(l));
    if (tol > two_ml) tol = two_ml;

    bool accepted = false;
    int halvings = 0;
    for (; halvings < opts.max_halvings && !accepted; ++halvings) {
      auto mu = supply.draw(tol);
      if (!mu)
        fail(Errc::SupplyExhausted, "no supply point with d_trunc <= " + tol.str(6) +
                                        " at level " + std::to_string(l) + " (" +
                                        supply.describe() + ")");
      UnimodularPoint cand = model.lambda[jl - 1].mul(*mu);
      bool distinct = true;
      for (const auto& lam : model.lambda)
        if (lam == cand) distinct = false;
      if (!distinct) {
        tol = tol / 2.0;
        continue;
      }
      model.lambda.push_back(cand);

      // Checks (a)-(c) with in-place precision escalation.
      bool ok = false;
      for (;;) {
        try {
          ok = true;
          // (a) weighted-shift condition: every alpha <= delta.
          for (std::size_t i = 1; i <= l - 1 && ok; ++i)
            if (model.alpha(i) > delta) ok = false;
          // (b) eigenvector ladder.
          if (ok) {
            EigvecRecord ul = eigenvector(model, l);
            EigvecRecord uj = eigenvector(model, static_cast<std::size_t>(jl));
            Real diff2(model.prec);
            for (std::size_t i = 0; i < ul.coords.size(); ++i) {
              Cplx d = ul.coords[i];
              if (i < uj.coords.size()) d -= uj.coords[i];
              diff2 += abs2(d);
            }
            if (sqrt(diff2) > two_ml.with_prec(model.prec)) ok = false;
          }
          // (c) column budgets for this l at every window term.
          if (ok) {
            CTable table(std::vector<UnimodularPoint>(model.lambda.begin(),
                                                      model.lambda.begin() + (l - 1)),
                         model.prec);
            Real budget = ldexp2(Real::of(delta_q * delta_q, model.prec), -static_cast<long>(l));
            for (const auto& np : prefix.terms) {
              Real colsum(model.prec);
              std::size_t kmin = 1;
              if (BigInt(static_cast<unsigned long>(l)) > np + 1) {
                BigInt km = BigInt(static_cast<unsigned long>(l)) - np;
                kmin = static_cast<std::size_t>(km.get_ui());
              }
              for (std::size_t k = kmin; k <= l - 1; ++k) {
                if (BigInt(static_cast<unsigned long>(l - k)) > np) continue;
                Cplx t = t_entry(model, table, k, l, np);
                colsum += abs2(t);
              }
              if (colsum > budget) {
                ok = false;
                break;
              }
            }
          }
          break;
        } catch (const Error& e) {
          if (e.code() != Errc::SeparationTooSmall) throw;
          if (model.prec * 2 > kPrecCapBits)
            fail(Errc::PrecisionExceeded, "precision cap reached during parameter selection");
          model.prec *= 2;
        }
      }
      if (ok) {
        accepted = true;
        model.tol_schedule.push_back(tol.to_rational_exact());
        levels.push_back(Json{{"l", l},
                              {"omega", dec(om)},
                              {"halvings", halvings},
                              {"gap", model.chord_gap(l).to_double()},
                              {"d_trunc_tol", tol.to_double()}});
      } else {
        model.lambda.pop_back();
        tol = tol / 2.0;
      }
    }
    if (!accepted)
      fail(Errc::SupplyExhausted,
           "tolerance halvings exhausted at level " + std::to_string(l));
  }
  model.meta = Json{{"supply", supply.describe()}, {"levels", levels}};
  model.validate();
  return model;
}

// ---------------------------------------------------------------------------

namespace {

// Largest singular value by power iteration on A^H A; deterministic start.
double sigma_max(const std::vector<std::vector<Cplx>>& A, long prec) {
  const std::size_t L = A.size();
  std::vector<Cplx> v(L, Cplx::of(0, 0, prec));
  for (std::size_t i = 0; i < L; ++i)
    v[i] = Cplx::of(1.0 + static_cast<double>(i) / (static_cast<double>(L) * L), 0, prec);
  double prev = 0;
  double est = 0;
  for (int it = 0; it < 200; ++it) {
    // w = A v
    std::vector<Cplx> w(L, Cplx::of(0, 0, prec));
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = 0; j < L; ++j) w[i] += A[i][j] * v[j];
    // u = A^H w
    std::vector<Cplx> u(L, Cplx::of(0, 0, prec));
    for (std::size_t j = 0; j < L; ++j)
      for (std::size_t i = 0; i < L; ++i) u[j] += conj(A[i][j]) * w[i];
    Real n2(prec), w2(prec);
    for (std::size_t i = 0; i < L; ++i) {
      n2 += abs2(u[i]);
      w2 += abs2(w[i]);
    }
    est = sqrt(w2).to_double();
    Real norm = sqrt(n2);
    if (norm.is_zero()) return 0;
    Real vnorm2(prec);
    for (std::size_t i = 0; i < L; ++i) {
      u[i] = u[i] / norm;
      vnorm2 += abs2(v[i]);
    }
    est = est / sqrt(vnorm2).to_double();
    v = std::move(u);
    if (it > 2 && std::abs(est - prev) <= 1e-12 * std::max(1.0, est)) break;
    prev = est;
  }
  return est;
}

}  // namespace

Json RigidityReport::to_json() const {
  Json rows_j = Json::array();
  for (const auto& r : rows)
    rows_j.push_back(Json{{"n", dec(r.n)},
                          {"hs_bound", r.hs_bound},
                          {"sigma_max", r.sigma_max},
                          {"diag_sup", r.diag_sup},
                          {"norm_bound", r.norm_bound},
                          {"budget_ok", r.budget_ok}});
  return Json{{"rows", rows_j}, {"verdict", verdict}, {"meta", meta}};
}

std::string RigidityReport::to_csv() const {
  std::string out = "p,n,hs_bound,sigma_max,diag_sup,norm_bound,budget_ok\n";
  for (std::size_t p = 0; p < rows.size(); ++p) {
    const auto& r = rows[p];
    out += std::to_string(p) + "," + dec(r.n) + "," + std::to_string(r.hs_bound) + "," +
           std::to_string(r.sigma_max) + "," + std::to_string(r.diag_sup) + "," +
           std::to_string(r.norm_bound) + "," + (r.budget_ok ? "1" : "0") + "\n";
  }
  return out;
}

RigidityReport rigidity_report(const OperatorModel& model, const SequencePrefix& prefix) {
  model.validate();
  prefix.validate();
  const long prec = model.prec;
  CTable table(model.lambda, prec);
  BigRat delta_q;
  mpq_set_d(delta_q.get_mpq_t(), model.delta);
  RigidityReport rep;
  rep.verdict = true;
  for (const auto& np : prefix.terms) {
    RigidityRow row;
    row.n = np;
    Real hs2(prec);
    row.budget_ok = true;
    std::vector<std::vector<Cplx>> dense(model.L,
                                         std::vector<Cplx>(model.L, Cplx::of(0, 0, prec)));
    for (std::size_t l = 1; l <= model.L; ++l) {
      Real colsum(prec);
      for (std::size_t k = 1; k <= l; ++k) {
        if (BigInt(static_cast<unsigned long>(l - k)) > np) continue;
        Cplx t = t_entry(model, table, k, l, np);
        if (k < l) colsum += abs2(t);
        dense[k - 1][l - 1] = t;
      }
      if (l >= 2) {
        hs2 += colsum;
        Real budget = ldexp2(Real::of(delta_q * delta_q, prec), -static_cast<long>(l));
        if (colsum > budget) row.budget_ok = false;
      }
    }
    row.hs_bound = sqrt(hs2).to_double();
    row.sigma_max = sigma_max(dense, prec);
    Real dsup(prec);
    for (std::size_t l = 1; l <= model.L; ++l) {
      Real d = dist_one_pow(model.lambda[l - 1], np, prec);
      if (d > dsup) dsup = d;
    }
    row.diag_sup = dsup.to_double();
    row.norm_bound = 1.0 + row.hs_bound;
    rep.verdict = rep.verdict && row.budget_ok && row.hs_bound <= model.delta;
    rep.rows.push_back(std::move(row));
  }
  rep.meta = Json{{"L", model.L},
                  {"delta", model.delta},
                  {"checks",
                   Json::array({"sum_k |t_{k,l}^{(n_p)}|^2 <= delta^2 2^-l",
                                "||T^{n_p} - D^{n_p}||_HS <= delta", "||T^{n_p}|| <= 1 + delta"})},
                  {"scope", "verified window and truncation only"}};
  return rep;
}

Json SpectralCheck::to_json() const {
  Json ap = Json::array();
  for (const auto& a : approximations)
    ap.push_back(Json{{"i", a.i}, {"n", a.n}, {"dist", a.dist}, {"threshold", a.threshold},
                      {"ok", a.ok}});
  return Json{{"distinct_eigenvalues", distinct_eigenvalues},
              {"leading_coords_nonzero", leading_coords_nonzero},
              {"approximations", ap}};
}

SpectralCheck spectral_criterion_check(const OperatorModel& model) {
  model.validate();
  if (model.L < 4) fail(Errc::InvalidSpec, "spectral check needs L >= 4");
  SpectralCheck out;
  out.distinct_eigenvalues = true;  // enforced by validate()
  std::vector<EigvecRecord> u;
  for (std::size_t n = 1; n <= model.L; ++n) u.push_back(eigenvector(model, n));
  out.leading_coords_nonzero = true;
  for (const auto& rec : u) {
    const Cplx& lead = rec.coords.back();
    if (lead.re.is_zero() && lead.im.is_zero()) out.leading_coords_nonzero = false;
  }
  const long prec = model.prec;
  for (std::size_t i = 1; i <= model.L; ++i) {
    SpectralCheck::Approx best;
    best.i = i;
    bool first = true;
    for (std::size_t n = 1; n <= model.L; ++n) {
      if (n == i) continue;
      Real d2(prec);
      std::size_t len = std::max(u[n - 1].coords.size(), u[i - 1].coords.size());
      for (std::size_t c = 0; c < len; ++c) {
        Cplx diff = Cplx::of(0, 0, prec);
        if (c < u[n - 1].coords.size()) diff += u[n - 1].coords[c];
        if (c < u[i - 1].coords.size()) diff -= u[i - 1].coords[c];
        d2 += abs2(diff);
      }
      double dist = sqrt(d2).to_double();
      double thr = 2.0 * std::ldexp(1.0, -static_cast<int>(std::max(n, i)));
      bool ok = dist <= thr;
      if (first || (ok && !best.ok) || (ok == best.ok && dist < best.dist)) {
        best.n = n;
        best.dist = dist;
        best.threshold = thr;
        best.ok = ok;
        first = false;
      }
    }
    out.approximations.push_back(best);
  }
  return out;
}

}  // namespace riglab
