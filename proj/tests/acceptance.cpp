// Acceptance gate: nine independently verifiable properties of the pipeline,
// one [PASS]/[FAIL] line each, pinned tolerances, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ddvv/catalog.hpp"
#include "ddvv/errors.hpp"
#include "ddvv/geometry.hpp"
#include "ddvv/runner.hpp"
#include "ddvv/transforms.hpp"

using namespace ddvv;

namespace {

int g_workers = 1;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string point_str(const ChartPoint& p) {
  std::string s = "(u=" + sci(p.u) + " v=" + sci(p.v) + " theta=[";
  for (std::size_t i = 0; i < p.theta.size(); ++i)
    s += (i ? "," : "") + sci(p.theta[i]);
  return s + "])";
}

Mat identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::pair<Mat, Mat> form1(int n, double lambda, double mu) {
  Mat a(n, n), b(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = lambda;
  a(0, 1) = a(1, 0) = mu;
  b(0, 0) = mu;
  b(1, 1) = -mu;
  return {a, b};
}

ShapeData synth(int n, Mat A1, Mat A2) {
  ShapeData sd;
  sd.n = n;
  sd.A1 = std::move(A1);
  sd.A2 = std::move(A2);
  sd.metric = identity(n);
  sd.tangentFrame = identity(n);
  sd.dphi = Mat(n + 2, n);
  for (int i = 0; i < n; ++i) sd.dphi(i, i) = 1.0;
  Vec e1(n + 2, 0.0), e2(n + 2, 0.0);
  e1[n] = 1.0;
  e2[n + 1] = 1.0;
  sd.normalFrame = {e1, e2};
  sd.position = Vec(n + 2, 0.0);
  sd.rank_margin = 1.0;
  return sd;
}

Mat random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (;;) {
    std::vector<Vec> vs;
    for (int i = 0; i < n; ++i) {
      Vec v(n);
      for (double& x : v) x = gauss(rng);
      vs.push_back(v);
    }
    GramSchmidtResult gr = gram_schmidt(vs, 0);
    if (gr.rank < n) continue;
    Mat q(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) q(i, j) = gr.basis[j][i];
    return q;
  }
}

Mat conj_by(const Mat& q, const Mat& a) { return q.transposed() * a * q; }

struct SynthSample {
  int n;
  double lambda, mu;
  Mat A1, A2;
};

// shared generator for criteria 1 and 2 ("same data"): form-(1) pairs under a
// random normal-plane rotation and a random tangent frame
std::vector<SynthSample> synth_samples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(-3.0, 3.0), mu3(0.0, 3.0),
      ang(0.0, 6.283185307179586);
  std::uniform_int_distribution<int> dim(3, 6);
  std::vector<SynthSample> out;
  out.reserve(count);
  for (int t = 0; t < count; ++t) {
    SynthSample s;
    s.n = dim(rng);
    s.lambda = lam(rng);
    s.mu = 3.0 - mu3(rng);  // (0, 3]
    auto [ae, az] = form1(s.n, s.lambda, s.mu);
    double psi = ang(rng);
    double cp = std::cos(psi), sp = std::sin(psi);
    Mat q = random_orthogonal(s.n, rng);
    s.A1 = conj_by(q, cp * ae + (-sp) * az);
    s.A2 = conj_by(q, sp * ae + cp * az);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Complex> midpoint_grid(const GridSpec& g, int nu, int nv) {
  std::vector<Complex> out;
  double du = (g.u_max - g.u_min) / nu, dv = (g.v_max - g.v_min) / nv;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j)
      out.emplace_back(g.u_min + (i + 0.5) * du, g.v_min + (j + 0.5) * dv);
  return out;
}

double vnorm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double vdist_inf(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// --- criterion 1: closed-form equality oracle --------------------------------
bool criterion1(std::string& detail) {
  const double tol = 1e-12;
  double max_eq = 0.0, max_closed = 0.0;
  SynthSample worst{};
  for (const SynthSample& s : synth_samples(1000, 20260814)) {
    Curvatures c = curvatures(synth(s.n, s.A1, s.A2));
    double denom = static_cast<double>(s.n) * (s.n - 1);
    double s_closed = s.lambda * s.lambda - 4.0 * s.mu * s.mu / denom;
    double h2_closed = s.lambda * s.lambda;
    double sn_closed = 4.0 * s.mu * s.mu / denom;
    double closed = std::max({std::abs(c.s - s_closed), std::abs(c.H2 - h2_closed),
                              std::abs(c.sN - sn_closed)});
    double eq = std::abs(c.s - (c.H2 - c.sN));
    if (eq > max_eq) {
      max_eq = eq;
      worst = s;
    }
    max_closed = std::max(max_closed, closed);
  }
  bool pass = max_eq <= tol && max_closed <= tol;
  detail = "1000 trials max|s-(H2-sN)|=" + sci(max_eq) +
           " max|closed-form dev|=" + sci(max_closed) + " tol=" + sci(tol);
  if (!pass)
    detail += " worst at n=" + std::to_string(worst.n) +
              " lambda=" + sci(worst.lambda) + " mu=" + sci(worst.mu);
  return pass;
}

// --- criterion 2: commutator reformulation and general bound -----------------
bool criterion2(std::string& detail) {
  const double tol = 1e-12;
  double max_dev = 0.0;
  for (const SynthSample& s : synth_samples(1000, 20260814)) {
    Mat b1 = s.A1, b2 = s.A2;
    double t1 = b1.trace() / s.n, t2 = b2.trace() / s.n;
    for (int i = 0; i < s.n; ++i) {
      b1(i, i) -= t1;
      b2(i, i) -= t2;
    }
    CommutatorBound cb = traceless_commutator({b1, b2});
    double want = 16.0 * std::pow(s.mu, 4);  // (4 mu^2)^2
    double scale = std::max(1.0, want);
    max_dev = std::max({max_dev, std::abs(cb.lhs - want) / scale,
                        std::abs(cb.rhs - want) / scale});
  }

  std::mt19937_64 rng(977);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> dim(3, 6);
  double worst_slack = -1e300;
  for (int t = 0; t < 10000; ++t) {
    int n = dim(rng);
    Mat b1(n, n), b2(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        b1(i, j) = b1(j, i) = gauss(rng);
        b2(i, j) = b2(j, i) = gauss(rng);
      }
    double t1 = b1.trace() / n, t2 = b2.trace() / n;
    for (int i = 0; i < n; ++i) {
      b1(i, i) -= t1;
      b2(i, i) -= t2;
    }
    CommutatorBound cb = traceless_commutator({b1, b2});
    worst_slack =
        std::max(worst_slack, (cb.lhs - cb.rhs) / std::max(1.0, cb.rhs));
  }
  bool pass = max_dev <= tol && worst_slack <= tol;
  detail = "1000 equality pairs rel_dev=" + sci(max_dev) +
           "; 10000 random traceless pairs worst (lhs-rhs)/rhs=" +
           sci(worst_slack) + " tol=" + sci(tol);
  return pass;
}

// --- criterion 3: end-to-end equality on every built-in ----------------------
bool criterion3(std::string& detail) {
  const double tol_eq = 1e-7, tol_cf = 1e-6, clear_frac = 0.95;
  const int min_regular = 200;
  const double per_curve_limit = 10.0;
  bool pass = true;
  double worst_eq = 0.0, worst_cf = 0.0;
  int min_reg_seen = 1 << 30;
  double min_clear = 1.0;
  for (const CatalogEntry& e : catalog()) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<ChartPoint> pts = sample_grid(e.default_grid);
    std::vector<SampleRecord> recs =
        evaluate_grid(e.curve, pts, {}, false, Tolerances{}, g_workers);
    int regular = 0, clear = 0;
    double max_eq = 0.0, max_cf = 0.0;
    const SampleRecord* worst = nullptr;
    for (const SampleRecord& r : recs) {
      if (!r.ok) continue;
      if (r.flags.regular) regular++;
      if (r.flags.regular && !r.flags.minimalPoint && !r.flags.umbilicPoint &&
          !r.flags.degenerate)
        clear++;
      double eq = std::abs(r.residual) / std::max(1.0, std::abs(r.s));
      if (eq > max_eq) {
        max_eq = eq;
        worst = &r;
      }
      if (r.cf_residual) max_cf = std::max(max_cf, *r.cf_residual);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    double frac = static_cast<double>(clear) / recs.size();
    bool ok = regular >= min_regular && max_eq <= tol_eq && max_cf <= tol_cf &&
              frac >= clear_frac && secs < per_curve_limit;
    if (!ok && pass) {
      detail = e.curve.name + ": regular=" + std::to_string(regular) +
               " eq=" + sci(max_eq) + "/" + sci(tol_eq) + " cf=" + sci(max_cf) +
               "/" + sci(tol_cf) + " clear=" + sci(frac) + " time=" + sci(secs) +
               "s" + (worst ? " worst=" + point_str(worst->point) : "");
    }
    pass = pass && ok;
    worst_eq = std::max(worst_eq, max_eq);
    worst_cf = std::max(worst_cf, max_cf);
    min_reg_seen = std::min(min_reg_seen, regular);
    min_clear = std::min(min_clear, frac);
  }
  if (pass)
    detail = "6 curves, regular>=" + std::to_string(min_reg_seen) +
             " max_eq_rel=" + sci(worst_eq) + " max_cf=" + sci(worst_cf) +
             " min_clear=" + sci(min_clear);
  return pass;
}

// --- criterion 4: equality and shape law survive the unit inversion ----------
bool criterion4(std::string& detail) {
  const double margin_req = 0.1, tol_eq = 1e-7, tol_law = 1e-8;
  const CatalogEntry* e = find_catalog("enneper-pair");
  AmbientMap m;
  m.kind = MapKind::EuclideanInversion;
  m.dim = e->curve.ambient_dim();
  m.center = Vec(m.dim, 0.0);
  m.d = 1.0;

  std::vector<ChartPoint> pts = sample_grid(e->default_grid);
  const int want = 50;
  int stride = static_cast<int>(pts.size()) / want;
  double min_margin = 1e300, max_eq = 0.0, max_law = 0.0;
  int used = 0;
  ChartPoint worst_pt;
  for (std::size_t i = 0; i < pts.size() && used < want; i += stride) {
    try {
      PhiJet pj = phi_jets(e->curve, pts[i]);
      if (pj.singular) continue;
      double margin = vnorm(value_vec(pj.phi));
      ShapeData before = fundamental_forms(pj);
      ShapeData after = fundamental_forms(apply_map(m, pj.phi));
      double eq = std::abs(ddvv_residual(after).residual);
      double law = 0.0;
      for (const Vec& xi : before.normalFrame)
        law = std::max(law, shape_law_check(m, before, after, xi));
      if (eq > max_eq || law > max_law) worst_pt = pts[i];
      min_margin = std::min(min_margin, margin);
      max_eq = std::max(max_eq, eq);
      max_law = std::max(max_law, law);
      used++;
    } catch (const Error&) {
    }
  }
  bool pass = used == want && min_margin >= margin_req && max_eq <= tol_eq &&
              max_law <= tol_law;
  detail = std::to_string(used) + " samples min|phi|=" + sci(min_margin) +
           " eq_after=" + sci(max_eq) + "/" + sci(tol_eq) +
           " law=" + sci(max_law) + "/" + sci(tol_law);
  if (!pass) detail += " worst=" + point_str(worst_pt);
  return pass;
}

// --- criterion 5: null quadric class and austere inversion image -------------
bool criterion5(std::string& detail) {
  const double ratio_tol = 1e-6;
  const int want = 50;
  const CatalogEntry* e = find_catalog("null-exp");

  QuadricClass qc =
      quadric_classify(e->curve, midpoint_grid(e->default_grid, 5, 5), 1.0);
  if (qc.k != QuadricClass::K::Zero) {
    detail = "quadric class not zero (deviation " + sci(qc.maxDeviation) + ")";
    return false;
  }

  AmbientMap m;
  m.kind = MapKind::EuclideanInversion;
  m.dim = e->curve.ambient_dim();
  m.center = Vec(m.dim, 0.0);
  m.d = 1.0;

  std::vector<ChartPoint> pts = sample_grid(e->default_grid);
  int stride = static_cast<int>(pts.size()) / (want + 10);
  int used = 0, austere = 0;
  double worst_ratio = 0.0;
  ChartPoint worst_pt;
  for (std::size_t i = 0; i < pts.size() && used < want; i += stride) {
    try {
      PhiJet pj = phi_jets(e->curve, pts[i]);
      if (pj.singular) continue;
      ShapeData sd = fundamental_forms(apply_map(m, pj.phi));
      used++;
      if (austere_test(sd, Tolerances{}, ratio_tol)) austere++;
      // measured ratio for the report: |lambda| / (|lambda| + mu)
      double lam = std::hypot(sd.A1.trace(), sd.A2.trace()) / sd.n;
      Mat b1 = sd.A1, b2 = sd.A2;
      double t1 = b1.trace() / sd.n, t2 = b2.trace() / sd.n;
      for (int k = 0; k < sd.n; ++k) {
        b1(k, k) -= t1;
        b2(k, k) -= t2;
      }
      double mu =
          0.5 * std::sqrt(std::sqrt(traceless_commutator({b1, b2}).rhs));
      double ratio = lam / std::max(lam + mu, 1e-300);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_pt = pts[i];
      }
    } catch (const Error&) {
    }
  }
  bool pass = used >= want && austere == used;
  detail = "k=0 dev=" + sci(qc.maxDeviation) + "; " + std::to_string(austere) +
           "/" + std::to_string(used) + " austere, worst ratio=" +
           sci(worst_ratio) + "/" + sci(ratio_tol);
  if (!pass) detail += " worst=" + point_str(worst_pt);
  return pass;
}

// --- criterion 6: associated pair matches the inverted curve -----------------
bool criterion6(std::string& detail) {
  const double spread_tol = 1e-8, match_tol = 1e-6;
  const int n_bases = 30, n_angles = 4;
  const CatalogEntry* e = find_catalog("helicoid-pair");

  HolomorphicCurve inv =
      holo_invert(e->curve, 1.0, midpoint_grid(e->default_grid, 3, 3));
  auto eval_pair = [&inv](Complex z, Vec& g, Vec& h) {
    g.assign(inv.components.size(), 0.0);
    h.assign(inv.components.size(), 0.0);
    for (std::size_t k = 0; k < inv.components.size(); ++k) {
      Complex val = eval_jet(inv.components[k], z, 0).d[0];
      g[k] = val.real();
      h[k] = -val.imag();  // (Re, -Im) of the inverted curve
    }
  };

  GridSpec gs = e->default_grid;
  gs.nu = 6;
  gs.nv = 5;
  gs.ntheta = n_angles;
  std::vector<ChartPoint> pts = sample_grid(gs);
  if (static_cast<int>(pts.size()) != n_bases * n_angles) {
    detail = "unexpected grid size " + std::to_string(pts.size());
    return false;
  }

  AmbientMap m;
  m.kind = MapKind::EuclideanInversion;
  m.dim = e->curve.ambient_dim();
  m.center = Vec(m.dim, 0.0);
  m.d = 1.0;

  Vec g0, h0;
  eval_pair(Complex(pts[0].u, pts[0].v), g0, h0);
  std::vector<AssociatedPairSample> samples =
      associated_pair_samples(e->curve, m, pts, Tolerances{}, &h0);

  double max_spread = 0.0, max_match = 0.0;
  ChartPoint worst_pt;
  int invalid = 0;
  for (int b = 0; b < n_bases; ++b) {
    const AssociatedPairSample& first = samples[b * n_angles];
    if (!first.valid) {
      invalid += n_angles;
      continue;
    }
    Vec gt, ht;
    eval_pair(Complex(pts[b * n_angles].u, pts[b * n_angles].v), gt, ht);
    for (int a = 0; a < n_angles; ++a) {
      const AssociatedPairSample& s = samples[b * n_angles + a];
      if (!s.valid) {
        invalid++;
        continue;
      }
      double spread = std::max(vdist_inf(s.g_assoc, first.g_assoc),
                               vdist_inf(s.h_assoc, first.h_assoc));
      double match = std::max(vdist_inf(s.g_assoc, gt), vdist_inf(s.h_assoc, ht));
      if (spread > max_spread) max_spread = spread;
      if (match > max_match) {
        max_match = match;
        worst_pt = s.point;
      }
    }
  }
  bool pass = invalid == 0 && max_spread <= spread_tol && max_match <= match_tol;
  detail = std::to_string(n_bases) + " bases x " + std::to_string(n_angles) +
           " angles, fiber spread=" + sci(max_spread) + "/" + sci(spread_tol) +
           " match=" + sci(max_match) + "/" + sci(match_tol);
  if (invalid) detail += " invalid=" + std::to_string(invalid);
  if (!pass) detail += " worst=" + point_str(worst_pt);
  return pass;
}

// --- criterion 7: symbolic inversion is isotropic and involutive -------------
bool criterion7(std::string& detail) {
  const double iso_tol = 1e-9, round_tol = 1e-10;
  double worst_iso = 0.0, worst_round = 0.0;
  std::string worst_name;
  bool pass = true;
  for (const char* name :
       {"enneper-pair", "helicoid-pair", "enneper-pair-4", "helicoid-pair-4"}) {
    const CatalogEntry* e = find_catalog(name);
    std::vector<Complex> probes = midpoint_grid(e->default_grid, 3, 3);
    HolomorphicCurve inv = holo_invert(e->curve, 1.0, probes);
    IsotropyReport ir =
        check_isotropy(inv, midpoint_grid(e->default_grid, 20, 20));
    HolomorphicCurve twice = holo_invert(inv, 1.0, probes);
    double round_dev = 0.0;
    for (Complex z : probes)
      for (std::size_t k = 0; k < e->curve.components.size(); ++k) {
        Complex a = eval_jet(e->curve.components[k], z, 0).d[0];
        Complex b = eval_jet(twice.components[k], z, 0).d[0];
        round_dev = std::max(round_dev, std::abs(a - b));
      }
    if (ir.max_isotropy_defect > worst_iso) {
      worst_iso = ir.max_isotropy_defect;
      worst_name = name;
    }
    worst_round = std::max(worst_round, round_dev);
    pass = pass && ir.max_isotropy_defect <= iso_tol && round_dev <= round_tol;
  }
  detail = "4 curves, 20x20 isotropy defect=" + sci(worst_iso) + "/" +
           sci(iso_tol) + " double-inversion dev=" + sci(worst_round) + "/" +
           sci(round_tol);
  if (!pass) detail += " worst curve=" + worst_name;
  return pass;
}

// --- criterion 8: radius gradient, reconstruction, frame identities ----------
bool criterion8(std::string& detail) {
  const double grad_cap = 1.0 + 1e-10, recon_tol = 1e-8, ident_tol = 1e-7;
  const int want = 50;
  double max_grad = 0.0, max_recon = 0.0, max_ident = 0.0;
  std::string worst;
  bool pass = true;
  for (const CatalogEntry& e : catalog()) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> du(e.default_grid.u_min,
                                              e.default_grid.u_max),
        dv(e.default_grid.v_min, e.default_grid.v_max);
    int used = 0, draws = 0;
    while (used < want && draws < 400) {
      draws++;
      Complex z0(du(rng), dv(rng));
      try {
        SurfaceJets s = eval_surface(e.curve, z0, 2);
        SplitData d = split(s);
        double gr2 = d.c_u.value * d.r.grad[0] + d.c_v.value * d.r.grad[1];
        double grad_norm = std::sqrt(std::max(0.0, gr2));
        double recon = 0.0;
        for (int i = 0; i < s.hJ.dim(); ++i)
          recon = std::max(recon,
                           std::abs(d.a_u.value * s.gU[i].value +
                                    d.a_v.value * s.gV[i].value +
                                    d.hN[i].value - s.hJ[i].value));
        Prop8Report p = prop8_diagnostics(s, d);
        double ident = std::max(p.frame_mixed_residual, p.bxi_closed_form_residual);
        if (grad_norm > max_grad) max_grad = grad_norm;
        if (recon > max_recon) max_recon = recon;
        if (ident > max_ident) {
          max_ident = ident;
          worst = e.curve.name + " z=(" + sci(z0.real()) + "," +
                  sci(z0.imag()) + ")";
        }
        used++;
      } catch (const Error&) {
      }
    }
    pass = pass && used == want;
  }
  pass = pass && max_grad <= grad_cap && max_recon <= recon_tol &&
         max_ident <= ident_tol;
  detail = "6 curves x 50 points |grad r|<=" + sci(max_grad) +
           " recon=" + sci(max_recon) + "/" + sci(recon_tol) +
           " identities=" + sci(max_ident) + "/" + sci(ident_tol);
  if (!pass && !worst.empty()) detail += " worst=" + worst;
  return pass;
}

// --- criterion 9: jets agree with central finite differences -----------------
bool criterion9(std::string& detail) {
  const double h = 1e-4, tol1 = 1e-5, tol2 = 1e-3;
  double max_d1 = 0.0, max_d2 = 0.0;
  std::string worst;
  std::mt19937_64 rng(31337);

  auto run_curve = [&](const char* name, int count) {
    const CatalogEntry* e = find_catalog(name);
    const int n = e->curve.n;
    std::uniform_real_distribution<double> du(e->default_grid.u_min,
                                              e->default_grid.u_max),
        dv(e->default_grid.v_min, e->default_grid.v_max),
        th1(0.3, 5.9), th2(0.4, 2.7);
    for (int t = 0; t < count; ++t) {
      ChartPoint p;
      p.n = n;
      p.u = du(rng);
      p.v = dv(rng);
      p.theta.push_back(th1(rng));
      if (n >= 4) p.theta.push_back(th2(rng));

      PhiContext ctx;
      PhiJet pj = phi_jets(e->curve, p, {}, &ctx);
      if (pj.singular) {
        --t;
        continue;
      }
      const std::vector<int> frozen = ctx.d.pivot_order;
      auto value_at = [&](const ChartPoint& q) {
        return value_vec(phi_jets(e->curve, q, {}, nullptr, &frozen).phi);
      };
      auto shifted = [&](int k, double delta) {
        ChartPoint q = p;
        if (k == 0) q.u += delta;
        else if (k == 1) q.v += delta;
        else q.theta[k - 2] += delta;
        return q;
      };

      for (int k = 0; k < n; ++k) {
        Vec plus = value_at(shifted(k, h)), minus = value_at(shifted(k, -h));
        Vec jet = d1(pj.phi, k);
        for (std::size_t i = 0; i < jet.size(); ++i) {
          double fd = (plus[i] - minus[i]) / (2 * h);
          double dev = std::abs(fd - jet[i]);
          if (dev > max_d1) {
            max_d1 = dev;
            worst = std::string(name) + " d1 " + point_str(p);
          }
        }
      }
      Vec center = value_at(p);
      for (int k = 0; k < n; ++k)
        for (int l = k; l < n; ++l) {
          Vec jet = d2(pj.phi, k, l);
          for (std::size_t i = 0; i < jet.size(); ++i) {
            double fd;
            if (k == l) {
              Vec plus = value_at(shifted(k, h)), minus = value_at(shifted(k, -h));
              fd = (plus[i] - 2 * center[i] + minus[i]) / (h * h);
            } else {
              ChartPoint pp = shifted(k, h), pm = shifted(k, h),
                         mp = shifted(k, -h), mm = shifted(k, -h);
              if (l == 1) { pp.v += h; pm.v -= h; mp.v += h; mm.v -= h; }
              else { pp.theta[l - 2] += h; pm.theta[l - 2] -= h;
                     mp.theta[l - 2] += h; mm.theta[l - 2] -= h; }
              fd = (value_at(pp)[i] - value_at(pm)[i] - value_at(mp)[i] +
                    value_at(mm)[i]) /
                   (4 * h * h);
            }
            double dev = std::abs(fd - jet[i]);
            if (dev > max_d2) {
              max_d2 = dev;
              worst = std::string(name) + " d2 " + point_str(p);
            }
          }
        }
    }
  };

  run_curve("enneper-pair", 10);
  run_curve("helicoid-pair-4", 10);
  bool pass = max_d1 <= tol1 && max_d2 <= tol2;
  detail = "20 chart points, first-derivative dev=" + sci(max_d1) + "/" +
           sci(tol1) + " second=" + sci(max_d2) + "/" + sci(tol2);
  if (!pass) detail += " worst=" + worst;
  return pass;
}

struct CriterionDef {
  int id;
  const char* label;
  double time_limit;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  g_workers = std::max(1u, std::thread::hardware_concurrency());

  const CriterionDef defs[] = {
      {1, "closed-form equality oracle", 1.0, criterion1},
      {2, "commutator reformulation and bound", 5.0, criterion2},
      {3, "end-to-end equality on built-ins", 60.0, criterion3},
      {4, "conformal invariance under unit inversion", 10.0, criterion4},
      {5, "null quadric class and austere image", 10.0, criterion5},
      {6, "associated pair vs inverted curve", 20.0, criterion6},
      {7, "symbolic inversion isotropy and involution", 5.0, criterion7},
      {8, "radius and frame structural identities", 10.0, criterion8},
      {9, "jets vs central finite differences", 5.0, criterion9},
  };

  bool all = true;
  for (const CriterionDef& d : defs) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = d.run(detail);
    } catch (const Error& e) {
      detail = std::string("unexpected error: ") + e.what();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs >= d.time_limit) {
      ok = false;
      detail += " [time " + sci(secs) + "s over limit " + sci(d.time_limit) + "s]";
    }
    std::printf("[%s] criterion %d: %s  %s (%.2fs)\n", ok ? "PASS" : "FAIL",
                d.id, d.label, detail.c_str(), secs);
    all = all && ok;
  }
  std::printf("%s\n", all ? "acceptance: all criteria satisfied"
                          : "acceptance: FAILURES present");
  return all ? 0 : 1;
}
