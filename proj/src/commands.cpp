#include "ddvv/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "ddvv/errors.hpp"
#include "ddvv/runner.hpp"
#include "ddvv/transforms.hpp"
#include "json.hpp"

namespace ddvv {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<Complex> probe_grid(const GridSpec& g, int nu, int nv,
                                const Domain& dom) {
  std::vector<Complex> out;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      Complex z(g.u_min + (g.u_max - g.u_min) * (i + 0.5) / nu,
                g.v_min + (g.v_max - g.v_min) * (j + 0.5) / nv);
      if (dom.contains(z)) out.push_back(z);
    }
  if (out.empty())
    throw Error("EmptyGrid", "no probe points inside the curve domain");
  return out;
}

void write_report(const std::string& path, const ojson& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("ConfigError", "cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string point_str(const ChartPoint& p) {
  std::string s = "(u=" + fmt_double(p.u) + ", v=" + fmt_double(p.v) +
                  ", theta=[";
  for (std::size_t i = 0; i < p.theta.size(); ++i)
    s += (i ? "," : "") + fmt_double(p.theta[i]);
  return s + "])";
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// Precondition shared by the construction-driving commands: the input must be
// an isotropic immersed curve on the sampled window. Failures here are input
// errors, not verification failures.
IsotropyReport isotropy_precheck(const HolomorphicCurve& c, const GridSpec& g) {
  IsotropyReport ir;
  try {
    ir = check_isotropy(c, probe_grid(g, 5, 5, c.domain));
  } catch (const Error& e) {
    if (e.kind() == "EmptyGrid") throw;
    throw Error("ConfigError",
                std::string("curve cannot be evaluated on the window: ") +
                    e.what());
  }
  double scale = std::max(1.0, ir.min_immersion_norm * ir.min_immersion_norm);
  if (ir.max_isotropy_defect > 1e-9 * scale)
    throw Error("ConfigError", "curve fails isotropy precheck: defect " +
                                   sci(ir.max_isotropy_defect) + " > " +
                                   sci(1e-9 * scale));
  return ir;
}

struct GridStats {
  int total = 0, ok = 0, regular = 0, minimal = 0, umbilic = 0, degenerate = 0;
  double max_eq_rel = 0.0, max_cf = 0.0, max_law = 0.0;
  double lambda_min = 0.0, lambda_max = 0.0, mu_min = 0.0, mu_max = 0.0;
  int worst_eq = -1, worst_cf = -1, worst_law = -1;
  std::map<std::string, int> error_kinds;
};

GridStats grid_stats(const std::vector<SampleRecord>& recs) {
  GridStats st;
  st.total = static_cast<int>(recs.size());
  bool first = true;
  for (const SampleRecord& r : recs) {
    if (!r.ok) {
      std::string kind = r.error.substr(0, r.error.find(':'));
      st.error_kinds[kind]++;
      continue;
    }
    st.ok++;
    if (r.flags.regular) st.regular++;
    if (r.flags.minimalPoint) st.minimal++;
    if (r.flags.umbilicPoint) st.umbilic++;
    if (r.flags.degenerate) st.degenerate++;
    double rel = std::abs(r.residual) / std::max(1.0, std::abs(r.s));
    if (st.worst_eq < 0 || rel > st.max_eq_rel) {
      st.max_eq_rel = rel;
      st.worst_eq = r.index;
    }
    if (r.cf_residual && (st.worst_cf < 0 || *r.cf_residual > st.max_cf)) {
      st.max_cf = *r.cf_residual;
      st.worst_cf = r.index;
    }
    if (r.law_residual && (st.worst_law < 0 || *r.law_residual > st.max_law)) {
      st.max_law = *r.law_residual;
      st.worst_law = r.index;
    }
    if (first) {
      st.lambda_min = st.lambda_max = r.lambda;
      st.mu_min = st.mu_max = r.mu;
      first = false;
    } else {
      st.lambda_min = std::min(st.lambda_min, r.lambda);
      st.lambda_max = std::max(st.lambda_max, r.lambda);
      st.mu_min = std::min(st.mu_min, r.mu);
      st.mu_max = std::max(st.mu_max, r.mu);
    }
  }
  return st;
}

ojson stats_json(const GridStats& st) {
  ojson j;
  j["samples"] = st.total;
  j["ok"] = st.ok;
  j["regular"] = st.regular;
  j["minimal"] = st.minimal;
  j["umbilic"] = st.umbilic;
  j["degenerate"] = st.degenerate;
  j["max_eq_residual"] = st.max_eq_rel;
  j["max_frame_residual"] = st.max_cf;
  if (st.worst_law >= 0) j["max_law_residual"] = st.max_law;
  j["lambda_range"] = {st.lambda_min, st.lambda_max};
  j["mu_range"] = {st.mu_min, st.mu_max};
  if (!st.error_kinds.empty()) j["errors"] = st.error_kinds;
  return j;
}

ojson report_header(const char* command, const RunConfig& cfg) {
  ojson j;
  j["command"] = command;
  j["curve"] = cfg.curve.name;
  j["n"] = cfg.curve.n;
  return j;
}

void emit_artifacts(const RunConfig& cfg, const std::vector<SampleRecord>& recs,
                    int workers) {
  if (!cfg.output.samples.empty()) write_samples_ndjson(cfg.output.samples, recs);
  if (!cfg.output.obj.empty()) {
    std::vector<double> thetas = cfg.output.obj_theta;
    if (thetas.empty())
      thetas.push_back(cfg.curve.n >= 3 && cfg.grid.ntheta > 0
                           ? 3.14159265358979323846 / cfg.grid.ntheta
                           : 0.0);
    write_obj_slice(cfg.output.obj, cfg.curve, cfg.grid, thetas, cfg.tol, workers);
  }
}

}  // namespace

int cmd_isotropy(const RunConfig& cfg, int workers) {
  (void)workers;
  std::vector<Complex> probes =
      probe_grid(cfg.grid, cfg.grid.nu, cfg.grid.nv, cfg.curve.domain);
  IsotropyReport ir = check_isotropy(cfg.curve, probes);
  double scale = std::max(1.0, ir.min_immersion_norm * ir.min_immersion_norm);
  double tol = 1e-9 * scale;
  bool pass = ir.max_isotropy_defect <= tol;

  std::printf("[%s] isotropy curve=%s probes=%zu max_defect=%s min_immersion=%s tol=%s\n",
              pass ? "PASS" : "FAIL", cfg.curve.name.c_str(), probes.size(),
              sci(ir.max_isotropy_defect).c_str(), sci(ir.min_immersion_norm).c_str(),
              sci(tol).c_str());

  ojson j = report_header("isotropy", cfg);
  j["probes"] = probes.size();
  j["max_isotropy_defect"] = ir.max_isotropy_defect;
  j["min_immersion_norm"] = ir.min_immersion_norm;
  j["tolerance"] = tol;
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_build(const RunConfig& cfg, int workers) {
  isotropy_precheck(cfg.curve, cfg.grid);
  std::vector<ChartPoint> pts = sample_grid(cfg.grid);
  std::vector<SampleRecord> recs =
      evaluate_grid(cfg.curve, pts, {}, false, cfg.tol, workers);
  GridStats st = grid_stats(recs);
  emit_artifacts(cfg, recs, workers);

  bool pass = st.ok >= 1;
  std::printf("[%s] build curve=%s samples=%d ok=%d regular=%d\n",
              pass ? "PASS" : "FAIL", cfg.curve.name.c_str(), st.total, st.ok,
              st.regular);
  ojson j = report_header("build", cfg);
  j.update(stats_json(st));
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, int workers) {
  isotropy_precheck(cfg.curve, cfg.grid);
  std::vector<ChartPoint> pts = sample_grid(cfg.grid);
  std::vector<SampleRecord> recs =
      evaluate_grid(cfg.curve, pts, {}, false, cfg.tol, workers);
  GridStats st = grid_stats(recs);
  emit_artifacts(cfg, recs, workers);

  bool pass = st.ok >= 1 && st.max_eq_rel <= cfg.tol.tol_eq;

  ojson j = report_header("verify", cfg);
  j.update(stats_json(st));

  if (pass) {
    std::printf("[PASS] verify curve=%s samples=%d ok=%d max_eq_residual=%s tol=%s\n",
                cfg.curve.name.c_str(), st.total, st.ok, sci(st.max_eq_rel).c_str(),
                sci(cfg.tol.tol_eq).c_str());
  } else if (st.ok == 0) {
    std::printf("[FAIL] verify curve=%s: no sample survived evaluation (%d errors)\n",
                cfg.curve.name.c_str(), st.total);
  } else {
    std::printf("[FAIL] verify curve=%s equality residual %s > tol %s worst=%s\n",
                cfg.curve.name.c_str(), sci(st.max_eq_rel).c_str(),
                sci(cfg.tol.tol_eq).c_str(), point_str(recs[st.worst_eq].point).c_str());
    // If most samples violate equality, probe the opposite complex-structure
    // orientation on a few points and report which one holds.
    int violations = 0;
    for (const SampleRecord& r : recs)
      if (r.ok && std::abs(r.residual) / std::max(1.0, std::abs(r.s)) > cfg.tol.tol_eq)
        violations++;
    if (violations * 2 > st.ok) {
      double std_max = 0.0, flip_max = 0.0;
      int probed = 0;
      for (const SampleRecord& r : recs) {
        if (!r.ok || probed >= 5) continue;
        try {
          PhiContext ctx;
          PhiJet pj = phi_jets(cfg.curve, r.point, cfg.tol, &ctx);
          VecJet flip = ctx.s.gJ - ctx.s.gU * ctx.d.a_v + ctx.s.gV * ctx.d.a_u +
                        pj.w * ctx.d.rho_N;
          DdvvReport a = ddvv_residual(fundamental_forms(pj, cfg.tol), 0.0, cfg.tol);
          DdvvReport b = ddvv_residual(fundamental_forms(flip, cfg.tol), 0.0, cfg.tol);
          std_max = std::max(std_max, std::abs(a.residual));
          flip_max = std::max(flip_max, std::abs(b.residual));
          probed++;
        } catch (const Error&) {
        }
      }
      if (probed > 0) {
        std::printf("  orientation probe: standard residual %s, flipped residual %s\n",
                    sci(std_max).c_str(), sci(flip_max).c_str());
        j["orientation_probe"] = {{"standard", std_max}, {"flipped", flip_max}};
      }
    }
  }

  j["tolerance"] = cfg.tol.tol_eq;
  if (st.worst_eq >= 0) {
    j["worst"] = {{"u", recs[st.worst_eq].point.u},
                  {"v", recs[st.worst_eq].point.v},
                  {"theta", recs[st.worst_eq].point.theta},
                  {"residual", st.max_eq_rel}};
  }
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_canonical(const RunConfig& cfg, int workers) {
  isotropy_precheck(cfg.curve, cfg.grid);
  std::vector<ChartPoint> pts = sample_grid(cfg.grid);
  std::vector<SampleRecord> recs =
      evaluate_grid(cfg.curve, pts, {}, false, cfg.tol, workers);
  GridStats st = grid_stats(recs);
  emit_artifacts(cfg, recs, workers);

  bool pass = st.ok >= 1 && st.degenerate == 0 && st.max_cf <= cfg.tol.tol_frame;

  if (pass) {
    std::printf(
        "[PASS] canonical curve=%s samples=%d ok=%d max_frame_residual=%s tol=%s "
        "lambda=[%s,%s] mu=[%s,%s]\n",
        cfg.curve.name.c_str(), st.total, st.ok, sci(st.max_cf).c_str(),
        sci(cfg.tol.tol_frame).c_str(), sci(st.lambda_min).c_str(),
        sci(st.lambda_max).c_str(), sci(st.mu_min).c_str(), sci(st.mu_max).c_str());
  } else if (st.ok == 0) {
    std::printf("[FAIL] canonical curve=%s: no sample survived evaluation (%d errors)\n",
                cfg.curve.name.c_str(), st.total);
  } else if (st.degenerate > 0) {
    std::printf("[FAIL] canonical curve=%s: %d samples not in the equality form\n",
                cfg.curve.name.c_str(), st.degenerate);
  } else {
    std::printf("[FAIL] canonical curve=%s frame residual %s > tol %s worst=%s\n",
                cfg.curve.name.c_str(), sci(st.max_cf).c_str(),
                sci(cfg.tol.tol_frame).c_str(),
                point_str(recs[st.worst_cf].point).c_str());
  }

  ojson j = report_header("canonical", cfg);
  j.update(stats_json(st));
  j["tolerance"] = cfg.tol.tol_frame;
  if (st.worst_cf >= 0)
    j["worst"] = {{"u", recs[st.worst_cf].point.u},
                  {"v", recs[st.worst_cf].point.v},
                  {"theta", recs[st.worst_cf].point.theta},
                  {"residual", st.max_cf}};
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_transform(const RunConfig& cfg, int workers) {
  if (cfg.transforms.empty())
    throw Error("ConfigError", "cmd_transform needs a nonempty 'transform' chain");
  for (const AmbientMap& m : cfg.transforms)
    if (m.signature() == Signature::Lorentz)
      throw Error("ConfigError",
                  std::string("transform kind '") + map_kind_name(m.kind) +
                      "' maps into a Lorentz-signature space; shape "
                      "verification only supports Euclidean targets");
  isotropy_precheck(cfg.curve, cfg.grid);
  std::vector<ChartPoint> pts = sample_grid(cfg.grid);
  std::vector<SampleRecord> recs =
      evaluate_grid(cfg.curve, pts, cfg.transforms, true, cfg.tol, workers);
  GridStats st = grid_stats(recs);
  emit_artifacts(cfg, recs, workers);

  const bool law = cfg.transforms.size() == 1;
  bool pass = st.ok >= 1 && st.max_eq_rel <= cfg.tol.tol_eq &&
              (!law || st.max_law <= cfg.tol.tol_frame);

  std::string chain;
  for (const AmbientMap& m : cfg.transforms)
    chain += (chain.empty() ? "" : "+") + std::string(map_kind_name(m.kind));

  if (pass) {
    std::printf("[PASS] transform curve=%s chain=%s samples=%d ok=%d "
                "max_eq_residual=%s max_law_residual=%s\n",
                cfg.curve.name.c_str(), chain.c_str(), st.total, st.ok,
                sci(st.max_eq_rel).c_str(), law ? sci(st.max_law).c_str() : "n/a");
  } else if (st.ok == 0) {
    std::printf("[FAIL] transform curve=%s chain=%s: no sample survived (%d errors)\n",
                cfg.curve.name.c_str(), chain.c_str(), st.total);
  } else if (st.max_eq_rel > cfg.tol.tol_eq) {
    std::printf("[FAIL] transform curve=%s post-map equality residual %s > tol %s worst=%s\n",
                cfg.curve.name.c_str(), sci(st.max_eq_rel).c_str(),
                sci(cfg.tol.tol_eq).c_str(),
                point_str(recs[st.worst_eq].point).c_str());
  } else {
    std::printf("[FAIL] transform curve=%s shape-law residual %s > tol %s worst=%s\n",
                cfg.curve.name.c_str(), sci(st.max_law).c_str(),
                sci(cfg.tol.tol_frame).c_str(),
                point_str(recs[st.worst_law].point).c_str());
  }

  ojson j = report_header("transform", cfg);
  j["chain"] = chain;
  j.update(stats_json(st));
  j["eq_tolerance"] = cfg.tol.tol_eq;
  j["law_tolerance"] = cfg.tol.tol_frame;
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_quadric(const RunConfig& cfg, int workers) {
  (void)workers;
  std::vector<Complex> probes =
      probe_grid(cfg.grid, cfg.grid.nu, cfg.grid.nv, cfg.curve.domain);
  QuadricClass qc = quadric_classify(cfg.curve, probes, cfg.quadric_d, cfg.tol);

  const double d2 = cfg.quadric_d * cfg.quadric_d;
  std::string k_str;
  double k_val = 0.0;
  bool constant = true;
  switch (qc.k) {
    case QuadricClass::K::Zero: k_str = "0"; k_val = 0.0; break;
    case QuadricClass::K::Plus4d2: k_str = "+4d^2"; k_val = 4.0 * d2; break;
    case QuadricClass::K::Minus4d2: k_str = "-4d^2"; k_val = -4.0 * d2; break;
    case QuadricClass::K::NonConstant: k_str = "nonconstant"; constant = false; break;
  }

  std::printf("[PASS] quadric curve=%s d=%s k=%s deviation=%s\n",
              cfg.curve.name.c_str(), fmt_double(cfg.quadric_d).c_str(),
              k_str.c_str(), sci(qc.maxDeviation).c_str());

  ojson j = report_header("quadric", cfg);
  j["d"] = cfg.quadric_d;
  j["k"] = k_str;
  j["max_deviation"] = qc.maxDeviation;
  if (constant) {
    j["k_value"] = k_val;
    // Padding the curve with a constant component 2d embeds it in dimension
    // n+3; the quadric value shifts by +4d^2 (Euclidean pad) or -4d^2
    // (timelike pad). Whichever lands on zero is the incident embedding.
    j["padded_euclidean_value"] = k_val + 4.0 * d2;
    j["padded_lorentz_value"] = k_val - 4.0 * d2;
    if (qc.k == QuadricClass::K::Minus4d2)
      j["incidence"] = "euclidean pad is null: sphere-stereographic case";
    else if (qc.k == QuadricClass::K::Plus4d2)
      j["incidence"] = "lorentz pad is null: hyperbolic-stereographic case";
    else
      j["incidence"] = "origin inversion of the construction is austere";
  }
  j["pass"] = true;
  write_report(cfg.output.report, j);
  return 0;
}

int cmd_invert_holo(const RunConfig& cfg, int workers) {
  (void)workers;
  std::vector<Complex> probes =
      probe_grid(cfg.grid, cfg.grid.nu, cfg.grid.nv, cfg.curve.domain);
  HolomorphicCurve inv = holo_invert(cfg.curve, cfg.invert_d, probes);

  std::vector<Complex> grid20 = probe_grid(cfg.grid, 20, 20, cfg.curve.domain);
  IsotropyReport ir = check_isotropy(inv, grid20);
  double scale = std::max(1.0, ir.min_immersion_norm * ir.min_immersion_norm);
  double tol = 1e-9 * scale;
  bool pass = ir.max_isotropy_defect <= tol;

  if (!cfg.output.curve.empty()) {
    ojson spec;
    ojson jc;
    jc["n"] = inv.n;
    std::vector<std::string> comps;
    for (const Expr& e : inv.components) comps.push_back(print(e));
    jc["components"] = comps;
    if (inv.domain.kind == Domain::Kind::Disk)
      jc["domain"] = {{"kind", "disk"}, {"radius", inv.domain.radius}};
    else
      jc["domain"] = {{"kind", "plane"}};
    jc["name"] = inv.name;
    spec["curve"] = jc;
    write_report(cfg.output.curve, spec);
  }

  std::printf("[%s] invert_holo curve=%s d=%s out=%s max_defect=%s "
              "min_immersion=%s tol=%s\n",
              pass ? "PASS" : "FAIL", cfg.curve.name.c_str(),
              fmt_double(cfg.invert_d).c_str(), inv.name.c_str(),
              sci(ir.max_isotropy_defect).c_str(),
              sci(ir.min_immersion_norm).c_str(), sci(tol).c_str());

  ojson j = report_header("invert_holo", cfg);
  j["d"] = cfg.invert_d;
  j["inverted_name"] = inv.name;
  j["probes"] = grid20.size();
  j["max_isotropy_defect"] = ir.max_isotropy_defect;
  j["min_immersion_norm"] = ir.min_immersion_norm;
  j["tolerance"] = tol;
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_theorem4(const RunConfig& cfg, int workers) {
  (void)workers;
  isotropy_precheck(cfg.curve, cfg.grid);
  std::vector<Complex> probes =
      probe_grid(cfg.grid, cfg.grid.nu, cfg.grid.nv, cfg.curve.domain);
  HolomorphicCurve inv = holo_invert(cfg.curve, cfg.theorem4_d, probes);

  GridSpec gs = cfg.grid;
  gs.ntheta = cfg.theorem4_fiber_angles;
  std::vector<ChartPoint> pts = sample_grid(gs);

  AmbientMap m;
  m.kind = MapKind::EuclideanInversion;
  m.dim = cfg.curve.ambient_dim();
  m.center = Vec(m.dim, 0.0);
  m.d = cfg.theorem4_d;

  // Candidate pair (Re T, sgn Im T) at z or conj z.
  auto candidate = [&](Complex z, double im_sign) {
    std::pair<Vec, Vec> gh{Vec(inv.ambient_dim(), 0.0), Vec(inv.ambient_dim(), 0.0)};
    for (int k = 0; k < inv.ambient_dim(); ++k) {
      Complex val = eval_jet(inv.components[k], z, 0, cfg.tol.eps_div).d[0];
      gh.first[k] = val.real();
      gh.second[k] = im_sign * val.imag();
    }
    return gh;
  };

  Vec seed = candidate(Complex(pts[0].u, pts[0].v), -1.0).second;
  std::vector<AssociatedPairSample> samp =
      associated_pair_samples(cfg.curve, m, pts, cfg.tol, &seed);

  std::map<std::pair<double, double>, std::vector<const AssociatedPairSample*>> bases;
  int invalid = 0;
  for (const AssociatedPairSample& s : samp) {
    if (!s.valid) { invalid++; continue; }
    bases[{s.point.u, s.point.v}].push_back(&s);
  }
  if (bases.empty()) {
    std::printf("[FAIL] theorem4 curve=%s: no valid associated-pair sample (%d errors)\n",
                cfg.curve.name.c_str(), invalid);
    return 1;
  }

  auto inf_dist = [](const Vec& a, const Vec& b, double flip) {
    double m2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      m2 = std::max(m2, std::abs(a[i] - flip * b[i]));
    return m2;
  };

  double spread = 0.0;
  // residuals per convention: conjugate? x im_sign, with a global h sign flip
  const char* conv_names[4] = {"z,-im", "z,+im", "conj,-im", "conj,+im"};
  double conv_res[4];
  for (int c = 0; c < 4; ++c) {
    bool conj = c >= 2;
    double im_sign = (c % 2 == 0) ? -1.0 : 1.0;
    double rg = 0.0, rh_plus = 0.0, rh_minus = 0.0;
    for (const auto& [uv, group] : bases) {
      Complex z(uv.first, uv.second);
      auto [ge, he] = candidate(conj ? std::conj(z) : z, im_sign);
      for (const AssociatedPairSample* s : group) {
        rg = std::max(rg, inf_dist(s->g_assoc, ge, 1.0));
        rh_plus = std::max(rh_plus, inf_dist(s->h_assoc, he, 1.0));
        rh_minus = std::max(rh_minus, inf_dist(s->h_assoc, he, -1.0));
      }
    }
    conv_res[c] = std::max(rg, std::min(rh_plus, rh_minus));
  }
  for (const auto& [uv, group] : bases)
    for (std::size_t i = 1; i < group.size(); ++i) {
      spread = std::max(spread, inf_dist(group[i]->g_assoc, group[0]->g_assoc, 1.0));
      spread = std::max(spread, inf_dist(group[i]->h_assoc, group[0]->h_assoc, 1.0));
    }

  int best = 0;
  for (int c = 1; c < 4; ++c)
    if (conv_res[c] < conv_res[best]) best = c;

  const double spread_tol = 1e-8, match_tol = 1e-6;
  bool pass = spread <= spread_tol && conv_res[best] <= match_tol;

  std::printf("[%s] theorem4 curve=%s bases=%zu angles=%d spread=%s "
              "convention=%s residual=%s (tols %s/%s)\n",
              pass ? "PASS" : "FAIL", cfg.curve.name.c_str(), bases.size(),
              cfg.theorem4_fiber_angles, sci(spread).c_str(), conv_names[best],
              sci(conv_res[best]).c_str(), sci(spread_tol).c_str(),
              sci(match_tol).c_str());

  ojson j = report_header("theorem4", cfg);
  j["d"] = cfg.theorem4_d;
  j["base_points"] = bases.size();
  j["fiber_angles"] = cfg.theorem4_fiber_angles;
  j["invalid_samples"] = invalid;
  j["fiber_spread"] = spread;
  ojson jc;
  for (int c = 0; c < 4; ++c) jc[conv_names[c]] = conv_res[c];
  j["conventions"] = jc;
  j["best_convention"] = conv_names[best];
  j["match_residual"] = conv_res[best];
  j["spread_tolerance"] = spread_tol;
  j["match_tolerance"] = match_tol;
  j["pass"] = pass;
  write_report(cfg.output.report, j);
  return pass ? 0 : 1;
}

int cmd_catalog(const std::string& report_path) {
  ojson entries = ojson::array();
  for (const CatalogEntry& e : catalog()) {
    std::printf("%-16s n=%d ambient=%d window u[%s,%s] v[%s,%s] grid %dx%dx%d  %s\n",
                e.curve.name.c_str(), e.curve.n, e.curve.ambient_dim(),
                fmt_double(e.default_grid.u_min).c_str(),
                fmt_double(e.default_grid.u_max).c_str(),
                fmt_double(e.default_grid.v_min).c_str(),
                fmt_double(e.default_grid.v_max).c_str(), e.default_grid.nu,
                e.default_grid.nv, e.default_grid.ntheta, e.note.c_str());
    ojson je;
    je["name"] = e.curve.name;
    je["n"] = e.curve.n;
    std::vector<std::string> comps;
    for (const Expr& ex : e.curve.components) comps.push_back(print(ex));
    je["components"] = comps;
    je["window"] = {e.default_grid.u_min, e.default_grid.u_max,
                    e.default_grid.v_min, e.default_grid.v_max};
    je["grid"] = {e.default_grid.nu, e.default_grid.nv, e.default_grid.ntheta};
    je["note"] = e.note;
    entries.push_back(je);
  }
  std::printf("[PASS] catalog entries=%zu\n", catalog().size());
  if (!report_path.empty()) {
    ojson j;
    j["command"] = "catalog";
    j["entries"] = entries;
    write_report(report_path, j);
  }
  return 0;
}

}  // namespace ddvv
