#include "ddvv/runner.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <thread>

#include "ddvv/errors.hpp"
#include "ddvv/transforms.hpp"
#include "json.hpp"

namespace ddvv {

namespace {
using ojson = nlohmann::ordered_json;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  if (workers > count) workers = count;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

std::vector<SampleRecord> evaluate_grid(const HolomorphicCurve& curve,
                                        const std::vector<ChartPoint>& points,
                                        const std::vector<AmbientMap>& chain,
                                        bool want_law, const Tolerances& tol,
                                        int workers) {
  std::vector<SampleRecord> out(points.size());
  const bool do_law = want_law && chain.size() == 1;

  parallel_for(static_cast<int>(points.size()), workers, [&](int i) {
    SampleRecord& rec = out[i];
    rec.index = i;
    rec.point = points[i];
    try {
      PhiJet pj = phi_jets(curve, points[i], tol);
      rec.phi = value_vec(pj.phi);
      rec.rank_margin = pj.dphi_rank_margin;
      if (pj.singular) {
        rec.flags.regular = false;
        rec.error = "SingularPoint: construction rank margin " +
                    fmt_double(pj.dphi_rank_margin);
        return;
      }

      ShapeData before = fundamental_forms(pj, tol);
      ShapeData sd = before;
      if (!chain.empty()) {
        VecJet mapped = pj.phi;
        for (const AmbientMap& m : chain) mapped = apply_map(m, mapped, tol.eps_div);
        sd = fundamental_forms(mapped, tol);
        rec.phi = value_vec(mapped);
        rec.rank_margin = sd.rank_margin;
      }

      DdvvReport rep = ddvv_residual(sd, 0.0, tol);
      rec.s = rep.s;
      rec.sN = rep.sN;
      rec.H2 = rep.H2;
      rec.residual = rep.residual;
      rec.lambda = rep.lambda;
      rec.mu = rep.mu;
      rec.flags = rep.flags;
      if (!rep.flags.minimalPoint && !rep.flags.degenerate)
        rec.cf_residual = canonical_frame(sd, tol).residual;
      if (do_law)
        rec.law_residual = shape_law_check(chain[0], before, sd,
                                           before.normalFrame[0], tol.tol_frame);
      rec.ok = true;
    } catch (const Error& e) {
      rec.error = e.what();
      rec.ok = false;
    }
  });
  return out;
}

std::string fmt_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

namespace {

ojson record_json(const SampleRecord& r) {
  ojson j;
  j["index"] = r.index;
  j["u"] = r.point.u;
  j["v"] = r.point.v;
  j["theta"] = r.point.theta;
  if (!r.phi.empty()) j["phi"] = r.phi;
  if (r.error.empty()) {
    j["s"] = r.s;
    j["sN"] = r.sN;
    j["H2"] = r.H2;
    j["residual"] = r.residual;
    j["lambda"] = r.lambda;
    j["mu"] = r.mu;
    j["flags"] = {{"regular", r.flags.regular},
                  {"minimal", r.flags.minimalPoint},
                  {"umbilic", r.flags.umbilicPoint},
                  {"degenerate", r.flags.degenerate}};
    j["rank_margin"] = r.rank_margin;
    if (r.cf_residual) j["cf_residual"] = *r.cf_residual;
    if (r.law_residual) j["law_residual"] = *r.law_residual;
  } else {
    j["error"] = r.error;
  }
  return j;
}

}  // namespace

void write_samples_ndjson(const std::string& path,
                          const std::vector<SampleRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("ConfigError", "cannot write " + path);
  for (const SampleRecord& r : records) out << record_json(r).dump() << '\n';
}

void write_obj_slice(const std::string& path, const HolomorphicCurve& curve,
                     const GridSpec& grid, const std::vector<double>& thetas,
                     const Tolerances& tol, int workers) {
  std::ofstream out(path);
  if (!out) throw Error("ConfigError", "cannot write " + path);

  const int nu = grid.nu < 2 ? 2 : grid.nu;
  const int nv = grid.nv < 2 ? 2 : grid.nv;
  int vertex_base = 0;

  for (double theta1 : thetas) {
    std::vector<ChartPoint> pts;
    pts.reserve(static_cast<std::size_t>(nu) * nv);
    for (int i = 0; i < nu; ++i)
      for (int jj = 0; jj < nv; ++jj) {
        ChartPoint p;
        p.n = curve.n;
        p.u = grid.u_min + (grid.u_max - grid.u_min) * i / (nu - 1);
        p.v = grid.v_min + (grid.v_max - grid.v_min) * jj / (nv - 1);
        p.theta = Vec(curve.n - 2, 1.5707963267948966);
        p.theta[0] = theta1;
        pts.push_back(p);
      }

    std::vector<Vec> vals(pts.size());
    std::vector<char> good(pts.size(), 0);
    parallel_for(static_cast<int>(pts.size()), workers, [&](int i) {
      try {
        if (!curve.domain.contains(Complex(pts[i].u, pts[i].v))) return;
        PhiJet pj = phi_jets(curve, pts[i], tol);
        vals[i] = value_vec(pj.phi);
        good[i] = 1;
      } catch (const Error&) {
      }
    });

    out << "# slice theta1=" << fmt_double(theta1) << "\n";
    std::vector<int> vid(pts.size(), 0);
    int emitted = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!good[i]) continue;
      vid[i] = ++emitted;
      out << "v " << fmt_double(vals[i][0]) << ' ' << fmt_double(vals[i][1])
          << ' ' << fmt_double(vals[i][2]) << '\n';
    }
    auto at = [&](int i, int jj) { return static_cast<std::size_t>(i) * nv + jj; };
    for (int i = 0; i + 1 < nu; ++i)
      for (int jj = 0; jj + 1 < nv; ++jj) {
        std::size_t a = at(i, jj), b = at(i + 1, jj), c = at(i + 1, jj + 1),
                    d = at(i, jj + 1);
        if (good[a] && good[b] && good[c])
          out << "f " << vertex_base + vid[a] << ' ' << vertex_base + vid[b]
              << ' ' << vertex_base + vid[c] << '\n';
        if (good[a] && good[c] && good[d])
          out << "f " << vertex_base + vid[a] << ' ' << vertex_base + vid[c]
              << ' ' << vertex_base + vid[d] << '\n';
      }
    vertex_base += emitted;
  }
}

}  // namespace ddvv
