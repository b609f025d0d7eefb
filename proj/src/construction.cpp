#include "ddvv/construction.hpp"

#include <cmath>
#include <string>

namespace ddvv {

VecJet fiber_vector(const std::vector<VecJet>& frame, const Vec& theta) {
  const int count = static_cast<int>(frame.size());
  const int m = frame[0].params();
  if (static_cast<int>(theta.size()) != count - 1)
    throw Error("SingularJet", "fiber needs " + std::to_string(count - 1) +
                                   " angles, got " + std::to_string(theta.size()));
  VecJet w(frame[0].dim(), m);
  Jet2 running = Jet2::constant(m, 1.0);  // product of leading sines
  for (int i = 0; i < count; ++i) {
    if (i < count - 1) {
      Jet2 t = Jet2::seed(m, 2 + i, theta[i]);
      w = w + frame[i] * (running * jet_cos(t));
      running = running * jet_sin(t);
    } else {
      w = w + frame[i] * running;
    }
  }
  return w;
}

PhiJet phi_jets(const HolomorphicCurve& c, const ChartPoint& p,
                const Tolerances& tol, PhiContext* ctx,
                const std::vector<int>* frozen_pivots) {
  const int m = p.n;
  SurfaceJets s = eval_surface(c, Complex(p.u, p.v), m, tol.eps_div);
  SplitData d = frozen_pivots ? split(s, *frozen_pivots, tol) : split(s, tol);

  PhiJet out;
  out.w = fiber_vector(d.lambdaFrame, p.theta);
  out.phi = s.gJ + s.gU * d.a_v - s.gV * d.a_u + out.w * d.rho_N;

  Mat gram(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) {
      double acc = 0.0;
      for (int i = 0; i < out.phi.dim(); ++i)
        acc += out.phi[i].grad[k] * out.phi[i].grad[l];
      gram(k, l) = gram(l, k) = acc;
    }
  SymEigen eig = sym_eigen(gram);
  out.dphi_rank_margin = eig.values.back();
  double median = eig.values[m / 2];
  out.singular = out.dphi_rank_margin < tol.eps_reg * std::max(1.0, median);

  if (ctx) {
    ctx->s = std::move(s);
    ctx->d = std::move(d);
  }
  return out;
}

std::vector<ChartPoint> sample_grid(const GridSpec& spec) {
  if (spec.nu < 1 || spec.nv < 1 || spec.ntheta < 1)
    throw Error("EmptyGrid", "grid counts must be >= 1");
  const int n_angles = spec.n - 2;

  // Deterministic uniform in [-1, 1), independent of library distributions.
  std::uint64_t state = spec.seed ^ 0x9e3779b97f4a7c15ull;
  auto next_unit = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return 2.0 * (static_cast<double>(state >> 11) * 0x1.0p-53) - 1.0;
  };

  double du = spec.nu > 1 ? (spec.u_max - spec.u_min) / (spec.nu - 1) : 0.0;
  double dv = spec.nv > 1 ? (spec.v_max - spec.v_min) / (spec.nv - 1) : 0.0;
  auto u_at = [&](int i) {
    return spec.nu > 1 ? spec.u_min + i * du : 0.5 * (spec.u_min + spec.u_max);
  };
  auto v_at = [&](int j) {
    return spec.nv > 1 ? spec.v_min + j * dv : 0.5 * (spec.v_min + spec.v_max);
  };

  std::vector<ChartPoint> out;
  std::vector<int> tidx(std::max(n_angles, 0), 0);
  const double two_pi = 6.28318530717958647692;
  const double pi = 3.14159265358979323846;

  for (int i = 0; i < spec.nu; ++i)
    for (int j = 0; j < spec.nv; ++j) {
      // enumerate the theta tensor block in odometer order
      std::fill(tidx.begin(), tidx.end(), 0);
      int blocks = 1;
      for (int a = 0; a < n_angles; ++a) blocks *= spec.ntheta;
      for (int b = 0; b < blocks; ++b) {
        ChartPoint p;
        p.n = spec.n;
        p.u = u_at(i);
        p.v = v_at(j);
        p.theta.resize(n_angles);
        for (int a = 0; a < n_angles; ++a) {
          double span = (a == 0) ? two_pi : pi;
          double step = span / spec.ntheta;
          p.theta[a] = (tidx[a] + 0.5) * step;
        }
        if (spec.jitter > 0.0) {
          p.u += spec.jitter * (du > 0 ? du : 1e-2) * next_unit();
          p.v += spec.jitter * (dv > 0 ? dv : 1e-2) * next_unit();
          for (int a = 0; a < n_angles; ++a) {
            double span = (a == 0) ? two_pi : pi;
            double step = span / spec.ntheta;
            p.theta[a] += spec.jitter * step * next_unit();
            if (a == 0) {
              while (p.theta[a] < 0.0) p.theta[a] += two_pi;
              while (p.theta[a] >= two_pi) p.theta[a] -= two_pi;
            } else {
              p.theta[a] = std::min(std::max(p.theta[a], 0.05), pi - 0.05);
            }
          }
        }
        if (spec.domain.contains(Complex(p.u, p.v))) out.push_back(p);
        for (int a = n_angles - 1; a >= 0; --a) {
          if (++tidx[a] < spec.ntheta) break;
          tidx[a] = 0;
        }
      }
    }

  if (out.empty()) throw Error("EmptyGrid", "no grid points inside the domain");
  return out;
}

}  // namespace ddvv
