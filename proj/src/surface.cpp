#include "ddvv/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ddvv {

namespace {

std::string zstr(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Jet-level Cramer solve of [[e, f], [f, g]] x = (b1, b2).
void solve2_jet(const Jet2& e, const Jet2& f, const Jet2& g, const Jet2& b1,
                const Jet2& b2, double eps_rank, Jet2& x1, Jet2& x2) {
  Jet2 det = e * g - f * f;
  double scale = std::max({std::abs(e.value), std::abs(f.value), std::abs(g.value)});
  if (std::abs(det.value) <= eps_rank * eps_rank * scale * scale)
    throw Error("DegenerateMetric",
                "2x2 Gram determinant " + std::to_string(det.value));
  Jet2 inv_det = jet_func(det, JetFunc::Reciprocal);
  x1 = (b1 * g - b2 * f) * inv_det;
  x2 = (e * b2 - f * b1) * inv_det;
}

// Subtract from v its components along the (unit) jets in basis.
VecJet reject(VecJet v, const std::vector<VecJet>& basis) {
  for (const VecJet& q : basis) v = v - q * dot(v, q);
  return v;
}

VecJet axis_vec(int dim, int m, int axis) {
  VecJet e(dim, m);
  e[axis].value = 1.0;
  return e;
}

std::vector<VecJet> frame_build(const SurfaceJets& s, const SplitData& d,
                                const std::vector<int>* frozen, double eps_rank,
                                std::vector<int>& order_out) {
  const int dim = s.gJ.dim();
  const int m = s.gJ.params();
  const int want = s.n - 1;

  std::vector<VecJet> basis;  // orthonormal, protected first
  for (const VecJet* p : {&s.gU, &s.gV, &d.xi}) {
    VecJet v = reject(*p, basis);
    Jet2 nn = dot(v, v);
    if (nn.value <= eps_rank * eps_rank)
      throw Error("DependentProtected",
                  "protected vectors dependent at z0 = " + zstr(s.z0));
    basis.push_back(v * jet_func(jet_func(nn, JetFunc::Sqrt), JetFunc::Reciprocal));
  }

  std::vector<VecJet> frame;
  order_out.clear();
  auto accept = [&](int axis) -> bool {
    VecJet v = reject(axis_vec(dim, m, axis), basis);
    Jet2 nn = dot(v, v);
    if (std::sqrt(std::max(nn.value, 0.0)) <= eps_rank) return false;
    basis.push_back(v * jet_func(jet_func(nn, JetFunc::Sqrt), JetFunc::Reciprocal));
    frame.push_back(basis.back());
    order_out.push_back(axis);
    return true;
  };

  if (frozen) {
    for (int axis : *frozen) {
      if (!accept(axis))
        throw Error("RankDeficiency", "frozen pivot axis " + std::to_string(axis) +
                                          " degenerate at z0 = " + zstr(s.z0));
      if (static_cast<int>(frame.size()) == want) break;
    }
  } else {
    std::vector<int> remaining(dim);
    for (int p = 0; p < dim; ++p) remaining[p] = p;
    while (static_cast<int>(frame.size()) < want && !remaining.empty()) {
      int best = -1;
      double best_res = -1.0;
      for (int p : remaining) {
        VecJet v = reject(axis_vec(dim, m, p), basis);
        double res = std::sqrt(std::max(dot(v, v).value, 0.0));
        if (res > best_res) {
          best_res = res;
          best = p;
        }
      }
      if (best_res <= eps_rank) break;
      accept(best);
      remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }
  }

  if (static_cast<int>(frame.size()) != want)
    throw Error("RankDeficiency",
                "normal frame has rank " + std::to_string(frame.size()) +
                    ", expected " + std::to_string(want));
  return frame;
}

SplitData split_impl(const SurfaceJets& s, const std::vector<int>* frozen,
                     const Tolerances& tol) {
  SplitData d;

  Jet2 e = dot(s.gU, s.gU);
  Jet2 f = dot(s.gU, s.gV);
  Jet2 g = dot(s.gV, s.gV);
  Jet2 b1 = dot(s.hJ, s.gU);
  Jet2 b2 = dot(s.hJ, s.gV);
  solve2_jet(e, f, g, b1, b2, tol.eps_rank, d.a_u, d.a_v);

  d.hN = s.hJ - s.gU * d.a_u - s.gV * d.a_v;

  double gu_norm = std::sqrt(std::max(e.value, 0.0));
  double r_val = std::sqrt(std::max(dot(s.hJ, s.hJ).value, 0.0));
  if (r_val < tol.eps_hn * std::max(1.0, gu_norm))
    throw Error("NullConjugate",
                "||h|| = " + std::to_string(r_val) + " at z0 = " + zstr(s.z0));
  d.r = norm(s.hJ, tol.eps_div);

  double rho_val = std::sqrt(std::max(dot(d.hN, d.hN).value, 0.0));
  if (rho_val < tol.eps_hn * std::max(1.0, r_val))
    throw Error("DegeneratePoint",
                "||h^N|| = " + std::to_string(rho_val) + " at z0 = " + zstr(s.z0));
  d.rho_N = norm(d.hN, tol.eps_div);

  // grad r through the full-jet derivative fields: dr/du = <h, h_u>/r.
  Jet2 inv_r = jet_func(d.r, JetFunc::Reciprocal, tol.eps_div);
  Jet2 ru = dot(s.hJ, s.hU) * inv_r;
  Jet2 rv = dot(s.hJ, s.hV) * inv_r;
  solve2_jet(e, f, g, ru, rv, tol.eps_rank, d.c_u, d.c_v);

  Jet2 grad_sq = d.c_u * ru + d.c_v * rv;
  Jet2 one = Jet2::constant(grad_sq.m, 1.0);
  Jet2 a_sq = one - grad_sq;
  if (a_sq.value < tol.eps_a * tol.eps_a)
    throw Error("NearVanishingA",
                "1 - ||grad r||^2 = " + std::to_string(a_sq.value) + " at z0 = " +
                    zstr(s.z0));
  d.a = jet_func(a_sq, JetFunc::Sqrt, tol.eps_div);

  d.xi = d.hN * (-1.0 * jet_func(d.r * d.a, JetFunc::Reciprocal, tol.eps_div));

  d.lambdaFrame = frame_build(s, d, frozen, tol.eps_rank, d.pivot_order);
  return d;
}

}  // namespace

IsotropyReport check_isotropy(const HolomorphicCurve& c,
                              const std::vector<Complex>& samples) {
  IsotropyReport rep;
  rep.min_immersion_norm = std::numeric_limits<double>::infinity();
  for (Complex z : samples) {
    if (!c.domain.contains(z))
      throw Error("DomainError", "sample outside curve domain: " + zstr(z));
    Complex iso(0.0);
    double imm = 0.0;
    for (const Expr& comp : c.components) {
      ComplexJet j = eval_jet(comp, z, 1);
      iso += j.d[1] * j.d[1];
      imm += std::norm(j.d[1]);
    }
    rep.max_isotropy_defect = std::max(rep.max_isotropy_defect, std::abs(iso));
    rep.min_immersion_norm = std::min(rep.min_immersion_norm, std::sqrt(imm));
  }
  return rep;
}

SurfaceJets eval_surface(const HolomorphicCurve& c, Complex z0, int m,
                         double eps_div) {
  if (!c.domain.contains(z0))
    throw Error("DomainError", "evaluation point outside curve domain: " + zstr(z0));
  if (m < 2) throw Error("SingularJet", "need at least 2 parameters, got " +
                                            std::to_string(m));
  const int dim = c.ambient_dim();
  SurfaceJets s;
  s.z0 = z0;
  s.n = c.n;
  s.gJ = VecJet(dim, m);
  s.hJ = VecJet(dim, m);
  s.gU = VecJet(dim, m);
  s.gV = VecJet(dim, m);
  s.hU = VecJet(dim, m);
  s.hV = VecJet(dim, m);
  for (int k = 0; k < dim; ++k) {
    ComplexJet fj = eval_jet(c.components[k], z0, 3, eps_div);
    ComplexJet fd = fj.shifted();
    s.gJ[k] = lift_complex(fj, LiftPart::RealPart, 0, 1, m);
    s.hJ[k] = lift_complex(fj, LiftPart::ImagPart, 0, 1, m);
    s.gU[k] = lift_complex(fd, LiftPart::RealPart, 0, 1, m);
    s.gV[k] = -lift_complex(fd, LiftPart::ImagPart, 0, 1, m);
    s.hU[k] = lift_complex(fd, LiftPart::ImagPart, 0, 1, m);
    s.hV[k] = lift_complex(fd, LiftPart::RealPart, 0, 1, m);
  }
  return s;
}

SplitData split(const SurfaceJets& s, const Tolerances& tol) {
  return split_impl(s, nullptr, tol);
}

SplitData split(const SurfaceJets& s, const std::vector<int>& frozen_pivots,
                const Tolerances& tol) {
  return split_impl(s, &frozen_pivots, tol);
}

std::vector<VecJet> lambda_frame(const SurfaceJets& s, const SplitData& d,
                                 double eps_rank) {
  std::vector<int> order;
  return frame_build(s, d, nullptr, eps_rank, order);
}

Prop8Report prop8_diagnostics(const SurfaceJets& s, const SplitData& d,
                              const Tolerances& tol) {
  if (d.a.value <= tol.eps_a)
    throw Error("NearVanishingA", "a = " + std::to_string(d.a.value) +
                                      " at z0 = " + zstr(s.z0));

  // All at value level; second derivatives come from the jets.
  Jet2 e = dot(s.gU, s.gU), f = dot(s.gU, s.gV), g = dot(s.gV, s.gV);
  Mat gm(2, 2);
  gm(0, 0) = e.value;
  gm(0, 1) = gm(1, 0) = f.value;
  gm(1, 1) = g.value;
  double det = gm(0, 0) * gm(1, 1) - gm(0, 1) * gm(1, 0);
  Mat gi(2, 2);
  gi(0, 0) = gm(1, 1) / det;
  gi(1, 1) = gm(0, 0) / det;
  gi(0, 1) = gi(1, 0) = -gm(0, 1) / det;

  // d_k G_ij from the metric jets.
  double dg[2][2][2];  // dg[i][j][k] = d_k G_ij
  const Jet2* gij[2][2] = {{&e, &f}, {&f, &g}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) dg[i][j][k] = gij[i][j]->grad[k];

  double gamma[2][2][2];  // gamma[k][i][j]
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 2; ++l)
          acc += gi(k, l) * (dg[l][j][i] + dg[i][l][j] - dg[i][j][l]);
        gamma[k][i][j] = 0.5 * acc;
      }

  Vec dr = {d.r.grad[0], d.r.grad[1]};
  Vec cvec = {d.c_u.value, d.c_v.value};

  Mat hcov(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double acc = d.r.h(i, j);
      for (int k = 0; k < 2; ++k) acc -= gamma[k][i][j] * dr[k];
      hcov(i, j) = acc;
    }

  Mat smat = Mat::identity(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) smat(i, j) -= cvec[i] * dr[j];

  Mat jmat(2, 2);
  jmat(0, 1) = 1.0;
  jmat(1, 0) = -1.0;

  Vec xi_val = value_vec(d.xi);
  Mat pi_xi(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) pi_xi(i, j) = dot(d2(s.gJ, i, j), xi_val);

  Mat b_xi = gi * pi_xi;
  Mat rhs = (1.0 / (d.a.value * d.r.value)) *
            ((d.r.value * (gi * hcov) - smat) * jmat);

  Prop8Report rep;
  Mat diff = b_xi - rhs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      rep.bxi_closed_form_residual =
          std::max(rep.bxi_closed_form_residual, std::abs(diff(i, j)));

  // Mixed identity: (Pi_delta J c)_k + a <d_k delta, xi> = 0 for delta = w_i.
  Vec jc = {cvec[1], -cvec[0]};
  for (const VecJet& w : d.lambdaFrame) {
    Vec w_val = value_vec(w);
    for (int k = 0; k < 2; ++k) {
      double term1 = 0.0;
      for (int l = 0; l < 2; ++l) term1 += dot(d2(s.gJ, k, l), w_val) * jc[l];
      double term2 = d.a.value * dot(d1(w, k), xi_val);
      rep.frame_mixed_residual =
          std::max(rep.frame_mixed_residual, std::abs(term1 + term2));
    }
  }
  return rep;
}

}  // namespace ddvv
