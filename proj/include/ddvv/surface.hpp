#pragma once

#include <string>
#include <vector>

#include "ddvv/expr.hpp"
#include "ddvv/jets.hpp"
#include "ddvv/types.hpp"

namespace ddvv {

struct Domain {
  enum class Kind { Plane, Disk };
  Kind kind = Kind::Plane;
  double radius = 1.0;  // Disk only

  bool contains(Complex z) const {
    return kind == Kind::Plane || std::abs(z) < radius;
  }
};

// Holomorphic isotropic curve G = g + ih with values in C^{n+2}; g is the
// minimal surface, h its conjugate. Isotropy (sum of squared component
// derivatives vanishes) is a checked property, not an assumption.
struct HolomorphicCurve {
  int n = 3;  // submanifold dimension of the final construction; ambient n+2
  std::vector<Expr> components;  // n+2 entries, functions of z
  Domain domain;
  std::string name;

  int ambient_dim() const { return n + 2; }
};

struct IsotropyReport {
  double max_isotropy_defect = 0.0;  // max |sum_k (G_k')^2| over samples
  double min_immersion_norm = 0.0;   // min ||G'|| over samples
};

IsotropyReport check_isotropy(const HolomorphicCurve& c,
                              const std::vector<Complex>& samples);

// Per-point jets of g = Re G and h = Im G in m >= 2 parameters with (u,v) in
// slots (0,1). The derivative fields gU..hV carry their own 2-jets (built from
// the order-3 complex jet) so downstream frames can be differentiated.
struct SurfaceJets {
  Complex z0;
  int n = 0;
  VecJet gJ, hJ;
  VecJet gU, gV, hU, hV;
};

SurfaceJets eval_surface(const HolomorphicCurve& c, Complex z0, int m,
                         double eps_div = 1e-12);

// Tangent/normal split of h over g plus the derived scalar fields of the
// normal-radius function r = ||h||:
//   h = a_u g_u + a_v g_v + h^N,  rho_N = ||h^N||,  grad r = c_u du + c_v dv,
//   a = sqrt(1 - ||grad r||^2),  xi = -h^N / (r a),
// and the frame spanning the part of the normal bundle orthogonal to h^N.
struct SplitData {
  Jet2 a_u, a_v;
  VecJet hN;
  Jet2 rho_N, r;
  Jet2 c_u, c_v;  // coefficients of grad r in the coordinate basis
  Jet2 a;
  VecJet xi;
  std::vector<VecJet> lambdaFrame;  // n-1 unit vectors, jets in all m params
  std::vector<int> pivot_order;     // ambient axes accepted by the frame build
};

SplitData split(const SurfaceJets& s, const Tolerances& tol = {});
// Same, but replays a previously chosen pivot order so the frame is one smooth
// procedure across a whole chart.
SplitData split(const SurfaceJets& s, const std::vector<int>& frozen_pivots,
                const Tolerances& tol = {});

// Frame construction alone (fresh pivot choice).
std::vector<VecJet> lambda_frame(const SurfaceJets& s, const SplitData& d,
                                 double eps_rank = 1e-9);

// Residuals of the two structural identities tying the shape operators of g
// to r, a and the frame: the B_xi closed form and the mixed frame-derivative
// identity, both evaluated in the (u,v) coordinate representation.
struct Prop8Report {
  double frame_mixed_residual = 0.0;    // max over frame vectors and X in {du,dv}
  double bxi_closed_form_residual = 0.0;
};

Prop8Report prop8_diagnostics(const SurfaceJets& s, const SplitData& d,
                              const Tolerances& tol = {});

}  // namespace ddvv
