#pragma once

#include <cstdint>
#include <vector>

#include "ddvv/surface.hpp"

namespace ddvv {

// Point of the parameter space of the construction: surface parameters (u,v)
// plus n-2 spherical fiber angles (theta[0] in [0,2pi), the rest in [0,pi]).
struct ChartPoint {
  double u = 0.0, v = 0.0;
  Vec theta;
  int n = 3;
};

struct PhiJet {
  VecJet phi;  // ambient n+2 components, jets in m = n parameters
  VecJet w;    // unit fiber vector
  double dphi_rank_margin = 0.0;  // smallest eigenvalue of dphi^T dphi
  bool singular = false;          // margin below eps_reg * median metric scale
};

// Everything phi_jets computed on the way; downstream diagnostics reuse it.
struct PhiContext {
  SurfaceJets s;
  SplitData d;
};

// w = cos(t1) w1 + sin(t1)cos(t2) w2 + ... + sin(t1)...sin(t_{n-2}) w_{n-1},
// with the angles seeded as jet variables in slots 2..n-1 so w carries both
// fiber and base dependence.
VecJet fiber_vector(const std::vector<VecJet>& frame, const Vec& theta);

PhiJet phi_jets(const HolomorphicCurve& c, const ChartPoint& p,
                const Tolerances& tol = {}, PhiContext* ctx = nullptr,
                const std::vector<int>* frozen_pivots = nullptr);

struct GridSpec {
  int n = 3;
  double u_min = 0.0, u_max = 1.0;
  double v_min = 0.0, v_max = 1.0;
  int nu = 1, nv = 1, ntheta = 1;  // ntheta applies to each fiber angle
  double jitter = 0.0;             // fraction of a grid step, uniform
  std::uint64_t seed = 0;
  Domain domain;  // points outside are filtered out
};

// Tensor grid over (u, v, theta...); theta samples are offset by half a step
// to stay away from the spherical-chart poles. Throws EmptyGrid if nothing
// survives the domain filter.
std::vector<ChartPoint> sample_grid(const GridSpec& spec);

}  // namespace ddvv
