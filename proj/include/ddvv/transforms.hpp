#pragma once

#include <string>
#include <vector>

#include "ddvv/construction.hpp"
#include "ddvv/geometry.hpp"
#include "ddvv/surface.hpp"

namespace ddvv {

// Conformal ambient maps. The stereo kinds are restrictions of a fixed
// inversion: sphere S(d e_last; d) <-> plane through the origin orthogonal to
// e_last via the Euclidean inversion centered at 2d e_last with radius 2d;
// hyperbolic H(-d e_last...) <-> ball via the Lorentz inversion centered at
// -2d e_last with radius 2d (last coordinate timelike).
enum class MapKind {
  EuclideanInversion,
  LorentzInversion,
  StereoSphereToPlane,
  StereoPlaneToSphere,
  StereoHypToBall,
  StereoBallToHyp,
};

struct AmbientMap {
  MapKind kind = MapKind::EuclideanInversion;
  int dim = 5;  // ambient dimension N
  Vec center;   // P0 for the two inversion kinds (defaults to origin)
  double d = 1.0;

  Signature signature() const;
  Vec effective_center() const;
  double effective_radius() const;
  // +radius^2 for Euclidean kinds, -radius^2 for Lorentz kinds: the inversion
  // is P0 + signed_d2 * (P - P0)/<P - P0, P - P0>.
  double signed_d2() const;
};

const char* map_kind_name(MapKind k);

VecJet apply_map(const AmbientMap& m, const VecJet& p, double eps_div = 1e-12);
Vec apply_map_point(const AmbientMap& m, const Vec& p, double eps_div = 1e-12);

// Reflection transport of normal vectors across the inversion:
// P xi = xi - 2<f - P0, xi>/<f - P0, f - P0> (f - P0), signature-aware.
Vec normal_transport(const AmbientMap& m, const Vec& f, const Vec& xi,
                     double eps_div = 1e-12);

// Residual of the inversion shape-operator law
//   A~_{P xi} = (1/signed_d2) (<u,u> A_xi + 2 <u,xi> I),   u = f - P0,
// with `after` the shape data of the mapped immersion at the same parameter
// point; the comparison frame on the image side is the d(map) image of the
// `before` frame, normalized by the conformal factor.
double shape_law_check(const AmbientMap& m, const ShapeData& before,
                       const ShapeData& after, const Vec& xi,
                       double tol_frame = 1e-6);

// <<G(z), G(z)>> = sum_k G_k(z)^2 (complex bilinear).
Complex quadric_value(const HolomorphicCurve& c, Complex z);

struct QuadricClass {
  enum class K { Zero, Plus4d2, Minus4d2, NonConstant };
  K k = K::NonConstant;
  double maxDeviation = 0.0;
};

QuadricClass quadric_classify(const HolomorphicCurve& c,
                              const std::vector<Complex>& samples, double d,
                              const Tolerances& tol = {});

// Symbolic inversion of the curve: components d^2 G_k / <<G, G>>. Probes are
// used to reject curves with identically vanishing quadric value.
HolomorphicCurve holo_invert(const HolomorphicCurve& c, double d,
                             const std::vector<Complex>& probes);

// Minimal-surface pair recovered from the mapped construction: at each chart
// point, map phi, extract the canonical frame, and return
//   g~ = phi~ + eta~/lambda~,   h~ = -zeta~/lambda~,
// with the sign of zeta~ resolved by continuity along the sample order
// (seeded by h_sign_seed when given). Per-point failures are recorded, not
// thrown.
struct AssociatedPairSample {
  ChartPoint point;
  Vec g_assoc, h_assoc;
  double lambda = 0.0, mu = 0.0;
  bool valid = false;
  std::string error;
};

std::vector<AssociatedPairSample> associated_pair_samples(
    const HolomorphicCurve& c, const AmbientMap& m,
    const std::vector<ChartPoint>& points, const Tolerances& tol = {},
    const Vec* h_sign_seed = nullptr);

}  // namespace ddvv
