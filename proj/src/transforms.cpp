#include "ddvv/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace ddvv {

namespace {

double sig_dot(const Vec& a, const Vec& b, Signature sig) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double t = a[i] * b[i];
    if (sig == Signature::Lorentz && i + 1 == a.size()) t = -t;
    acc += t;
  }
  return acc;
}

Mat sym_pow(const Mat& m, double p) {
  SymEigen eig = sym_eigen(m);
  const int n = m.rows();
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * eig.vectors(j, k) * std::pow(eig.values[k], p);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace

Signature AmbientMap::signature() const {
  switch (kind) {
    case MapKind::EuclideanInversion:
    case MapKind::StereoSphereToPlane:
    case MapKind::StereoPlaneToSphere:
      return Signature::Euclidean;
    default:
      return Signature::Lorentz;
  }
}

Vec AmbientMap::effective_center() const {
  switch (kind) {
    case MapKind::EuclideanInversion:
    case MapKind::LorentzInversion: {
      Vec p0 = center;
      p0.resize(dim, 0.0);
      return p0;
    }
    case MapKind::StereoSphereToPlane:
    case MapKind::StereoPlaneToSphere: {
      Vec p0(dim, 0.0);
      p0.back() = 2.0 * d;
      return p0;
    }
    case MapKind::StereoHypToBall:
    case MapKind::StereoBallToHyp: {
      Vec p0(dim, 0.0);
      p0.back() = -2.0 * d;
      return p0;
    }
  }
  return Vec(dim, 0.0);
}

double AmbientMap::effective_radius() const {
  switch (kind) {
    case MapKind::EuclideanInversion:
    case MapKind::LorentzInversion:
      return d;
    default:
      return 2.0 * d;
  }
}

double AmbientMap::signed_d2() const {
  double r = effective_radius();
  return signature() == Signature::Euclidean ? r * r : -(r * r);
}

const char* map_kind_name(MapKind k) {
  switch (k) {
    case MapKind::EuclideanInversion: return "euclidean_inversion";
    case MapKind::LorentzInversion: return "lorentz_inversion";
    case MapKind::StereoSphereToPlane: return "stereo_sphere_to_plane";
    case MapKind::StereoPlaneToSphere: return "stereo_plane_to_sphere";
    case MapKind::StereoHypToBall: return "stereo_hyp_to_ball";
    case MapKind::StereoBallToHyp: return "stereo_ball_to_hyp";
  }
  return "?";
}

VecJet apply_map(const AmbientMap& m, const VecJet& p, double eps_div) {
  const Vec p0 = m.effective_center();
  if (p.dim() != m.dim)
    throw Error("MapSingularity", "map dimension " + std::to_string(m.dim) +
                                      " vs point dimension " +
                                      std::to_string(p.dim()));
  VecJet u = p;
  for (int i = 0; i < u.dim(); ++i) u[i].value -= p0[i];
  Jet2 q = dot(u, u, m.signature());
  if (std::abs(q.value) < eps_div)
    throw Error("MapSingularity",
                "point on the inversion cone, <u,u> = " + std::to_string(q.value));
  Jet2 factor = jet_func(q, JetFunc::Reciprocal, eps_div) * m.signed_d2();
  VecJet out = u * factor;
  for (int i = 0; i < out.dim(); ++i) out[i].value += p0[i];
  return out;
}

Vec apply_map_point(const AmbientMap& m, const Vec& p, double eps_div) {
  const Vec p0 = m.effective_center();
  Vec u(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = p[i] - p0[i];
  double q = sig_dot(u, u, m.signature());
  if (std::abs(q) < eps_div)
    throw Error("MapSingularity",
                "point on the inversion cone, <u,u> = " + std::to_string(q));
  double f = m.signed_d2() / q;
  Vec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p0[i] + f * u[i];
  return out;
}

Vec normal_transport(const AmbientMap& m, const Vec& f, const Vec& xi,
                     double eps_div) {
  const Vec p0 = m.effective_center();
  Vec u(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) u[i] = f[i] - p0[i];
  double q = sig_dot(u, u, m.signature());
  if (std::abs(q) < eps_div)
    throw Error("MapSingularity",
                "point on the inversion cone, <u,u> = " + std::to_string(q));
  double s = 2.0 * sig_dot(u, xi, m.signature()) / q;
  Vec out(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) out[i] = xi[i] - s * u[i];
  return out;
}

double shape_law_check(const AmbientMap& m, const ShapeData& before,
                       const ShapeData& after, const Vec& xi,
                       double tol_frame) {
  const int n = before.n;
  const Vec p0 = m.effective_center();
  Vec u(before.position.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = before.position[i] - p0[i];
  const Signature sig = m.signature();
  const double q = sig_dot(u, u, sig);

  // decompose xi and its transport in the two normal frames
  double a1 = dot(xi, before.normalFrame[0]);
  double a2 = dot(xi, before.normalFrame[1]);
  double xi_norm2 = dot(xi, xi);
  if (std::abs(xi_norm2 - a1 * a1 - a2 * a2) > tol_frame * std::max(1.0, xi_norm2))
    throw Error("FrameMismatch", "xi is not normal to the source immersion");

  Vec pxi = normal_transport(m, before.position, xi);
  double b1 = dot(pxi, after.normalFrame[0]);
  double b2 = dot(pxi, after.normalFrame[1]);
  double pxi_norm2 = dot(pxi, pxi);
  if (std::abs(pxi_norm2 - b1 * b1 - b2 * b2) >
      tol_frame * std::max(1.0, pxi_norm2))
    throw Error("FrameMismatch", "transported xi is not normal to the image");

  Mat a_xi = a1 * before.A1 + a2 * before.A2;
  Mat a_pxi = b1 * after.A1 + b2 * after.A2;

  // induced frame on the image side: (1/rho) d(map) of the source frame,
  // which in shared coordinates is tangentFrame/rho; express a_pxi there.
  Mat cgc = before.tangentFrame.transposed() * after.metric * before.tangentFrame;
  double rho2 = cgc.trace() / n;
  Mat iso = cgc;
  for (int i = 0; i < n; ++i) iso(i, i) -= rho2;
  if (iso.frobenius() > tol_frame * std::max(1.0, rho2) * n)
    throw Error("FrameMismatch",
                "image metric is not conformal to the source metric");

  Mat t = sym_pow(after.metric, 0.5) * before.tangentFrame;
  t = (1.0 / std::sqrt(rho2)) * t;
  Mat transported = t.transposed() * a_pxi * t;

  Mat rhs = (q / m.signed_d2()) * a_xi;
  double shift = 2.0 * sig_dot(u, xi, sig) / m.signed_d2();
  for (int i = 0; i < n; ++i) rhs(i, i) += shift;

  return (transported - rhs).frobenius();
}

Complex quadric_value(const HolomorphicCurve& c, Complex z) {
  Complex acc(0.0);
  for (const Expr& comp : c.components) {
    ComplexJet j = eval_jet(comp, z, 0);
    acc += j.d[0] * j.d[0];
  }
  return acc;
}

QuadricClass quadric_classify(const HolomorphicCurve& c,
                              const std::vector<Complex>& samples, double d,
                              const Tolerances& tol) {
  const double four_d2 = 4.0 * d * d;
  const Complex targets[3] = {Complex(0.0), Complex(four_d2), Complex(-four_d2)};
  double dev[3] = {0.0, 0.0, 0.0};
  for (Complex z : samples) {
    Complex q = quadric_value(c, z);
    for (int t = 0; t < 3; ++t) dev[t] = std::max(dev[t], std::abs(q - targets[t]));
  }
  int best = 0;
  for (int t = 1; t < 3; ++t)
    if (dev[t] < dev[best]) best = t;

  QuadricClass out;
  out.maxDeviation = dev[best];
  if (dev[best] <= tol.tol_quadric * std::max(1.0, four_d2)) {
    out.k = best == 0 ? QuadricClass::K::Zero
                      : (best == 1 ? QuadricClass::K::Plus4d2
                                   : QuadricClass::K::Minus4d2);
  } else {
    out.k = QuadricClass::K::NonConstant;
  }
  return out;
}

HolomorphicCurve holo_invert(const HolomorphicCurve& c, double d,
                             const std::vector<Complex>& probes) {
  Expr quad = Expr::power(c.components[0], 2);
  for (std::size_t k = 1; k < c.components.size(); ++k)
    quad = quad + Expr::power(c.components[k], 2);

  double max_q = 0.0, scale = 1.0;
  for (Complex z : probes) {
    Complex qv = eval_jet(quad, z, 0).d[0];
    max_q = std::max(max_q, std::abs(qv));
    for (const Expr& comp : c.components)
      scale = std::max(scale, std::norm(eval_jet(comp, z, 0).d[0]));
  }
  if (max_q <= 1e-12 * scale)
    throw Error("NullQuadricCurve",
                "quadric value vanishes on all probe points (max " +
                    std::to_string(max_q) + ")");

  HolomorphicCurve out;
  out.n = c.n;
  out.domain = c.domain;
  out.name = c.name + "-inverted";
  Expr d2 = Expr::constant(Complex(d * d, 0.0));
  for (const Expr& comp : c.components)
    out.components.push_back(d * d == 1.0 ? comp / quad : d2 * comp / quad);
  return out;
}

std::vector<AssociatedPairSample> associated_pair_samples(
    const HolomorphicCurve& c, const AmbientMap& m,
    const std::vector<ChartPoint>& points, const Tolerances& tol,
    const Vec* h_sign_seed) {
  std::vector<AssociatedPairSample> out;
  out.reserve(points.size());
  bool have_ref = false;
  Vec ref;

  for (const ChartPoint& p : points) {
    AssociatedPairSample rec;
    rec.point = p;
    try {
      PhiJet pj = phi_jets(c, p, tol);
      if (pj.singular) throw Error("SingularPoint", "rank margin too small");
      VecJet mapped = apply_map(m, pj.phi, tol.eps_div);
      ShapeData sd = fundamental_forms(mapped, tol);
      CanonicalFrame cf = canonical_frame(sd, tol);

      double inv_l = 1.0 / cf.lambda;
      rec.g_assoc = Vec(sd.position.size());
      rec.h_assoc = Vec(sd.position.size());
      for (std::size_t i = 0; i < sd.position.size(); ++i) {
        rec.g_assoc[i] = sd.position[i] + inv_l * cf.eta[i];
        rec.h_assoc[i] = -inv_l * cf.zeta[i];
      }

      const Vec* anchor = have_ref ? &ref : h_sign_seed;
      if (anchor && dot(rec.h_assoc, *anchor) < 0.0)
        for (double& x : rec.h_assoc) x = -x;
      ref = rec.h_assoc;
      have_ref = true;

      rec.lambda = cf.lambda;
      rec.mu = cf.mu;
      rec.valid = true;
    } catch (const Error& e) {
      rec.error = e.kind();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace ddvv
