#pragma once

#include <vector>

#include "ddvv/errors.hpp"
#include "ddvv/expr.hpp"
#include "ddvv/linalg.hpp"
#include "ddvv/types.hpp"

namespace ddvv {

// Second-order real jet in m parameters: value, gradient, and symmetric
// Hessian stored as a packed upper triangle (row i, col j >= i at index
// i*m - i*(i-1)/2 + (j-i)).
struct Jet2 {
  int m = 0;
  double value = 0.0;
  Vec grad;  // length m
  Vec hess;  // length m*(m+1)/2

  Jet2() = default;
  explicit Jet2(int m_, double v = 0.0)
      : m(m_), value(v), grad(m_, 0.0), hess(static_cast<std::size_t>(m_) * (m_ + 1) / 2, 0.0) {}

  static Jet2 constant(int m, double v) { return Jet2(m, v); }
  // Independent-variable seed: value v, unit derivative in `slot`.
  static Jet2 seed(int m, int slot, double v);

  double& h(int i, int j);
  double h(int i, int j) const;
};

enum class JetOp { Add, Sub, Mul, Div };
enum class JetFunc { Sqrt, Reciprocal };

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);  // SingularJet if |b.value| < eps_div default
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, double s);
Jet2 operator*(double s, const Jet2& a);

Jet2 jet_arith(const Jet2& a, const Jet2& b, JetOp op, double eps_div = 1e-12);
Jet2 jet_func(const Jet2& a, JetFunc f, double eps_div = 1e-12);

// Smooth univariate post-composition helpers used by the fiber parametrization.
Jet2 jet_sin(const Jet2& a);
Jet2 jet_cos(const Jet2& a);

// Transfer of a holomorphic 2-jet (raw derivatives d0,d1,d2 at z0 = u+iv) into
// a real 2-jet in m parameters with (u,v) occupying slots (i_u, i_v):
//   RealPart:  val=Re d0, du=Re d1, dv=-Im d1, duu=Re d2, duv=-Im d2, dvv=-Re d2
//   ImagPart:  val=Im d0, du=Im d1, dv= Re d1, duu=Im d2, duv= Re d2, dvv=-Im d2
// All other slots zero; the lift is harmonic by construction.
enum class LiftPart { RealPart, ImagPart };
Jet2 lift_complex(const ComplexJet& f, LiftPart which, int i_u, int i_v, int m);

// Jet-valued ambient vector: N components sharing one parameter count m.
struct VecJet {
  std::vector<Jet2> comp;

  VecJet() = default;
  VecJet(int n_ambient, int m) : comp(n_ambient, Jet2(m)) {}

  int dim() const { return static_cast<int>(comp.size()); }
  int params() const { return comp.empty() ? 0 : comp[0].m; }
  Jet2& operator[](int i) { return comp[i]; }
  const Jet2& operator[](int i) const { return comp[i]; }
};

VecJet operator+(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a, const VecJet& b);
VecJet operator*(const VecJet& a, const Jet2& s);
VecJet operator*(const VecJet& a, double s);

// Signature-aware bilinear dot; Lorentz negates the last coordinate's term.
Jet2 dot(const VecJet& a, const VecJet& b, Signature sig = Signature::Euclidean);
// Euclidean norm jet; SingularJet if dot(a,a).value <= eps_div.
Jet2 norm(const VecJet& a, double eps_div = 1e-12);

// Plain-number views of a vector jet.
Vec value_vec(const VecJet& v);
Vec d1(const VecJet& v, int k);          // first-derivative vector in param k
Vec d2(const VecJet& v, int k, int l);   // second-derivative vector

}  // namespace ddvv
