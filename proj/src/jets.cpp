#include "ddvv/jets.hpp"

#include <cmath>
#include <string>

namespace ddvv {

namespace {

inline std::size_t packed_size(int m) {
  return static_cast<std::size_t>(m) * (m + 1) / 2;
}

inline int pidx(int m, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * m - i * (i - 1) / 2 + (j - i);
}

void require_same_m(const Jet2& a, const Jet2& b) {
  if (a.m != b.m)
    throw Error("SingularJet", "parameter counts differ: " + std::to_string(a.m) +
                                   " vs " + std::to_string(b.m));
}

// Post-compose a jet with a scalar function given its value and first two
// derivatives at a.value.
Jet2 chain(const Jet2& a, double f0, double f1, double f2) {
  Jet2 out(a.m, f0);
  for (int i = 0; i < a.m; ++i) out.grad[i] = f1 * a.grad[i];
  std::size_t idx = 0;
  for (int i = 0; i < a.m; ++i)
    for (int j = i; j < a.m; ++j, ++idx)
      out.hess[idx] = f1 * a.hess[idx] + f2 * a.grad[i] * a.grad[j];
  return out;
}

}  // namespace

Jet2 Jet2::seed(int m, int slot, double v) {
  Jet2 j(m, v);
  j.grad[slot] = 1.0;
  return j;
}

double& Jet2::h(int i, int j) { return hess[pidx(m, i, j)]; }
double Jet2::h(int i, int j) const { return hess[pidx(m, i, j)]; }

Jet2 operator+(const Jet2& a, const Jet2& b) {
  require_same_m(a, b);
  Jet2 out = a;
  out.value += b.value;
  for (int i = 0; i < a.m; ++i) out.grad[i] += b.grad[i];
  for (std::size_t k = 0; k < out.hess.size(); ++k) out.hess[k] += b.hess[k];
  return out;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  require_same_m(a, b);
  Jet2 out = a;
  out.value -= b.value;
  for (int i = 0; i < a.m; ++i) out.grad[i] -= b.grad[i];
  for (std::size_t k = 0; k < out.hess.size(); ++k) out.hess[k] -= b.hess[k];
  return out;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  require_same_m(a, b);
  Jet2 out(a.m, a.value * b.value);
  for (int i = 0; i < a.m; ++i) out.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
  std::size_t idx = 0;
  for (int i = 0; i < a.m; ++i)
    for (int j = i; j < a.m; ++j, ++idx)
      out.hess[idx] = a.hess[idx] * b.value + a.grad[i] * b.grad[j] +
                      a.grad[j] * b.grad[i] + a.value * b.hess[idx];
  return out;
}

Jet2 operator/(const Jet2& a, const Jet2& b) { return jet_arith(a, b, JetOp::Div); }

Jet2 operator-(const Jet2& a) {
  Jet2 out = a;
  out.value = -out.value;
  for (double& g : out.grad) g = -g;
  for (double& h : out.hess) h = -h;
  return out;
}

Jet2 operator*(const Jet2& a, double s) {
  Jet2 out = a;
  out.value *= s;
  for (double& g : out.grad) g *= s;
  for (double& h : out.hess) h *= s;
  return out;
}

Jet2 operator*(double s, const Jet2& a) { return a * s; }

Jet2 jet_arith(const Jet2& a, const Jet2& b, JetOp op, double eps_div) {
  switch (op) {
    case JetOp::Add: return a + b;
    case JetOp::Sub: return a - b;
    case JetOp::Mul: return a * b;
    case JetOp::Div: {
      if (std::abs(b.value) < eps_div)
        throw Error("SingularJet",
                    "division by jet of value " + std::to_string(b.value));
      return a * jet_func(b, JetFunc::Reciprocal, eps_div);
    }
  }
  return a;
}

Jet2 jet_func(const Jet2& a, JetFunc f, double eps_div) {
  switch (f) {
    case JetFunc::Sqrt: {
      if (a.value < eps_div)
        throw Error("SingularJet", "sqrt of jet of value " + std::to_string(a.value));
      double s = std::sqrt(a.value);
      return chain(a, s, 0.5 / s, -0.25 / (s * a.value));
    }
    case JetFunc::Reciprocal: {
      if (std::abs(a.value) < eps_div)
        throw Error("SingularJet",
                    "reciprocal of jet of value " + std::to_string(a.value));
      double r = 1.0 / a.value;
      return chain(a, r, -r * r, 2.0 * r * r * r);
    }
  }
  return a;
}

Jet2 jet_sin(const Jet2& a) {
  double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, s, c, -s);
}

Jet2 jet_cos(const Jet2& a) {
  double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, c, -s, -c);
}

Jet2 lift_complex(const ComplexJet& f, LiftPart which, int i_u, int i_v, int m) {
  if (f.order() < 2)
    throw Error("SingularJet", "lift_complex needs a 2-jet, got order " +
                                   std::to_string(f.order()));
  if (i_u == i_v || i_u < 0 || i_v < 0 || i_u >= m || i_v >= m)
    throw Error("SingularJet", "bad (u,v) slots for lift_complex");
  const Complex d0 = f.d[0], d1 = f.d[1], d2 = f.d[2];
  Jet2 out(m);
  if (which == LiftPart::RealPart) {
    out.value = d0.real();
    out.grad[i_u] = d1.real();
    out.grad[i_v] = -d1.imag();
    out.h(i_u, i_u) = d2.real();
    out.h(i_u, i_v) = -d2.imag();
    out.h(i_v, i_v) = -d2.real();
  } else {
    out.value = d0.imag();
    out.grad[i_u] = d1.imag();
    out.grad[i_v] = d1.real();
    out.h(i_u, i_u) = d2.imag();
    out.h(i_u, i_v) = d2.real();
    out.h(i_v, i_v) = -d2.imag();
  }
  return out;
}

VecJet operator+(const VecJet& a, const VecJet& b) {
  VecJet out = a;
  for (int i = 0; i < out.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

VecJet operator-(const VecJet& a, const VecJet& b) {
  VecJet out = a;
  for (int i = 0; i < out.dim(); ++i) out[i] = a[i] - b[i];
  return out;
}

VecJet operator*(const VecJet& a, const Jet2& s) {
  VecJet out = a;
  for (int i = 0; i < out.dim(); ++i) out[i] = a[i] * s;
  return out;
}

VecJet operator*(const VecJet& a, double s) {
  VecJet out = a;
  for (int i = 0; i < out.dim(); ++i) out[i] = a[i] * s;
  return out;
}

Jet2 dot(const VecJet& a, const VecJet& b, Signature sig) {
  if (a.dim() != b.dim())
    throw Error("SingularJet", "dot of vectors of different dimension");
  Jet2 acc(a.params());
  for (int i = 0; i < a.dim(); ++i) {
    Jet2 term = a[i] * b[i];
    if (sig == Signature::Lorentz && i == a.dim() - 1) term = -term;
    acc = acc + term;
  }
  return acc;
}

Jet2 norm(const VecJet& a, double eps_div) {
  Jet2 s = dot(a, a);
  if (s.value <= eps_div)
    throw Error("SingularJet", "norm of near-zero vector, |.|^2 = " +
                                   std::to_string(s.value));
  return jet_func(s, JetFunc::Sqrt, eps_div);
}

Vec value_vec(const VecJet& v) {
  Vec out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = v[i].value;
  return out;
}

Vec d1(const VecJet& v, int k) {
  Vec out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = v[i].grad[k];
  return out;
}

Vec d2(const VecJet& v, int k, int l) {
  Vec out(v.dim());
  for (int i = 0; i < v.dim(); ++i) out[i] = v[i].h(k, l);
  return out;
}

}  // namespace ddvv
