#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "ddvv/errors.hpp"

namespace ddvv {

using Complex = std::complex<double>;

enum class UnaryOp { Negate, Exp, Log, Sin, Cos, Sinh, Cosh };
enum class BinaryOp { Add, Sub, Mul, Div };

// Immutable expression tree over one complex variable z. Subtrees whose
// operands are all constants fold to a Constant node at construction, except
// near-singular divisions/logs/negative powers which stay symbolic so the
// failure surfaces at evaluation time.
class Expr {
public:
  enum class Kind { Constant, Variable, Unary, Binary, Power };

  Expr() : Expr(constant(0.0)) {}

  static Expr constant(Complex c);
  static Expr variable();
  static Expr unary(UnaryOp op, Expr a);
  static Expr binary(BinaryOp op, Expr a, Expr b);
  static Expr power(Expr base, int exponent);

  Kind kind() const;
  Complex constant_value() const;  // Constant only
  UnaryOp unary_op() const;        // Unary only
  BinaryOp binary_op() const;      // Binary only
  int exponent() const;            // Power only
  Expr child(int i) const;         // 0 for Unary/Power, 0..1 for Binary

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

bool struct_equal(const Expr& a, const Expr& b);

// Grammar: '+','-' < '*','/' < unary minus < '^' (integer exponents only);
// literals: decimal numbers, 'i', 'pi'; functions exp/log/sin/cos/sinh/cosh.
// Throws SyntaxError with a 1-based byte offset.
Expr parse(const std::string& src);

// Parenthesized so that parse(print(e)) == e structurally.
std::string print(const Expr& e);

struct ComplexJet {
  Complex z0{};
  std::vector<Complex> d;  // d[k] = F^(k)(z0), raw derivatives, k = 0..order
  int order() const { return static_cast<int>(d.size()) - 1; }
  ComplexJet shifted() const;  // jet of F' with order-1
};

ComplexJet eval_jet(const Expr& e, Complex z0, int order, double eps_div = 1e-12);

}  // namespace ddvv
