#include "ddvv/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace ddvv {

struct Expr::Node {
  Kind kind;
  Complex value{};
  UnaryOp uop{};
  BinaryOp bop{};
  int exponent = 0;
  std::shared_ptr<const Node> a, b;
};

namespace {

constexpr double kFoldEps = 1e-12;

bool foldable(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

Complex ipow(Complex base, int p) {
  if (p < 0) return Complex(1.0) / ipow(base, -p);
  Complex acc(1.0);
  Complex cur = base;
  while (p > 0) {
    if (p & 1) acc *= cur;
    cur *= cur;
    p >>= 1;
  }
  return acc;
}

Complex apply_unary(UnaryOp op, Complex a) {
  switch (op) {
    case UnaryOp::Negate: return -a;
    case UnaryOp::Exp: return std::exp(a);
    case UnaryOp::Log: return std::log(a);
    case UnaryOp::Sin: return std::sin(a);
    case UnaryOp::Cos: return std::cos(a);
    case UnaryOp::Sinh: return std::sinh(a);
    case UnaryOp::Cosh: return std::cosh(a);
  }
  return {};
}

Complex apply_binary(BinaryOp op, Complex a, Complex b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
  }
  return {};
}

}  // namespace

Expr Expr::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr a) {
  if (a.kind() == Kind::Constant) {
    Complex v = a.constant_value();
    bool singular = (op == UnaryOp::Log && std::abs(v) < kFoldEps);
    if (!singular && foldable(apply_unary(op, v)))
      return constant(apply_unary(op, v));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->uop = op;
  n->a = a.node_;
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr a, Expr b) {
  if (a.kind() == Kind::Constant && b.kind() == Kind::Constant) {
    bool singular = (op == BinaryOp::Div && std::abs(b.constant_value()) < kFoldEps);
    if (!singular &&
        foldable(apply_binary(op, a.constant_value(), b.constant_value())))
      return constant(apply_binary(op, a.constant_value(), b.constant_value()));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->bop = op;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  if (base.kind() == Kind::Constant) {
    bool singular = (exponent < 0 && std::abs(base.constant_value()) < kFoldEps);
    if (!singular && foldable(ipow(base.constant_value(), exponent)))
      return constant(ipow(base.constant_value(), exponent));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->exponent = exponent;
  n->a = base.node_;
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
Complex Expr::constant_value() const { return node_->value; }
UnaryOp Expr::unary_op() const { return node_->uop; }
BinaryOp Expr::binary_op() const { return node_->bop; }
int Expr::exponent() const { return node_->exponent; }
Expr Expr::child(int i) const { return Expr(i == 0 ? node_->a : node_->b); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::unary(UnaryOp::Negate, a); }

bool struct_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Constant:
      return a.constant_value() == b.constant_value();
    case Expr::Kind::Variable:
      return true;
    case Expr::Kind::Unary:
      return a.unary_op() == b.unary_op() && struct_equal(a.child(0), b.child(0));
    case Expr::Kind::Binary:
      return a.binary_op() == b.binary_op() && struct_equal(a.child(0), b.child(0)) &&
             struct_equal(a.child(1), b.child(1));
    case Expr::Kind::Power:
      return a.exponent() == b.exponent() && struct_equal(a.child(0), b.child(0));
  }
  return false;
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
  explicit Parser(const std::string& src) : s_(src) {}

  Expr run() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < s_.size()) fail("end of input");
    return e;
  }

private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(pos_ + 1, expected);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr e = parse_term();
    for (;;) {
      if (eat('+')) e = e + parse_term();
      else if (eat('-')) e = e - parse_term();
      else return e;
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    for (;;) {
      if (eat('*')) e = e * parse_factor();
      else if (eat('/')) e = e / parse_factor();
      else return e;
    }
  }

  Expr parse_factor() {
    if (eat('-')) return -parse_factor();
    if (eat('+')) return parse_factor();
    return parse_power();
  }

  Expr parse_power() {
    Expr e = parse_atom();
    while (eat('^')) e = Expr::power(e, parse_int_exponent());
    return e;
  }

  int parse_int_exponent() {
    skip_ws();
    if (eat('(')) {
      int v = parse_int_exponent();
      if (!eat(')')) fail("')'");
      return v;
    }
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("integer exponent");
    if (pos_ - start > 6) fail("integer exponent (too large)");
    int v = 0;
    std::from_chars(s_.data() + start, s_.data() + pos_, v);
    return sign * v;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("value");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      if (!eat(')')) fail("')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail("value");
  }

  Expr parse_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to something else, not an exponent
      }
    }
    double v = 0.0;
    auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_) {
      pos_ = start;
      fail("number");
    }
    return Expr::constant(v);
  }

  Expr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "z") return Expr::variable();
    if (name == "i") return Expr::constant(Complex(0.0, 1.0));
    if (name == "pi") return Expr::constant(Complex(3.14159265358979323846, 0.0));
    UnaryOp op;
    if (name == "exp") op = UnaryOp::Exp;
    else if (name == "log") op = UnaryOp::Log;
    else if (name == "sin") op = UnaryOp::Sin;
    else if (name == "cos") op = UnaryOp::Cos;
    else if (name == "sinh") op = UnaryOp::Sinh;
    else if (name == "cosh") op = UnaryOp::Cosh;
    else {
      pos_ = start;
      fail("known identifier (z, i, pi, exp, log, sin, cos, sinh, cosh)");
    }
    if (!eat('(')) fail("'('");
    Expr arg = parse_expr();
    if (!eat(')')) fail("')'");
    return Expr::unary(op, arg);
  }
};

}  // namespace

Expr parse(const std::string& src) { return Parser(src).run(); }

// ---------------------------------------------------------------------------
// printer

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Precedence: Add/Sub 1, Mul/Div 2, Negate 3, Power 4, atoms 5.
struct Printed {
  std::string text;
  int prec;
};

std::string wrap_if(const Printed& p, int min_prec) {
  if (p.prec < min_prec) return "(" + p.text + ")";
  return p.text;
}

Printed print_node(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Variable:
      return {"z", 5};
    case Expr::Kind::Constant: {
      Complex c = e.constant_value();
      double re = c.real(), im = c.imag();
      if (im == 0.0) {
        if (re >= 0.0) return {fmt_double(re), 5};
        return {"(" + fmt_double(re) + ")", 5};
      }
      std::string imt;
      if (im == 1.0) imt = "i";
      else if (im == -1.0) imt = "-i";
      else imt = fmt_double(im) + "*i";
      if (re == 0.0) {
        if (imt == "i") return {"i", 5};
        return {"(" + imt + ")", 5};
      }
      std::string ret = fmt_double(re);
      std::string joined = (imt[0] == '-') ? ret + imt : ret + "+" + imt;
      return {"(" + joined + ")", 5};
    }
    case Expr::Kind::Unary: {
      Printed a = print_node(e.child(0));
      switch (e.unary_op()) {
        case UnaryOp::Negate: return {"-" + wrap_if(a, 4), 3};
        case UnaryOp::Exp: return {"exp(" + a.text + ")", 5};
        case UnaryOp::Log: return {"log(" + a.text + ")", 5};
        case UnaryOp::Sin: return {"sin(" + a.text + ")", 5};
        case UnaryOp::Cos: return {"cos(" + a.text + ")", 5};
        case UnaryOp::Sinh: return {"sinh(" + a.text + ")", 5};
        case UnaryOp::Cosh: return {"cosh(" + a.text + ")", 5};
      }
      return {"", 5};
    }
    case Expr::Kind::Binary: {
      Printed a = print_node(e.child(0));
      Printed b = print_node(e.child(1));
      switch (e.binary_op()) {
        case BinaryOp::Add: return {wrap_if(a, 1) + " + " + wrap_if(b, 2), 1};
        case BinaryOp::Sub: return {wrap_if(a, 1) + " - " + wrap_if(b, 2), 1};
        case BinaryOp::Mul: return {wrap_if(a, 2) + "*" + wrap_if(b, 3), 2};
        case BinaryOp::Div: return {wrap_if(a, 2) + "/" + wrap_if(b, 3), 2};
      }
      return {"", 1};
    }
    case Expr::Kind::Power: {
      Printed a = print_node(e.child(0));
      return {wrap_if(a, 5) + "^" + std::to_string(e.exponent()), 4};
    }
  }
  return {"", 5};
}

}  // namespace

std::string print(const Expr& e) { return print_node(e).text; }

// ---------------------------------------------------------------------------
// jet evaluation

namespace {

using CV = std::vector<Complex>;

double binom(int k, int j) {
  double r = 1.0;
  for (int t = 0; t < j; ++t) r = r * (k - t) / (t + 1);
  return r;
}

CV jmul(const CV& a, const CV& b) {
  int K = static_cast<int>(a.size()) - 1;
  CV r(K + 1, Complex(0.0));
  for (int k = 0; k <= K; ++k)
    for (int j = 0; j <= k; ++j) r[k] += binom(k, j) * a[j] * b[k - j];
  return r;
}

CV jdiv(const CV& a, const CV& b, double eps) {
  if (std::abs(b[0]) < eps)
    throw Error("SingularEvaluation", "division by value of modulus " +
                                          std::to_string(std::abs(b[0])));
  int K = static_cast<int>(a.size()) - 1;
  CV h(K + 1);
  for (int k = 0; k <= K; ++k) {
    Complex acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= binom(k, j) * b[j] * h[k - j];
    h[k] = acc / b[0];
  }
  return h;
}

CV to_taylor(const CV& d) {
  CV t = d;
  double fact = 1.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    fact *= static_cast<double>(k);
    t[k] /= fact;
  }
  return t;
}

CV from_taylor(const CV& t) {
  CV d = t;
  double fact = 1.0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    fact *= static_cast<double>(k);
    d[k] *= fact;
  }
  return d;
}

CV jfunc(UnaryOp op, const CV& din, double eps) {
  CV a = to_taylor(din);
  int K = static_cast<int>(a.size()) - 1;
  CV out(K + 1);
  switch (op) {
    case UnaryOp::Negate: {
      for (int k = 0; k <= K; ++k) out[k] = -a[k];
      break;
    }
    case UnaryOp::Exp: {
      out[0] = std::exp(a[0]);
      for (int k = 1; k <= K; ++k) {
        Complex acc(0.0);
        for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * out[k - j];
        out[k] = acc / static_cast<double>(k);
      }
      break;
    }
    case UnaryOp::Log: {
      if (std::abs(a[0]) < eps)
        throw Error("SingularEvaluation", "log of value of modulus " +
                                              std::to_string(std::abs(a[0])));
      out[0] = std::log(a[0]);
      for (int k = 1; k <= K; ++k) {
        Complex acc = a[k];
        for (int j = 1; j < k; ++j)
          acc -= (static_cast<double>(j) / k) * out[j] * a[k - j];
        out[k] = acc / a[0];
      }
      break;
    }
    case UnaryOp::Sin:
    case UnaryOp::Cos:
    case UnaryOp::Sinh:
    case UnaryOp::Cosh: {
      bool hyper = (op == UnaryOp::Sinh || op == UnaryOp::Cosh);
      CV s(K + 1), c(K + 1);
      s[0] = hyper ? std::sinh(a[0]) : std::sin(a[0]);
      c[0] = hyper ? std::cosh(a[0]) : std::cos(a[0]);
      double csign = hyper ? 1.0 : -1.0;
      for (int k = 1; k <= K; ++k) {
        Complex as(0.0), ac(0.0);
        for (int j = 1; j <= k; ++j) {
          as += static_cast<double>(j) * a[j] * c[k - j];
          ac += static_cast<double>(j) * a[j] * s[k - j];
        }
        s[k] = as / static_cast<double>(k);
        c[k] = csign * ac / static_cast<double>(k);
      }
      out = (op == UnaryOp::Sin || op == UnaryOp::Sinh) ? s : c;
      break;
    }
  }
  return from_taylor(out);
}

CV jpow(const CV& a, int p, double eps) {
  int K = static_cast<int>(a.size()) - 1;
  if (p < 0) {
    CV one(K + 1, Complex(0.0));
    one[0] = 1.0;
    return jdiv(one, jpow(a, -p, eps), eps);
  }
  CV acc(K + 1, Complex(0.0));
  acc[0] = 1.0;
  CV cur = a;
  while (p > 0) {
    if (p & 1) acc = jmul(acc, cur);
    if (p >>= 1) cur = jmul(cur, cur);
  }
  return acc;
}

CV eval_node(const Expr& e, Complex z0, int K, double eps) {
  switch (e.kind()) {
    case Expr::Kind::Constant: {
      CV d(K + 1, Complex(0.0));
      d[0] = e.constant_value();
      return d;
    }
    case Expr::Kind::Variable: {
      CV d(K + 1, Complex(0.0));
      d[0] = z0;
      if (K >= 1) d[1] = 1.0;
      return d;
    }
    case Expr::Kind::Unary: {
      CV a = eval_node(e.child(0), z0, K, eps);
      if (e.unary_op() == UnaryOp::Negate) {
        for (Complex& x : a) x = -x;
        return a;
      }
      return jfunc(e.unary_op(), a, eps);
    }
    case Expr::Kind::Binary: {
      CV a = eval_node(e.child(0), z0, K, eps);
      CV b = eval_node(e.child(1), z0, K, eps);
      switch (e.binary_op()) {
        case BinaryOp::Add:
          for (int k = 0; k <= K; ++k) a[k] += b[k];
          return a;
        case BinaryOp::Sub:
          for (int k = 0; k <= K; ++k) a[k] -= b[k];
          return a;
        case BinaryOp::Mul:
          return jmul(a, b);
        case BinaryOp::Div:
          return jdiv(a, b, eps);
      }
      return a;
    }
    case Expr::Kind::Power:
      return jpow(eval_node(e.child(0), z0, K, eps), e.exponent(), eps);
  }
  return CV(K + 1, Complex(0.0));
}

}  // namespace

ComplexJet ComplexJet::shifted() const {
  ComplexJet out;
  out.z0 = z0;
  out.d.assign(d.begin() + 1, d.end());
  return out;
}

ComplexJet eval_jet(const Expr& e, Complex z0, int order, double eps_div) {
  ComplexJet out;
  out.z0 = z0;
  out.d = eval_node(e, z0, order, eps_div);
  return out;
}

}  // namespace ddvv
