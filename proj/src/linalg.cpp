#include "ddvv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ddvv {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(double s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Mat::trace() const {
  double s = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Mat::frobenius() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

Vec Mat::col(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Vec Mat::row(int r) const {
  Vec v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  Mat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Mat operator*(double s, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

Vec operator*(const Mat& a, const Vec& x) {
  Vec r(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
  return r;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

SymEigen sym_eigen(const Mat& input, double sym_tol) {
  const int n = input.rows();
  if (input.cols() != n) throw Error("NotSymmetric", "matrix is not square");
  double scale = input.frobenius();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(input(i, j) - input(j, i)) > sym_tol * std::max(1.0, scale))
        throw Error("NotSymmetric", "asymmetry exceeds tolerance");

  Mat a = input;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = a(j, i) = m;
    }
  Mat v = Mat::identity(n);

  auto offdiag = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  const double stop = 1e-14 * std::max(1.0, scale);
  for (int sweep = 0; sweep < 64 && offdiag() > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  SymEigen out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(idx[k], idx[k]);
    for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, idx[k]);
  }
  return out;
}

GramSchmidtResult gram_schmidt(const std::vector<Vec>& vectors, int protected_count,
                               double eps_rank) {
  GramSchmidtResult out;
  double max_norm = 0.0;
  for (const Vec& v : vectors) max_norm = std::max(max_norm, norm(v));
  const double drop = eps_rank * std::max(max_norm, 1e-300);

  auto residual = [&](Vec w) {
    for (const Vec& b : out.basis) w = w - dot(w, b) * b;
    return w;
  };

  for (int i = 0; i < protected_count; ++i) {
    Vec w = residual(vectors[i]);
    double nw = norm(w);
    if (nw < drop) throw Error("DependentProtected", "protected vector is dependent");
    out.basis.push_back((1.0 / nw) * w);
    out.order.push_back(i);
  }

  std::vector<int> remaining;
  for (int i = protected_count; i < static_cast<int>(vectors.size()); ++i)
    remaining.push_back(i);
  while (!remaining.empty()) {
    int best = -1;
    double best_norm = drop;
    Vec best_res;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      Vec w = residual(vectors[remaining[k]]);
      double nw = norm(w);
      if (nw > best_norm) {
        best_norm = nw;
        best = static_cast<int>(k);
        best_res = std::move(w);
      }
    }
    if (best < 0) break;
    out.basis.push_back((1.0 / best_norm) * best_res);
    out.order.push_back(remaining[best]);
    remaining.erase(remaining.begin() + best);
  }
  out.rank = static_cast<int>(out.basis.size());
  return out;
}

Vec solve2(const Mat& g, const Vec& rhs, double eps_rank) {
  double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  double scale = std::max({std::abs(g(0, 0)), std::abs(g(0, 1)), std::abs(g(1, 1)), 1e-300});
  if (det <= eps_rank * eps_rank * scale * scale)
    throw Error("DegenerateMetric", "2x2 Gram determinant below threshold");
  return {(rhs[0] * g(1, 1) - rhs[1] * g(0, 1)) / det,
          (g(0, 0) * rhs[1] - g(1, 0) * rhs[0]) / det};
}

double smallest_eig(const Mat& g) {
  if (g.rows() == 2) {
    double tr = g(0, 0) + g(1, 1);
    double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    return tr / 2.0 - disc;
  }
  return sym_eigen(g).values.back();
}

}  // namespace ddvv
