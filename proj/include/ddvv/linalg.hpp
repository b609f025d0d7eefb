#pragma once

#include <vector>

#include "ddvv/errors.hpp"

namespace ddvv {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& a);

// Small dense row-major matrix, sized for n <= 8, ambient <= 11.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  Mat transposed() const;
  double trace() const;
  double frobenius() const;
  Vec col(int c) const;
  Vec row(int r) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
Vec operator*(const Mat& a, const Vec& x);
Mat commutator(const Mat& a, const Mat& b);

struct SymEigen {
  Vec values;   // sorted descending
  Mat vectors;  // orthonormal columns, vectors.col(k) pairs with values[k]
};

// Cyclic Jacobi rotations. Throws NotSymmetric when ||A - A^T|| > sym_tol * ||A||.
SymEigen sym_eigen(const Mat& a, double sym_tol = 1e-9);

struct GramSchmidtResult {
  std::vector<Vec> basis;  // orthonormal, protected vectors first
  int rank = 0;
  std::vector<int> order;  // indices into the input, in acceptance order
};

// Modified Gram-Schmidt. The first protected_count inputs are orthonormalized
// in place and must be independent (DependentProtected otherwise); the rest
// are pivoted on residual norm and dropped below eps_rank * max input norm.
GramSchmidtResult gram_schmidt(const std::vector<Vec>& vectors, int protected_count = 0,
                               double eps_rank = 1e-9);

// 2x2 SPD Cramer solve; DegenerateMetric when det <= eps_rank^2 * scale.
Vec solve2(const Mat& g, const Vec& rhs, double eps_rank = 1e-9);

double smallest_eig(const Mat& g);

}  // namespace ddvv
