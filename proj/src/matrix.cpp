#include "horolab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace horolab {

SquareMatrix::SquareMatrix(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("SquareMatrix: dimension must be 1..3");
  }
}

SquareMatrix::SquareMatrix(int dim, std::initializer_list<std::initializer_list<double>> rows)
    : SquareMatrix(dim) {
  if (static_cast<int>(rows.size()) != dim) {
    throw std::invalid_argument("SquareMatrix: row count does not match dimension");
  }
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument("SquareMatrix: column count does not match dimension");
    }
    int j = 0;
    for (double v : row) (*this)(i, j++) = v;
    ++i;
  }
}

SquareMatrix SquareMatrix::identity(int dim) {
  SquareMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::elementary(int dim, int i, int j) {
  SquareMatrix m(dim);
  m(i, j) = 1.0;
  return m;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

double SquareMatrix::det() const {
  const auto& m = *this;
  switch (dim_) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
}

SquareMatrix SquareMatrix::inverse() const {
  const double d = det();
  if (d == 0.0 || !std::isfinite(d)) throw std::domain_error("SquareMatrix: singular matrix");
  const auto& m = *this;
  SquareMatrix r(dim_);
  switch (dim_) {
    case 1:
      r(0, 0) = 1.0 / d;
      break;
    case 2:
      r(0, 0) = m(1, 1) / d;
      r(0, 1) = -m(0, 1) / d;
      r(1, 0) = -m(1, 0) / d;
      r(1, 1) = m(0, 0) / d;
      break;
    default:
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          // cofactor of (j, i)
          const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
          const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
          r(i, j) = (m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)) / d;
        }
      }
  }
  return r;
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

double SquareMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double SquareMatrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

double SquareMatrix::op_norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < dim_; ++i) {
    double row = 0.0;
    for (int j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool SquareMatrix::is_strictly_upper(double tol) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j <= i; ++j)
      if (std::abs((*this)(i, j)) > tol) return false;
  return true;
}

bool SquareMatrix::is_unipotent_upper(double tol) const {
  for (int i = 0; i < dim_; ++i) {
    if (std::abs((*this)(i, i) - 1.0) > tol) return false;
    for (int j = 0; j < i; ++j)
      if (std::abs((*this)(i, j)) > tol) return false;
  }
  return true;
}

std::string SquareMatrix::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < dim_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
SquareMatrix operator-(const SquareMatrix& a) { return -1.0 * a; }

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("SquareMatrix: dimension mismatch");
  const int k = a.dim();
  SquareMatrix r(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += a(i, l) * b(l, j);
      r(i, j) = s;
    }
  return r;
}

SquareMatrix operator*(double s, SquareMatrix a) { return a *= s; }
SquareMatrix operator*(SquareMatrix a, double s) { return a *= s; }

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) { return (a - b).max_abs(); }

Vec3 apply(const SquareMatrix& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

}  // namespace horolab
