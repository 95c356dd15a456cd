#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>

namespace horolab {

// Dense k x k real matrix for k in {2, 3}. Storage is row-major in a fixed
// 3x3 buffer so values stay trivially copyable.
class SquareMatrix {
 public:
  static constexpr int kMaxDim = 3;

  SquareMatrix() = default;
  explicit SquareMatrix(int dim);
  SquareMatrix(int dim, std::initializer_list<std::initializer_list<double>> rows);

  static SquareMatrix identity(int dim);
  static SquareMatrix zero(int dim) { return SquareMatrix(dim); }
  // E_ij with 0-based indices.
  static SquareMatrix elementary(int dim, int i, int j);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[i * kMaxDim + j]; }
  double& operator()(int i, int j) { return a_[i * kMaxDim + j]; }

  SquareMatrix& operator+=(const SquareMatrix& o);
  SquareMatrix& operator-=(const SquareMatrix& o);
  SquareMatrix& operator*=(double s);

  double det() const;
  SquareMatrix inverse() const;
  SquareMatrix transpose() const;
  double trace() const;

  // Largest absolute entry.
  double max_abs() const;
  double frobenius() const;
  // Operator norm induced by the vector infinity norm (max row sum).
  double op_norm_inf() const;

  bool is_strictly_upper(double tol = 0.0) const;
  bool is_unipotent_upper(double tol = 1e-12) const;

  std::string to_string() const;

 private:
  int dim_ = 2;
  std::array<double, kMaxDim * kMaxDim> a_{};
};

SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b);
SquareMatrix operator-(const SquareMatrix& a);
SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix operator*(double s, SquareMatrix a);
SquareMatrix operator*(SquareMatrix a, double s);

// Max absolute entry of the difference.
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

using Vec3 = std::array<double, 3>;

// Product with a vector whose first dim() entries are used.
Vec3 apply(const SquareMatrix& m, const Vec3& v);

}  // namespace horolab
