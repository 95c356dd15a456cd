#pragma once

#include <vector>

#include "horolab/matrix.hpp"

namespace horolab {

// Strictly upper-triangular k x k matrix: an element of the Lie algebra of the
// full upper unipotent group. Construction rejects anything else.
class NilAlgebraElement {
 public:
  explicit NilAlgebraElement(int dim) : m_(dim) {}
  explicit NilAlgebraElement(const SquareMatrix& m);

  int dim() const { return m_.dim(); }
  const SquareMatrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  NilAlgebraElement& operator+=(const NilAlgebraElement& o);
  friend NilAlgebraElement operator+(NilAlgebraElement a, const NilAlgebraElement& b) { return a += b; }
  friend NilAlgebraElement operator-(const NilAlgebraElement& a, const NilAlgebraElement& b) {
    return NilAlgebraElement(a.m_ - b.m_);
  }
  friend NilAlgebraElement operator*(double s, const NilAlgebraElement& a) { return NilAlgebraElement(s * a.m_); }

 private:
  SquareMatrix m_;
};

// Terminating exponential I + X + X^2/2 (+ X^3/6 never needed for k <= 3).
SquareMatrix nil_exp(const NilAlgebraElement& x);
// Terminating Mercator series of g - I. Throws std::domain_error unless g is
// upper unipotent within 1e-12.
NilAlgebraElement nil_log(const SquareMatrix& g);
// log(exp X exp Y), computed through the terminating series.
NilAlgebraElement bch(const NilAlgebraElement& x, const NilAlgebraElement& y);

// a_t = diag(e^{w_1 t}, ..., e^{w_k t}) with sum w = 0.
class DiagonalFlow {
 public:
  explicit DiagonalFlow(std::vector<double> weights);

  // diag(e^{t/2}, e^{-t/2}): conjugation by a_{log R} sends u_s to u_{Rs}.
  static DiagonalFlow sl2();
  // diag(e^t, 1, e^{-t}).
  static DiagonalFlow sl3();

  int dim() const { return static_cast<int>(w_.size()); }
  const std::vector<double>& weights() const { return w_; }
  // ad-weight of the (i, j) matrix entry: w_i - w_j.
  double entry_weight(int i, int j) const { return w_[i] - w_[j]; }
  SquareMatrix at(double t) const;

 private:
  std::vector<double> w_;
};

// a_t h a_{-t}; entrywise scaling by e^{(w_i - w_j) t}.
SquareMatrix conj_by_flow(const DiagonalFlow& a, double t, const SquareMatrix& h);

// Horospherical (expanded) subgroup given by a basis of ad-eigenvectors.
class HoroSubgroup {
 public:
  HoroSubgroup(DiagonalFlow flow, std::vector<NilAlgebraElement> basis);

  // Upper unipotent u_s in SL2.
  static HoroSubgroup sl2_upper();
  // Full upper unipotent (Heisenberg) group in SL3, basis E12, E23, E13.
  static HoroSubgroup heisenberg_sl3();
  // exp(span{E13}) in SL3.
  static HoroSubgroup sl3_corner();

  const DiagonalFlow& flow() const { return flow_; }
  const std::vector<NilAlgebraElement>& basis() const { return basis_; }
  const std::vector<double>& eigenvalues() const { return eig_; }
  int dim_h() const { return static_cast<int>(basis_.size()); }
  int dim() const { return flow_.dim(); }
  double d_h() const { return d_h_; }

  // Coordinates of x in the basis plus the max-entry residual of the fit.
  struct Coordinates {
    std::vector<double> c;
    double residual = 0.0;
  };
  Coordinates coordinates(const SquareMatrix& x) const;
  NilAlgebraElement from_coordinates(const std::vector<double>& c) const;

 private:
  DiagonalFlow flow_;
  std::vector<NilAlgebraElement> basis_;
  std::vector<double> eig_;
  double d_h_ = 0.0;
};

// Sum of the ad(log a_1)-eigenvalues on Lie(H).
double compute_dH(const HoroSubgroup& h);
// Independent route: log det of Ad_{a_1} restricted to Lie(H), assembled from
// the action on the basis.
double log_det_ad_restricted(const HoroSubgroup& h);

struct LieSplitting {
  SquareMatrix minus;
  SquareMatrix zero;
  SquareMatrix plus;
};

// Route entry (i, j) of x by the sign of w_i - w_j.
LieSplitting split_by_weights(const DiagonalFlow& a, const SquareMatrix& x);

}  // namespace horolab
