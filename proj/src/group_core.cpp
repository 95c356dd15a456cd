#include "horolab/group_core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace horolab {

NilAlgebraElement::NilAlgebraElement(const SquareMatrix& m) : m_(m) {
  if (!m.is_strictly_upper(0.0)) {
    throw std::invalid_argument("NilAlgebraElement: matrix is not strictly upper triangular");
  }
}

NilAlgebraElement& NilAlgebraElement::operator+=(const NilAlgebraElement& o) {
  m_ += o.m_;
  return *this;
}

SquareMatrix nil_exp(const NilAlgebraElement& x) {
  const int k = x.dim();
  SquareMatrix result = SquareMatrix::identity(k);
  SquareMatrix power = SquareMatrix::identity(k);
  double factorial = 1.0;
  for (int n = 1; n < k; ++n) {
    power = power * x.matrix();
    factorial *= n;
    result += power * (1.0 / factorial);
  }
  return result;
}

NilAlgebraElement nil_log(const SquareMatrix& g) {
  if (!g.is_unipotent_upper(1e-12)) {
    throw std::domain_error("nil_log: matrix is not upper unipotent");
  }
  const int k = g.dim();
  SquareMatrix n = g - SquareMatrix::identity(k);
  // clean the lower part and diagonal so the result is exactly strictly upper
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= i; ++j) n(i, j) = 0.0;
  SquareMatrix result(k);
  SquareMatrix power = SquareMatrix::identity(k);
  for (int m = 1; m < k; ++m) {
    power = power * n;
    result += power * ((m % 2 == 1 ? 1.0 : -1.0) / m);
  }
  return NilAlgebraElement(result);
}

NilAlgebraElement bch(const NilAlgebraElement& x, const NilAlgebraElement& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("bch: dimension mismatch");
  return nil_log(nil_exp(x) * nil_exp(y));
}

DiagonalFlow::DiagonalFlow(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.size() < 2 || w_.size() > 3) throw std::invalid_argument("DiagonalFlow: dimension must be 2 or 3");
  const double sum = std::accumulate(w_.begin(), w_.end(), 0.0);
  if (std::abs(sum) > 1e-12) throw std::invalid_argument("DiagonalFlow: weights must sum to zero");
}

DiagonalFlow DiagonalFlow::sl2() { return DiagonalFlow({0.5, -0.5}); }
DiagonalFlow DiagonalFlow::sl3() { return DiagonalFlow({1.0, 0.0, -1.0}); }

SquareMatrix DiagonalFlow::at(double t) const {
  SquareMatrix m(dim());
  for (int i = 0; i < dim(); ++i) m(i, i) = std::exp(w_[i] * t);
  return m;
}

SquareMatrix conj_by_flow(const DiagonalFlow& a, double t, const SquareMatrix& h) {
  if (a.dim() != h.dim()) throw std::invalid_argument("conj_by_flow: dimension mismatch");
  SquareMatrix r = h;
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j)
      if (i != j) r(i, j) *= std::exp(a.entry_weight(i, j) * t);
  return r;
}

HoroSubgroup::HoroSubgroup(DiagonalFlow flow, std::vector<NilAlgebraElement> basis)
    : flow_(std::move(flow)), basis_(std::move(basis)) {
  if (basis_.empty() || basis_.size() > 3) throw std::invalid_argument("HoroSubgroup: basis size must be 1..3");
  for (const auto& b : basis_) {
    if (b.dim() != flow_.dim()) throw std::invalid_argument("HoroSubgroup: basis dimension mismatch");
    bool seen = false;
    double lambda = 0.0;
    for (int i = 0; i < b.dim(); ++i)
      for (int j = i + 1; j < b.dim(); ++j) {
        if (b(i, j) == 0.0) continue;
        const double w = flow_.entry_weight(i, j);
        if (!seen) {
          lambda = w;
          seen = true;
        } else if (std::abs(w - lambda) > 1e-12) {
          throw std::invalid_argument("HoroSubgroup: basis element is not an ad-eigenvector");
        }
      }
    if (!seen) throw std::invalid_argument("HoroSubgroup: zero basis element");
    if (!(lambda > 0.0)) throw std::invalid_argument("HoroSubgroup: basis element is not expanded by the flow");
    eig_.push_back(lambda);
  }
  d_h_ = std::accumulate(eig_.begin(), eig_.end(), 0.0);
  // the span must be a subalgebra with a well-posed coordinate system
  const auto gram_check = coordinates(basis_.front().matrix());
  if (gram_check.residual > 1e-12) throw std::invalid_argument("HoroSubgroup: degenerate basis");
}

HoroSubgroup HoroSubgroup::sl2_upper() {
  return HoroSubgroup(DiagonalFlow::sl2(), {NilAlgebraElement(SquareMatrix::elementary(2, 0, 1))});
}

HoroSubgroup HoroSubgroup::heisenberg_sl3() {
  return HoroSubgroup(DiagonalFlow::sl3(), {NilAlgebraElement(SquareMatrix::elementary(3, 0, 1)),
                                            NilAlgebraElement(SquareMatrix::elementary(3, 1, 2)),
                                            NilAlgebraElement(SquareMatrix::elementary(3, 0, 2))});
}

HoroSubgroup HoroSubgroup::sl3_corner() {
  return HoroSubgroup(DiagonalFlow::sl3(), {NilAlgebraElement(SquareMatrix::elementary(3, 0, 2))});
}

namespace {

double frob_inner(const SquareMatrix& a, const SquareMatrix& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) s += a(i, j) * b(i, j);
  return s;
}

}  // namespace

HoroSubgroup::Coordinates HoroSubgroup::coordinates(const SquareMatrix& x) const {
  const int n = dim_h();
  SquareMatrix gram(n);
  std::vector<double> rhs(n);
  for (int a = 0; a < n; ++a) {
    rhs[a] = frob_inner(basis_[a].matrix(), x);
    for (int b = 0; b < n; ++b) gram(a, b) = frob_inner(basis_[a].matrix(), basis_[b].matrix());
  }
  const SquareMatrix inv = gram.inverse();
  Coordinates out;
  out.c.assign(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.c[a] += inv(a, b) * rhs[b];
  SquareMatrix fit(dim());
  for (int a = 0; a < n; ++a) fit += out.c[a] * basis_[a].matrix();
  out.residual = max_abs_diff(fit, x);
  return out;
}

NilAlgebraElement HoroSubgroup::from_coordinates(const std::vector<double>& c) const {
  if (static_cast<int>(c.size()) != dim_h()) throw std::invalid_argument("from_coordinates: size mismatch");
  NilAlgebraElement x(dim());
  for (int a = 0; a < dim_h(); ++a) x += c[a] * basis_[a];
  return x;
}

double compute_dH(const HoroSubgroup& h) {
  return std::accumulate(h.eigenvalues().begin(), h.eigenvalues().end(), 0.0);
}

double log_det_ad_restricted(const HoroSubgroup& h) {
  const int n = h.dim_h();
  SquareMatrix ad(n);
  for (int b = 0; b < n; ++b) {
    const auto image = conj_by_flow(h.flow(), 1.0, h.basis()[b].matrix());
    const auto coords = h.coordinates(image);
    for (int a = 0; a < n; ++a) ad(a, b) = coords.c[a];
  }
  return std::log(ad.det());
}

LieSplitting split_by_weights(const DiagonalFlow& a, const SquareMatrix& x) {
  if (a.dim() != x.dim()) throw std::invalid_argument("split_by_weights: dimension mismatch");
  LieSplitting s{SquareMatrix(x.dim()), SquareMatrix(x.dim()), SquareMatrix(x.dim())};
  for (int i = 0; i < x.dim(); ++i)
    for (int j = 0; j < x.dim(); ++j) {
      const double w = a.entry_weight(i, j);
      if (w > 0.0) {
        s.plus(i, j) = x(i, j);
      } else if (w < 0.0) {
        s.minus(i, j) = x(i, j);
      } else {
        s.zero(i, j) = x(i, j);
      }
    }
  return s;
}

}  // namespace horolab
