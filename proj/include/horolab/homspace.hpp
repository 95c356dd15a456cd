#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "horolab/matrix.hpp"

namespace horolab {

// Integer 2x2 matrix, row-major.
struct IntMatrix2 {
  std::array<std::int64_t, 4> a{1, 0, 0, 1};

  static IntMatrix2 identity() { return {}; }
  std::int64_t operator()(int i, int j) const { return a[i * 2 + j]; }
  std::int64_t det() const { return a[0] * a[3] - a[1] * a[2]; }
  SquareMatrix to_matrix() const;
  friend IntMatrix2 operator*(const IntMatrix2& p, const IntMatrix2& q);
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

// A point g.SL2(Z) of X = SL2(R)/SL2(Z).
//
// Coordinates come from the lattice g.Z^2: with columns w1, w2 of g read as
// complex numbers, tau = w2 / w1 lies in the upper half plane, and right
// multiplication by gamma in SL2(Z) acts on tau by a Moebius transformation.
// The reduced representative has tau in the standard fundamental domain;
// (x, y) = (Re tau, Im tau) and theta = arg w1, so that
// reduced = k_theta * [[y^{-1/2}, x y^{-1/2}], [0, y^{1/2}]].
struct ModularPoint {
  SquareMatrix rep{2};
  SquareMatrix reduced{2};
  IntMatrix2 gamma;  // reduced = rep * gamma
  double x = 0.0;
  double y = 1.0;
  double theta = 0.0;
};

// Inverse of the coordinate map above.
SquareMatrix from_iwasawa(double x, double y, double theta);
// tau = w2 / w1 of an arbitrary representative.
std::complex<double> lattice_tau(const SquareMatrix& g);

// Reduction by T^n and S steps on the basis, tracking gamma. Throws
// std::invalid_argument unless |det g - 1| < 1e-9, NumericalFailure past 10^4
// iterations.
ModularPoint reduce_modular(const SquareMatrix& g);

// h . x, re-reduced.
ModularPoint flow_point(const ModularPoint& x, const SquareMatrix& h);

// Haar measure on X: (x, y) under dx dy / y^2 on the fundamental domain with
// y <= y_max, theta uniform. Deterministic given (n, seed).
constexpr double kHaarYMax = 1e4;
// Mass of {y > y_max} relative to the whole domain: (3/pi) / y_max.
double haar_truncated_mass(double y_max = kHaarYMax);
std::vector<ModularPoint> haar_sample_modular(std::size_t n, std::uint64_t seed, double y_max = kHaarYMax);

// Heuristic distance on X: min over gamma in SL2(Z) with entries in [-5, 5]
// of the Frobenius distance between x.reduced * gamma and y.reduced.
double modular_distance(const ModularPoint& x, const ModularPoint& y);

// (1/2) min over gamma != +-I (entries in [-bound, bound]) of
// min ||g gamma g^{-1} -+ I||_F at the reduced representative.
double injectivity_radius_proxy(const ModularPoint& x, int bound = 6);

// Frozen C with InjRad(x) >= C eps^k on X^1_{>= eps} (SL2 instance, k = 2).
// The proxy over 2e4 Haar points plus a cusp sweep gives min ratio 0.5.
constexpr double kInjRadConstantSL2 = 0.25;

// C * eps^k after checking x in X^1_{>= eps}; throws std::domain_error when
// the precondition fails or cannot be certified.
double inj_rad_lower_bound(const ModularPoint& x, double eps, int k = 2);

// Heisenberg nilmanifold N(R)/N(Z) with N the upper unipotent 3x3 group.
struct HeisenbergPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  SquareMatrix matrix() const;
  static HeisenbergPoint from_matrix(const SquareMatrix& m);
};

struct HeisenbergReduction {
  HeisenbergPoint canonical;
  std::array<std::int64_t, 3> gamma{};  // (a, b, c); canonical = p * gamma
};

// Right multiplication by (a, b, c) in N(Z): (x, y, z) -> (x + a, y + b + x c, z + c).
HeisenbergPoint heisenberg_mul(const HeisenbergPoint& p, const std::array<std::int64_t, 3>& g);
HeisenbergReduction reduce_heisenberg(const HeisenbergPoint& p);

}  // namespace horolab
