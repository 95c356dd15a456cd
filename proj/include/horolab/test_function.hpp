#pragma once

#include <complex>

#include "horolab/homspace.hpp"

namespace horolab {

// Smooth bump supported on (lo, hi): amplitude * e * exp(-1 / (1 - u^2)),
// u = (2y - lo - hi) / (hi - lo). Peak value `amplitude` at the midpoint.
struct BumpProfile {
  double lo = 0.5;
  double hi = 3.0;
  double amplitude = 1.0;

  double operator()(double y) const;
};

enum class TestFunctionKind { incomplete_eisenstein, angular_twist };

// f(g SL2(Z)) = sum over primitive +-v in g Z^2 of h(|v|^{-2}) e^{i n arg v}
//               - mean_offset.
// For n = 0 this is the incomplete Eisenstein series sum_{Gamma_inf \ Gamma}
// h(Im gamma tau); n must be even so the +-v pairs agree.
struct TestFunction {
  TestFunctionKind kind = TestFunctionKind::incomplete_eisenstein;
  BumpProfile h;
  int fourier_index = 0;
  double mean_offset = 0.0;
};

// (3 / pi) * integral of h(y) y^{-2} dy: the Haar mean of the n = 0 sum.
double eisenstein_mean(const BumpProfile& h);

// Mean-subtracted incomplete Eisenstein series.
TestFunction make_incomplete_eisenstein(const BumpProfile& h);
// Angularly twisted series (mean zero, offset 0). n must be even and nonzero.
TestFunction make_angular_twist(const BumpProfile& h, int n);
// Raw series without mean subtraction.
TestFunction make_raw_eisenstein(const BumpProfile& h);

// Value at an already-reduced point. Throws std::invalid_argument if the
// profile support is not a compact subset of (0, inf).
std::complex<double> eval_test_function(const TestFunction& f, const ModularPoint& x);
// Reduces g first.
std::complex<double> eval_test_function(const TestFunction& f, const SquareMatrix& g);

// Number of cosets that enter the sum at x (diagnostics).
int eisenstein_term_count(const TestFunction& f, const ModularPoint& x);

}  // namespace horolab
