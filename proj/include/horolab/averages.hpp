#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "horolab/folner.hpp"
#include "horolab/homspace.hpp"
#include "horolab/nilchar.hpp"
#include "horolab/quadrature.hpp"
#include "horolab/test_function.hpp"

namespace horolab {

// [[1, 0], [sqrt 2, 1]]: non-periodic for the horocycle flow and diophantine
// with Theta = 1 (the norm form of Z[sqrt 2] keeps a_{-log R} x in a compact set).
SquareMatrix default_base_point();

// u_t = [[1, t], [0, 1]].
SquareMatrix horocycle(double t);

// psi(t) f(u_t x), the integrand of every SL2 average.
std::complex<double> twisted_integrand(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x,
                                       double t);

struct AverageResult {
  std::complex<double> value;
  std::complex<double> previous;
  std::size_t nodes = 0;
  bool converged = false;
};

// (1 / 2R) * integral over [-R, R] of psi(t) f(u_t x) dt.
// Requires R >= 1 (std::invalid_argument).
AverageResult twisted_average(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x, double R,
                              const QuadratureSpec& q);

// Quasi-Monte Carlo average of fn over B_R^H for any group instance, doubling
// the sample count from 1024 until successive estimates agree.
AverageResult folner_average(const FolnerBall& ball, const std::function<std::complex<double>(const SquareMatrix&)>& fn,
                             const QuadratureSpec& q);

struct DecayReport {
  std::vector<double> R_grid;
  std::vector<double> volumes;
  std::vector<double> magnitudes;
  std::vector<std::size_t> excluded;  // indices with |avg| == 0
  double eta = 0.0;                   // minus the slope of log|avg| vs log vol
  double eta_stderr = 0.0;
  double intercept = 0.0;

  bool significant(double sigmas = 2.0) const { return eta > sigmas * eta_stderr; }
};

// Least squares fit of log|avg| against log vol. Needs >= 4 grid points and
// >= 3 nonzero magnitudes (std::invalid_argument otherwise).
DecayReport decay_fit(const std::vector<double>& R_grid, const std::vector<double>& volumes,
                      const std::vector<double>& magnitudes);

// R_min, R_min * ratio, ... <= R_max (with relative slack 1e-9).
std::vector<double> geometric_grid(double r_min, double r_max, double ratio);

// Twisted averages over the grid followed by decay_fit against vol = 2R.
// Throws NumericalFailure if any average fails to converge.
DecayReport twisted_decay(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x,
                          const std::vector<double>& R_grid, const QuadratureSpec& q,
                          std::vector<std::complex<double>>* averages = nullptr);

struct VdcReport {
  double A = 0.0;         // |Foelner average|
  double D = 0.0;         // mean over sampled (b1, b2) of |gamma(b1, b2)|
  double beta = 0.0;      // max over sampled b of |b.F triangle F| / |F|
  double sup_norm = 0.0;  // max |psi f| over the quadrature nodes
  double bound = 0.0;     // sqrt(D) + 2 sup_norm beta
  double tol = 0.0;       // 10 target_rel_err sup_norm
  bool holds = false;     // A <= bound + tol
  bool converged = false;
  std::vector<double> b_samples;
};

// Van der Corput check along F = [-R, R] with b sampled quasi-uniformly in
// B = [-r, r]. gamma(b1, b2) = (1 / 2R) * integral over F of
// psi f(u_{t+b1} x) conj(psi f(u_{t+b2} x)) dt. Requires 0 < r < R.
VdcReport vdc_check(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x, double R, double r,
                    const QuadratureSpec& q, std::size_t n_b_samples, std::uint64_t seed);

struct MatrixCoefficientEstimate {
  std::complex<double> value;
  std::size_t n_samples = 0;
  double std_err = 0.0;
  bool low_signal = false;  // std_err > |value|
};

// rho_{f1,f2}(g) = integral f1(g.x) conj(f2(x)) dmu(x), by Monte Carlo over
// Haar samples. Both functions must have vanishing integral.
MatrixCoefficientEstimate matrix_coefficient(const TestFunction& f1, const TestFunction& f2, const SquareMatrix& g,
                                             std::size_t n, std::uint64_t seed);

struct CoefficientDecay {
  std::vector<double> t_grid;
  std::vector<double> norms;  // ||a_t|| (largest singular value)
  std::vector<MatrixCoefficientEstimate> estimates;
  std::vector<std::size_t> excluded;  // |value| < 2 std_err
  double s_hat = 0.0;
  double s_stderr = 0.0;
};

// |rho_{f,f}(a_t)| over t_grid on a common sample set; log-log fit against
// ||a_t|| gives s_hat. Estimates within two standard errors of zero are left
// out of the fit (std::invalid_argument if fewer than 3 remain).
CoefficientDecay coefficient_decay_fit(const TestFunction& f, const DiagonalFlow& flow,
                                       const std::vector<double>& t_grid, std::size_t n, std::uint64_t seed);

// Frozen constant C_f with fraction <= C_f vol^{2 delta - 2 s}, calibrated on
// the reference profile (0.5, 3) at delta = 0.1, s = 0.5. Observed maximum
// 0.11 over R = 2..128 with 4000 points (horolab_calibrate ergodic).
constexpr double kMeanErgodicConstant = 0.5;

struct MeanErgodicRecord {
  double R = 0.0;
  double volume = 0.0;
  double threshold = 0.0;  // vol^{-delta}
  double fraction = 0.0;
  double sigma = 0.0;
  double bound = 0.0;      // C_f vol^{2 delta - 2 s}
};

// Fraction of Haar-sampled base points whose |average over B_R| is at least
// vol^{-delta}. Requires 0 <= delta < s.
std::vector<MeanErgodicRecord> mean_ergodic_check(const TestFunction& f, const std::vector<double>& R_grid,
                                                  double delta, double s, std::size_t n_points, std::uint64_t seed,
                                                  const QuadratureSpec& q);

// Frozen C_f for |avg_x - avg_y| <= C_f delta on the reference profile (0.5, 3).
// Observed maximum 1.38 over 516 runs, R = 16..1024 (horolab_calibrate keylemma).
constexpr double kKeyLemmaConstant = 2.0;

struct KeyLemmaReport {
  double delta = 0.0;  // ||perturbation||_inf
  std::complex<double> avg_x;
  std::complex<double> avg_y;
  double difference = 0.0;
  double bound = 0.0;  // C_f delta
  double injectivity_guard = 0.0;
  double distance = 0.0;  // dist(a_{-log R} x, a_{-log R} y)
  double minus_norm = 0.0, zero_norm = 0.0, plus_norm = 0.0;
  bool holds = false;
};

// exp of a traceless 2x2 matrix.
SquareMatrix expm_sl2(const SquareMatrix& x);

// y = a_{log R} exp(eps) a_{-log R} x; compares the two averages over [-R, R].
// Throws std::invalid_argument when ||eps|| >= 0.1 * inj_rad_lower_bound at
// a_{-log R} x.
KeyLemmaReport key_lemma_check(const SquareMatrix& x, const SquareMatrix& perturbation, double R,
                               const TestFunction& f, const QuadratureSpec& q);

// Exact average over the integers in [-R, R] of psi(t) f(u_t x).
std::complex<double> discrete_average(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x,
                                      double R);
// #{Z cap [-R, R]} = 2 floor(R) + 1.
long lattice_count(double R);

}  // namespace horolab
