#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "horolab/homspace.hpp"

namespace horolab {

// e(theta) = exp(2 pi i theta), with theta reduced mod 1 first.
std::complex<double> e1(double theta);

// Sampling function on N(R)/N(Z): e(y - x floor(z)). Right multiplication by
// (a, b, c) in N(Z) shifts the phase by the integer b - a floor(z) - a c.
std::complex<double> heis_char_eval(const HeisenbergPoint& p);

// exp(sqrt(alpha) t (E12 + E23)) . y0.
HeisenbergPoint heis_orbit_point(double alpha, double t, const HeisenbergPoint& y0 = {});

// e(alpha t^2 / 2 - {sqrt(alpha) t} sqrt(alpha) t), the closed form of the
// bracket phase; along the orbit through the identity the character equals
// its complex conjugate.
std::complex<double> bracket_closed_form(double alpha, double t);

// A character sampled along a one-parameter orbit, t -> value.
class NilCharacter {
 public:
  enum class Kind { trivial, linear, quadratic, bracket };

  static NilCharacter trivial();
  // e(beta t)
  static NilCharacter linear(double beta);
  // e(alpha t^2 / 2), by direct phase evaluation
  static NilCharacter quadratic(double alpha);
  // Heisenberg character along exp(sqrt(alpha) t (E12 + E23)) . y0
  static NilCharacter bracket(double alpha, HeisenbergPoint y0 = {});

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  const HeisenbergPoint& origin() const { return origin_; }
  // Nilpotency degree of the carrying nilmanifold (0 for trivial).
  int degree() const;

  std::complex<double> at(double t) const;
  // Parameters in (t0, t1) where the value or its derivative may jump
  // (the z coordinate of the orbit crossing an integer).
  std::vector<double> breakpoints(double t0, double t1) const;

 private:
  NilCharacter(Kind k, double a, HeisenbergPoint y0) : kind_(k), alpha_(a), origin_(y0) {}

  Kind kind_;
  double alpha_;
  HeisenbergPoint origin_;
};

const char* to_string(NilCharacter::Kind k);

struct SampledSequence {
  std::vector<double> t;
  std::vector<std::complex<double>> values;
  HeisenbergPoint origin;
  // Resampling rule, so shifted grids never leave the sampled range.
  std::function<std::complex<double>(double)> generator;
};

SampledSequence sample_character(const NilCharacter& psi, const std::vector<double>& t_grid);
SampledSequence orbit_character(double alpha, const std::vector<double>& t_grid, const HeisenbergPoint& y0 = {});

// t -> s(t + k) conj(s(t)).
SampledSequence differentiate_sequence(const SampledSequence& s, double k);

// Mean of the values on the grid.
std::complex<double> grid_mean(const SampledSequence& s);

// Unwrapped phase (in turns) fitted by a line; max absolute residual in turns.
// The grid must be fine enough that consecutive phases differ by < 1/2 turn.
double affine_phase_residual(const SampledSequence& s);

struct DegreeProbeReport {
  std::vector<double> shifts;           // shift used at each order 1..max_order
  std::vector<double> mean_magnitude;   // |grid mean| at orders 0..max_order
  double final_affine_residual = 0.0;   // after the last differencing step
};

// Iterated differencing with seed-drawn shifts in [0.1, 1).
DegreeProbeReport degree_probe(const SampledSequence& s, int max_order, std::uint64_t seed);

std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

}  // namespace horolab
