#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "horolab/nilchar.hpp"
#include "horolab/sampling.hpp"

using namespace horolab;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

TEST_CASE("e1 and the character at the identity") {
  CHECK(std::abs(e1(0.25) - std::complex<double>(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(e1(1e6 + 0.5) + 1.0) < 1e-9);
  CHECK(heis_char_eval({0.0, 0.0, 0.0}) == std::complex<double>(1.0, 0.0));
  // x floor(z) = 0.5 * 2
  CHECK(std::abs(heis_char_eval({0.5, 0.25, 2.3}) - e1(0.25 - 1.0)) < 1e-15);
}

TEST_CASE("character is N(Z)-invariant") {
  Rng rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const HeisenbergPoint p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const std::array<std::int64_t, 3> g{rng.integer(-5, 5), rng.integer(-5, 5), rng.integer(-5, 5)};
    worst = std::max(worst, std::abs(heis_char_eval(heisenberg_mul(p, g)) - heis_char_eval(p)));
    CHECK(std::abs(std::abs(heis_char_eval(p)) - 1.0) < 1e-14);
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("orbit through the identity") {
  // exp(s (E12 + E23)) = [[1, s, s^2/2], [0, 1, s], [0, 0, 1]]
  const double alpha = 2.0, t = 1.3, s = std::sqrt(alpha) * t;
  const HeisenbergPoint p = heis_orbit_point(alpha, t);
  CHECK(p.x == doctest::Approx(s));
  CHECK(p.z == doctest::Approx(s));
  CHECK(p.y == doctest::Approx(s * s / 2));

  Rng rng(2);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double a = rng.uniform(0.01, 5.0), tt = rng.uniform(-100, 100);
    worst = std::max(worst, std::abs(heis_char_eval(heis_orbit_point(a, tt)) - std::conj(bracket_closed_form(a, tt))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("character kinds") {
  CHECK(NilCharacter::trivial().degree() == 0);
  CHECK(NilCharacter::linear(0.3).degree() == 1);
  CHECK(NilCharacter::quadratic(0.3).degree() == 2);
  CHECK(NilCharacter::bracket(0.3).degree() == 2);
  CHECK(std::string(to_string(NilCharacter::Kind::bracket)) == "bracket");
  CHECK_THROWS_AS(NilCharacter::bracket(-1.0), std::invalid_argument);

  CHECK(std::abs(NilCharacter::linear(0.25).at(1.0) - std::complex<double>(0.0, 1.0)) < 1e-15);
  const HeisenbergPoint y0{0.2, 0.7, 0.4};
  const NilCharacter zero = NilCharacter::bracket(0.0, y0);
  for (double t : {-5.0, 0.0, 3.7}) CHECK(std::abs(zero.at(t) - heis_char_eval(y0)) < 1e-15);
}

TEST_CASE("breakpoints are the integer crossings of z") {
  const NilCharacter psi = NilCharacter::bracket(4.0, {0.0, 0.0, 0.25});
  // z = 2 t + 0.25
  const auto b = psi.breakpoints(0.0, 2.0);
  REQUIRE(b.size() == 4);
  CHECK(b[0] == doctest::Approx(0.375));
  CHECK(b[3] == doctest::Approx(1.875));
  CHECK(NilCharacter::linear(1.0).breakpoints(0.0, 10.0).empty());
  // the value is continuous in y between crossings and jumps only at them
  const double mid = 0.5 * (b[0] + b[1]);
  CHECK(std::abs(psi.at(mid + 1e-9) - psi.at(mid)) < 1e-6);
}

TEST_CASE("differencing drops the degree of a polynomial phase") {
  const auto grid = uniform_grid(0.0, 50.0, 20001);
  const SampledSequence q = sample_character(NilCharacter::quadratic(kGolden), grid);
  const SampledSequence d1 = differentiate_sequence(q, 0.37);
  CHECK(affine_phase_residual(d1) < 1e-9);
  const SampledSequence d2 = differentiate_sequence(d1, 0.61);
  CHECK(std::abs(std::abs(grid_mean(d2)) - 1.0) < 1e-9);
  // e(alpha k1 k2) exactly
  CHECK(std::abs(grid_mean(d2) - e1(kGolden * 0.37 * 0.61)) < 1e-9);

  const DegreeProbeReport lin = degree_probe(sample_character(NilCharacter::linear(kGolden), grid), 1, 3);
  REQUIRE(lin.mean_magnitude.size() == 2);
  CHECK(lin.mean_magnitude[0] < 0.01);
  CHECK(std::abs(lin.mean_magnitude[1] - 1.0) < 1e-12);

  const DegreeProbeReport sq = degree_probe(q, 2, 4);
  CHECK(sq.shifts.size() == 2);
  for (double k : sq.shifts) {
    CHECK(k >= 0.1);
    CHECK(k < 1.0);
  }
  CHECK(std::abs(sq.mean_magnitude[2] - 1.0) < 1e-9);
  CHECK(sq.final_affine_residual < 1e-9);

  // differencing with k = 0 gives |s|^2 = 1
  const SampledSequence z = differentiate_sequence(q, 0.0);
  for (const auto& v : z.values) CHECK(std::abs(v - 1.0) < 1e-12);
}

TEST_CASE("sequence helpers reject bad input") {
  CHECK_THROWS(degree_probe(sample_character(NilCharacter::trivial(), uniform_grid(0, 1, 10)), 4, 1));
  CHECK_THROWS(uniform_grid(0.0, 1.0, 1));
  SampledSequence bare;
  CHECK_THROWS(grid_mean(bare));
  CHECK_THROWS(differentiate_sequence(bare, 1.0));
}
