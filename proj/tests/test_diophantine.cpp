#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "horolab/averages.hpp"
#include "horolab/diophantine.hpp"
#include "horolab/sampling.hpp"

using namespace horolab;

namespace {

SquareMatrix sl2_diag(double t) { return SquareMatrix(2, {{std::exp(t / 2), 0.0}, {0.0, std::exp(-t / 2)}}); }

SquareMatrix random_sl3_near_identity(Rng& rng, double size) {
  SquareMatrix x(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = rng.uniform(-size, size);
  const double tr = x.trace() / 3.0;
  for (int i = 0; i < 3; ++i) x(i, i) -= tr;
  // exp by a truncated series; det 1 is not needed, alpha_3 tracks det
  SquareMatrix term = SquareMatrix::identity(3), sum = SquareMatrix::identity(3);
  for (int n = 1; n < 20; ++n) {
    term = (1.0 / n) * (term * x);
    sum = sum + term;
  }
  return sum;
}

}  // namespace

TEST_CASE("alpha on diagonal matrices") {
  CHECK(alpha_i(SquareMatrix::identity(2), 1, 4).value == doctest::Approx(1.0));
  CHECK(alpha_i(SquareMatrix::identity(3), 2, 4).value == doctest::Approx(1.0));
  for (double t : {0.0, 0.7, 2.0, 5.0}) {
    const AlphaValue a = alpha_i_auto(sl2_diag(t), 1);
    CHECK(a.certified);
    CHECK(a.value == doctest::Approx(std::exp(t / 2)));
    CHECK(alpha_i(sl2_diag(t), 2, 1).value == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(alpha_i(SquareMatrix::identity(2), 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(alpha_i(SquareMatrix::identity(2), 0, 4), std::invalid_argument);
}

TEST_CASE("alpha is a function of the lattice") {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const SquareMatrix g = from_iwasawa(rng.uniform(-2, 2), std::exp(rng.uniform(-2, 2)), rng.uniform(0, 6.28));
    std::int64_t a, b, c, d;
    do {
      a = rng.integer(-3, 3), b = rng.integer(-3, 3), c = rng.integer(-3, 3), d = rng.integer(-3, 3);
    } while (a * d - b * c != 1);
    const SquareMatrix gamma(2, {{double(a), double(b)}, {double(c), double(d)}});
    const AlphaValue x = alpha_i_auto(g, 1), y = alpha_i_auto(g * gamma, 1);
    REQUIRE(x.certified);
    REQUIRE(y.certified);
    CHECK(x.value == doctest::Approx(y.value).epsilon(1e-9));
  }
}

TEST_CASE("membership in X_{>= eps}") {
  const SquareMatrix g(2, {{10.0, 0.0}, {0.0, 0.1}});
  CHECK(in_X1_geq(g, 0.05) == Membership::inside);
  CHECK(in_X1_geq(g, 0.2) == Membership::outside);
  CHECK(in_X_geq(g, 0.05) == Membership::inside);
  CHECK(in_X_geq(g, 0.2) == Membership::outside);
  CHECK_THROWS_AS(in_X1_geq(g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(in_X1_geq(g, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(in_X_geq(g, -1.0), std::invalid_argument);

  // X_{>= eps} is contained in X^1_{>= eps}
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const SquareMatrix h = random_sl3_near_identity(rng, 0.8);
    for (double eps : {0.2, 0.5, 0.9}) {
      const Membership full = in_X_geq(h, eps);
      if (full == Membership::inside) CHECK(in_X1_geq(h, eps) == Membership::inside);
    }
  }
}

TEST_CASE("alpha_2 through the dual lattice matches explicit pairs") {
  Rng rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const SquareMatrix g = random_sl3_near_identity(rng, 0.4);
    const AlphaValue dual = alpha_i_auto(g, 2);
    REQUIRE(dual.certified);
    const double oracle = min_decomposable_wedge_norm_k3(g, 2);
    CHECK(1.0 / dual.value == doctest::Approx(oracle).epsilon(1e-12));
  }
  CHECK_THROWS_AS(min_decomposable_wedge_norm_k3(SquareMatrix::identity(2), 1), std::invalid_argument);
}

TEST_CASE("Theta check") {
  const std::vector<double> grid = geometric_grid(16.0, 4096.0, 4.0);
  DiophSpec spec;
  for (const auto& rec : theta_diophantine_check(default_base_point(), spec, grid, 256, 1)) {
    CHECK(rec.witnessed);
    CHECK(rec.certified);
    CHECK(rec.alpha_values.size() == 2);
  }
  // a_{-log R} e has shortest vector R^{-1/2} whatever h in B_1 is applied
  for (const auto& rec : theta_diophantine_check(SquareMatrix::identity(2), spec, grid, 256, 1))
    CHECK_FALSE(rec.witnessed);
  spec.D = 0.6;
  for (const auto& rec : theta_diophantine_check(SquareMatrix::identity(2), spec, grid, 0, 1))
    CHECK(rec.witnessed);

  ThetaBound theta{{0.5, 0.0, 1.0}};
  CHECK(theta(0.0) == 1.0);
  CHECK(theta(2.0) == doctest::Approx(4.5));
}

TEST_CASE("Remez on one-variable examples") {
  const Box box{{-1.0}, {1.0}};
  const std::vector<double> eps{1e-3, 1e-2, 0.1, 0.5};
  const std::size_t n = 100000;
  const Polynomial t(1, {{1.0, {1}}});
  const RemezReport lin = remez_check(t, box, eps, n, 1);
  CHECK(lin.all_hold());
  CHECK(lin.sup_estimate == doctest::Approx(1.0));
  // |t| <= e has measure exactly e on [-1, 1]
  for (const auto& r : lin.records) CHECK(std::abs(r.measure - r.eps) < 3 * r.sigma + 1e-4);

  const Polynomial t2(1, {{1.0, {2}}});
  const RemezReport quad = remez_check(t2, box, eps, n, 1);
  CHECK(quad.all_hold());
  CHECK(quad.degree == 2);
  for (const auto& r : quad.records) CHECK(std::abs(r.measure - std::sqrt(r.eps)) < 3 * r.sigma + 1e-4);

  CHECK_THROWS_AS(remez_check(t, Box{{0.0}, {0.0}}, eps, n, 1), std::invalid_argument);
  CHECK_THROWS_AS(remez_check(t, Box{{0.0, 0.0}, {1.0, 1.0}}, eps, n, 1), std::invalid_argument);
}

TEST_CASE("Remez on random polynomials") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int vars = 1 + seed % 3, degree = 1 + seed % 6;
    const Polynomial p = Polynomial::random(vars, degree, seed);
    CHECK(p.degree() == degree);
    const Box box{std::vector<double>(vars, -1.0), std::vector<double>(vars, 1.0)};
    CHECK(remez_check(p, box, {1e-4, 1e-2, 0.1}, 5000, seed).all_hold());
  }
}

TEST_CASE("C-alpha probe is polynomial of the stated degree") {
  CAlphaProbe probe{HoroSubgroup::sl2_upper(), 8.0, {Vec3{0.0, 1.0, 0.0}}, default_base_point()};
  CHECK(probe.squared_degree() == 2);
  // u_s x0 e_2 = (s, 1): psi^2 = s^2 + 1
  for (double s : {-3.0, 0.0, 2.5}) {
    const double c[] = {s};
    CHECK(probe.value_squared(c) == doctest::Approx(s * s + 1.0));
  }
  CHECK(probe.domain().hi[0] == doctest::Approx(8.0));
  const RemezReport rep = remez_check([&](std::span<const double> h) { return probe.value_squared(h); },
                                      probe.squared_degree(), probe.domain(), {0.1, 1.0, 10.0}, 20000, 1);
  CHECK(rep.all_hold());

  const CAlphaConstants c = c_alpha_constants(HoroSubgroup::heisenberg_sl3(), 2);
  CHECK(c.C == 12.0);
  CHECK(c.alpha == doctest::Approx(0.25));
}

TEST_CASE("nondivergence fraction") {
  const NondivergenceReport rep =
      nondivergence_fraction(default_base_point(), HoroSubgroup::sl2_upper(), 16.0, 64.0, 1.0 / 3.0, 0.1, 500, 4);
  CHECK(rep.fraction >= 0.0);
  CHECK(rep.fraction <= 1.0);
  CHECK(rep.n_samples == 500);
  CHECK(rep.fraction <= rep.bound);
  CHECK_THROWS_AS(
      nondivergence_fraction(default_base_point(), HoroSubgroup::sl2_upper(), 16.0, 64.0, 0.3, 0.1, 0, 4),
      std::invalid_argument);
}

TEST_CASE("norm form") {
  const double y[] = {2.0, 3.0};
  CHECK(norm_form(y) == 6.0);

  const NormFormMin z2 = norm_form_min(SquareMatrix::identity(2), 2.0);
  REQUIRE(z2.value.has_value());
  CHECK(*z2.value == 0.0);
  CHECK(z2.certified);

  // normalized Minkowski embedding of Z[sqrt 2]: Nm = c^2 |b^2 - 2 a^2| >= c^2
  const double c = 1.0 / std::sqrt(2.0 * std::sqrt(2.0));
  const SquareMatrix g = c * SquareMatrix(2, {{std::sqrt(2.0), 1.0}, {-std::sqrt(2.0), 1.0}});
  CHECK(g.det() == doctest::Approx(1.0));
  for (double rho : {1.0, 10.0, 100.0}) {
    const NormFormMin m = norm_form_min(g, rho);
    REQUIRE(m.value.has_value());
    CHECK(m.certified);
    CHECK(*m.value == doctest::Approx(c * c).epsilon(1e-9));
  }
  CHECK_FALSE(norm_form_min(g, 0.1).value.has_value());
  CHECK_THROWS_AS(norm_form_min(g, 0.0), std::invalid_argument);
}

TEST_CASE("norm form properties") {
  Rng rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + trial % 2;
    double y[3], ay[3];
    double w[3] = {rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0};
    w[k - 1] = -(w[0] + (k == 3 ? w[1] : 0.0));
    double inf = 0.0;
    for (int i = 0; i < k; ++i) {
      y[i] = rng.uniform(-5, 5);
      ay[i] = std::exp(w[i]) * y[i];
      inf = std::max(inf, std::abs(y[i]));
    }
    const double n = norm_form(std::span<const double>(y, k));
    CHECK(norm_form(std::span<const double>(ay, k)) == doctest::Approx(n).epsilon(1e-12));
    CHECK(std::pow(inf, k) >= n);
  }
}
