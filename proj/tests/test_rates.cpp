#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "horolab/rates.hpp"
#include "horolab/sampling.hpp"

using namespace horolab;

TEST_CASE("uniform equidistribution exponent") {
  CHECK(gamma_equi_uniform(1.0, 3) == doctest::Approx(0.4));
  CHECK(gamma_equi_uniform(0.5, 3) == doctest::Approx(0.2));
  CHECK(gamma_equi_uniform(1.0, 8) == doctest::Approx(0.2));
  CHECK_THROWS_AS(gamma_equi_uniform(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(gamma_equi_uniform(1.0, 0), std::invalid_argument);
}

TEST_CASE("SL2 instance with a degree-3 nilsequence") {
  const RateParams p = sl2_nil3_params();
  // min{2/5, 1/5} = 1/5; ratio (1/4)(24/25) = 6/25; gamma = (6/25)^3 / 5 = 6^3 / 5^7
  CHECK(gamma_min_term(p) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(gamma_chain_ratio(p) == doctest::Approx(6.0 / 25.0).epsilon(1e-15));
  CHECK(std::abs(gamma_disjointness(p) - 216.0 / 78125.0) < 1e-12);
  CHECK(gamma_disjointness(p) == doctest::Approx(0.0027648).epsilon(1e-12));

  const auto chain = gamma_chain(p);
  REQUIRE(chain.size() == 4);
  CHECK(chain[0] == gamma_min_term(p));
  CHECK(chain[3] == doctest::Approx(gamma_disjointness(p)).epsilon(1e-15));

  CHECK(corollary_gamma(1.0) == doctest::Approx(0.3456).epsilon(1e-15));
  CHECK(stated_gamma_bound() == doctest::Approx(0.0019749).epsilon(1e-4));
  CHECK_THROWS_AS(corollary_gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS(corollary_gamma(1.5), std::invalid_argument);

  CHECK(default_D(1.0, 1.0, 2, 3) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(default_D(0.0, 1.0, 2, 3), std::invalid_argument);
}

TEST_CASE("rate report flags the three disagreeing values") {
  const RateReport r = rate_report(sl2_nil3_params());
  CHECK(r.discrepancy_flag);
  CHECK(r.gamma_def_value == doctest::Approx(0.0027648));
  CHECK(r.corollary_formula_value == doctest::Approx(0.3456));
  CHECK(r.paper_stated_value == stated_gamma_bound());
  CHECK(r.chain.size() == 4);
}

TEST_CASE("dim N = 0 leaves the min term") {
  RateParams p = sl2_nil3_params();
  p.dim_N = 0;
  CHECK(gamma_disjointness(p) == gamma_min_term(p));
  p.gamma_equi = 0.05;
  CHECK(gamma_min_term(p) == 0.05);
}

TEST_CASE("validation") {
  RateParams p = sl2_nil3_params();
  CHECK_NOTHROW(validate(p));
  p.M = 0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = sl2_nil3_params();
  p.s = -1.0;
  CHECK_THROWS_AS(gamma_min_term(p), std::invalid_argument);
  p = sl2_nil3_params();
  p.dim_N = -1;
  CHECK_THROWS_AS(gamma_chain(p), std::invalid_argument);
}

TEST_CASE("rate properties on random parameters") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    RateParams p;
    p.gamma_equi = rng.uniform(0.01, 1.0);
    p.s = rng.uniform(0.05, 2.0);
    p.d_H = rng.uniform(0.5, 6.0);
    p.dim_H = static_cast<int>(rng.integer(1, 8));
    p.dim_N = static_cast<int>(rng.integer(0, 10));
    p.M = static_cast<int>(rng.integer(1, 50));

    const double g = gamma_disjointness(p);
    CHECK(g > 0.0);
    CHECK(g <= gamma_min_term(p));
    CHECK(gamma_min_term(p) <= p.gamma_equi);

    // monotone: larger dim_N, smaller M, larger gamma_equi
    RateParams q = p;
    q.dim_N += 1;
    CHECK(gamma_disjointness(q) < g);
    q = p;
    q.M += 1;
    CHECK(gamma_disjointness(q) >= g);
    q = p;
    q.gamma_equi *= 2.0;
    CHECK(gamma_disjointness(q) >= g);

    const auto chain = gamma_chain(p);
    for (std::size_t n = 1; n < chain.size(); ++n) CHECK(chain[n] < chain[n - 1]);

    const double s1 = rng.uniform(0.01, 1.0);
    CHECK(corollary_gamma(s1) > 0.0);
    CHECK(corollary_gamma(s1) <= corollary_gamma(1.0));
  }
}
