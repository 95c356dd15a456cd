#pragma once

#include <vector>

namespace horolab {

// Exponent symbols of the disjointness and equidistribution rates.
struct RateParams {
  double gamma_equi = 0.4;
  double s = 1.0;
  double s_prime = 1.0;
  double d_H = 1.0;
  int dim_H = 1;
  int dim_N = 3;
  int dim_G = 3;
  int M = 12;
  double K = 1.0;
  double K_prime = 1.0;
  int k = 2;
  double D = 1.0 / 3.0;
};

// Horocycle flow on SL2 twisted by a degree-3 nilsequence (d_H = dim H = 1,
// dim N = 3, M = 12, s = 1, gamma_equi = 0.4).
RateParams sl2_nil3_params();

// Throws std::invalid_argument unless the rate-bearing fields are positive
// and M >= 1.
void validate(const RateParams& p);

// 2s / (dim G + 2). Throws std::invalid_argument for s <= 0.
double gamma_equi_uniform(double s, int dim_G);

// min{gamma_equi, s / (d_H (2 d_H + 3 s))}.
double gamma_min_term(const RateParams& p);

// (1 / (2 dim H + 2))^{dim N} (2M / (2M + 1))^{dim N} times the min term.
double gamma_disjointness(const RateParams& p);

// gamma_0, ..., gamma_{dim N}; gamma_n carries the prefactor to the power n.
std::vector<double> gamma_chain(const RateParams& p);

// (1 / (2 dim H + 2)) (2M / (2M + 1)).
double gamma_chain_ratio(const RateParams& p);

// (6^3 / 5^3) re_s1 / (2 + 3 re_s1); re_s1 in (0, 1].
double corollary_gamma(double re_s1);

// The stated bound 6^3 / (5^6 7).
double stated_gamma_bound();

// 2 s d_H / (k dim G).
double default_D(double s, double d_H, int k, int dim_G);

struct RateReport {
  RateParams inputs;
  double gamma_def_value = 0.0;
  double corollary_formula_value = 0.0;
  double paper_stated_value = 0.0;
  std::vector<double> chain;
  // true when the three values disagree beyond 1e-9 relative
  bool discrepancy_flag = false;
};

RateReport rate_report(const RateParams& p);

}  // namespace horolab
