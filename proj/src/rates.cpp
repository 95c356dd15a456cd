#include "horolab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horolab {

RateParams sl2_nil3_params() { return RateParams{}; }

void validate(const RateParams& p) {
  if (!(p.gamma_equi > 0.0) || !(p.s > 0.0) || !(p.d_H > 0.0)) {
    throw std::invalid_argument("rate params: gamma_equi, s and d_H must be positive");
  }
  if (p.dim_H < 1 || p.dim_G < 1 || p.k < 1 || p.dim_N < 0) {
    throw std::invalid_argument("rate params: dimensions out of range");
  }
  if (p.M < 1) throw std::invalid_argument("rate params: M must be >= 1");
}

double gamma_equi_uniform(double s, int dim_G) {
  if (!(s > 0.0)) throw std::invalid_argument("gamma_equi_uniform: s must be positive");
  if (dim_G < 1) throw std::invalid_argument("gamma_equi_uniform: dim_G must be positive");
  return 2.0 * s / static_cast<double>(dim_G + 2);
}

double gamma_min_term(const RateParams& p) {
  validate(p);
  return std::min(p.gamma_equi, p.s / (p.d_H * (2.0 * p.d_H + 3.0 * p.s)));
}

double gamma_chain_ratio(const RateParams& p) {
  validate(p);
  const double m = static_cast<double>(p.M);
  return (1.0 / (2.0 * p.dim_H + 2.0)) * (2.0 * m / (2.0 * m + 1.0));
}

double gamma_disjointness(const RateParams& p) {
  return std::pow(gamma_chain_ratio(p), p.dim_N) * gamma_min_term(p);
}

std::vector<double> gamma_chain(const RateParams& p) {
  const double ratio = gamma_chain_ratio(p);
  const double base = gamma_min_term(p);
  std::vector<double> out;
  for (int n = 0; n <= p.dim_N; ++n) out.push_back(std::pow(ratio, n) * base);
  return out;
}

double corollary_gamma(double re_s1) {
  if (!(re_s1 > 0.0 && re_s1 <= 1.0)) throw std::invalid_argument("corollary_gamma: re_s1 must lie in (0, 1]");
  return (216.0 / 125.0) * re_s1 / (2.0 + 3.0 * re_s1);
}

double stated_gamma_bound() { return 216.0 / (15625.0 * 7.0); }

double default_D(double s, double d_H, int k, int dim_G) {
  if (!(s > 0.0) || !(d_H > 0.0) || k < 1 || dim_G < 1) {
    throw std::invalid_argument("default_D: arguments must be positive");
  }
  return 2.0 * s * d_H / (static_cast<double>(k) * dim_G);
}

RateReport rate_report(const RateParams& p) {
  RateReport r;
  r.inputs = p;
  r.gamma_def_value = gamma_disjointness(p);
  r.chain = gamma_chain(p);
  r.corollary_formula_value = corollary_gamma(std::min(p.s, 1.0));
  r.paper_stated_value = stated_gamma_bound();
  auto differ = [](double a, double b) { return std::abs(a - b) > 1e-9 * std::max(std::abs(a), std::abs(b)); };
  r.discrepancy_flag = differ(r.gamma_def_value, r.corollary_formula_value) ||
                       differ(r.gamma_def_value, r.paper_stated_value) ||
                       differ(r.corollary_formula_value, r.paper_stated_value);
  return r;
}

}  // namespace horolab
