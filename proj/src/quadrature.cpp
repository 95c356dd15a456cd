#include "horolab/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace horolab {

const char* to_string(QuadratureScheme s) {
  return s == QuadratureScheme::uniform_doubling_1d ? "uniform_doubling_1d" : "mc_quasirandom_3d";
}

QuadratureScheme quadrature_scheme_from_string(const std::string& s) {
  if (s == "uniform_doubling_1d") return QuadratureScheme::uniform_doubling_1d;
  if (s == "mc_quasirandom_3d") return QuadratureScheme::mc_quasirandom_3d;
  throw std::invalid_argument("unknown quadrature scheme: " + s);
}

PanelRule panel_rule(double t0, double t1, std::vector<double> breakpoints, int level) {
  if (!(t1 > t0)) throw std::invalid_argument("panel_rule: empty interval");
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& abscissa = Gauss::abscissa();  // nonnegative half, 5 entries
  const auto& weight = Gauss::weights();

  breakpoints.push_back(t0);
  breakpoints.push_back(t1);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                   [t0, t1](double b) { return b < t0 || b > t1; }),
                    breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  const double split = std::ldexp(1.0, level);
  PanelRule rule;
  for (std::size_t s = 0; s + 1 < breakpoints.size(); ++s) {
    const double a = breakpoints[s], b = breakpoints[s + 1];
    if (!(b > a)) continue;
    const auto panels = static_cast<std::size_t>(std::ceil(b - a) * split);
    const double h = (b - a) / static_cast<double>(std::max<std::size_t>(panels, 1));
    for (std::size_t p = 0; p < std::max<std::size_t>(panels, 1); ++p) {
      const double lo = a + h * static_cast<double>(p);
      const double mid = lo + 0.5 * h;
      const double half = 0.5 * h;
      for (std::size_t i = 0; i < abscissa.size(); ++i) {
        rule.nodes.push_back(mid + half * abscissa[i]);
        rule.weights.push_back(half * weight[i]);
        if (abscissa[i] != 0.0) {
          rule.nodes.push_back(mid - half * abscissa[i]);
          rule.weights.push_back(half * weight[i]);
        }
      }
    }
  }
  return rule;
}

VectorQuadratureResult refine_until_converged(
    const std::function<void(const PanelRule&, std::vector<std::complex<double>>&)>& compute, double t0, double t1,
    const std::vector<double>& breakpoints, const QuadratureSpec& spec, std::size_t evals_per_node) {
  VectorQuadratureResult res;
  std::vector<std::complex<double>> cur;
  for (int level = 0;; ++level) {
    const PanelRule rule = panel_rule(t0, t1, breakpoints, level);
    if (level > 0 && rule.nodes.size() * evals_per_node > spec.max_nodes) {
      res.converged = false;
      return res;
    }
    compute(rule, cur);
    res.nodes = rule.nodes.size();
    res.level = level;
    if (level > 0) {
      res.previous = res.value;
      res.value = cur;
      bool ok = true;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (std::abs(res.value[i] - res.previous[i]) >= spec.target_rel_err * (1.0 + std::abs(res.value[i]))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        res.converged = true;
        return res;
      }
    } else {
      res.value = cur;
    }
  }
}

QuadratureResult average_1d(const std::function<std::complex<double>(double)>& fn, double t0, double t1,
                            const std::vector<double>& breakpoints, const QuadratureSpec& spec) {
  const double inv_len = 1.0 / (t1 - t0);
  auto compute = [&](const PanelRule& rule, std::vector<std::complex<double>>& out) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * fn(rule.nodes[i]);
    out.assign(1, sum * inv_len);
  };
  const auto v = refine_until_converged(compute, t0, t1, breakpoints, spec);
  QuadratureResult r;
  r.value = v.value.empty() ? 0.0 : v.value[0];
  r.previous = v.previous.empty() ? r.value : v.previous[0];
  r.nodes = v.nodes;
  r.level = v.level;
  r.converged = v.converged;
  return r;
}

}  // namespace horolab
