#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace horolab {

enum class QuadratureScheme { uniform_doubling_1d, mc_quasirandom_3d };

const char* to_string(QuadratureScheme s);
QuadratureScheme quadrature_scheme_from_string(const std::string& s);

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::uniform_doubling_1d;
  double target_rel_err = 1e-6;
  std::size_t max_nodes = std::size_t{1} << 24;
  std::uint64_t seed = 0;
};

// Composite 10-point Gauss-Legendre rule on panels of [t0, t1]. Level 0 cuts
// the interval at the given breakpoints and then into panels of length <= 1;
// each further level halves every panel.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to t1 - t0
};
PanelRule panel_rule(double t0, double t1, std::vector<double> breakpoints, int level);

struct QuadratureResult {
  std::complex<double> value;     // finest refinement
  std::complex<double> previous;  // the one before
  std::size_t nodes = 0;
  int level = 0;
  bool converged = false;
};

// Average (1 / (t1 - t0)) * integral of fn over [t0, t1], doubling the panel
// count until successive refinements differ by < target_rel_err (1 + |value|)
// or max_nodes is exceeded (converged = false).
QuadratureResult average_1d(const std::function<std::complex<double>(double)>& fn, double t0, double t1,
                            const std::vector<double>& breakpoints, const QuadratureSpec& spec);

// Same doubling loop for a vector of quantities computed from one rule: the
// callback fills `out` from (nodes, weights). Convergence is judged on every
// component. Returns the final vector and fills `previous`.
struct VectorQuadratureResult {
  std::vector<std::complex<double>> value;
  std::vector<std::complex<double>> previous;
  std::size_t nodes = 0;
  int level = 0;
  bool converged = false;
};
VectorQuadratureResult refine_until_converged(
    const std::function<void(const PanelRule&, std::vector<std::complex<double>>&)>& compute, double t0, double t1,
    const std::vector<double>& breakpoints, const QuadratureSpec& spec, std::size_t evals_per_node = 1);

}  // namespace horolab
