#include "horolab/averages.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "horolab/diophantine.hpp"
#include "horolab/errors.hpp"
#include "horolab/sampling.hpp"

namespace horolab {

SquareMatrix default_base_point() { return SquareMatrix(2, {{1.0, 0.0}, {std::sqrt(2.0), 1.0}}); }

SquareMatrix horocycle(double t) { return SquareMatrix(2, {{1.0, t}, {0.0, 1.0}}); }

std::complex<double> twisted_integrand(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x,
                                       double t) {
  const std::complex<double> fv = eval_test_function(f, horocycle(t) * x);
  if (psi.kind() == NilCharacter::Kind::trivial) return fv;
  return psi.at(t) * fv;
}

namespace {

// Reduced representative: same point, smaller entries along the orbit.
SquareMatrix conditioned(const SquareMatrix& x) { return reduce_modular(x).reduced; }

}  // namespace

AverageResult twisted_average(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x, double R,
                              const QuadratureSpec& q) {
  if (!(R >= 1.0)) throw std::invalid_argument("twisted_average: R must be >= 1");
  const SquareMatrix base = conditioned(x);
  const auto r = average_1d([&](double t) { return twisted_integrand(f, psi, base, t); }, -R, R,
                            psi.breakpoints(-R, R), q);
  return {r.value, r.previous, r.nodes, r.converged};
}

AverageResult folner_average(const FolnerBall& ball, const std::function<std::complex<double>(const SquareMatrix&)>& fn,
                             const QuadratureSpec& q) {
  const HoroSubgroup& h = ball.subgroup();
  const QuasiStream stream(h.dim_h(), q.seed);
  const double log_r = std::log(ball.radius());
  std::vector<double> c(h.dim_h());
  std::complex<double> sum = 0.0;
  std::size_t n = 0;
  AverageResult res;
  std::complex<double> prev = 0.0;
  for (std::size_t target = 1024;; target *= 2) {
    for (; n < target; ++n) {
      stream.point(n, c.data());
      for (double& v : c) v = 2.0 * v - 1.0;
      sum += fn(conj_by_flow(h.flow(), log_r, nil_exp(h.from_coordinates(c))));
    }
    const std::complex<double> cur = sum / static_cast<double>(n);
    res.nodes = n;
    if (target > 1024 && std::abs(cur - prev) < q.target_rel_err * (1.0 + std::abs(cur))) {
      res.value = cur;
      res.previous = prev;
      res.converged = true;
      return res;
    }
    if (2 * target > q.max_nodes) {
      res.value = cur;
      res.previous = prev;
      res.converged = false;
      return res;
    }
    prev = cur;
  }
}

DecayReport decay_fit(const std::vector<double>& R_grid, const std::vector<double>& volumes,
                      const std::vector<double>& magnitudes) {
  if (R_grid.size() < 4) throw std::invalid_argument("decay_fit: need at least 4 grid points");
  if (volumes.size() != R_grid.size() || magnitudes.size() != R_grid.size()) {
    throw std::invalid_argument("decay_fit: size mismatch");
  }
  DecayReport rep;
  rep.R_grid = R_grid;
  rep.volumes = volumes;
  rep.magnitudes = magnitudes;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    if (magnitudes[i] == 0.0) {
      rep.excluded.push_back(i);
      continue;
    }
    lx.push_back(std::log(volumes[i]));
    ly.push_back(std::log(magnitudes[i]));
  }
  const std::size_t n = lx.size();
  if (n < 3) throw std::invalid_argument("decay_fit: fewer than 3 nonzero magnitudes");
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("decay_fit: volumes must not all coincide");
  const double slope = sxy / sxx;
  const double icpt = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (icpt + slope * lx[i]);
    rss += r * r;
  }
  rep.eta = -slope;
  rep.intercept = icpt;
  rep.eta_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  return rep;
}

std::vector<double> geometric_grid(double r_min, double r_max, double ratio) {
  if (!(r_min > 0.0) || !(r_max >= r_min) || !(ratio > 1.0)) {
    throw std::invalid_argument("geometric_grid: need 0 < R_min <= R_max and ratio > 1");
  }
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double r = r_min * std::pow(ratio, i);
    if (r > r_max * (1.0 + 1e-9)) break;
    g.push_back(r);
  }
  return g;
}

DecayReport twisted_decay(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x,
                          const std::vector<double>& R_grid, const QuadratureSpec& q,
                          std::vector<std::complex<double>>* averages) {
  std::vector<double> vols, mags;
  if (averages) averages->clear();
  for (double R : R_grid) {
    const AverageResult a = twisted_average(f, psi, x, R, q);
    if (!a.converged) {
      throw NumericalFailure("twisted_average did not converge at R = " + std::to_string(R) +
                             "; last refinements " + std::to_string(std::abs(a.previous)) + ", " +
                             std::to_string(std::abs(a.value)));
    }
    vols.push_back(2.0 * R);
    mags.push_back(std::abs(a.value));
    if (averages) averages->push_back(a.value);
  }
  return decay_fit(R_grid, vols, mags);
}

VdcReport vdc_check(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x, double R, double r,
                    const QuadratureSpec& q, std::size_t n_b_samples, std::uint64_t seed) {
  if (!(r > 0.0 && r < R)) throw std::invalid_argument("vdc_check: need 0 < r < R");
  if (n_b_samples < 1) throw std::invalid_argument("vdc_check: n_b_samples must be positive");
  const SquareMatrix base = conditioned(x);
  VdcReport rep;
  const QuasiStream stream(1, seed);
  for (std::size_t i = 0; i < n_b_samples; ++i) rep.b_samples.push_back(r * (2.0 * stream.point(i)[0] - 1.0));
  const std::size_t m = n_b_samples;

  // every shifted integrand t -> F(t + b_i) contributes its own breakpoints
  std::vector<double> breaks = psi.breakpoints(-R, R);
  for (double b : rep.b_samples) {
    const auto shifted = psi.breakpoints(-R + b, R + b);
    for (double s : shifted) breaks.push_back(s - b);
  }

  double sup = 0.0;
  const double inv_len = 1.0 / (2.0 * R);
  // quantities: [0] = average of F, then gamma(i, j) for i <= j
  auto compute = [&](const PanelRule& rule, std::vector<std::complex<double>>& out) {
    const std::size_t n = rule.nodes.size();
    std::vector<std::complex<double>> vals(m * n);
    std::complex<double> avg = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double t = rule.nodes[k];
      const std::complex<double> v0 = twisted_integrand(f, psi, base, t);
      avg += rule.weights[k] * v0;
      sup = std::max(sup, std::abs(v0));
      for (std::size_t i = 0; i < m; ++i) {
        const std::complex<double> v = twisted_integrand(f, psi, base, t + rep.b_samples[i]);
        vals[i * n + k] = v;
        sup = std::max(sup, std::abs(v));
      }
    }
    out.assign(1 + m * (m + 1) / 2, 0.0);
    out[0] = avg * inv_len;
    std::size_t idx = 1;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        std::complex<double> g = 0.0;
        for (std::size_t k = 0; k < n; ++k) g += rule.weights[k] * vals[i * n + k] * std::conj(vals[j * n + k]);
        out[idx++] = g * inv_len;
      }
  };
  const auto res = refine_until_converged(compute, -R, R, breaks, q, m + 1);
  rep.converged = res.converged;
  rep.A = std::abs(res.value[0]);
  double dsum = 0.0;
  std::size_t idx = 1;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      // gamma(j, i) = conj gamma(i, j)
      dsum += (i == j ? 1.0 : 2.0) * std::abs(res.value[idx++]);
    }
  rep.D = dsum / static_cast<double>(m * m);
  for (double b : rep.b_samples) rep.beta = std::max(rep.beta, std::min(2.0, std::abs(b) / R));
  rep.sup_norm = sup;
  rep.bound = std::sqrt(rep.D) + 2.0 * rep.sup_norm * rep.beta;
  rep.tol = 10.0 * q.target_rel_err * rep.sup_norm;
  rep.holds = rep.A <= rep.bound + rep.tol;
  return rep;
}

namespace {

void require_vanishing_integral(const TestFunction& f) {
  if (f.kind == TestFunctionKind::incomplete_eisenstein &&
      std::abs(eisenstein_mean(f.h) - f.mean_offset) > 1e-12 * (1.0 + std::abs(f.mean_offset))) {
    throw std::invalid_argument("matrix_coefficient: test function must have vanishing integral");
  }
}

}  // namespace

MatrixCoefficientEstimate matrix_coefficient(const TestFunction& f1, const TestFunction& f2, const SquareMatrix& g,
                                             std::size_t n, std::uint64_t seed) {
  require_vanishing_integral(f1);
  require_vanishing_integral(f2);
  const auto pts = haar_sample_modular(n, seed);
  std::complex<double> sum = 0.0;
  double sq = 0.0;
  for (const auto& p : pts) {
    const std::complex<double> v = eval_test_function(f1, g * p.reduced) * std::conj(eval_test_function(f2, p));
    sum += v;
    sq += std::norm(v);
  }
  MatrixCoefficientEstimate est;
  est.n_samples = n;
  est.value = sum / static_cast<double>(n);
  const double var = std::max(0.0, sq / n - std::norm(est.value));
  est.std_err = std::sqrt(var / static_cast<double>(n));
  est.low_signal = est.std_err > std::abs(est.value);
  return est;
}

CoefficientDecay coefficient_decay_fit(const TestFunction& f, const DiagonalFlow& flow,
                                       const std::vector<double>& t_grid, std::size_t n, std::uint64_t seed) {
  CoefficientDecay out;
  out.t_grid = t_grid;
  std::vector<double> mags;
  for (double t : t_grid) {
    const SquareMatrix a = flow.at(t);
    double norm = 0.0;
    for (int i = 0; i < a.dim(); ++i) norm = std::max(norm, a(i, i));
    out.norms.push_back(norm);
    // same seed for every t: common random numbers across the grid
    out.estimates.push_back(matrix_coefficient(f, f, a, n, seed));
    const auto& e = out.estimates.back();
    // below the Monte Carlo floor: excluded from the fit
    mags.push_back(std::abs(e.value) >= 2.0 * e.std_err ? std::abs(e.value) : 0.0);
  }
  const DecayReport fit = decay_fit(t_grid, out.norms, mags);
  out.excluded = fit.excluded;
  out.s_hat = fit.eta;
  out.s_stderr = fit.eta_stderr;
  return out;
}

std::vector<MeanErgodicRecord> mean_ergodic_check(const TestFunction& f, const std::vector<double>& R_grid,
                                                  double delta, double s, std::size_t n_points, std::uint64_t seed,
                                                  const QuadratureSpec& q) {
  if (!(delta >= 0.0 && delta < s)) throw std::invalid_argument("mean_ergodic_check: need 0 <= delta < s");
  const auto pts = haar_sample_modular(n_points, seed);
  std::vector<MeanErgodicRecord> out;
  for (double R : R_grid) {
    MeanErgodicRecord rec;
    rec.R = R;
    rec.volume = 2.0 * R;
    rec.threshold = std::pow(rec.volume, -delta);
    std::size_t hits = 0;
    for (const auto& p : pts) {
      const AverageResult a = twisted_average(f, NilCharacter::trivial(), p.reduced, R, q);
      if (!a.converged) throw NumericalFailure("mean_ergodic_check: average did not converge");
      if (std::abs(a.value) >= rec.threshold) ++hits;
    }
    rec.fraction = static_cast<double>(hits) / static_cast<double>(n_points);
    rec.sigma = std::sqrt(std::max(rec.fraction * (1.0 - rec.fraction), 1.0 / n_points) / n_points);
    rec.bound = kMeanErgodicConstant * std::pow(rec.volume, 2.0 * delta - 2.0 * s);
    out.push_back(rec);
  }
  return out;
}

SquareMatrix expm_sl2(const SquareMatrix& x) {
  if (x.dim() != 2) throw std::invalid_argument("expm_sl2: expected 2x2");
  // X^2 = -det(X) I for traceless X
  const double mu2 = -x.det();
  double c, s;
  if (mu2 > 0.0) {
    const double mu = std::sqrt(mu2);
    c = std::cosh(mu);
    s = std::sinh(mu) / mu;
  } else if (mu2 < 0.0) {
    const double mu = std::sqrt(-mu2);
    c = std::cos(mu);
    s = std::sin(mu) / mu;
  } else {
    c = 1.0;
    s = 1.0;
  }
  return c * SquareMatrix::identity(2) + s * x;
}

KeyLemmaReport key_lemma_check(const SquareMatrix& x, const SquareMatrix& perturbation, double R,
                               const TestFunction& f, const QuadratureSpec& q) {
  if (perturbation.dim() != 2 || std::abs(perturbation.trace()) > 1e-14) {
    throw std::invalid_argument("key_lemma_check: perturbation must be a traceless 2x2 matrix");
  }
  const DiagonalFlow flow = DiagonalFlow::sl2();
  KeyLemmaReport rep;
  rep.delta = perturbation.max_abs();
  const SquareMatrix pulled = flow.at(-std::log(R)) * x;
  const AlphaValue a1 = alpha_i_auto(pulled, 1);
  if (!a1.certified) throw std::invalid_argument("key_lemma_check: alpha_1 at a_{-log R} x not certified");
  const ModularPoint pulled_pt = reduce_modular(pulled);
  rep.injectivity_guard = 0.1 * inj_rad_lower_bound(pulled_pt, std::min(1.0, 1.0 / a1.value), 2);
  if (rep.delta >= rep.injectivity_guard) {
    throw std::invalid_argument("key_lemma_check: perturbation exceeds the injectivity guard");
  }
  const LieSplitting split = split_by_weights(flow, perturbation);
  rep.minus_norm = split.minus.max_abs();
  rep.zero_norm = split.zero.max_abs();
  rep.plus_norm = split.plus.max_abs();

  const SquareMatrix y = flow.at(std::log(R)) * expm_sl2(perturbation) * pulled;
  rep.distance = modular_distance(pulled_pt, reduce_modular(expm_sl2(perturbation) * pulled));
  const NilCharacter trivial = NilCharacter::trivial();
  const AverageResult ax = twisted_average(f, trivial, x, R, q);
  const AverageResult ay = twisted_average(f, trivial, y, R, q);
  if (!ax.converged || !ay.converged) throw NumericalFailure("key_lemma_check: average did not converge");
  rep.avg_x = ax.value;
  rep.avg_y = ay.value;
  rep.difference = std::abs(ax.value - ay.value);
  rep.bound = kKeyLemmaConstant * rep.delta;
  rep.holds = rep.difference <= rep.bound;
  return rep;
}

long lattice_count(double R) { return 2 * static_cast<long>(std::floor(R)) + 1; }

std::complex<double> discrete_average(const TestFunction& f, const NilCharacter& psi, const SquareMatrix& x,
                                      double R) {
  if (!(R >= 2.0)) throw std::invalid_argument("discrete_average: R must be >= 2");
  const SquareMatrix base = conditioned(x);
  const auto n = static_cast<long>(std::floor(R));
  std::complex<double> sum = 0.0;
  for (long t = -n; t <= n; ++t) sum += twisted_integrand(f, psi, base, static_cast<double>(t));
  return sum / static_cast<double>(lattice_count(R));
}

}  // namespace horolab
