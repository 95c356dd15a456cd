#include "horolab/nilchar.hpp"

#include <cmath>
#include <stdexcept>

#include "horolab/group_core.hpp"
#include "horolab/sampling.hpp"

namespace horolab {

std::complex<double> e1(double theta) {
  const double frac = theta - std::round(theta);
  return std::polar(1.0, 2.0 * M_PI * frac);
}

std::complex<double> heis_char_eval(const HeisenbergPoint& p) { return e1(p.y - p.x * std::floor(p.z)); }

HeisenbergPoint heis_orbit_point(double alpha, double t, const HeisenbergPoint& y0) {
  const double s = std::sqrt(alpha) * t;
  const NilAlgebraElement gen(SquareMatrix(3, {{0.0, s, 0.0}, {0.0, 0.0, s}, {0.0, 0.0, 0.0}}));
  return HeisenbergPoint::from_matrix(nil_exp(gen) * y0.matrix());
}

std::complex<double> bracket_closed_form(double alpha, double t) {
  const double s = std::sqrt(alpha) * t;
  return e1(alpha * t * t / 2.0 - (s - std::floor(s)) * s);
}

NilCharacter NilCharacter::trivial() { return {Kind::trivial, 0.0, {}}; }
NilCharacter NilCharacter::linear(double beta) { return {Kind::linear, beta, {}}; }
NilCharacter NilCharacter::quadratic(double alpha) { return {Kind::quadratic, alpha, {}}; }

NilCharacter NilCharacter::bracket(double alpha, HeisenbergPoint y0) {
  if (alpha < 0.0) throw std::invalid_argument("NilCharacter::bracket: alpha must be nonnegative");
  return {Kind::bracket, alpha, y0};
}

int NilCharacter::degree() const {
  switch (kind_) {
    case Kind::trivial:
      return 0;
    case Kind::linear:
      return 1;
    default:
      return 2;
  }
}

std::complex<double> NilCharacter::at(double t) const {
  switch (kind_) {
    case Kind::trivial:
      return 1.0;
    case Kind::linear:
      return e1(alpha_ * t);
    case Kind::quadratic:
      return e1(alpha_ * t * t / 2.0);
    case Kind::bracket:
      return heis_char_eval(heis_orbit_point(alpha_, t, origin_));
  }
  return 1.0;
}

std::vector<double> NilCharacter::breakpoints(double t0, double t1) const {
  std::vector<double> out;
  if (kind_ != Kind::bracket || alpha_ <= 0.0) return out;
  // z(t) = sqrt(alpha) t + z0
  const double ra = std::sqrt(alpha_);
  const double z0 = origin_.z;
  const auto m_lo = static_cast<long long>(std::ceil(ra * t0 + z0));
  const auto m_hi = static_cast<long long>(std::floor(ra * t1 + z0));
  for (long long m = m_lo; m <= m_hi; ++m) {
    const double t = (static_cast<double>(m) - z0) / ra;
    if (t > t0 && t < t1) out.push_back(t);
  }
  return out;
}

const char* to_string(NilCharacter::Kind k) {
  switch (k) {
    case NilCharacter::Kind::trivial:
      return "trivial";
    case NilCharacter::Kind::linear:
      return "linear";
    case NilCharacter::Kind::quadratic:
      return "quadratic";
    default:
      return "bracket";
  }
}

SampledSequence sample_character(const NilCharacter& psi, const std::vector<double>& t_grid) {
  SampledSequence s;
  s.t = t_grid;
  s.origin = psi.origin();
  s.generator = [psi](double t) { return psi.at(t); };
  s.values.reserve(t_grid.size());
  for (double t : t_grid) s.values.push_back(psi.at(t));
  return s;
}

SampledSequence orbit_character(double alpha, const std::vector<double>& t_grid, const HeisenbergPoint& y0) {
  return sample_character(NilCharacter::bracket(alpha, y0), t_grid);
}

SampledSequence differentiate_sequence(const SampledSequence& s, double k) {
  if (!s.generator) throw std::invalid_argument("differentiate_sequence: sequence has no generator");
  SampledSequence d;
  d.t = s.t;
  d.origin = s.origin;
  auto g = s.generator;
  d.generator = [g, k](double t) { return g(t + k) * std::conj(g(t)); };
  d.values.reserve(s.t.size());
  for (std::size_t i = 0; i < s.t.size(); ++i) d.values.push_back(g(s.t[i] + k) * std::conj(s.values[i]));
  return d;
}

std::complex<double> grid_mean(const SampledSequence& s) {
  if (s.values.empty()) throw std::invalid_argument("grid_mean: empty sequence");
  std::complex<double> sum = 0.0;
  for (const auto& v : s.values) sum += v;
  return sum / static_cast<double>(s.values.size());
}

double affine_phase_residual(const SampledSequence& s) {
  const std::size_t n = s.values.size();
  if (n < 3) throw std::invalid_argument("affine_phase_residual: need at least 3 points");
  std::vector<double> phase(n);
  phase[0] = std::arg(s.values[0]) / (2.0 * M_PI);
  for (std::size_t i = 1; i < n; ++i) {
    double p = std::arg(s.values[i]) / (2.0 * M_PI);
    p += std::round(phase[i - 1] - p);
    phase[i] = p;
  }
  // least squares on centred abscissae
  double tm = 0.0, pm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tm += s.t[i];
    pm += phase[i];
  }
  tm /= n;
  pm /= n;
  double stt = 0.0, stp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (s.t[i] - tm) * (s.t[i] - tm);
    stp += (s.t[i] - tm) * (phase[i] - pm);
  }
  const double slope = stt > 0.0 ? stp / stt : 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(phase[i] - (pm + slope * (s.t[i] - tm))));
  }
  return worst;
}

DegreeProbeReport degree_probe(const SampledSequence& s, int max_order, std::uint64_t seed) {
  if (max_order < 0 || max_order > 3) throw std::invalid_argument("degree_probe: max_order must be in 0..3");
  DegreeProbeReport rep;
  Rng rng(seed);
  SampledSequence cur = s;
  rep.mean_magnitude.push_back(std::abs(grid_mean(cur)));
  for (int order = 1; order <= max_order; ++order) {
    const double k = rng.uniform(0.1, 1.0);
    rep.shifts.push_back(k);
    cur = differentiate_sequence(cur, k);
    rep.mean_magnitude.push_back(std::abs(grid_mean(cur)));
  }
  rep.final_affine_residual = affine_phase_residual(cur);
  return rep;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

}  // namespace horolab
