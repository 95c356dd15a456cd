#include "horolab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "horolab/homspace.hpp"
#include "horolab/sampling.hpp"

namespace horolab {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::inside:
      return "inside";
    case Membership::outside:
      return "outside";
    default:
      return "inconclusive";
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inf_norm(const Vec3& v, int k) {
  double m = 0.0;
  for (int i = 0; i < k; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

// Shortest nonzero vector of m Z^k in the infinity norm, coefficients in the box.
double min_image_norm(const SquareMatrix& m, int bound) {
  const int k = m.dim();
  double best = kInf;
  if (k == 2) {
    for (int a = -bound; a <= bound; ++a)
      for (int b = -bound; b <= bound; ++b) {
        if (a == 0 && b == 0) continue;
        const double y0 = m(0, 0) * a + m(0, 1) * b;
        const double y1 = m(1, 0) * a + m(1, 1) * b;
        best = std::min(best, std::max(std::abs(y0), std::abs(y1)));
      }
  } else {
    for (int a = -bound; a <= bound; ++a)
      for (int b = -bound; b <= bound; ++b)
        for (int c = -bound; c <= bound; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          best = std::min(best, inf_norm(apply(m, {double(a), double(b), double(c)}), 3));
        }
  }
  return best;
}

// Representative with a short basis for k = 2; alpha values do not depend on it.
SquareMatrix well_conditioned(const SquareMatrix& g) {
  if (g.dim() == 2 && std::abs(g.det() - 1.0) < 1e-9) return reduce_modular(g).reduced;
  return g;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

AlphaValue alpha_i(const SquareMatrix& g_in, int i, int search_bound) {
  const int k = g_in.dim();
  if (i < 1 || i > k) throw std::invalid_argument("alpha_i: index out of range");
  if (search_bound < 1) throw std::invalid_argument("alpha_i: search_bound must be >= 1");
  const double det = std::abs(g_in.det());
  if (i == k) return {1.0 / det, true, search_bound};
  const SquareMatrix g = well_conditioned(g_in);
  if (i == 1) {
    const double m = min_image_norm(g, search_bound);
    const bool cert = g.inverse().op_norm_inf() * m <= search_bound;
    return {1.0 / m, cert, search_bound};
  }
  // i = 2, k = 3
  const SquareMatrix dual = g.inverse().transpose();
  const double m = det * min_image_norm(dual, search_bound);
  const bool cert = g.transpose().op_norm_inf() * (m / det) <= search_bound;
  return {1.0 / m, cert, search_bound};
}

AlphaValue alpha_i_auto(const SquareMatrix& g, int i, int start, int max_bound) {
  if (max_bound <= 0) max_bound = g.dim() == 2 ? 1024 : 64;
  int bound = std::max(1, start);
  AlphaValue v = alpha_i(g, i, bound);
  while (!v.certified && bound * 2 <= max_bound) {
    bound *= 2;
    v = alpha_i(g, i, bound);
  }
  return v;
}

double min_decomposable_wedge_norm_k3(const SquareMatrix& g, int bound) {
  if (g.dim() != 3) throw std::invalid_argument("min_decomposable_wedge_norm_k3: expected 3x3");
  std::vector<Vec3> images;
  for (int a = -bound; a <= bound; ++a)
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        if (a || b || c) images.push_back(apply(g, {double(a), double(b), double(c)}));
  double best = kInf;
  for (std::size_t p = 0; p < images.size(); ++p)
    for (std::size_t q = p + 1; q < images.size(); ++q) {
      const double n = inf_norm(cross(images[p], images[q]), 3);
      if (n > 1e-12) best = std::min(best, n);
    }
  return best;
}

double AlphaProfile::alpha() const { return *std::max_element(values.begin(), values.end()); }

AlphaProfile alpha_profile(const SquareMatrix& g) {
  AlphaProfile p;
  p.certified = true;
  for (int i = 1; i <= g.dim(); ++i) {
    const AlphaValue v = alpha_i_auto(g, i);
    p.values.push_back(v.value);
    p.certified = p.certified && v.certified;
    p.search_bound = std::max(p.search_bound, v.search_bound);
  }
  return p;
}

Membership in_X_geq(const SquareMatrix& g, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("in_X_geq: eps must be in (0, 1]");
  const AlphaProfile p = alpha_profile(g);
  if (!p.certified) return Membership::inconclusive;
  return p.alpha() <= 1.0 / eps ? Membership::inside : Membership::outside;
}

Membership in_X1_geq(const SquareMatrix& g, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("in_X1_geq: eps must be in (0, 1]");
  const AlphaValue v = alpha_i_auto(g, 1);
  if (!v.certified) return Membership::inconclusive;
  return v.value <= 1.0 / eps ? Membership::inside : Membership::outside;
}

double ThetaBound::operator()(double t) const {
  double p = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * t + *it;
  return std::max(1.0, p);
}

std::vector<DiophRecord> theta_diophantine_check(const SquareMatrix& x, const DiophSpec& spec,
                                                 const std::vector<double>& r_grid, std::size_t n_samples,
                                                 std::uint64_t seed) {
  const HoroSubgroup& h = spec.subgroup;
  if (x.dim() != h.dim()) throw std::invalid_argument("theta_diophantine_check: dimension mismatch");
  std::vector<DiophRecord> out;
  for (double R : r_grid) {
    DiophRecord rec;
    rec.R = R;
    const SquareMatrix base = h.flow().at(-std::log(R)) * x;
    const double threshold = std::pow(R, spec.D);
    std::vector<SquareMatrix> candidates{SquareMatrix::identity(h.dim())};
    if (n_samples > 0) {
      const auto s = FolnerBall(h, spec.theta(R)).sample(n_samples, seed);
      candidates.insert(candidates.end(), s.begin(), s.end());
    }
    double best_alpha = kInf;
    for (const auto& cand : candidates) {
      const AlphaProfile p = alpha_profile(cand * base);
      if (p.certified && p.alpha() <= threshold) {
        rec.witnessed = true;
        rec.witness_h = cand;
        rec.alpha_values = p.values;
        rec.certified = true;
        break;
      }
      if (p.alpha() < best_alpha) {
        best_alpha = p.alpha();
        rec.witness_h = cand;
        rec.alpha_values = p.values;
        rec.certified = p.certified;
      }
    }
    out.push_back(rec);
  }
  return out;
}

Polynomial::Polynomial(int n_vars, std::vector<Term> terms) : n_(n_vars) {
  for (auto& t : terms) add_term(t.coeff, std::move(t.exponents));
}

void Polynomial::add_term(double coeff, std::vector<int> exponents) {
  if (static_cast<int>(exponents.size()) != n_) throw std::invalid_argument("Polynomial: exponent arity mismatch");
  terms_.push_back({coeff, std::move(exponents)});
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

double Polynomial::operator()(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (int i = 0; i < n_; ++i) v *= std::pow(x[i], t.exponents[i]);
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::random(int n_vars, int degree, std::uint64_t seed) {
  Rng rng(seed);
  Polynomial p(n_vars);
  // all monomials of total degree <= degree
  std::vector<int> e(n_vars, 0);
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == n_vars) {
      p.add_term(rng.normal(), e);
      return;
    }
    for (int d = 0; d <= remaining; ++d) {
      e[var] = d;
      rec(var + 1, remaining - d);
    }
    e[var] = 0;
  };
  rec(0, degree);
  // make sure the top degree is present
  std::vector<int> top(n_vars, 0);
  top[0] = degree;
  p.add_term(1.0 + std::abs(rng.normal()), top);
  return p;
}

double Box::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
  return v;
}

bool RemezReport::all_hold() const {
  return std::all_of(records.begin(), records.end(), [](const RemezRecord& r) { return r.holds; });
}

RemezReport remez_check(const std::function<double(std::span<const double>)>& f, int degree, const Box& box,
                        const std::vector<double>& eps_grid, std::size_t n_samples, std::uint64_t seed) {
  const int n = box.dim();
  if (n < 1 || static_cast<int>(box.hi.size()) != n) throw std::invalid_argument("remez_check: malformed box");
  for (int i = 0; i < n; ++i)
    if (!(box.hi[i] > box.lo[i])) throw std::invalid_argument("remez_check: degenerate box");
  if (degree < 1) throw std::invalid_argument("remez_check: degree must be >= 1");
  if (n_samples < 1) throw std::invalid_argument("remez_check: n_samples must be positive");

  QuasiStream q(n, seed);
  std::vector<double> u(n), x(n);
  std::vector<double> values(n_samples);
  double sup = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    q.point(s, u.data());
    for (int i = 0; i < n; ++i) x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * u[i];
    values[s] = std::abs(f(x));
    sup = std::max(sup, values[s]);
  }
  // tensor grid including the faces
  const int per_dim = std::max(2, static_cast<int>(std::pow(20000.0, 1.0 / n)));
  std::vector<int> idx(n, 0);
  for (;;) {
    for (int i = 0; i < n; ++i) x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (per_dim - 1);
    sup = std::max(sup, std::abs(f(x)));
    int d = 0;
    while (d < n && ++idx[d] == per_dim) idx[d++] = 0;
    if (d == n) break;
  }

  RemezReport rep;
  rep.sup_estimate = sup;
  rep.degree = degree;
  for (double eps : eps_grid) {
    RemezRecord r;
    r.eps = eps;
    const auto count = std::count_if(values.begin(), values.end(), [eps](double v) { return v <= eps; });
    r.measure = static_cast<double>(count) / static_cast<double>(n_samples);
    r.sigma = std::sqrt(std::max(r.measure * (1.0 - r.measure), 1.0 / n_samples) / n_samples);
    r.bound = sup > 0.0 ? 4.0 * n * std::pow(eps / sup, 1.0 / degree) : kInf;
    r.holds = r.measure <= r.bound + 3.0 * r.sigma;
    rep.records.push_back(r);
  }
  return rep;
}

RemezReport remez_check(const Polynomial& p, const Box& box, const std::vector<double>& eps_grid,
                        std::size_t n_samples, std::uint64_t seed) {
  if (p.n_vars() != box.dim()) throw std::invalid_argument("remez_check: polynomial arity does not match box");
  return remez_check([&p](std::span<const double> x) { return p(x); }, p.degree(), box, eps_grid, n_samples,
                     seed);
}

double CAlphaProbe::value_squared(std::span<const double> h_coords) const {
  const std::vector<double> c(h_coords.begin(), h_coords.end());
  const SquareMatrix m = nil_exp(subgroup.from_coordinates(c)) * x0;
  const int k = m.dim();
  if (delta.size() == 1) {
    const Vec3 v = apply(m, delta[0]);
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += v[i] * v[i];
    return s;
  }
  if (delta.size() == 2) {
    const Vec3 a = apply(m, delta[0]);
    const Vec3 b = apply(m, delta[1]);
    if (k == 2) {
      const double d = a[0] * b[1] - a[1] * b[0];
      return d * d;
    }
    const Vec3 w = cross(a, b);
    return w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
  }
  throw std::invalid_argument("CAlphaProbe: rank must be 1 or 2");
}

double CAlphaProbe::value(std::span<const double> h_coords) const { return std::sqrt(value_squared(h_coords)); }

int CAlphaProbe::squared_degree() const {
  return 2 * static_cast<int>(delta.size()) * (subgroup.dim() - 1);
}

Box CAlphaProbe::domain() const {
  Box b;
  for (double lambda : subgroup.eigenvalues()) {
    const double w = std::pow(R, lambda);
    b.lo.push_back(-w);
    b.hi.push_back(w);
  }
  return b;
}

CAlphaConstants c_alpha_constants(const HoroSubgroup& h, int rank) {
  return {4.0 * h.dim_h(), 1.0 / (rank * (h.dim() - 1))};
}

NondivergenceReport nondivergence_fraction(const SquareMatrix& x, const HoroSubgroup& h, double R, double r,
                                           double D, double eps, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("nondivergence_fraction: n_samples must be positive");
  const SquareMatrix base = h.flow().at(-std::log(r)) * x;
  const double threshold = std::pow(r, D + eps);
  NondivergenceReport rep;
  rep.n_samples = n_samples;
  std::size_t excluded = 0;
  for (const auto& u : FolnerBall(h, R).sample(n_samples, seed)) {
    const AlphaValue a = alpha_i_auto(u * base, 1);
    if (!a.certified) {
      ++rep.uncertified;
      ++excluded;
    } else if (a.value > threshold) {
      ++excluded;
    }
  }
  rep.fraction = static_cast<double>(excluded) / static_cast<double>(n_samples);
  const CAlphaConstants c = c_alpha_constants(h);
  rep.bound = c.C * std::pow(r, -c.alpha * eps);
  return rep;
}

double norm_form(std::span<const double> y) {
  double p = 1.0;
  for (double v : y) p *= std::abs(v);
  return p;
}

NormFormMin norm_form_min(const SquareMatrix& g, double rho, int search_bound) {
  if (!(rho > 0.0)) throw std::invalid_argument("norm_form_min: rho must be positive");
  const int k = g.dim();
  const double needed = g.inverse().op_norm_inf() * rho;
  NormFormMin out;
  out.search_bound = search_bound > 0 ? search_bound : static_cast<int>(std::ceil(needed));
  out.certified = out.search_bound >= needed;
  const int B = out.search_bound;
  double best = kInf;
  auto consider = [&](const Vec3& y) {
    const double n = inf_norm(y, k);
    if (n > 0.0 && n < rho) best = std::min(best, norm_form(std::span<const double>(y.data(), k)));
  };
  if (k == 2) {
    for (int a = -B; a <= B; ++a)
      for (int b = -B; b <= B; ++b)
        if (a || b) consider(apply(g, {double(a), double(b), 0.0}));
  } else {
    for (int a = -B; a <= B; ++a)
      for (int b = -B; b <= B; ++b)
        for (int c = -B; c <= B; ++c)
          if (a || b || c) consider(apply(g, {double(a), double(b), double(c)}));
  }
  if (best < kInf) out.value = best;
  return out;
}

}  // namespace horolab
