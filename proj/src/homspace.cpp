#include "horolab/homspace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "horolab/diophantine.hpp"
#include "horolab/errors.hpp"
#include "horolab/sampling.hpp"

namespace horolab {

SquareMatrix IntMatrix2::to_matrix() const {
  return SquareMatrix(2, {{static_cast<double>(a[0]), static_cast<double>(a[1])},
                          {static_cast<double>(a[2]), static_cast<double>(a[3])}});
}

IntMatrix2 operator*(const IntMatrix2& p, const IntMatrix2& q) {
  IntMatrix2 r;
  r.a = {p.a[0] * q.a[0] + p.a[1] * q.a[2], p.a[0] * q.a[1] + p.a[1] * q.a[3],
         p.a[2] * q.a[0] + p.a[3] * q.a[2], p.a[2] * q.a[1] + p.a[3] * q.a[3]};
  return r;
}

SquareMatrix from_iwasawa(double x, double y, double theta) {
  if (!(y > 0.0)) throw std::invalid_argument("from_iwasawa: y must be positive");
  const double c = std::cos(theta), s = std::sin(theta);
  const double ry = std::sqrt(y);
  const SquareMatrix k(2, {{c, -s}, {s, c}});
  const SquareMatrix b(2, {{1.0 / ry, x / ry}, {0.0, ry}});
  return k * b;
}

std::complex<double> lattice_tau(const SquareMatrix& g) {
  const std::complex<double> w1(g(0, 0), g(1, 0));
  const std::complex<double> w2(g(0, 1), g(1, 1));
  return w2 / w1;
}

namespace {

void right_mul(SquareMatrix& g, const IntMatrix2& q) { g = g * q.to_matrix(); }

IntMatrix2 translation(std::int64_t n) { return IntMatrix2{{1, n, 0, 1}}; }
const IntMatrix2 kS{{0, -1, 1, 0}};

}  // namespace

ModularPoint reduce_modular(const SquareMatrix& g) {
  if (g.dim() != 2) throw std::invalid_argument("reduce_modular: expected a 2x2 matrix");
  if (std::abs(g.det() - 1.0) > 1e-9) throw std::invalid_argument("reduce_modular: det must be 1");
  ModularPoint p;
  p.rep = g;
  SquareMatrix cur = g;
  IntMatrix2 gamma;
  constexpr int kMaxIter = 10000;
  int iter = 0;
  for (;; ++iter) {
    if (iter >= kMaxIter) throw NumericalFailure("reduce_modular: iteration cap reached");
    std::complex<double> tau = lattice_tau(cur);
    const double shift = std::round(tau.real());
    if (shift != 0.0) {
      if (std::abs(shift) > 9e15) throw NumericalFailure("reduce_modular: translation overflow");
      const IntMatrix2 t = translation(-static_cast<std::int64_t>(shift));
      right_mul(cur, t);
      gamma = gamma * t;
      tau = lattice_tau(cur);
    }
    if (std::norm(tau) < 1.0 - 1e-13) {
      right_mul(cur, kS);
      gamma = gamma * kS;
      continue;
    }
    break;
  }
  p.reduced = cur;
  p.gamma = gamma;
  const std::complex<double> tau = lattice_tau(cur);
  p.x = tau.real();
  p.y = tau.imag();
  p.theta = std::atan2(cur(1, 0), cur(0, 0));
  return p;
}

ModularPoint flow_point(const ModularPoint& x, const SquareMatrix& h) {
  if (std::abs(h.det() - 1.0) > 1e-9) throw std::invalid_argument("flow_point: det h must be 1");
  return reduce_modular(h * x.rep);
}

double haar_truncated_mass(double y_max) { return 3.0 / (M_PI * y_max); }

std::vector<ModularPoint> haar_sample_modular(std::size_t n, std::uint64_t seed, double y_max) {
  if (n < 1) throw std::invalid_argument("haar_sample_modular: n must be positive");
  std::vector<ModularPoint> out;
  out.reserve(n);
  const double u_lo = 1.0 / y_max;
  const double u_hi = 2.0 / std::sqrt(3.0);
  for (std::size_t i = 0; i < n; ++i) {
    // one stream per index so index ranges can be generated independently
    Rng rng(splitmix64(seed ^ splitmix64(i)));
    double x, y;
    do {
      x = rng.uniform(-0.5, 0.5);
      y = 1.0 / rng.uniform(u_lo, u_hi);
    } while (x * x + y * y < 1.0);
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    out.push_back(reduce_modular(from_iwasawa(x, y, theta)));
  }
  return out;
}

namespace {

const std::vector<IntMatrix2>& small_sl2z(int bound) {
  static thread_local std::vector<IntMatrix2> cache;
  static thread_local int cached_bound = -1;
  if (cached_bound != bound) {
    cache.clear();
    for (int a = -bound; a <= bound; ++a)
      for (int b = -bound; b <= bound; ++b)
        for (int c = -bound; c <= bound; ++c)
          for (int d = -bound; d <= bound; ++d)
            if (a * d - b * c == 1) cache.push_back(IntMatrix2{{a, b, c, d}});
    cached_bound = bound;
  }
  return cache;
}

}  // namespace

double modular_distance(const ModularPoint& x, const ModularPoint& y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : small_sl2z(5)) {
    best = std::min(best, (x.reduced * g.to_matrix() - y.reduced).frobenius());
  }
  return best;
}

double injectivity_radius_proxy(const ModularPoint& x, int bound) {
  const SquareMatrix& g = x.reduced;
  const SquareMatrix g_inv = g.inverse();
  const SquareMatrix id = SquareMatrix::identity(2);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& gm : small_sl2z(bound)) {
    const bool plus_id = gm.a == IntMatrix2::identity().a;
    const bool minus_id = gm.a[0] == -1 && gm.a[1] == 0 && gm.a[2] == 0 && gm.a[3] == -1;
    if (plus_id || minus_id) continue;
    const SquareMatrix c = g * gm.to_matrix() * g_inv;
    best = std::min({best, (c - id).frobenius(), (c + id).frobenius()});
  }
  return 0.5 * best;
}

double inj_rad_lower_bound(const ModularPoint& x, double eps, int k) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("inj_rad_lower_bound: eps must be in (0, 1]");
  const Membership m = in_X1_geq(x.reduced, eps);
  if (m == Membership::inconclusive) throw std::domain_error("inj_rad_lower_bound: membership not certified");
  if (m == Membership::outside) throw std::domain_error("inj_rad_lower_bound: point is not in X^1_{>=eps}");
  return kInjRadConstantSL2 * std::pow(eps, k);
}

SquareMatrix HeisenbergPoint::matrix() const {
  return SquareMatrix(3, {{1.0, x, y}, {0.0, 1.0, z}, {0.0, 0.0, 1.0}});
}

HeisenbergPoint HeisenbergPoint::from_matrix(const SquareMatrix& m) {
  if (m.dim() != 3 || !m.is_unipotent_upper(1e-9)) {
    throw std::invalid_argument("HeisenbergPoint: matrix is not upper unipotent 3x3");
  }
  return {m(0, 1), m(0, 2), m(1, 2)};
}

HeisenbergPoint heisenberg_mul(const HeisenbergPoint& p, const std::array<std::int64_t, 3>& g) {
  const double a = static_cast<double>(g[0]);
  const double b = static_cast<double>(g[1]);
  const double c = static_cast<double>(g[2]);
  return {p.x + a, p.y + b + p.x * c, p.z + c};
}

HeisenbergReduction reduce_heisenberg(const HeisenbergPoint& p) {
  // v + (-floor v) can round up to exactly 1.0 for v just below an integer
  auto unit_shift = [](double v) {
    auto n = static_cast<std::int64_t>(-std::floor(v));
    if (v + static_cast<double>(n) >= 1.0) --n;
    return n;
  };
  HeisenbergReduction r;
  const std::int64_t c = unit_shift(p.z);
  const std::int64_t a = unit_shift(p.x);
  const double y_shifted = p.y + p.x * static_cast<double>(c);
  const std::int64_t b = unit_shift(y_shifted);
  r.gamma = {a, b, c};
  r.canonical = {p.x + static_cast<double>(a), y_shifted + static_cast<double>(b), p.z + static_cast<double>(c)};
  return r;
}

}  // namespace horolab
