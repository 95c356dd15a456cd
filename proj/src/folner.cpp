#include "horolab/folner.hpp"

#include <cmath>
#include <stdexcept>

#include "horolab/sampling.hpp"

namespace horolab {

namespace {

constexpr double kMembershipTol = 1e-10;

bool in_span_and_cube(const HoroSubgroup& h, const SquareMatrix& g) {
  if (!g.is_unipotent_upper(1e-9)) return false;
  const NilAlgebraElement x = nil_log(g);
  const auto coords = h.coordinates(x.matrix());
  if (coords.residual > kMembershipTol * (1.0 + x.matrix().max_abs())) return false;
  for (double c : coords.c)
    if (std::abs(c) > 1.0 + kMembershipTol) return false;
  return true;
}

}  // namespace

FolnerBall::FolnerBall(HoroSubgroup h, double radius) : h_(std::move(h)), r_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("FolnerBall: radius must be positive");
}

double FolnerBall::volume() const { return std::pow(r_, h_.d_h()) * std::pow(2.0, h_.dim_h()); }

std::vector<double> FolnerBall::half_widths() const {
  std::vector<double> w;
  for (double lambda : h_.eigenvalues()) w.push_back(std::pow(r_, lambda));
  return w;
}

std::vector<double> FolnerBall::sample_coordinates(std::size_t i, std::uint64_t seed) const {
  QuasiStream q(h_.dim_h(), seed);
  auto c = q.point(i);
  const auto w = half_widths();
  for (std::size_t a = 0; a < c.size(); ++a) c[a] = (2.0 * c[a] - 1.0) * w[a];
  return c;
}

std::vector<SquareMatrix> FolnerBall::sample(std::size_t n, std::uint64_t seed) const {
  if (n < 1) throw std::invalid_argument("FolnerBall::sample: n must be positive");
  QuasiStream q(h_.dim_h(), seed);
  std::vector<SquareMatrix> out;
  out.reserve(n);
  std::vector<double> c(h_.dim_h());
  const double log_r = std::log(r_);
  for (std::size_t i = 0; i < n; ++i) {
    q.point(i, c.data());
    for (double& v : c) v = 2.0 * v - 1.0;
    out.push_back(conj_by_flow(h_.flow(), log_r, nil_exp(h_.from_coordinates(c))));
  }
  return out;
}

bool FolnerBall::contains(const SquareMatrix& h) const {
  if (h.dim() != h_.dim()) return false;
  return in_span_and_cube(h_, conj_by_flow(h_.flow(), -std::log(r_), h));
}

double folner_volume(const FolnerBall& b) { return b.volume(); }

std::vector<SquareMatrix> folner_sample(const FolnerBall& b, std::size_t n, std::uint64_t seed) {
  return b.sample(n, seed);
}

bool folner_membership(const FolnerBall& b, const SquareMatrix& h) { return b.contains(h); }

double folner_volume_entry_mc(const FolnerBall& b, std::size_t n, std::uint64_t seed) {
  const HoroSubgroup& h = b.subgroup();
  const int k = h.dim();
  // entrywise bound: |exp(X)_{ij}| <= exp(|X|)_{ij} for nilpotent X
  SquareMatrix abs_x(k);
  const auto w = b.half_widths();
  for (int a = 0; a < h.dim_h(); ++a)
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) abs_x(i, j) += w[a] * std::abs(h.basis()[a](i, j));
  const SquareMatrix bound = nil_exp(NilAlgebraElement(abs_x));
  std::vector<std::pair<int, int>> entries;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (bound(i, j) > 0.0) entries.emplace_back(i, j);
  if (static_cast<int>(entries.size()) != h.dim_h()) {
    throw std::invalid_argument("folner_volume_entry_mc: basis does not match its entry pattern");
  }
  double box = 1.0;
  for (auto [i, j] : entries) box *= 2.0 * bound(i, j);

  QuasiStream q(h.dim_h(), seed);
  std::vector<double> u(h.dim_h());
  std::size_t hits = 0;
  for (std::size_t s = 0; s < n; ++s) {
    q.point(s, u.data());
    SquareMatrix g = SquareMatrix::identity(k);
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto [i, j] = entries[e];
      g(i, j) = (2.0 * u[e] - 1.0) * bound(i, j);
    }
    if (b.contains(g)) ++hits;
  }
  return box * static_cast<double>(hits) / static_cast<double>(n);
}

double folner_boundary_ratio(const FolnerBall& ball, const SquareMatrix& b, std::size_t n_samples,
                             std::uint64_t seed) {
  const HoroSubgroup& h = ball.subgroup();
  if (b.dim() != h.dim() || !b.is_unipotent_upper(1e-9)) {
    throw std::invalid_argument("folner_boundary_ratio: b is not in H");
  }
  const auto log_b = nil_log(b);
  if (h.coordinates(log_b.matrix()).residual > 1e-10 * (1.0 + log_b.matrix().max_abs())) {
    throw std::invalid_argument("folner_boundary_ratio: b is not in H");
  }
  if (n_samples < 1) throw std::invalid_argument("folner_boundary_ratio: n_samples must be positive");
  const SquareMatrix b_inv = b.inverse();
  // |B \ bB| from points of B, |bB \ B| from points of bB
  const auto in_ball = ball.sample(n_samples, seed);
  const auto shifted = ball.sample(n_samples, splitmix64(seed));
  std::size_t outside = 0;
  for (const auto& p : in_ball)
    if (!ball.contains(b_inv * p)) ++outside;
  for (const auto& p : shifted)
    if (!ball.contains(b * p)) ++outside;
  return static_cast<double>(outside) / static_cast<double>(n_samples);
}

double boundary_constant(const HoroSubgroup& h) {
  // Sweep of 64 directions at R = 100, ||log b|| = 0.1, 2e5 samples each:
  // SL2 1.01 (exact value 1), Heisenberg 2.36, corner 1.5 (exact value 1;
  // the corner ratio is ~1e-5, so that figure is a handful of hits).
  if (h.dim() == 2) return 1.0;
  if (h.dim_h() == 3) return 3.0;
  return 2.0;
}

}  // namespace horolab
