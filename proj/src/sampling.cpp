#include "horolab/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab {

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::integer: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Rejection to avoid modulo bias.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

double Rng::normal() {
  // Box-Muller on pinned uniforms.
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

QuasiStream::QuasiStream(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("QuasiStream: dim must be positive");
  // phi solves phi^(dim+1) = phi + 1
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
  step_.resize(dim);
  shift_.resize(dim);
  std::uint64_t state = seed;
  for (int j = 0; j < dim; ++j) {
    step_[j] = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);
    state = splitmix64(state);
    shift_[j] = static_cast<double>(state >> 11) * 0x1.0p-53;
  }
}

std::vector<double> QuasiStream::point(std::uint64_t n) const {
  std::vector<double> out(step_.size());
  point(n, out.data());
  return out;
}

void QuasiStream::point(std::uint64_t n, double* out) const {
  const double k = static_cast<double>(n + 1);
  for (std::size_t j = 0; j < step_.size(); ++j) {
    // fma keeps the product exact enough for n up to ~1e9
    const double v = std::fma(k, step_[j], shift_[j]);
    out[j] = v - std::floor(v);
  }
}

}  // namespace horolab
