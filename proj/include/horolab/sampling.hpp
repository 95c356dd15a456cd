#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace horolab {

// Pseudo-random source with a pinned bit-to-double map, so a seed yields the
// same stream under any standard library (std::mt19937_64 is fully specified;
// the std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  double normal();
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Low-discrepancy Kronecker sequence (the "R_d" additive recurrence built on
// the generalized golden ratio) with a Cranley-Patterson shift drawn from the
// seed. Point n is frac(shift + (n + 1) * step) coordinatewise.
class QuasiStream {
 public:
  QuasiStream(int dim, std::uint64_t seed);

  int dim() const { return static_cast<int>(step_.size()); }
  // Point in [0,1)^dim at index n.
  std::vector<double> point(std::uint64_t n) const;
  // Same, written into out (size dim).
  void point(std::uint64_t n, double* out) const;

 private:
  std::vector<double> step_;
  std::vector<double> shift_;
};

}  // namespace horolab
