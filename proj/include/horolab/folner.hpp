#pragma once

#include <cstdint>
#include <vector>

#include "horolab/group_core.hpp"

namespace horolab {

// B_R^H = a_{log R} B_1^H a_{-log R}, with B_1^H the image under nil_exp of the
// unit infinity-norm cube in the Lie(H) basis coordinates. Haar measure on H is
// Lebesgue measure in those coordinates.
class FolnerBall {
 public:
  FolnerBall(HoroSubgroup h, double radius);

  const HoroSubgroup& subgroup() const { return h_; }
  double radius() const { return r_; }

  // R^{d_H} * 2^{dim H}.
  double volume() const;
  // Half-widths of the coordinate box of log B_R: R^{lambda_b}.
  std::vector<double> half_widths() const;

  // Quasi-uniform elements of B_R (seed-deterministic).
  std::vector<SquareMatrix> sample(std::size_t n, std::uint64_t seed) const;
  // Lie coordinates of sample i, without building the matrix.
  std::vector<double> sample_coordinates(std::size_t i, std::uint64_t seed) const;

  // a_{-log R} h a_{log R} in B_1.
  bool contains(const SquareMatrix& h) const;

 private:
  HoroSubgroup h_;
  double r_;
};

double folner_volume(const FolnerBall& b);
std::vector<SquareMatrix> folner_sample(const FolnerBall& b, std::size_t n, std::uint64_t seed);
bool folner_membership(const FolnerBall& b, const SquareMatrix& h);

// Monte Carlo volume of B_R measured in matrix-entry coordinates: uniform
// points in a bounding box of the nonzero upper entries, tested for
// membership. Agreement with folner_volume() checks that the exponential map
// has unit Jacobian. Requires the basis to cover its entry pattern exactly.
double folner_volume_entry_mc(const FolnerBall& b, std::size_t n, std::uint64_t seed);

// Monte Carlo estimate of vol(b.B_R symmetric-difference B_R) / vol(B_R).
// Throws std::invalid_argument if b is not in H.
double folner_boundary_ratio(const FolnerBall& ball, const SquareMatrix& b, std::size_t n_samples,
                             std::uint64_t seed);

// Frozen constant C with
//   folner_boundary_ratio(B_R, b) <= C ||log b||_inf / R^{lambda_min},
// lambda_min the smallest eigenvalue on Lie(H); from a calibration sweep over
// directions at R = 100, ||log b|| = 0.1 (horolab_calibrate boundary).
double boundary_constant(const HoroSubgroup& h);

}  // namespace horolab
