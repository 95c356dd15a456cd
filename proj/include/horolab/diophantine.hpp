#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "horolab/folner.hpp"
#include "horolab/group_core.hpp"
#include "horolab/matrix.hpp"

namespace horolab {

enum class Membership { inside, outside, inconclusive };

const char* to_string(Membership m);

struct AlphaValue {
  double value = 0.0;
  bool certified = false;
  int search_bound = 0;
};

// alpha_i(g) = 1 / min ||wedge^i(g) v||_inf over nonzero decomposable integer
// wedges v, by brute force over integer coefficients in [-bound, bound].
//   i = 1: the vectors themselves.
//   i = 2, k = 3: (g v1) ^ (g v2) = det(g) g^{-T} (v1 x v2) in the e_i ^ e_j
//          basis, and every nonzero integer w is some v1 x v2, so the search
//          runs over w in the box.
//   i = k: 1 / |det g|.
// certified: the operator-norm argument places the minimizer inside the box.
// Throws std::invalid_argument for i outside 1..k.
AlphaValue alpha_i(const SquareMatrix& g, int i, int search_bound);

// Doubles the bound from `start` until certified or past `max_bound`.
AlphaValue alpha_i_auto(const SquareMatrix& g, int i, int start = 4, int max_bound = 0);

// Oracle for the i = 2, k = 3 case: explicit pairs (v1, v2) in [-bound, bound]^3.
double min_decomposable_wedge_norm_k3(const SquareMatrix& g, int bound);

struct AlphaProfile {
  std::vector<double> values;  // alpha_1 .. alpha_k
  int search_bound = 0;        // largest box used
  bool certified = false;

  double alpha() const;
};

AlphaProfile alpha_profile(const SquareMatrix& g);

// X_{>= eps}: alpha(x) <= 1/eps;  X^1_{>= eps}: alpha_1(x) <= 1/eps.
Membership in_X_geq(const SquareMatrix& g, double eps);
Membership in_X1_geq(const SquareMatrix& g, double eps);

// Theta(T) = max{1, p(T)} with p given by ascending coefficients.
struct ThetaBound {
  std::vector<double> coeffs{1.0};
  double operator()(double t) const;
};

struct DiophSpec {
  double D = 1.0 / 3.0;
  ThetaBound theta;
  HoroSubgroup subgroup = HoroSubgroup::sl2_upper();
};

struct DiophRecord {
  double R = 0.0;
  bool witnessed = false;
  SquareMatrix witness_h{2};
  std::vector<double> alpha_values;
  bool certified = false;
};

// For each R: search h in B^H_{Theta(R)} (identity first, then n_samples
// quasi-uniform points) with alpha(h a_{-log R} x) <= R^D. Sampling can only
// certify a witness; a missing witness is not a proof of non-membership.
std::vector<DiophRecord> theta_diophantine_check(const SquareMatrix& x, const DiophSpec& spec,
                                                 const std::vector<double>& r_grid, std::size_t n_samples,
                                                 std::uint64_t seed);

// Multivariate polynomial with real coefficients.
class Polynomial {
 public:
  struct Term {
    double coeff;
    std::vector<int> exponents;
  };

  explicit Polynomial(int n_vars) : n_(n_vars) {}
  Polynomial(int n_vars, std::vector<Term> terms);

  int n_vars() const { return n_; }
  int degree() const;
  const std::vector<Term>& terms() const { return terms_; }
  void add_term(double coeff, std::vector<int> exponents);
  double operator()(std::span<const double> x) const;

  // Random polynomial with total degree exactly `degree` and N(0,1) coefficients.
  static Polynomial random(int n_vars, int degree, std::uint64_t seed);

 private:
  int n_;
  std::vector<Term> terms_;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  double volume() const;
};

struct RemezRecord {
  double eps = 0.0;
  double measure = 0.0;  // fraction of the box where |f| <= eps
  double bound = 0.0;    // 4 n (eps / sup|f|)^{1/d}
  double sigma = 0.0;    // binomial standard error of `measure`
  bool holds = false;    // measure <= bound + 3 sigma
};

struct RemezReport {
  double sup_estimate = 0.0;
  int degree = 0;
  std::vector<RemezRecord> records;
  bool all_hold() const;
};

// Sublevel-set measure versus the Remez bound. `degree` is the total degree
// of f; sup|f| is estimated from the sample set plus a tensor grid.
// Throws std::invalid_argument for a degenerate box or degree < 1.
RemezReport remez_check(const std::function<double(std::span<const double>)>& f, int degree, const Box& box,
                        const std::vector<double>& eps_grid, std::size_t n_samples, std::uint64_t seed);
RemezReport remez_check(const Polynomial& p, const Box& box, const std::vector<double>& eps_grid,
                        std::size_t n_samples, std::uint64_t seed);

// psi(h) = ||(exp(h) x0) Delta|| on log B_R^H, with Delta spanned by the
// integer vectors in `delta` (rank 1 or 2) and the Euclidean norm of the
// wedge. psi^2 is a polynomial in the Lie coordinates of h.
struct CAlphaProbe {
  HoroSubgroup subgroup;
  double R = 1.0;
  std::vector<Vec3> delta;
  SquareMatrix x0;

  double value(std::span<const double> h_coords) const;
  double value_squared(std::span<const double> h_coords) const;
  // Total degree of value_squared in the coordinates.
  int squared_degree() const;
  Box domain() const;
};

// (C, alpha) for the norm functions psi_{R,Delta,x0} of a rank-r subgroup:
// Remez applied to psi^2 gives C = 4 dim H and alpha = 1 / (r (k - 1)).
struct CAlphaConstants {
  double C = 4.0;
  double alpha = 1.0;
};
CAlphaConstants c_alpha_constants(const HoroSubgroup& h, int rank = 1);

struct NondivergenceReport {
  double fraction = 0.0;  // excluded fraction of B_R
  double bound = 0.0;     // C' r^{-alpha eps}
  std::size_t uncertified = 0;
  std::size_t n_samples = 0;
};

// Fraction of h in B_R^H with h a_{-log r} x outside X^1_{>= r^{-D-eps}}.
NondivergenceReport nondivergence_fraction(const SquareMatrix& x, const HoroSubgroup& h, double R, double r,
                                           double D, double eps, std::size_t n_samples, std::uint64_t seed);

// Nm(y) = prod |y_i|.
double norm_form(std::span<const double> y);

struct NormFormMin {
  std::optional<double> value;  // empty: no lattice vector with 0 < ||y||_inf < rho
  bool certified = false;
  int search_bound = 0;
};

// min{|Nm(y)| : y in g Z^k, 0 < ||y||_inf < rho}. The coefficient box is
// ceil(||g^{-1}|| rho) unless `search_bound` > 0 overrides it.
NormFormMin norm_form_min(const SquareMatrix& g, double rho, int search_bound = 0);

}  // namespace horolab
