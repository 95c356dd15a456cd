// Calibration sweeps behind the frozen constants. Prints the observed
// extremes; the constants in the library are rounded up (or, for the
// injectivity radius, down) from these numbers.
//
//   horolab_calibrate boundary | injrad | keylemma | ergodic

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "horolab/averages.hpp"
#include "horolab/diophantine.hpp"
#include "horolab/folner.hpp"
#include "horolab/sampling.hpp"

using namespace horolab;

namespace {

void boundary() {
  const double R = 100.0, size = 0.1;
  for (const auto& [name, h] : {std::pair{"sl2", HoroSubgroup::sl2_upper()},
                                std::pair{"heisenberg", HoroSubgroup::heisenberg_sl3()},
                                std::pair{"corner", HoroSubgroup::sl3_corner()}}) {
    const FolnerBall ball(h, R);
    Rng rng(7);
    double worst = 0.0;
    for (int dir = 0; dir < 64; ++dir) {
      std::vector<double> c(h.dim_h());
      double m = 0.0;
      for (double& v : c) {
        v = rng.uniform(-1.0, 1.0);
        m = std::max(m, std::abs(v));
      }
      // the first directions are the coordinate axes and the all-ones diagonal
      if (dir < h.dim_h()) {
        std::fill(c.begin(), c.end(), 0.0);
        c[dir] = 1.0;
        m = 1.0;
      } else if (dir == h.dim_h()) {
        std::fill(c.begin(), c.end(), 1.0);
        m = 1.0;
      }
      for (double& v : c) v *= size / m;
      const SquareMatrix b = nil_exp(h.from_coordinates(c));
      const double ratio = folner_boundary_ratio(ball, b, 200000, 11 + dir);
      const double lambda_min = *std::min_element(h.eigenvalues().begin(), h.eigenvalues().end());
      worst = std::max(worst, ratio * std::pow(R, lambda_min) / size);
    }
    std::printf("%-11s max ratio * R^lambda_min / ||log b|| = %.4f (frozen %.2f)\n", name, worst, boundary_constant(h));
  }
}

void injrad() {
  double worst = INFINITY;
  auto probe = [&](const ModularPoint& p) {
    const AlphaValue a = alpha_i_auto(p.reduced, 1);
    if (!a.certified) return;
    const double eps = std::min(1.0, 1.0 / a.value);
    worst = std::min(worst, injectivity_radius_proxy(p) / (eps * eps));
  };
  for (const auto& p : haar_sample_modular(20000, 3)) probe(p);
  for (double y = 1.0; y < 200.0; y *= 1.25) {
    for (double x = -0.5; x <= 0.5; x += 0.125) probe(reduce_modular(from_iwasawa(x, y, 0.3)));
  }
  std::printf("min injrad_proxy / eps^2 = %.4f (frozen %.3f)\n", worst, kInjRadConstantSL2);
}

void keylemma() {
  QuadratureSpec q;
  q.target_rel_err = 1e-9;
  const TestFunction f = make_incomplete_eisenstein(BumpProfile{});
  Rng rng(5);
  double worst = 0.0;
  int used = 0;
  const auto base = haar_sample_modular(12, 9);
  for (std::size_t i = 0; i <= base.size(); ++i) {
    const SquareMatrix x = i == base.size() ? default_base_point() : base[i].reduced;
    for (double R : {16.0, 64.0, 256.0, 1024.0}) {
      for (int trial = 0; trial < 4; ++trial) {
        const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), c = rng.uniform(-1, 1);
        SquareMatrix eps(2, {{a, b}, {c, -a}});
        for (double scale : {1e-2, 1e-3, 1e-4}) {
          const SquareMatrix e = (scale / eps.max_abs()) * eps;
          try {
            const KeyLemmaReport r = key_lemma_check(x, e, R, f, q);
            worst = std::max(worst, r.difference / r.delta);
            ++used;
          } catch (const std::invalid_argument&) {
          } catch (const std::domain_error&) {
          }
        }
      }
    }
  }
  std::printf("max |difference| / delta = %.4f over %d runs (frozen %.2f)\n", worst, used, kKeyLemmaConstant);
}

void ergodic() {
  QuadratureSpec q;
  q.target_rel_err = 1e-6;
  const TestFunction f = make_incomplete_eisenstein(BumpProfile{});
  const double delta = 0.1, s = 0.5;
  const auto recs = mean_ergodic_check(f, geometric_grid(2.0, 128.0, 2.0), delta, s, 4000, 21, q);
  double worst = 0.0;
  for (const auto& r : recs) {
    const double c = r.fraction * std::pow(r.volume, 2.0 * s - 2.0 * delta);
    worst = std::max(worst, c);
    std::printf("R = %6.1f  fraction = %.4f +- %.4f  fraction * vol^{2s-2delta} = %.4f\n", r.R, r.fraction, r.sigma,
                c);
  }
  std::printf("max = %.4f (frozen %.2f)\n", worst, kMeanErgodicConstant);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "";
  if (which == "boundary") boundary();
  else if (which == "injrad") injrad();
  else if (which == "keylemma") keylemma();
  else if (which == "ergodic") ergodic();
  else {
    std::fprintf(stderr, "usage: horolab_calibrate boundary|injrad|keylemma|ergodic\n");
    return 2;
  }
  return 0;
}
