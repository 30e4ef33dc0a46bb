// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "fwh/fibration.hpp"

namespace fwh::oracle {

/// Distance from p to the F_z fiber with coordinates (exp(log_lambda), a).
inline double fz_miss(Complexd z, const HPoint& p, double log_lambda, double a) {
  return distance_to_geodesic(p, fz_fiber(z, {std::exp(log_lambda), a}));
}

/// Brute force over (log lambda, a): a dense grid followed by pattern search
/// with eight directions and step halving. Knows nothing about the solver.
inline HypFiberCoords brute_force_fz(Complexd z, const HPoint& p) {
  const double a_lo = p.z.real() - 12, a_hi = p.z.real() + 12;
  const double l_lo = -7, l_hi = 7;
  const int n = 160;
  double best = INFINITY, bl = 0, ba = 0;
  for (int i = 0; i <= n; ++i) {
    const double ll = l_lo + (l_hi - l_lo) * i / n;
    for (int j = 0; j <= n; ++j) {
      const double a = a_lo + (a_hi - a_lo) * j / n;
      const double d = fz_miss(z, p, ll, a);
      if (d < best) best = d, bl = ll, ba = a;
    }
  }
  double step_l = (l_hi - l_lo) / n, step_a = (a_hi - a_lo) / n;
  static constexpr int dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                     {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  while (step_l > 1e-13 || step_a > 1e-13) {
    bool moved = false;
    for (const auto& d : dirs) {
      const double ll = bl + d[0] * step_l, a = ba + d[1] * step_a;
      const double v = fz_miss(z, p, ll, a);
      if (v < best) {
        best = v, bl = ll, ba = a;
        moved = true;
      }
    }
    if (!moved) step_l /= 2, step_a /= 2;
  }
  return {std::exp(bl), ba};
}

/// Largest residual of `image(fiber)` as a fiber of `target`, over n fibers
/// of `source` through random points of the sampling region.
template <typename Map>
double sampled_fiber_residual(const Fibration& source, const Fibration& target, Map&& image, int n,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2), h(0.1, 4);
  const FibrationView view(target);
  double worst = 0;
  for (int k = 0; k < n; ++k) {
    const HPoint p(Complexd(u(rng), u(rng)), h(rng));
    const Fiber f = fiber_through(source, Point(p));
    worst = std::max(worst, membership_residual(view, Fiber(image(std::get<Geodesic>(f)))));
  }
  return worst;
}

inline Complexd random_upper(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-3, 3), lg(std::log(0.2), std::log(5.0));
  return {re(rng), std::exp(lg(rng))};
}

inline HPoint random_hpoint(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2), h(0.1, 4);
  return {Complexd(u(rng), u(rng)), h(rng)};
}

}  // namespace fwh::oracle
