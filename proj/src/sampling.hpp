#pragma once

#include <optional>
#include <random>
#include <string>

#include "fwh/verify.hpp"

namespace fwh::internal {

/// Smallest angle that counts as a genuine crossing.
inline constexpr double kTransversalAngle = 1e-3;

Point random_point(Space space, std::mt19937_64& rng);

/// Point on a fiber at a random interior parameter.
Point random_point_on(const Fiber& fiber, std::mt19937_64& rng);

/// Signed quantity that vanishes when the two fibers are coplanar.
double signed_separation(const Fiber& a, const Fiber& b);

bool same_fiber(const Fiber& a, const Fiber& b, double tol);

/// Crossing of a and b at angle above kTransversalAngle, if any.
std::optional<Evidence> transversal_crossing(const Fiber& a, const Fiber& b, double tol);

std::string format_point(const Point& p);
std::string format_real(double v);

}  // namespace fwh::internal
