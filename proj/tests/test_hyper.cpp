#include "doctest.h"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <random>

#include "fwh/hyper.hpp"

using namespace fwh;
using std::numbers::pi;
using C = Complexd;
using M = MobiusMap<double>;
using P = HalfSpacePoint<double>;
using B = BoundaryPoint<double>;
using Geo = H3Geodesic<double>;

namespace {

const C I(0, 1);

// Quaternion model: (z, x) is z + x j, a complex number a + b i becomes the
// quaternion a + b i, and m acts by (a q + b)(c q + d)^-1.
P quaternion_extend(const M& m, const P& p) {
  auto q = [](C w) { return Eigen::Quaterniond(w.real(), w.imag(), 0, 0); };
  const Eigen::Quaterniond pt(p.z.real(), p.z.imag(), p.height, 0);
  auto add = [](const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
    return Eigen::Quaterniond(a.coeffs() + b.coeffs());
  };
  const Eigen::Quaterniond num = add(q(m.a) * pt, q(m.b));
  const Eigen::Quaterniond den = add(q(m.c) * pt, q(m.d));
  const Eigen::Quaterniond r = num * den.inverse();
  // Coefficient of k must vanish for the result to be a half-space point.
  CHECK(std::abs(r.z()) < 1e-9);
  return {C(r.w(), r.x()), r.y()};
}

// Composite Simpson rule for the length of the vertical segment from height a
// to height b: the integrand of the half-space metric is 1/x.
double vertical_length(double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = 1 / a + 1 / b;
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) / (a + i * h);
  return s * h / 3;
}

P random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2), h(0.1, 3);
  return {C(u(rng), u(rng)), h(rng)};
}

M random_mobius(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  return {C(u(rng), u(rng)), C(u(rng), u(rng)), C(u(rng), u(rng)), C(u(rng), u(rng))};
}

double max_dist(const P& a, const P& b) {
  return std::max({std::abs(a.z - b.z), std::abs(a.height - b.height)});
}

}  // namespace

TEST_CASE("mobius_apply examples") {
  CHECK(std::abs(mobius_apply(M::identity(), B(C(3, 4))).value - C(3, 4)) == 0.0);
  CHECK(std::abs(mobius_apply(M::affine(2.0, 0.0), B(C(1, 1))).value - C(2, 2)) < 1e-15);
  const M neg_inv(0.0, -1.0, 1.0, 0.0);
  CHECK(mobius_apply(neg_inv, B(0.0)).infinite);
  CHECK(std::abs(mobius_apply(neg_inv, B::infinity()).value) == 0.0);
  CHECK(mobius_apply(M::affine(3.0, 1.0), B::infinity()).infinite);
  CHECK_THROWS_AS(M(1.0, 2.0, 2.0, 4.0), InvalidArgument);
}

TEST_CASE("mobius_apply is invariant under projective scaling") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const M m = random_mobius(rng);
    const C lambda(u(rng), u(rng));
    const M scaled(lambda * m.a, lambda * m.b, lambda * m.c, lambda * m.d);
    const B p(C(u(rng), u(rng)));
    const B a = mobius_apply(m, p), b = mobius_apply(scaled, p);
    REQUIRE(a.infinite == b.infinite);
    CHECK(std::abs(a.value - b.value) < 1e-12 * std::max(1.0, std::abs(a.value)));
    CHECK(projectively_equal(m, scaled, 1e-12));
    CHECK(max_dist(poincare_extend(m, P(p.value, 0.7)), poincare_extend(scaled, P(p.value, 0.7))) <
          1e-12 * std::max(1.0, std::abs(a.value)));
  }
}

TEST_CASE("poincare_extend examples and quaternion oracle") {
  CHECK(max_dist(poincare_extend(M::identity(), P(I, 1)), P(I, 1)) == 0.0);
  CHECK(max_dist(poincare_extend(M::affine(2.0, 0.0), P(1.0, 1)), P(2.0, 2)) < 1e-15);
  const M neg_inv(0.0, -1.0, 1.0, 0.0);
  CHECK(max_dist(poincare_extend(neg_inv, P(0.0, 1)), P(0.0, 1)) < 1e-15);
  CHECK(max_dist(quaternion_extend(neg_inv, P(0.0, 1)), P(0.0, 1)) < 1e-15);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const M m = random_mobius(rng);
    const P p = random_point(rng);
    const P a = poincare_extend(m, p);
    const P b = quaternion_extend(m.normalized(), p);
    CHECK(max_dist(a, b) < 1e-9 * std::max(1.0, std::abs(a.z) + a.height));
  }

  // Similitudes act as (lambda z + a, lambda x).
  const P s = poincare_extend(M::affine(1.5, C(2, -1)), P(C(1, 1), 0.4));
  CHECK(max_dist(s, P(C(3.5, 0.5), 0.6)) < 1e-15);

  // Boundary limit.
  const M m(C(1, 2), C(0, 1), C(1, -1), C(2, 0));
  const C w(0.3, -0.4);
  const P near = poincare_extend(m, P(w, 1e-9));
  CHECK(std::abs(near.z - mobius_apply(m, B(w)).value) < 1e-7);
  CHECK(near.height < 1e-7);
}

TEST_CASE("hyperbolic_distance examples") {
  CHECK(hyperbolic_distance(P(0.0, 1), P(0.0, 1)) == 0.0);
  const double e = std::numbers::e;
  CHECK(std::abs(hyperbolic_distance(P(0.0, 1), P(0.0, e)) - 1.0) < 1e-15);
  CHECK(std::abs(vertical_length(1.0, e) - 1.0) < 1e-12);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const P p = random_point(rng), q = random_point(rng);
    const double d = hyperbolic_distance(p, q);
    CHECK(d >= 0);
    CHECK(d == doctest::Approx(hyperbolic_distance(q, p)).epsilon(1e-14));
    const double cosh_ref =
        1 + (std::norm(p.z - q.z) + std::pow(p.height - q.height, 2)) / (2 * p.height * q.height);
    CHECK(std::cosh(d) == doctest::Approx(cosh_ref).epsilon(1e-12));
  }
}

TEST_CASE("catalog generators preserve hyperbolic distance") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> s(-2, 2);
  for (const auto& group : catalog_h3(0.5)) {
    for (const auto& g : group.generators) {
      for (int i = 0; i < 10; ++i) {
        const M m = g.at(s(rng));
        const P p = random_point(rng), q = random_point(rng);
        const double d0 = hyperbolic_distance(p, q);
        const double d1 = hyperbolic_distance(poincare_extend(m, p), poincare_extend(m, q));
        CHECK(std::abs(d1 - d0) < 1e-9);
      }
    }
  }
}

TEST_CASE("geodesic_from_endpoints and point_on_geodesic examples") {
  const Geo g1 = geodesic_from_endpoints<double>(-I, I);
  CHECK(!g1.is_vertical());
  CHECK(std::abs(g1.center()) < 1e-15);
  CHECK(g1.radius() == doctest::Approx(1.0));
  const Geo g2 = geodesic_from_endpoints<double>(0.0, B::infinity());
  CHECK(g2.is_vertical());
  CHECK(std::abs(g2.foot()) == 0.0);
  const Geo g3 = geodesic_from_endpoints<double>(-I, 2.0 * I);
  CHECK(std::abs(g3.center() - 0.5 * I) < 1e-15);
  CHECK(g3.radius() == doctest::Approx(1.5));
  CHECK_THROWS_AS(geodesic_from_endpoints<double>(I, I), InvalidArgument);
  CHECK_THROWS_AS(geodesic_from_endpoints<double>(B::infinity(), B::infinity()), InvalidArgument);

  CHECK(max_dist(point_on_geodesic(g1, 0.5), P(0.0, 1)) < 1e-15);
  CHECK(max_dist(point_on_geodesic(g2, 0.5), P(0.0, 1)) < 1e-15);
  CHECK(max_dist(point_on_geodesic(g3, 0.5), P(0.5 * I, 1.5)) < 1e-15);
  CHECK_THROWS_AS(point_on_geodesic(g1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(point_on_geodesic(g1, 1.0), InvalidArgument);

  // Every sampled point is at distance 0 from its geodesic.
  for (double s : {0.01, 0.3, 0.77, 0.99}) {
    CHECK(distance_to_geodesic(point_on_geodesic(g3, s), g3) < 1e-12);
    CHECK(distance_to_geodesic(point_on_geodesic(g2, s), g2) < 1e-12);
  }
}

TEST_CASE("distance_to_geodesic agrees with sampling") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    const P p = random_point(rng);
    const Geo g(random_point(rng).z, random_point(rng).z);
    double best = INFINITY;
    for (int k = 1; k < 20000; ++k) {
      best = std::min(best, hyperbolic_distance(p, point_on_geodesic(g, k / 20000.0)));
    }
    const double d = distance_to_geodesic(p, g);
    CHECK(d <= best + 1e-12);
    CHECK(best - d < 1e-3);
    const P foot = project_to_geodesic(p, g);
    CHECK(std::abs(hyperbolic_distance(p, foot) - d) < 1e-9);
    CHECK(distance_to_geodesic(foot, g) < 1e-9);
  }
}

TEST_CASE("geodesic_relation examples") {
  const Geo ii(-I, I), real(-1.0, 1.0), vert(0.0, B::infinity()), far(3.0, 4.0);
  CHECK(geodesic_relation(ii, ii, 1e-9) == GeodesicRelation::Equal);
  CHECK(geodesic_relation(ii, Geo(I, -I), 1e-9) == GeodesicRelation::Equal);
  CHECK(geodesic_relation(ii, real, 1e-9) == GeodesicRelation::Intersecting);
  CHECK(geodesic_relation(vert, far, 1e-9) == GeodesicRelation::Disjoint);
  CHECK(geodesic_relation(vert, Geo(0.0, 1.0), 1e-9) == GeodesicRelation::Disjoint);
  CHECK_THROWS_AS(geodesic_relation(ii, ii, 0.0), InvalidArgument);

  // Dense 2-D grid over both parameters, then the numerical contact.
  double grid_best = INFINITY;
  int bi = 0, bj = 0;
  const int n = 800;
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      const double d = hyperbolic_distance(point_on_geodesic(vert, double(i) / n),
                                           point_on_geodesic(far, double(j) / n));
      if (d < grid_best) grid_best = d, bi = i, bj = j;
    }
  }
  // Local refinement of the grid minimum.
  double si = double(bi) / n, sj = double(bj) / n, step = 1.0 / n;
  for (int it = 0; it < 60; ++it) {
    bool moved = false;
    for (auto [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const double a = si + di * step, b = sj + dj * step;
      if (a <= 0 || a >= 1 || b <= 0 || b >= 1) continue;
      const double d = hyperbolic_distance(point_on_geodesic(vert, a), point_on_geodesic(far, b));
      if (d < grid_best) grid_best = d, si = a, sj = b, moved = true;
    }
    if (!moved) step /= 2;
  }
  const auto contact = geodesic_contact(vert, far);
  CHECK(contact.distance == doctest::Approx(grid_best).epsilon(1e-8));
  // Along the semicircle over [3,4], |z|/x is least where cos(theta) = -r/c, giving
  // sinh d = sqrt(c^2 - r^2)/r, so cosh d = 7.
  CHECK(contact.distance == doctest::Approx(std::acosh(7.0)).epsilon(1e-10));
}

TEST_CASE("geodesic images and relations are Mobius invariant") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> s(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    const M m = random_mobius(rng);
    const Geo g(random_point(rng).z, random_point(rng).z);
    const Geo h = image_of_geodesic(m, g);
    const P p = point_on_geodesic(g, s(rng));
    CHECK(distance_to_geodesic(poincare_extend(m, p), h) < 1e-8);

    // Half the partners pass through p: the semicircle centred under p with
    // radius equal to its height has p as apex.
    Geo other(random_point(rng).z, random_point(rng).z);
    if (i % 2) {
      const C e = std::polar(1.0, 2 * pi * s(rng));
      other = Geo(p.z + p.height * e, p.z - p.height * e);
    }
    const auto r0 = geodesic_relation(g, other, 1e-8);
    CHECK(r0 == geodesic_relation(other, g, 1e-8));
    CHECK(r0 == geodesic_relation(image_of_geodesic(m, g), image_of_geodesic(m, other), 1e-8));
    if (i % 2) CHECK(r0 == GeodesicRelation::Intersecting);
  }
}

TEST_CASE("model conversion") {
  CHECK(to_ball(P(0.0, 1)).v.norm() < 1e-15);
  // The real vertical half-plane lands in the ball's z = 0 disk.
  CHECK(std::abs(to_ball(P(0.7, 2.0)).v.z()) < 1e-15);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const P p = random_point(rng), q = random_point(rng);
    const auto bp = to_ball(p), bq = to_ball(q);
    CHECK(bp.v.norm() < 1);
    CHECK(max_dist(to_half_space(bp), p) < 1e-10);
    CHECK(std::abs(ball_distance(bp, bq) - hyperbolic_distance(p, q)) < 1e-9);
  }
  double prev = 0;
  for (double x : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
    const double r = to_ball(P(C(0.4, -0.3), x)).v.norm();
    CHECK(r > prev);
    prev = r;
  }
  CHECK(1 - prev < 1e-5);
  CHECK_THROWS_AS(BallPoint<double>(Vec3d(1, 0, 0)), InvalidArgument);
  CHECK_THROWS_AS(P(0.0, 0.0), InvalidArgument);
}

TEST_CASE("catalog_h3 lists the fifteen classes") {
  const auto cat = catalog_h3(0.5);
  REQUIRE(cat.size() == 15);
  const int dims[] = {0, 1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 4, 6};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].name == kH3GroupNames[i]);
    CHECK(cat[i].dimension == dims[i]);
    CHECK(cat[i].generators.size() == static_cast<std::size_t>(dims[i]));
  }
  CHECK(make_subgroup_h3<double>("Sim").dimension == 4);
  CHECK(make_subgroup_h3<double>("HypPar").name == "<Hyp,Par>");

  const auto hp = make_subgroup_h3<double>("<Hyp,Par>");
  REQUIRE(hp.generators.size() == 2);
  for (double s : {-1.3, 0.4, 2.0}) {
    const C w(0.3, 0.8);
    CHECK(std::abs(hp.generators[0].at(s)(B(w)).value - (w + s)) < 1e-14);
    CHECK(std::abs(hp.generators[1].at(s)(B(w)).value - std::exp(s) * w) < 1e-13);
  }
}

TEST_CASE("catalog_h3 geometric descriptions") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> s(-2, 2);
  const auto so3 = make_subgroup_h3<double>("SO(3)");
  for (const auto& g : so3.generators) {
    for (int k = 0; k < 5; ++k) {
      CHECK(max_dist(poincare_extend(g.at(s(rng)), P(0.0, 1)), P(0.0, 1)) < 1e-12);
    }
  }
  const auto h2 = make_subgroup_h3<double>("H(2)");
  for (const auto& g : h2.generators) {
    for (int k = 0; k < 5; ++k) {
      const M m = g.at(s(rng));
      const P q = poincare_extend(m, P(s(rng), 0.5 + std::abs(s(rng))));
      CHECK(std::abs(q.z.imag()) < 1e-12);
    }
  }
  for (const auto& group : catalog_h3(0.5)) {
    for (const auto& g : group.generators) {
      const double s1 = s(rng), s2 = s(rng);
      CHECK(projectively_equal(g.at(s1) * g.at(s2), g.at(s1 + s2), 1e-10));
      CHECK(projectively_equal(g.at(0.0), M::identity(), 1e-15));
    }
  }
}

TEST_CASE("catalog_h3 rejects degenerate loxodromic ratios") {
  CHECK_THROWS_AS(make_subgroup_h3<double>("Lox", 0.0), DegenerateParameter);
  CHECK_THROWS_AS(make_subgroup_h3<double>("ScrewHom", 0.0), DegenerateParameter);
  CHECK_THROWS_AS(make_subgroup_h3<double>("Lox", INFINITY), DegenerateParameter);
  CHECK_THROWS_AS(make_subgroup_h3<double>("bogus"), InvalidArgument);
  CHECK(make_subgroup_h3<double>("Lox", 2.0).parameter == 2.0);
}
