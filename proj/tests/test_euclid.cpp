#include "doctest.h"

#include <numbers>
#include <random>

#include "fwh/euclid.hpp"

using namespace fwh;
using std::numbers::pi;

namespace {

// RK4 integration of the screw flow x' = omega d x (x - c) + tau d, used as an
// independent oracle for the closed-form exponential.
Vec3d integrate_flow(const ScrewGenerator<double>& g, const Vec3d& x0, double s, int steps = 20000) {
  auto f = [&](const Vec3d& x) {
    return Vec3d(g.rotation_rate * g.axis_direction.cross(x - g.axis_point) +
                 g.translation_rate * g.axis_direction);
  };
  Vec3d x = x0;
  const double h = s / steps;
  for (int i = 0; i < steps; ++i) {
    const Vec3d k1 = f(x), k2 = f(x + 0.5 * h * k1), k3 = f(x + 0.5 * h * k2), k4 = f(x + h * k3);
    x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return x;
}

Vec3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return Vec3d(n(rng), n(rng), n(rng)).normalized();
}

ScrewGenerator<double> random_generator(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  return {Vec3d(u(rng), u(rng), u(rng)), random_unit(rng), u(rng), u(rng)};
}

}  // namespace

using Iso = EuclideanIsometry<double>;
using L = EucLine<double>;
using G = ScrewGenerator<double>;

TEST_CASE("apply_isometry examples") {
  CHECK((apply(Iso::identity(), Vec3d(1, 2, 3)) - Vec3d(1, 2, 3)).norm() == 0.0);
  const Iso half_turn = Iso::rotate(Vec3d::UnitZ(), pi);
  CHECK((half_turn(Vec3d(1, 0, 0)) - Vec3d(-1, 0, 0)).norm() < 1e-15);

  const G screw(Vec3d::Zero(), Vec3d::UnitZ(), pi / 2, 1.0);
  const Vec3d closed = apply(exp_screw(screw, 1.0), Vec3d(1, 0, 0));
  const Vec3d integrated = integrate_flow(screw, Vec3d(1, 0, 0), 1.0);
  CHECK((integrated - Vec3d(0, 1, 1)).norm() < 1e-10);
  CHECK((closed - Vec3d(0, 1, 1)).norm() < 1e-15);
}

TEST_CASE("compose and inverse obey the group laws") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Iso a = exp_screw(random_generator(rng), 0.7);
    const Iso b = exp_screw(random_generator(rng), -1.3);
    CHECK(distance(compose(a, inverse(a)), Iso::identity()) < 1e-12);
    CHECK(distance(compose(Iso::identity(), b), b) < 1e-12);
    const Vec3d p(0.3, -1.2, 2.0);
    CHECK((compose(a, b)(p) - a(b(p))).norm() < 1e-12);
  }
  const Iso up = Iso::translate(Vec3d(0, 0, 1));
  CHECK(distance(compose(up, up), Iso::translate(Vec3d(0, 0, 2))) == 0.0);
}

TEST_CASE("exp_screw examples") {
  const Iso tr = exp_screw(G::translation(Vec3d::UnitZ()), 2.0);
  CHECK((tr.translation - Vec3d(0, 0, 2)).norm() < 1e-15);
  CHECK((tr.rotation - Mat3d::Identity()).norm() < 1e-15);

  const Iso rot = exp_screw(G::rotation(Vec3d::UnitZ()), pi);
  CHECK(rot.translation.norm() < 1e-15);
  CHECK((rot.rotation - Eigen::AngleAxisd(pi, Vec3d::UnitZ()).toRotationMatrix()).norm() < 1e-15);

  for (double t : {0.5, 1.0, 3.0}) {
    const G screw(Vec3d::Zero(), Vec3d::UnitZ(), t, 1.0);
    const double s = 2 * pi / t;
    const Iso full = exp_screw(screw, s);
    CHECK((full.rotation - Mat3d::Identity()).norm() < 1e-12);
    CHECK((full.translation - Vec3d(0, 0, s)).norm() < 1e-12);
    const Vec3d x0(0.4, -0.9, 0.2);
    CHECK((integrate_flow(screw, x0, s) - full(x0)).norm() < 1e-9);
  }
}

TEST_CASE("exp_screw is a one-parameter group and matches the twist exponential") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const G g = random_generator(rng);
    const double s1 = u(rng), s2 = u(rng);
    CHECK(distance(compose(exp_screw(g, s1), exp_screw(g, s2)), exp_screw(g, s1 + s2)) < 1e-10);
    CHECK(distance(exp_screw(g, 0.0), Iso::identity()) < 1e-15);
    CHECK(distance(exp_twist(g.twist() * s1), exp_screw(g, s1)) < 1e-10);
    CHECK(exp_screw(g, s1).is_proper());
  }
}

TEST_CASE("distance preservation under catalog flows") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  for (const auto& group : catalog_e3(1.5)) {
    for (const auto& g : group.generators) {
      for (double s : {-2.0, -0.5, 0.25, 1.0, 3.0}) {
        const Iso iso = exp_screw(g, s);
        CHECK(iso.is_proper());
        const Vec3d p(u(rng), u(rng), u(rng)), q(u(rng), u(rng), u(rng));
        CHECK(std::abs((iso(p) - iso(q)).norm() - (p - q).norm()) < 1e-10);
      }
    }
  }
}

TEST_CASE("catalog_e3 lists the twelve classes") {
  const auto cat = catalog_e3(1.0);
  REQUIRE(cat.size() == 12);
  const int dims[] = {0, 1, 1, 1, 2, 2, 3, 3, 3, 3, 4, 6};
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].name == kE3GroupNames[i]);
    CHECK(cat[i].dimension == dims[i]);
    CHECK(cat[i].generators.size() == static_cast<std::size_t>(dims[i]));
  }
  CHECK(make_subgroup_e3<double>("E(3)").dimension == 6);

  const auto t2 = make_subgroup_e3<double>("T(2)");
  REQUIRE(t2.dimension == 2);
  for (const auto& g : t2.generators) {
    CHECK(g.kind() == GeneratorKind::PureTranslation);
    CHECK(std::abs(g.axis_direction.z()) < 1e-15);
  }
  CHECK(std::abs(t2.generators[0].axis_direction.cross(t2.generators[1].axis_direction).norm() - 1) < 1e-15);

  const auto e2t = make_subgroup_e3<double>("E(2)_t-bar", 1.0);
  REQUIRE(e2t.generators.size() == 3);
  CHECK(e2t.generators[0].kind() == GeneratorKind::PureTranslation);
  CHECK(e2t.generators[1].kind() == GeneratorKind::PureTranslation);
  CHECK(e2t.generators[2].kind() == GeneratorKind::Screw);
  CHECK(e2t.generators[2].rotation_rate == 1.0);
  CHECK(e2t.parameter == 1.0);

  CHECK(make_subgroup_e3<double>("SO2xT1").name == "SO(2)xT(1)");
  CHECK(make_subgroup_e3<double>("so3").name == "SO(3)");
}

TEST_CASE("catalog_e3 rejects degenerate pitches") {
  CHECK_THROWS_AS(make_subgroup_e3<double>("SO(2)_t-bar", 0.0), DegenerateParameter);
  CHECK_THROWS_AS(make_subgroup_e3<double>("E(2)_t-bar", 0.0), DegenerateParameter);
  CHECK_THROWS_AS(make_subgroup_e3<double>("SO(2)_t-bar", -1.0), InvalidArgument);
  CHECK_THROWS_AS(make_subgroup_e3<double>("nonsense"), InvalidArgument);
  CHECK_THROWS_AS(G(Vec3d::Zero(), Vec3d::UnitZ(), 0.0, 0.0), InvalidArgument);
}

TEST_CASE("image_of_line examples") {
  const L x_axis(Vec3d::Zero(), Vec3d::UnitX());
  CHECK(lines_relation(image_of_line(Iso::identity(), x_axis), x_axis, 1e-12) == LineRelation::Equal);
  const L lifted = image_of_line(Iso::translate(Vec3d(0, 0, 1)), x_axis);
  CHECK((lifted.base - Vec3d(0, 0, 1)).norm() < 1e-15);
  CHECK((lifted.direction - Vec3d::UnitX()).norm() < 1e-15);
  const L turned = image_of_line(Iso::rotate(Vec3d::UnitZ(), pi / 2), x_axis);
  CHECK(lines_relation(turned, L(Vec3d::Zero(), Vec3d::UnitY()), 1e-12) == LineRelation::Equal);
}

TEST_CASE("lines_relation examples and properties") {
  const L x_axis(Vec3d::Zero(), Vec3d::UnitX());
  CHECK(lines_relation(x_axis, x_axis, 1e-9) == LineRelation::Equal);
  CHECK(lines_relation(x_axis, L(Vec3d::Zero(), Vec3d::UnitY()), 1e-9) == LineRelation::Intersecting);
  CHECK(lines_relation(x_axis, L(Vec3d(0, 1, 0), Vec3d::UnitX()), 1e-9) == LineRelation::Parallel);
  CHECK(lines_relation(x_axis, L(Vec3d(0, 0, 1), Vec3d::UnitY()), 1e-9) == LineRelation::Skew);
  CHECK(lines_relation(x_axis, L(Vec3d(5, 0, 0), -Vec3d::UnitX()), 1e-9) == LineRelation::Equal);
  CHECK_THROWS_AS(lines_relation(x_axis, x_axis, 0.0), InvalidArgument);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 200; ++i) {
    const Vec3d b(u(rng), u(rng), u(rng));
    const L a(b, random_unit(rng));
    // Half of the partners share a point with `a`.
    const Vec3d on = i % 2 ? a.at(u(rng)) : Vec3d(u(rng), u(rng), u(rng));
    const L c(on, random_unit(rng));
    const auto r = lines_relation(a, c, 1e-9);
    CHECK(r == lines_relation(c, a, 1e-9));
    const Iso iso = exp_screw(random_generator(rng), u(rng));
    CHECK(r == lines_relation(image_of_line(iso, a), image_of_line(iso, c), 1e-9));
    if (i % 2) CHECK(r == LineRelation::Intersecting);
  }
}
