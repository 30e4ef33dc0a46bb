// Euclidean 3-space: rigid motions, lines, screw flows and the catalog of
// closed connected subgroups of Isom(E^3).
#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fwh/errors.hpp"

namespace fwh {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

template <typename Scalar>
Mat3<Scalar> hat(const Vec3<Scalar>& w) {
  Mat3<Scalar> m;
  m << Scalar(0), -w.z(), w.y(),
       w.z(), Scalar(0), -w.x(),
      -w.y(), w.x(), Scalar(0);
  return m;
}

/// Orientation-preserving rigid motion p -> R p + t.
template <typename Scalar>
struct EuclideanIsometry {
  Mat3<Scalar> rotation = Mat3<Scalar>::Identity();
  Vec3<Scalar> translation = Vec3<Scalar>::Zero();

  static EuclideanIsometry identity() { return {}; }
  static EuclideanIsometry translate(const Vec3<Scalar>& t) {
    return {Mat3<Scalar>::Identity(), t};
  }
  /// Rotation by `angle` about the line through `point` with direction `axis`.
  static EuclideanIsometry rotate(const Vec3<Scalar>& axis, Scalar angle,
                                  const Vec3<Scalar>& point = Vec3<Scalar>::Zero()) {
    Mat3<Scalar> r = Eigen::AngleAxis<Scalar>(angle, axis.normalized()).toRotationMatrix();
    return {r, point - r * point};
  }

  Vec3<Scalar> operator()(const Vec3<Scalar>& p) const { return rotation * p + translation; }

  bool is_proper(Scalar tol = Scalar(1e-12)) const {
    const Scalar orth = (rotation.transpose() * rotation - Mat3<Scalar>::Identity()).norm();
    return orth < tol && std::abs(rotation.determinant() - Scalar(1)) < tol;
  }
};

template <typename Scalar>
Vec3<Scalar> apply(const EuclideanIsometry<Scalar>& iso, const Vec3<Scalar>& p) {
  return iso(p);
}

/// (a o b)(p) = a(b(p)).
template <typename Scalar>
EuclideanIsometry<Scalar> compose(const EuclideanIsometry<Scalar>& a,
                                  const EuclideanIsometry<Scalar>& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

template <typename Scalar>
EuclideanIsometry<Scalar> inverse(const EuclideanIsometry<Scalar>& a) {
  Mat3<Scalar> rt = a.rotation.transpose();
  return {rt, -(rt * a.translation)};
}

template <typename Scalar>
Scalar distance(const EuclideanIsometry<Scalar>& a, const EuclideanIsometry<Scalar>& b) {
  return std::max((a.rotation - b.rotation).norm(), (a.translation - b.translation).norm());
}

// ---------------------------------------------------------------------------
// Lines

template <typename Scalar>
struct EucLine {
  Vec3<Scalar> base = Vec3<Scalar>::Zero();
  Vec3<Scalar> direction = Vec3<Scalar>::UnitX();

  EucLine() = default;
  EucLine(const Vec3<Scalar>& b, const Vec3<Scalar>& d) : base(b), direction(d) {
    const Scalar n = d.norm();
    if (!(n > Scalar(0)) || !std::isfinite(n)) {
      throw InvalidArgument("line direction must be a finite nonzero vector");
    }
    direction /= n;
  }

  Vec3<Scalar> at(Scalar s) const { return base + s * direction; }

  /// Foot of the perpendicular from p.
  Vec3<Scalar> closest_point(const Vec3<Scalar>& p) const {
    return base + (p - base).dot(direction) * direction;
  }
  Scalar distance_to(const Vec3<Scalar>& p) const { return (p - closest_point(p)).norm(); }
};

template <typename Scalar>
EucLine<Scalar> image_of_line(const EuclideanIsometry<Scalar>& iso, const EucLine<Scalar>& line) {
  return {iso(line.base), iso.rotation * line.direction};
}

enum class LineRelation { Equal, Parallel, Intersecting, Skew };

inline const char* to_string(LineRelation r) {
  switch (r) {
    case LineRelation::Equal: return "Equal";
    case LineRelation::Parallel: return "Parallel";
    case LineRelation::Intersecting: return "Intersecting";
    case LineRelation::Skew: return "Skew";
  }
  return "?";
}

/// Unsigned angle in [0, pi/2] between the undirected lines.
template <typename Scalar>
Scalar line_angle(const EucLine<Scalar>& a, const EucLine<Scalar>& b) {
  const Scalar c = std::abs(a.direction.dot(b.direction));
  const Scalar s = a.direction.cross(b.direction).norm();
  return std::atan2(s, c);
}

/// Signed common-perpendicular quantity (b2 - b1) . (d1 x d2). It changes sign
/// when one line passes through the other; zero for coplanar lines.
template <typename Scalar>
Scalar signed_separation(const EucLine<Scalar>& a, const EucLine<Scalar>& b) {
  return (b.base - a.base).dot(a.direction.cross(b.direction));
}

template <typename Scalar>
LineRelation lines_relation(const EucLine<Scalar>& a, const EucLine<Scalar>& b, Scalar tol) {
  if (!(tol > Scalar(0))) throw InvalidArgument("lines_relation: tol must be positive");
  const Vec3<Scalar> cr = a.direction.cross(b.direction);
  const Scalar sin_angle = cr.norm();
  if (sin_angle < tol) {
    const Vec3<Scalar> d = b.base - a.base;
    const Scalar perp = (d - d.dot(a.direction) * a.direction).norm();
    return perp < tol ? LineRelation::Equal : LineRelation::Parallel;
  }
  const Scalar gap = std::abs((b.base - a.base).dot(cr)) / sin_angle;
  return gap < tol ? LineRelation::Intersecting : LineRelation::Skew;
}

/// Closest point of `a` to `b` (the intersection point when they meet).
template <typename Scalar>
Vec3<Scalar> closest_point_between(const EucLine<Scalar>& a, const EucLine<Scalar>& b) {
  const Vec3<Scalar> w = a.base - b.base;
  const Scalar d1d2 = a.direction.dot(b.direction);
  const Scalar denom = Scalar(1) - d1d2 * d1d2;
  if (denom < Scalar(1e-300)) return a.base;
  const Scalar s = (d1d2 * b.direction.dot(w) - a.direction.dot(w)) / denom;
  return a.at(s);
}

// ---------------------------------------------------------------------------
// Screw flows

/// se(3) element: angular velocity and linear velocity at the origin.
template <typename Scalar>
struct Twist {
  Vec3<Scalar> angular = Vec3<Scalar>::Zero();
  Vec3<Scalar> linear = Vec3<Scalar>::Zero();

  Twist operator+(const Twist& o) const { return {angular + o.angular, linear + o.linear}; }
  Twist operator*(Scalar s) const { return {angular * s, linear * s}; }

  Vec3<Scalar> velocity(const Vec3<Scalar>& p) const { return angular.cross(p) + linear; }
};

template <typename Scalar>
EuclideanIsometry<Scalar> exp_twist(const Twist<Scalar>& xi) {
  const Scalar theta = xi.angular.norm();
  const Mat3<Scalar> w = hat(xi.angular);
  const Mat3<Scalar> w2 = w * w;
  Scalar a, b, c;
  if (theta < Scalar(1e-6)) {
    const Scalar t2 = theta * theta;
    a = Scalar(1) - t2 / Scalar(6);
    b = Scalar(0.5) - t2 / Scalar(24);
    c = Scalar(1) / Scalar(6) - t2 / Scalar(120);
  } else {
    a = std::sin(theta) / theta;
    b = (Scalar(1) - std::cos(theta)) / (theta * theta);
    c = (theta - std::sin(theta)) / (theta * theta * theta);
  }
  EuclideanIsometry<Scalar> g;
  g.rotation = Mat3<Scalar>::Identity() + a * w + b * w2;
  g.translation = (Mat3<Scalar>::Identity() + b * w + c * w2) * xi.linear;
  return g;
}

enum class GeneratorKind { PureRotation, PureTranslation, Screw };

/// One-parameter screw flow about an axis. Rates are per unit parameter.
template <typename Scalar>
struct ScrewGenerator {
  Vec3<Scalar> axis_point = Vec3<Scalar>::Zero();
  Vec3<Scalar> axis_direction = Vec3<Scalar>::UnitZ();
  Scalar rotation_rate = 0;
  Scalar translation_rate = 0;

  ScrewGenerator() = default;
  ScrewGenerator(const Vec3<Scalar>& point, const Vec3<Scalar>& dir, Scalar omega, Scalar tau)
      : axis_point(point), axis_direction(dir.normalized()), rotation_rate(omega),
        translation_rate(tau) {
    if (omega == Scalar(0) && tau == Scalar(0)) {
      throw InvalidArgument("screw generator needs a nonzero rate");
    }
  }

  static ScrewGenerator translation(const Vec3<Scalar>& dir) {
    return {Vec3<Scalar>::Zero(), dir, Scalar(0), Scalar(1)};
  }
  static ScrewGenerator rotation(const Vec3<Scalar>& dir,
                                 const Vec3<Scalar>& point = Vec3<Scalar>::Zero()) {
    return {point, dir, Scalar(1), Scalar(0)};
  }

  GeneratorKind kind() const {
    if (translation_rate == Scalar(0)) return GeneratorKind::PureRotation;
    if (rotation_rate == Scalar(0)) return GeneratorKind::PureTranslation;
    return GeneratorKind::Screw;
  }

  Twist<Scalar> twist() const {
    const Vec3<Scalar> w = rotation_rate * axis_direction;
    return {w, -w.cross(axis_point) + translation_rate * axis_direction};
  }

  Vec3<Scalar> velocity(const Vec3<Scalar>& p) const { return twist().velocity(p); }
};

/// Closed-form screw motion: rotate by omega*s about the axis and slide tau*s along it.
template <typename Scalar>
EuclideanIsometry<Scalar> exp_screw(const ScrewGenerator<Scalar>& g, Scalar s) {
  const Mat3<Scalar> r =
      Eigen::AngleAxis<Scalar>(g.rotation_rate * s, g.axis_direction).toRotationMatrix();
  return {r, g.axis_point - r * g.axis_point + g.translation_rate * s * g.axis_direction};
}

// ---------------------------------------------------------------------------
// Subgroup catalog

template <typename Scalar>
struct SubgroupSpecE3 {
  std::string name;
  int dimension = 0;
  std::vector<ScrewGenerator<Scalar>> generators;
  std::optional<Scalar> parameter;  // pitch for the screw families
};

inline constexpr std::string_view kE3GroupNames[] = {
    "{1}",  "T(1)",       "SO(2)", "SO(2)_t-bar", "SO(2)xT(1)", "T(2)",
    "E(2)_t-bar", "T(3)", "E(2)",  "SO(3)",       "E(2)xT(1)",  "E(3)"};

/// Lower-cased name with punctuation removed; "SO(2)xT(1)", "so2xt1", "SO2×T1" agree.
inline std::string group_key(std::string_view name) {
  std::string key;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(name[i]);
    if (c == 0xC3 && i + 1 < name.size() && static_cast<unsigned char>(name[i + 1]) == 0x97) {
      key += 'x';  // UTF-8 multiplication sign
      ++i;
    } else if (std::isalnum(c)) {
      key += static_cast<char>(std::tolower(c));
    }
  }
  return key;
}

namespace detail {

template <typename Scalar>
void check_pitch(Scalar t, std::string_view group) {
  if (!std::isfinite(t)) throw InvalidArgument(std::string(group) + ": pitch must be finite");
  if (t < Scalar(0)) {
    throw InvalidArgument(std::string(group) +
                          ": negative pitch; use |t| (conjugate by an orientation-reversing "
                          "isometry)");
  }
  if (t == Scalar(0)) {
    throw DegenerateParameter(std::string(group) + ": pitch 0 degenerates to " +
                              (group == "SO(2)_t-bar" ? "T(1)" : "T(3)"));
  }
}

}  // namespace detail

/// Representative of one conjugacy class. `pitch` is used by the screw families.
template <typename Scalar>
SubgroupSpecE3<Scalar> make_subgroup_e3(std::string_view name, Scalar pitch = Scalar(1)) {
  using G = ScrewGenerator<Scalar>;
  const Vec3<Scalar> ex = Vec3<Scalar>::UnitX(), ey = Vec3<Scalar>::UnitY(),
                     ez = Vec3<Scalar>::UnitZ();
  const std::string key = group_key(name);
  auto spec = [](std::string n, std::vector<G> gens, std::optional<Scalar> p = std::nullopt) {
    SubgroupSpecE3<Scalar> s{std::move(n), static_cast<int>(gens.size()), std::move(gens), p};
    return s;
  };
  if (key == "1" || key == "trivial") return spec("{1}", {});
  if (key == "t1") return spec("T(1)", {G::translation(ez)});
  if (key == "so2") return spec("SO(2)", {G::rotation(ez)});
  if (key == "so2tbar" || key == "so2t") {
    detail::check_pitch(pitch, "SO(2)_t-bar");
    return spec("SO(2)_t-bar", {G(Vec3<Scalar>::Zero(), ez, pitch, Scalar(1))}, pitch);
  }
  if (key == "so2xt1") return spec("SO(2)xT(1)", {G::rotation(ez), G::translation(ez)});
  if (key == "t2") return spec("T(2)", {G::translation(ex), G::translation(ey)});
  if (key == "e2tbar" || key == "e2t") {
    detail::check_pitch(pitch, "E(2)_t-bar");
    return spec("E(2)_t-bar",
                {G::translation(ex), G::translation(ey), G(Vec3<Scalar>::Zero(), ez, pitch, Scalar(1))},
                pitch);
  }
  if (key == "t3") return spec("T(3)", {G::translation(ex), G::translation(ey), G::translation(ez)});
  if (key == "e2") return spec("E(2)", {G::translation(ex), G::translation(ey), G::rotation(ez)});
  if (key == "so3") return spec("SO(3)", {G::rotation(ex), G::rotation(ey), G::rotation(ez)});
  if (key == "e2xt1") {
    return spec("E(2)xT(1)",
                {G::translation(ex), G::translation(ey), G::rotation(ez), G::translation(ez)});
  }
  if (key == "e3") {
    return spec("E(3)", {G::translation(ex), G::translation(ey), G::translation(ez),
                         G::rotation(ex), G::rotation(ey), G::rotation(ez)});
  }
  throw InvalidArgument("unknown E3 subgroup '" + std::string(name) + "'");
}

/// All twelve classes, in the order of the classical list.
template <typename Scalar = double>
std::vector<SubgroupSpecE3<Scalar>> catalog_e3(Scalar pitch = Scalar(1)) {
  std::vector<SubgroupSpecE3<Scalar>> out;
  for (auto n : kE3GroupNames) out.push_back(make_subgroup_e3<Scalar>(n, pitch));
  return out;
}

}  // namespace fwh
