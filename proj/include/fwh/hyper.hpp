// Hyperbolic 3-space in the upper half-space and Poincare ball models.
//
// Orientation-preserving isometries are represented by their action on the
// boundary Riemann sphere (Mobius maps) and extended to the interior through
// the quaternion formula. Geodesics are stored by their two boundary endpoints.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fwh/errors.hpp"
#include "fwh/euclid.hpp"

namespace fwh {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using Mat2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using Complexd = Complex<double>;

/// Point of C u {infinity}.
template <typename Scalar>
struct BoundaryPoint {
  Complex<Scalar> value{};
  bool infinite = false;

  BoundaryPoint() = default;
  BoundaryPoint(Complex<Scalar> z) : value(z) {}  // NOLINT(google-explicit-constructor)
  BoundaryPoint(Scalar x) : value(x) {}           // NOLINT(google-explicit-constructor)

  static BoundaryPoint infinity() {
    BoundaryPoint p;
    p.infinite = true;
    return p;
  }
  bool is_infinite() const { return infinite; }
};

template <typename Scalar>
bool approx_equal(const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& q, Scalar tol) {
  if (p.infinite || q.infinite) return p.infinite == q.infinite;
  return std::abs(p.value - q.value) < tol;
}

/// (z, x) with z in C and height x > 0.
template <typename Scalar>
struct HalfSpacePoint {
  Complex<Scalar> z{};
  Scalar height = 1;

  HalfSpacePoint() = default;
  HalfSpacePoint(Complex<Scalar> zz, Scalar x) : z(zz), height(x) {
    if (!(x > Scalar(0)) || !std::isfinite(x) || !std::isfinite(zz.real()) ||
        !std::isfinite(zz.imag())) {
      throw InvalidArgument("half-space point needs finite z and height > 0");
    }
  }

  Vec3<Scalar> coords() const { return {z.real(), z.imag(), height}; }
};

template <typename Scalar>
struct BallPoint {
  Vec3<Scalar> v = Vec3<Scalar>::Zero();

  BallPoint() = default;
  explicit BallPoint(const Vec3<Scalar>& vv) : v(vv) {
    if (!(vv.norm() < Scalar(1))) throw InvalidArgument("ball point must have norm < 1");
  }
};

// ---------------------------------------------------------------------------
// Mobius maps

/// z -> (a z + b) / (c z + d), compared up to a common nonzero scale.
template <typename Scalar>
struct MobiusMap {
  Complex<Scalar> a{1}, b{0}, c{0}, d{1};

  MobiusMap() = default;
  MobiusMap(Complex<Scalar> aa, Complex<Scalar> bb, Complex<Scalar> cc, Complex<Scalar> dd)
      : a(aa), b(bb), c(cc), d(dd) {
    if (determinant() == Complex<Scalar>(0)) throw InvalidArgument("Mobius map is singular");
  }
  explicit MobiusMap(const Mat2c<Scalar>& m) : MobiusMap(m(0, 0), m(0, 1), m(1, 0), m(1, 1)) {}

  static MobiusMap identity() { return {}; }
  /// z -> lambda z + shift
  static MobiusMap affine(Complex<Scalar> lambda, Complex<Scalar> shift) {
    return {lambda, shift, Complex<Scalar>(0), Complex<Scalar>(1)};
  }

  Complex<Scalar> determinant() const { return a * d - b * c; }
  Mat2c<Scalar> matrix() const {
    Mat2c<Scalar> m;
    m << a, b, c, d;
    return m;
  }

  /// Scaled to determinant 1 (sign fixed by the principal square root).
  MobiusMap normalized() const {
    const Complex<Scalar> s = std::sqrt(determinant());
    return {a / s, b / s, c / s, d / s};
  }

  BoundaryPoint<Scalar> operator()(const BoundaryPoint<Scalar>& p) const {
    if (p.infinite) {
      if (c == Complex<Scalar>(0)) return BoundaryPoint<Scalar>::infinity();
      return BoundaryPoint<Scalar>(a / c);
    }
    const Complex<Scalar> den = c * p.value + d;
    if (den == Complex<Scalar>(0)) return BoundaryPoint<Scalar>::infinity();
    const Complex<Scalar> w = (a * p.value + b) / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      return BoundaryPoint<Scalar>::infinity();
    }
    return BoundaryPoint<Scalar>(w);
  }
};

template <typename Scalar>
BoundaryPoint<Scalar> mobius_apply(const MobiusMap<Scalar>& m, const BoundaryPoint<Scalar>& p) {
  return m(p);
}

/// (f * g)(z) = f(g(z)).
template <typename Scalar>
MobiusMap<Scalar> operator*(const MobiusMap<Scalar>& f, const MobiusMap<Scalar>& g) {
  return {f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d, f.c * g.a + f.d * g.c,
          f.c * g.b + f.d * g.d};
}

template <typename Scalar>
MobiusMap<Scalar> inverse(const MobiusMap<Scalar>& m) {
  return {m.d, -m.b, -m.c, m.a};
}

/// Coefficient-wise complex conjugate: conj(m(conj z)).
template <typename Scalar>
MobiusMap<Scalar> conj(const MobiusMap<Scalar>& m) {
  return {std::conj(m.a), std::conj(m.b), std::conj(m.c), std::conj(m.d)};
}

template <typename Scalar>
bool projectively_equal(const MobiusMap<Scalar>& f, const MobiusMap<Scalar>& g, Scalar tol) {
  const Mat2c<Scalar> x = f.normalized().matrix();
  const Mat2c<Scalar> y = g.normalized().matrix();
  return std::min((x - y).norm(), (x + y).norm()) < tol;
}

/// Interior extension. Treats (z, x) as the quaternion z + x j and evaluates
/// (a q + b)(c q + d)^-1, which stays in C + R j.
template <typename Scalar>
HalfSpacePoint<Scalar> poincare_extend(const MobiusMap<Scalar>& m, const HalfSpacePoint<Scalar>& p) {
  const Complex<Scalar> cz_d = m.c * p.z + m.d;
  const Scalar x2 = p.height * p.height;
  const Scalar den = std::norm(cz_d) + std::norm(m.c) * x2;
  const Complex<Scalar> num = (m.a * p.z + m.b) * std::conj(cz_d) + m.a * std::conj(m.c) * x2;
  return {num / den, std::abs(m.determinant()) * p.height / den};
}

/// Traceless 2x2 complex generator X of the one-parameter family s -> exp(s X).
template <typename Scalar>
struct MobiusGenerator {
  Mat2c<Scalar> x = Mat2c<Scalar>::Zero();
  std::string label;

  MobiusGenerator() = default;
  MobiusGenerator(const Mat2c<Scalar>& m, std::string l = {}) : x(m), label(std::move(l)) {
    const Complex<Scalar> half_trace = (m(0, 0) + m(1, 1)) / Scalar(2);
    x(0, 0) -= half_trace;
    x(1, 1) -= half_trace;
  }

  MobiusMap<Scalar> at(Scalar s) const { return exp_sl2(x * Complex<Scalar>(s)); }

  /// exp of a traceless matrix: X^2 = -det(X) I gives a closed form.
  static MobiusMap<Scalar> exp_sl2(const Mat2c<Scalar>& y) {
    const Complex<Scalar> delta = -(y(0, 0) * y(1, 1) - y(0, 1) * y(1, 0));
    Complex<Scalar> ch, sh_over;
    if (std::abs(delta) < Scalar(1e-8)) {
      ch = Scalar(1) + delta / Scalar(2) + delta * delta / Scalar(24);
      sh_over = Scalar(1) + delta / Scalar(6) + delta * delta / Scalar(120);
    } else {
      const Complex<Scalar> r = std::sqrt(delta);
      ch = std::cosh(r);
      sh_over = std::sinh(r) / r;
    }
    Mat2c<Scalar> e = sh_over * y;
    e(0, 0) += ch;
    e(1, 1) += ch;
    return MobiusMap<Scalar>(e);
  }
};

/// Linear combination of generators, exponentiated as one flow.
template <typename Scalar>
MobiusGenerator<Scalar> combine(const MobiusGenerator<Scalar>& g, Scalar wg,
                                const MobiusGenerator<Scalar>& h, Scalar wh) {
  return MobiusGenerator<Scalar>(g.x * Complex<Scalar>(wg) + h.x * Complex<Scalar>(wh));
}

// ---------------------------------------------------------------------------
// Distance and models

/// cosh d = 1 + (|dz|^2 + dx^2) / (2 x_p x_q), evaluated through asinh for accuracy.
template <typename Scalar>
Scalar hyperbolic_distance(const HalfSpacePoint<Scalar>& p, const HalfSpacePoint<Scalar>& q) {
  const Scalar dz2 = std::norm(p.z - q.z);
  const Scalar dx = p.height - q.height;
  const Scalar chord = std::sqrt(dz2 + dx * dx);
  return Scalar(2) * std::asinh(chord / (Scalar(2) * std::sqrt(p.height * q.height)));
}

template <typename Scalar>
Scalar ball_distance(const BallPoint<Scalar>& p, const BallPoint<Scalar>& q) {
  const Scalar num = (p.v - q.v).squaredNorm();
  const Scalar den = (Scalar(1) - p.v.squaredNorm()) * (Scalar(1) - q.v.squaredNorm());
  return Scalar(2) * std::asinh(std::sqrt(num / den));
}

// Cayley map. (0, 1) goes to the ball center and the vertical half-plane over
// the real axis goes to the ball's z = 0 disk.

template <typename Scalar>
Vec3<Scalar> half_space_to_ball(const Vec3<Scalar>& p) {
  const Scalar den = p.x() * p.x() + p.y() * p.y() + (p.z() + Scalar(1)) * (p.z() + Scalar(1));
  return Vec3<Scalar>(Scalar(2) * p.x(), Scalar(1) - p.squaredNorm(), Scalar(2) * p.y()) / den;
}

template <typename Scalar>
Vec3<Scalar> ball_to_half_space(const Vec3<Scalar>& v) {
  const Vec3<Scalar> u(v.x(), v.z(), -v.y());  // undo the axis rotation
  const Vec3<Scalar> r(u.x(), u.y(), -u.z());  // reflect, then invert about (0,0,-1)
  const Vec3<Scalar> c(Scalar(0), Scalar(0), Scalar(-1));
  return c + Scalar(2) * (r - c) / (r - c).squaredNorm();
}

template <typename Scalar>
BallPoint<Scalar> to_ball(const HalfSpacePoint<Scalar>& p) {
  Vec3<Scalar> v = half_space_to_ball(p.coords());
  BallPoint<Scalar> out;
  out.v = v;  // norm < 1 up to rounding for points near the boundary
  return out;
}

template <typename Scalar>
HalfSpacePoint<Scalar> to_half_space(const BallPoint<Scalar>& b) {
  const Vec3<Scalar> p = ball_to_half_space(b.v);
  return {Complex<Scalar>(p.x(), p.y()), p.z()};
}

// ---------------------------------------------------------------------------
// Geodesics

/// Geodesic with boundary endpoints `u` and `v`. The stored order is the
/// construction order; comparisons ignore it.
template <typename Scalar>
struct H3Geodesic {
  BoundaryPoint<Scalar> u;
  BoundaryPoint<Scalar> v;

  H3Geodesic() : u(Complex<Scalar>(0)), v(BoundaryPoint<Scalar>::infinity()) {}
  H3Geodesic(const BoundaryPoint<Scalar>& a, const BoundaryPoint<Scalar>& b) : u(a), v(b) {
    if (a.infinite && b.infinite) throw InvalidArgument("geodesic endpoints must differ");
    if (!a.infinite && !b.infinite && a.value == b.value) {
      throw InvalidArgument("geodesic endpoints must differ");
    }
  }

  bool is_vertical() const { return u.infinite || v.infinite; }
  /// Finite endpoint of a vertical geodesic.
  Complex<Scalar> foot() const { return u.infinite ? v.value : u.value; }
  Complex<Scalar> center() const { return (u.value + v.value) / Scalar(2); }
  Scalar radius() const { return std::abs(v.value - u.value) / Scalar(2); }

  /// Normalized order: infinity last, otherwise lexicographic by (re, im).
  H3Geodesic canonical() const {
    auto less = [](const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& q) {
      if (p.infinite != q.infinite) return !p.infinite;
      if (p.value.real() != q.value.real()) return p.value.real() < q.value.real();
      return p.value.imag() < q.value.imag();
    };
    return less(v, u) ? H3Geodesic(v, u) : *this;
  }
};

template <typename Scalar>
H3Geodesic<Scalar> geodesic_from_endpoints(const BoundaryPoint<Scalar>& u,
                                           const BoundaryPoint<Scalar>& v) {
  return H3Geodesic<Scalar>(u, v).canonical();
}

template <typename Scalar>
H3Geodesic<Scalar> image_of_geodesic(const MobiusMap<Scalar>& m, const H3Geodesic<Scalar>& g) {
  return {m(g.u), m(g.v)};
}

/// Point at parameter s in (0, 1), running from u to v. Vertical geodesics
/// use height tan(s pi / 2); semicircles use the angle s pi from u.
template <typename Scalar>
HalfSpacePoint<Scalar> point_on_geodesic(const H3Geodesic<Scalar>& g, Scalar s) {
  if (!(s > Scalar(0) && s < Scalar(1))) throw InvalidArgument("point_on_geodesic: s must be in (0,1)");
  const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
  if (g.is_vertical()) {
    const Scalar h = std::tan(s * half_pi);
    return {g.foot(), g.u.infinite ? Scalar(1) / h : h};
  }
  const Complex<Scalar> c = g.center();
  const Scalar r = g.radius();
  const Complex<Scalar> e = (g.v.value - g.u.value) / (Scalar(2) * r);
  const Scalar theta = s * std::numbers::pi_v<Scalar>;
  return {c - r * std::cos(theta) * e, r * std::sin(theta)};
}

/// Unit tangent, in half-space coordinates (Re, Im, height), of the circle or
/// line carrying `g` at the position of `p`. Oriented from u towards v.
template <typename Scalar>
Vec3<Scalar> tangent_at(const H3Geodesic<Scalar>& g, const HalfSpacePoint<Scalar>& p) {
  if (g.is_vertical()) return Vec3<Scalar>(0, 0, g.v.infinite ? 1 : -1);
  const Complex<Scalar> e = (g.v.value - g.u.value) / std::abs(g.v.value - g.u.value);
  const Scalar rho = std::real((p.z - g.center()) * std::conj(e));
  Vec3<Scalar> t(p.height * e.real(), p.height * e.imag(), -rho);
  return t.normalized();
}

/// Angle in [0, pi/2] between two tangent lines.
template <typename Scalar>
Scalar undirected_angle(const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

namespace detail {

/// Mobius map sending g.u -> 0 and g.v -> infinity.
template <typename Scalar>
MobiusMap<Scalar> straighten(const H3Geodesic<Scalar>& g) {
  using C = Complex<Scalar>;
  if (g.v.infinite) return {C(1), -g.u.value, C(0), C(1)};
  if (g.u.infinite) return {C(0), C(1), C(1), -g.v.value};  // 1 / (w - v)
  return {C(1), -g.u.value, C(1), -g.v.value};
}

template <typename Scalar, typename F>
Scalar golden_minimize(F&& f, Scalar lo, Scalar hi, int iterations = 200) {
  const Scalar phi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  Scalar x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  Scalar f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations && hi - lo > Scalar(0); ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace detail

template <typename Scalar>
Scalar distance_to_geodesic(const HalfSpacePoint<Scalar>& p, const H3Geodesic<Scalar>& g) {
  const HalfSpacePoint<Scalar> q = poincare_extend(detail::straighten(g), p);
  return std::asinh(std::abs(q.z) / q.height);
}

/// Nearest point of `g` to `p`.
template <typename Scalar>
HalfSpacePoint<Scalar> project_to_geodesic(const HalfSpacePoint<Scalar>& p,
                                           const H3Geodesic<Scalar>& g) {
  const MobiusMap<Scalar> m = detail::straighten(g);
  const HalfSpacePoint<Scalar> q = poincare_extend(m, p);
  const HalfSpacePoint<Scalar> foot(Complex<Scalar>(0), std::hypot(std::abs(q.z), q.height));
  return poincare_extend(inverse(m), foot);
}

/// Im of the cross ratio (u1, v1; u2, v2). Zero exactly when the four
/// endpoints are concyclic; its sign flips when one geodesic passes through
/// the other.
template <typename Scalar>
Scalar signed_separation(const H3Geodesic<Scalar>& g1, const H3Geodesic<Scalar>& g2) {
  using C = Complex<Scalar>;
  const BoundaryPoint<Scalar>* pts[4] = {&g1.u, &g1.v, &g2.u, &g2.v};
  int inf_count = 0;
  for (auto* p : pts) inf_count += p->infinite;
  if (inf_count > 1) return Scalar(0);
  auto diff = [](const BoundaryPoint<Scalar>& a, const BoundaryPoint<Scalar>& b) -> C {
    if (a.infinite || b.infinite) return C(1);
    return a.value - b.value;
  };
  const C cr = diff(g1.u, g2.u) * diff(g1.v, g2.v) / (diff(g1.u, g2.v) * diff(g1.v, g2.u));
  return cr.imag();
}

enum class GeodesicRelation { Equal, Intersecting, Disjoint };

inline const char* to_string(GeodesicRelation r) {
  switch (r) {
    case GeodesicRelation::Equal: return "Equal";
    case GeodesicRelation::Intersecting: return "Intersecting";
    case GeodesicRelation::Disjoint: return "Disjoint";
  }
  return "?";
}

template <typename Scalar>
bool same_endpoints(const H3Geodesic<Scalar>& g1, const H3Geodesic<Scalar>& g2, Scalar tol) {
  return (approx_equal(g1.u, g2.u, tol) && approx_equal(g1.v, g2.v, tol)) ||
         (approx_equal(g1.u, g2.v, tol) && approx_equal(g1.v, g2.u, tol));
}

template <typename Scalar>
struct GeodesicContact {
  Scalar distance = std::numeric_limits<Scalar>::infinity();
  HalfSpacePoint<Scalar> on_first;   // nearest point of the first geodesic
  HalfSpacePoint<Scalar> on_second;  // nearest point of the second geodesic
  Scalar angle = 0;                  // between tangents at the nearest points
  bool asymptotic = false;           // shared endpoint, infimum not attained
};

/// Numerical closest approach. The first geodesic is straightened to the
/// vertical over 0; along the image of the second, sinh(distance) = |z| / x is
/// unimodal in the angle parameter and is minimized by golden section.
template <typename Scalar>
GeodesicContact<Scalar> geodesic_contact(const H3Geodesic<Scalar>& g1, const H3Geodesic<Scalar>& g2,
                                         Scalar tol = Scalar(1e-12)) {
  GeodesicContact<Scalar> out;
  if (approx_equal(g1.u, g2.u, tol) || approx_equal(g1.u, g2.v, tol) ||
      approx_equal(g1.v, g2.u, tol) || approx_equal(g1.v, g2.v, tol)) {
    out.asymptotic = true;
    return out;
  }
  const MobiusMap<Scalar> m = detail::straighten(g1);
  const MobiusMap<Scalar> m_inv = inverse(m);
  const H3Geodesic<Scalar> h = image_of_geodesic(m, g2);
  // h has finite nonzero endpoints since g2 shares none with g1.
  auto f = [&](Scalar s) {
    const HalfSpacePoint<Scalar> q = point_on_geodesic(h, s);
    return std::abs(q.z) / q.height;
  };
  const Scalar eps = Scalar(1e-15);
  const Scalar s_best = detail::golden_minimize<Scalar>(f, eps, Scalar(1) - eps);
  const HalfSpacePoint<Scalar> q = point_on_geodesic(h, s_best);
  out.distance = std::asinh(std::abs(q.z) / q.height);
  const HalfSpacePoint<Scalar> foot(Complex<Scalar>(0), std::hypot(std::abs(q.z), q.height));
  out.on_first = poincare_extend(m_inv, foot);
  out.on_second = poincare_extend(m_inv, q);
  // Angles are conformal; measure them in the straightened picture.
  out.angle = undirected_angle(Vec3<Scalar>(0, 0, 1), tangent_at(h, q));
  return out;
}

template <typename Scalar>
GeodesicRelation geodesic_relation(const H3Geodesic<Scalar>& g1, const H3Geodesic<Scalar>& g2,
                                   Scalar tol) {
  if (!(tol > Scalar(0))) throw InvalidArgument("geodesic_relation: tol must be positive");
  if (same_endpoints(g1, g2, tol)) return GeodesicRelation::Equal;
  const GeodesicContact<Scalar> c = geodesic_contact(g1, g2, tol);
  if (c.asymptotic) return GeodesicRelation::Disjoint;
  return c.distance < tol ? GeodesicRelation::Intersecting : GeodesicRelation::Disjoint;
}

// ---------------------------------------------------------------------------
// Subgroup catalog

template <typename Scalar>
struct SubgroupSpecH3 {
  std::string name;
  int dimension = 0;
  std::vector<MobiusGenerator<Scalar>> generators;
  std::optional<Scalar> parameter;  // dilation-to-rotation ratio for Lox / ScrewHom
};

inline constexpr std::string_view kH3GroupNames[] = {
    "{1}", "Hyp", "Par", "Ell", "Lox", "T(2)", "<Hyp,Par>", "<Ell,Hyp>",
    "Hom", "ScrewHom", "E(2)", "H(2)", "SO(3)", "Sim", "H(3)"};

namespace generators {

template <typename Scalar>
Mat2c<Scalar> mat(Complex<Scalar> a, Complex<Scalar> b, Complex<Scalar> c, Complex<Scalar> d) {
  Mat2c<Scalar> m;
  m << a, b, c, d;
  return m;
}

/// z -> e^s z
template <typename Scalar>
MobiusGenerator<Scalar> dilation() {
  return {mat<Scalar>(Scalar(0.5), 0, 0, Scalar(-0.5)), "dilation"};
}
/// z -> z + s
template <typename Scalar>
MobiusGenerator<Scalar> real_translation() {
  return {mat<Scalar>(0, 1, 0, 0), "translate-re"};
}
/// z -> z + i s
template <typename Scalar>
MobiusGenerator<Scalar> imaginary_translation() {
  return {mat<Scalar>(0, Complex<Scalar>(0, 1), 0, 0), "translate-im"};
}
/// z -> e^{i s} z
template <typename Scalar>
MobiusGenerator<Scalar> rotation() {
  return {mat<Scalar>(Complex<Scalar>(0, 0.5), 0, 0, Complex<Scalar>(0, -0.5)), "rotate"};
}
/// z -> e^{(ratio + i) s} z
template <typename Scalar>
MobiusGenerator<Scalar> loxodromic(Scalar ratio) {
  const Complex<Scalar> k(ratio / 2, Scalar(0.5));
  return {mat<Scalar>(k, 0, 0, -k), "loxodromic"};
}
/// z -> z / (s z + 1)
template <typename Scalar>
MobiusGenerator<Scalar> real_special() {
  return {mat<Scalar>(0, 0, 1, 0), "special-re"};
}
/// z -> z / (i s z + 1)
template <typename Scalar>
MobiusGenerator<Scalar> imaginary_special() {
  return {mat<Scalar>(0, 0, Complex<Scalar>(0, 1), 0), "special-im"};
}
/// Rotation of the ball about the axis through the images of -1 and 1 (unitary).
template <typename Scalar>
MobiusGenerator<Scalar> unitary_real() {
  return {mat<Scalar>(0, Scalar(0.5), Scalar(-0.5), 0), "unitary-re"};
}
template <typename Scalar>
MobiusGenerator<Scalar> unitary_imaginary() {
  return {mat<Scalar>(0, Complex<Scalar>(0, 0.5), Complex<Scalar>(0, 0.5), 0), "unitary-im"};
}
}  // namespace generators

template <typename Scalar>
SubgroupSpecH3<Scalar> make_subgroup_h3(std::string_view name, Scalar ratio = Scalar(0.5)) {
  namespace gen = generators;
  const std::string key = group_key(name);
  auto spec = [](std::string n, std::vector<MobiusGenerator<Scalar>> g,
                 std::optional<Scalar> p = std::nullopt) {
    SubgroupSpecH3<Scalar> s{std::move(n), static_cast<int>(g.size()), std::move(g), p};
    return s;
  };
  auto check_ratio = [&](std::string_view group) {
    if (!std::isfinite(ratio)) {
      throw DegenerateParameter(std::string(group) + ": infinite ratio is a pure dilation (Hyp)");
    }
    if (ratio == Scalar(0)) {
      throw DegenerateParameter(std::string(group) + ": ratio 0 is a pure rotation (Ell)");
    }
  };
  if (key == "1" || key == "trivial") return spec("{1}", {});
  if (key == "hyp") return spec("Hyp", {gen::dilation<Scalar>()});
  if (key == "par") return spec("Par", {gen::real_translation<Scalar>()});
  if (key == "ell") return spec("Ell", {gen::rotation<Scalar>()});
  if (key == "lox") {
    check_ratio("Lox");
    return spec("Lox", {gen::loxodromic<Scalar>(ratio)}, ratio);
  }
  if (key == "t2") {
    return spec("T(2)", {gen::real_translation<Scalar>(), gen::imaginary_translation<Scalar>()});
  }
  if (key == "hyppar") {
    return spec("<Hyp,Par>", {gen::real_translation<Scalar>(), gen::dilation<Scalar>()});
  }
  if (key == "ellhyp") return spec("<Ell,Hyp>", {gen::rotation<Scalar>(), gen::dilation<Scalar>()});
  if (key == "hom") {
    return spec("Hom", {gen::real_translation<Scalar>(), gen::imaginary_translation<Scalar>(),
                        gen::dilation<Scalar>()});
  }
  if (key == "screwhom") {
    check_ratio("ScrewHom");
    return spec("ScrewHom",
                {gen::real_translation<Scalar>(), gen::imaginary_translation<Scalar>(),
                 gen::loxodromic<Scalar>(ratio)},
                ratio);
  }
  if (key == "e2") {
    return spec("E(2)", {gen::real_translation<Scalar>(), gen::imaginary_translation<Scalar>(),
                         gen::rotation<Scalar>()});
  }
  if (key == "h2") {
    return spec("H(2)", {gen::real_translation<Scalar>(), gen::dilation<Scalar>(),
                         gen::real_special<Scalar>()});
  }
  if (key == "so3") {
    return spec("SO(3)", {gen::rotation<Scalar>(), gen::unitary_real<Scalar>(),
                          gen::unitary_imaginary<Scalar>()});
  }
  if (key == "sim") {
    return spec("Sim", {gen::real_translation<Scalar>(), gen::imaginary_translation<Scalar>(),
                        gen::rotation<Scalar>(), gen::dilation<Scalar>()});
  }
  if (key == "h3") {
    return spec("H(3)", {gen::real_translation<Scalar>(), gen::imaginary_translation<Scalar>(),
                         gen::dilation<Scalar>(), gen::rotation<Scalar>(),
                         gen::real_special<Scalar>(), gen::imaginary_special<Scalar>()});
  }
  throw InvalidArgument("unknown H3 subgroup '" + std::string(name) + "'");
}

/// All fifteen classes, in the order of the classical list.
template <typename Scalar = double>
std::vector<SubgroupSpecH3<Scalar>> catalog_h3(Scalar ratio = Scalar(0.5)) {
  std::vector<SubgroupSpecH3<Scalar>> out;
  for (auto n : kH3GroupNames) out.push_back(make_subgroup_h3<Scalar>(n, ratio));
  return out;
}

}  // namespace fwh
