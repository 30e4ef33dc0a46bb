#include "fwh/fibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fwh {

namespace {

constexpr Complexd kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string format_vec(const Vec3d& v) {
  return "(" + format_real(v.x()) + ", " + format_real(v.y()) + ", " + format_real(v.z()) + ")";
}

std::string format_boundary(const Boundary& p) {
  return p.infinite ? std::string("inf") : format_complex(p.value);
}

}  // namespace

EuclideanFt::EuclideanFt(double t) : t_(t) {
  if (!std::isfinite(t)) throw InvalidArgument("F_t: t must be finite");
  if (t < 0) {
    throw InvalidArgument("F_t: t must be >= 0 (F_t and F_{-t} are mirror images; use |t|)");
  }
}

HyperbolicFz::HyperbolicFz(Complexd z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("F_z: z must be finite");
  }
  if (!(z.imag() > 0)) {
    throw InvalidArgument("F_z: Im z must be > 0 so that the generating geodesic crosses the real axis");
  }
}

Space space_of(const Fibration& f) {
  return std::holds_alternative<EuclideanFt>(f) ? Space::E3 : Space::H3;
}

std::string describe(const Fibration& f) {
  return std::visit(overloaded{
                        [](const EuclideanFt& e) { return "F_t(t=" + format_real(e.t()) + ")"; },
                        [](const HyperbolicFz& h) { return "F_z(z=" + format_complex(h.z()) + ")"; },
                        [](const HyperbolicFInf&) { return std::string("F_inf"); },
                    },
                    f);
}

PitchNormalization normalize_pitch(double t) {
  if (!std::isfinite(t)) throw InvalidArgument("pitch must be finite");
  return {std::abs(t), t < 0};
}

std::string describe(const Fiber& fiber) {
  return std::visit(overloaded{
                        [](const Line& l) {
                          return "line through " + format_vec(l.base) + " direction " +
                                 format_vec(l.direction);
                        },
                        [](const Geodesic& g) {
                          return "geodesic (" + format_boundary(g.u) + ", " + format_boundary(g.v) +
                                 ")";
                        },
                    },
                    fiber);
}

// ---------------------------------------------------------------------------

Boundary BoundaryMap::operator()(const Boundary& p) const {
  if (!reflect || p.infinite) return m(p);
  return m(Boundary(std::conj(p.value)));
}

HPoint BoundaryMap::operator()(const HPoint& p) const {
  return poincare_extend(m, reflect ? HPoint(std::conj(p.z), p.height) : p);
}

Geodesic BoundaryMap::operator()(const Geodesic& g) const { return {(*this)(g.u), (*this)(g.v)}; }

BoundaryMap compose(const BoundaryMap& f, const BoundaryMap& g) {
  return {f.reflect ? f.m * conj(g.m) : f.m * g.m, f.reflect != g.reflect};
}

BoundaryMap inverse(const BoundaryMap& f) {
  return f.reflect ? BoundaryMap{conj(inverse(f.m)), true} : BoundaryMap{inverse(f.m), false};
}

Isometry compose(const Isometry& f, const Isometry& g) {
  if (f.index() != g.index()) throw InvalidArgument("cannot compose isometries of different spaces");
  if (const auto* r = std::get_if<Rigid>(&f)) return compose(*r, std::get<Rigid>(g));
  return compose(std::get<BoundaryMap>(f), std::get<BoundaryMap>(g));
}

Isometry inverse(const Isometry& f) {
  return std::visit([](const auto& x) -> Isometry { return inverse(x); }, f);
}

Point apply_isometry(const Isometry& iso, const Point& p) {
  if (iso.index() != p.index()) throw InvalidArgument("isometry and point live in different spaces");
  if (const auto* r = std::get_if<Rigid>(&iso)) return (*r)(std::get<Vec3d>(p));
  return std::get<BoundaryMap>(iso)(std::get<HPoint>(p));
}

Fiber apply_isometry(const Isometry& iso, const Fiber& fiber) {
  if (iso.index() != fiber.index()) {
    throw InvalidArgument("isometry and fiber live in different spaces");
  }
  if (const auto* r = std::get_if<Rigid>(&iso)) return image_of_line(*r, std::get<Line>(fiber));
  return std::get<BoundaryMap>(iso)(std::get<Geodesic>(fiber));
}

std::string describe(const Isometry& iso) {
  if (const auto* r = std::get_if<Rigid>(&iso)) {
    const Eigen::AngleAxisd aa(r->rotation);
    std::ostringstream os;
    os << "rotate " << format_real(aa.angle()) << " rad about " << format_vec(aa.axis())
       << ", translate " << format_vec(r->translation);
    return os.str();
  }
  const auto& b = std::get<BoundaryMap>(iso);
  const std::string w = b.reflect ? "conj(w)" : "w";
  return "w -> (" + format_complex(b.m.a) + "*" + w + " + " + format_complex(b.m.b) + ") / (" +
         format_complex(b.m.c) + "*" + w + " + " + format_complex(b.m.d) + ")";
}

// ---------------------------------------------------------------------------

Line fiber_e3(double t, const Vec3d& p) {
  return {p, Vec3d(std::cos(t * p.z()), std::sin(t * p.z()), 0.0)};
}

Geodesic fiber_h3_inf(const HPoint& p) { return {Boundary(p.z), Boundary::infinity()}; }

Geodesic fz_fiber(Complexd z, HypFiberCoords c) {
  return {Boundary(c.a - c.lambda * kI), Boundary(c.a + c.lambda * z)};
}

FzFiber fiber_h3_z(Complexd z, const HPoint& p) {
  if (!(z.imag() > 0)) throw InvalidArgument("fiber_h3_z: Im z must be > 0");
  const Complexd w = p.z;
  const double h2 = p.height * p.height;
  const Complexd zi = z + kI;
  const double k = z.imag() + 1.0;
  // The foot w must be collinear with both endpoints; this fixes a given lambda.
  auto offset = [&](double lambda) { return -std::imag((w + lambda * kI) * std::conj(zi)) / k; };
  // Power of w with respect to the diameter minus h^2; one positive root.
  auto excess = [&](double lambda) {
    const double a = offset(lambda);
    const Complexd u = a - lambda * kI;
    const Complexd v = a + lambda * z;
    return std::real((w - u) * std::conj(v - w)) - h2;
  };

  double lo = 1e-8;
  if (excess(lo) >= 0) throw SolverFailure("fiber_h3_z: no bracket (point too close to boundary)");
  double hi = lo;
  while (excess(hi) <= 0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) throw SolverFailure("fiber_h3_z: no bracket below lambda = 1e8");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (excess(mid) > 0 ? hi : lo) = mid;
  }
  const double lambda = std::abs(excess(lo)) < std::abs(excess(hi)) ? lo : hi;
  FzFiber out{fz_fiber(z, {lambda, offset(lambda)}), {lambda, offset(lambda)}};
  const double miss = distance_to_geodesic(p, out.geodesic);
  if (!(miss < 1e-10)) {
    throw SolverFailure("fiber_h3_z: residual " + format_real(miss) + " exceeds 1e-10");
  }
  return out;
}

std::optional<HypFiberCoords> fz_coords(Complexd /*z*/, const Geodesic& g) {
  if (g.is_vertical()) return std::nullopt;
  const Complexd p = g.u.value, q = g.v.value;
  if (p.imag() < 0 && q.imag() > 0) return HypFiberCoords{-p.imag(), p.real()};
  if (q.imag() < 0 && p.imag() > 0) return HypFiberCoords{-q.imag(), q.real()};
  return std::nullopt;
}

Fiber fiber_through(const Fibration& f, const Point& p) {
  if ((space_of(f) == Space::E3) != std::holds_alternative<Vec3d>(p)) {
    throw InvalidArgument("point and fibration live in different spaces");
  }
  return std::visit(overloaded{
                        [&](const EuclideanFt& e) -> Fiber { return fiber_e3(e.t(), std::get<Vec3d>(p)); },
                        [&](const HyperbolicFz& h) -> Fiber {
                          return fiber_h3_z(h.z(), std::get<HPoint>(p)).geodesic;
                        },
                        [&](const HyperbolicFInf&) -> Fiber { return fiber_h3_inf(std::get<HPoint>(p)); },
                    },
                    f);
}

FibrationView::FibrationView(Fibration base) : base_(base) {}

FibrationView::FibrationView(Fibration base, Isometry transform)
    : base_(base), transform_(transform), inverse_(inverse(transform)) {
  if ((space_of(base_) == Space::E3) != std::holds_alternative<Rigid>(transform)) {
    throw InvalidArgument("conjugating isometry acts on the wrong space");
  }
}

Fiber FibrationView::fiber_through(const Point& p) const {
  if (!transform_) return fwh::fiber_through(base_, p);
  return apply_isometry(*transform_, fwh::fiber_through(base_, apply_isometry(*inverse_, p)));
}

FibrationView conjugate_fibration(const FibrationView& f, const Isometry& t) {
  if (!f.transform()) return {f.base(), t};
  return {f.base(), compose(t, *f.transform())};
}

std::vector<Point> probe_points(const Fiber& fiber) {
  std::vector<Point> out;
  if (const auto* l = std::get_if<Line>(&fiber)) {
    for (double s : {-1.0, 0.0, 1.0}) out.emplace_back(l->at(s));
  } else {
    const auto& g = std::get<Geodesic>(fiber);
    for (double s : {0.25, 0.5, 0.75}) out.emplace_back(point_on_geodesic(g, s));
  }
  return out;
}

double membership_residual(const FibrationView& f, const Fiber& fiber) {
  double worst = 0.0;
  for (const Point& q : probe_points(fiber)) {
    const Fiber through = f.fiber_through(q);
    if (const auto* l = std::get_if<Line>(&fiber)) {
      const auto& m = std::get<Line>(through);
      const Vec3d& x = std::get<Vec3d>(q);
      worst = std::max({worst, line_angle(*l, m), m.distance_to(x)});
    } else {
      const auto& g = std::get<Geodesic>(fiber);
      const auto& m = std::get<Geodesic>(through);
      const HPoint& x = std::get<HPoint>(q);
      const double angle = undirected_angle(tangent_at(g, x), tangent_at(m, x));
      worst = std::max({worst, angle, distance_to_geodesic(x, m)});
    }
  }
  return worst;
}

Isometry transitivity_witness(const Fibration& f, const Fiber& a, const Fiber& b, double tol) {
  const FibrationView view(f);
  if (a.index() != b.index() || (space_of(f) == Space::E3) != std::holds_alternative<Line>(a)) {
    throw NotAFiber("transitivity_witness: fibers do not belong to this space");
  }
  for (const Fiber* fib : {&a, &b}) {
    const double r = membership_residual(view, *fib);
    if (!(r < tol)) {
      throw NotAFiber("transitivity_witness: " + describe(*fib) + " is not a fiber of " +
                      describe(f) + " (residual " + format_real(r) + ")");
    }
  }
  return std::visit(
      overloaded{
          [&](const EuclideanFt& e) -> Isometry {
            const auto& la = std::get<Line>(a);
            const auto& lb = std::get<Line>(b);
            Rigid screw = Rigid::identity();
            const double dz = lb.base.z() - la.base.z();
            if (e.t() != 0.0 && dz != 0.0) {
              screw = exp_screw(ScrewGenerator<double>(Vec3d::Zero(), Vec3d::UnitZ(), e.t(), 1.0), dz);
            } else if (dz != 0.0) {
              screw = Rigid::translate(Vec3d(0, 0, dz));
            }
            const Line moved = image_of_line(screw, la);
            Vec3d shift = lb.base - moved.base;
            shift -= shift.dot(moved.direction) * moved.direction;
            return compose(Rigid::translate(shift), screw);
          },
          [&](const HyperbolicFz& h) -> Isometry {
            const auto ca = fz_coords(h.z(), std::get<Geodesic>(a));
            const auto cb = fz_coords(h.z(), std::get<Geodesic>(b));
            if (!ca || !cb) throw NotAFiber("transitivity_witness: fiber does not cross the real axis");
            const double k = cb->lambda / ca->lambda;
            return BoundaryMap{Mobius::affine(k, cb->a - k * ca->a), false};
          },
          [&](const HyperbolicFInf&) -> Isometry {
            const Complexd shift = std::get<Geodesic>(b).foot() - std::get<Geodesic>(a).foot();
            return BoundaryMap{Mobius::affine(1.0, shift), false};
          },
      },
      f);
}

// ---------------------------------------------------------------------------

const char* to_string(CanonicalStep s) {
  switch (s) {
    case CanonicalStep::RotationPi: return "rotation-pi";
    case CanonicalStep::ReflectImaginary: return "reflect-imaginary";
    case CanonicalStep::ReflectReal: return "reflect-real";
  }
  return "?";
}

BoundaryMap CanonicalZ::boundary_map() const {
  BoundaryMap m = BoundaryMap::identity();
  for (CanonicalStep s : steps) {
    switch (s) {
      case CanonicalStep::RotationPi: m = compose(BoundaryMap::rotation_pi(), m); break;
      case CanonicalStep::ReflectImaginary: m = compose(BoundaryMap::reflect_imaginary(), m); break;
      case CanonicalStep::ReflectReal: m = compose(BoundaryMap::reflect_real(), m); break;
    }
  }
  return m;
}

std::string CanonicalZ::witness() const {
  if (steps.empty()) return "identity";
  std::string out;
  for (CanonicalStep s : steps) {
    if (!out.empty()) out += " then ";
    out += to_string(s);
  }
  return out;
}

Complexd flip_z(Complexd z) { return {z.real() / z.imag(), 1.0 / z.imag()}; }

Complexd reflect_imaginary_z(Complexd z) { return -std::conj(z); }

CanonicalZ canonicalize_z(Complexd z) {
  if (!(z.imag() > 0)) throw InvalidArgument("canonicalize_z: Im z must be > 0");
  CanonicalZ out{z, {}};
  if (out.z.real() < 0) {
    out.z = reflect_imaginary_z(out.z);
    out.steps.push_back(CanonicalStep::ReflectImaginary);
  }
  if (out.z.imag() < 1) {
    out.z = flip_z(out.z);
    out.steps.push_back(CanonicalStep::RotationPi);
  }
  if (out.z.real() < 0) {
    out.z = reflect_imaginary_z(out.z);
    out.steps.push_back(CanonicalStep::ReflectImaginary);
  }
  return out;
}

InvariantTag equivalence_invariant(const Fibration& f) {
  return std::visit(overloaded{
                        [](const EuclideanFt& e) {
                          return InvariantTag{InvariantTag::Kind::EuclideanPitch, std::abs(e.t()), {}};
                        },
                        [](const HyperbolicFz& h) {
                          return InvariantTag{InvariantTag::Kind::HyperbolicZ, 0.0,
                                              canonicalize_z(h.z()).z};
                        },
                        [](const HyperbolicFInf&) {
                          return InvariantTag{InvariantTag::Kind::HyperbolicInf, 0.0, {}};
                        },
                    },
                    f);
}

bool same_tag(const InvariantTag& a, const InvariantTag& b, double tol) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case InvariantTag::Kind::EuclideanPitch: return std::abs(a.t - b.t) < tol;
    case InvariantTag::Kind::HyperbolicZ: return std::abs(a.z - b.z) < tol;
    case InvariantTag::Kind::HyperbolicInf: return true;
  }
  return false;
}

std::string describe(const InvariantTag& tag) {
  switch (tag.kind) {
    case InvariantTag::Kind::EuclideanPitch: return "t=" + format_real(tag.t);
    case InvariantTag::Kind::HyperbolicZ: return "z=" + format_complex(tag.z);
    case InvariantTag::Kind::HyperbolicInf: return "F_inf";
  }
  return "?";
}

std::string format_complex(Complexd z) {
  const std::string re = format_real(z.real());
  std::string im = format_real(z.imag());
  if (im == "0") return re;
  if (im == "1") im.clear();
  if (im == "-1") im = "-";
  if (re == "0") return im + "i";
  return re + (im.empty() || im[0] != '-' ? "+" : "") + im + "i";
}

}  // namespace fwh
