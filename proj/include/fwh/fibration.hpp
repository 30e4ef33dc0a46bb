// Fiberwise homogeneous geodesic fibrations of E^3 and H^3.
//
//   F_t    lines in horizontal planes, direction angle t*z at height z (E^3)
//   F_z    orbit of the geodesic from -i to z under <Hyp,Par> (H^3, Im z > 0)
//   F_inf  vertical lines in the upper half-space (H^3)
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fwh/euclid.hpp"
#include "fwh/hyper.hpp"

namespace fwh {

using Line = EucLine<double>;
using Geodesic = H3Geodesic<double>;
using HPoint = HalfSpacePoint<double>;
using Boundary = BoundaryPoint<double>;
using Mobius = MobiusMap<double>;
using Rigid = EuclideanIsometry<double>;

enum class Space { E3, H3 };

inline const char* to_string(Space s) { return s == Space::E3 ? "E3" : "H3"; }

class EuclideanFt {
 public:
  explicit EuclideanFt(double t);
  double t() const { return t_; }

 private:
  double t_;
};

class HyperbolicFz {
 public:
  explicit HyperbolicFz(Complexd z);
  Complexd z() const { return z_; }

 private:
  Complexd z_;
};

struct HyperbolicFInf {};

using Fibration = std::variant<EuclideanFt, HyperbolicFz, HyperbolicFInf>;

Space space_of(const Fibration& f);
std::string describe(const Fibration& f);

/// Pitch with the sign folded away; `reflected` records the orientation-reversing
/// reflection y -> -y that carries F_t onto F_{-t}.
struct PitchNormalization {
  double t;
  bool reflected;
};
PitchNormalization normalize_pitch(double t);

using Fiber = std::variant<Line, Geodesic>;
using Point = std::variant<Vec3d, HPoint>;

std::string describe(const Fiber& fiber);

// ---------------------------------------------------------------------------
// Boundary maps and isometries

/// w -> m(w), or w -> m(conj w) when `reflect` is set (orientation-reversing).
struct BoundaryMap {
  Mobius m;
  bool reflect = false;

  static BoundaryMap identity() { return {}; }
  static BoundaryMap rotation_pi() { return {Mobius::affine(-1.0, 0.0), false}; }
  static BoundaryMap reflect_imaginary() { return {Mobius::affine(-1.0, 0.0), true}; }
  static BoundaryMap reflect_real() { return {Mobius::identity(), true}; }

  Boundary operator()(const Boundary& p) const;
  HPoint operator()(const HPoint& p) const;
  Geodesic operator()(const Geodesic& g) const;
};

BoundaryMap compose(const BoundaryMap& f, const BoundaryMap& g);
BoundaryMap inverse(const BoundaryMap& f);

using Isometry = std::variant<Rigid, BoundaryMap>;

Isometry compose(const Isometry& f, const Isometry& g);
Isometry inverse(const Isometry& f);
Point apply_isometry(const Isometry& iso, const Point& p);
Fiber apply_isometry(const Isometry& iso, const Fiber& fiber);
std::string describe(const Isometry& iso);

// ---------------------------------------------------------------------------
// Fiber solvers

Line fiber_e3(double t, const Vec3d& p);
Geodesic fiber_h3_inf(const HPoint& p);

/// Position of a fiber of F_z: endpoints (a - lambda i, a + lambda z).
struct HypFiberCoords {
  double lambda;
  double a;
};

struct FzFiber {
  Geodesic geodesic;
  HypFiberCoords coords;
};

Geodesic fz_fiber(Complexd z, HypFiberCoords c);

/// Unique fiber of F_z through p. Throws SolverFailure when the hyperbolic
/// distance from p to the result exceeds 1e-10.
FzFiber fiber_h3_z(Complexd z, const HPoint& p);

/// Coordinates read off the endpoints; nullopt unless one endpoint lies below
/// and one above the real axis.
std::optional<HypFiberCoords> fz_coords(Complexd z, const Geodesic& g);

Fiber fiber_through(const Fibration& f, const Point& p);

/// A fibration carried by an isometry T: fibers are T(F) for F in the base.
class FibrationView {
 public:
  FibrationView(Fibration base);  // NOLINT(google-explicit-constructor)
  FibrationView(Fibration base, Isometry transform);

  const Fibration& base() const { return base_; }
  const std::optional<Isometry>& transform() const { return transform_; }
  Space space() const { return space_of(base_); }

  Fiber fiber_through(const Point& p) const;

 private:
  Fibration base_;
  std::optional<Isometry> transform_;
  std::optional<Isometry> inverse_;
};

FibrationView conjugate_fibration(const FibrationView& f, const Isometry& t);

/// Points on a fiber used for residual evaluation.
std::vector<Point> probe_points(const Fiber& fiber);

/// Largest deviation of `fiber` from the fibers through its own probe points:
/// the angle between tangents (radians) or the distance from the probe point,
/// whichever is larger. Zero exactly for fibers of `f`.
double membership_residual(const FibrationView& f, const Fiber& fiber);

/// Isometry preserving `f` that carries fiber `a` to fiber `b`. Drawn from
/// E(2)_t-bar (T(3) when t = 0), <Hyp,Par>, or Sim. Throws NotAFiber when
/// either input has membership residual >= tol.
Isometry transitivity_witness(const Fibration& f, const Fiber& a, const Fiber& b,
                              double tol = 1e-8);

// ---------------------------------------------------------------------------
// Canonical parameters

enum class CanonicalStep { RotationPi, ReflectImaginary, ReflectReal };

const char* to_string(CanonicalStep s);

/// Representative of the class of F_z in S = {Im z >= 1, Re z >= 0}.
struct CanonicalZ {
  Complexd z;
  std::vector<CanonicalStep> steps;  // applied first to last; empty = identity

  /// Boundary map carrying F_{input} onto F_{z}.
  BoundaryMap boundary_map() const;
  std::string witness() const;
};

/// z -> (Re z + i) / Im z; induced by the half-turn w -> -w.
Complexd flip_z(Complexd z);
/// z -> -conj(z); induced by reflection in the imaginary axis.
Complexd reflect_imaginary_z(Complexd z);

CanonicalZ canonicalize_z(Complexd z);

struct InvariantTag {
  enum class Kind { EuclideanPitch, HyperbolicZ, HyperbolicInf };
  Kind kind;
  double t = 0;
  Complexd z{};
};

InvariantTag equivalence_invariant(const Fibration& f);
bool same_tag(const InvariantTag& a, const InvariantTag& b, double tol = 1e-9);
std::string describe(const InvariantTag& tag);

/// "a+bi" with %.6g parts; "i", "-2i", "3" for the short forms.
std::string format_complex(Complexd z);

}  // namespace fwh
