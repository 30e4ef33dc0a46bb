#include "fwh/verify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sampling.hpp"

namespace fwh {

namespace internal {

Point random_point(Space space, std::mt19937_64& rng) {
  if (space == Space::E3) {
    std::uniform_real_distribution<double> u(-3, 3);
    return Vec3d(u(rng), u(rng), u(rng));
  }
  std::uniform_real_distribution<double> u(-2, 2), h(0.1, 4);
  return HPoint(Complexd(u(rng), u(rng)), h(rng));
}

Point random_point_on(const Fiber& fiber, std::mt19937_64& rng) {
  if (const auto* l = std::get_if<Line>(&fiber)) {
    std::uniform_real_distribution<double> s(-2, 2);
    return l->at(s(rng));
  }
  std::uniform_real_distribution<double> s(0.1, 0.9);
  return point_on_geodesic(std::get<Geodesic>(fiber), s(rng));
}

double signed_separation(const Fiber& a, const Fiber& b) {
  if (const auto* l = std::get_if<Line>(&a)) return fwh::signed_separation(*l, std::get<Line>(b));
  return fwh::signed_separation(std::get<Geodesic>(a), std::get<Geodesic>(b));
}

bool same_fiber(const Fiber& a, const Fiber& b, double tol) {
  if (const auto* l = std::get_if<Line>(&a)) {
    return lines_relation(*l, std::get<Line>(b), tol) == LineRelation::Equal;
  }
  return same_endpoints(std::get<Geodesic>(a), std::get<Geodesic>(b), tol);
}

std::optional<Evidence> transversal_crossing(const Fiber& a, const Fiber& b, double tol) {
  Evidence e;
  if (const auto* la = std::get_if<Line>(&a)) {
    const auto& lb = std::get<Line>(b);
    if (lines_relation(*la, lb, tol) != LineRelation::Intersecting) return std::nullopt;
    e.angle = line_angle(*la, lb);
    e.point = closest_point_between(*la, lb);
  } else {
    const auto& ga = std::get<Geodesic>(a);
    const auto& gb = std::get<Geodesic>(b);
    if (same_endpoints(ga, gb, tol)) return std::nullopt;
    const auto c = geodesic_contact(ga, gb, tol);
    if (c.asymptotic || !(c.distance < tol)) return std::nullopt;
    e.angle = c.angle;
    e.point = c.on_first;
    e.residual = c.distance;
  }
  if (!(e.angle > kTransversalAngle)) return std::nullopt;
  return e;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_point(const Point& p) {
  if (const auto* v = std::get_if<Vec3d>(&p)) {
    return "(" + format_real(v->x()) + ", " + format_real(v->y()) + ", " + format_real(v->z()) + ")";
  }
  const auto& h = std::get<HPoint>(p);
  return "(" + format_complex(h.z) + ", " + format_real(h.height) + ")";
}

}  // namespace internal

using internal::format_real;

// ---------------------------------------------------------------------------

Space space_of(const SubgroupSpec& g) {
  return std::holds_alternative<SubgroupSpecE3<double>>(g) ? Space::E3 : Space::H3;
}

const std::string& name_of(const SubgroupSpec& g) {
  return std::visit([](const auto& s) -> const std::string& { return s.name; }, g);
}

int dimension_of(const SubgroupSpec& g) {
  return std::visit([](const auto& s) { return s.dimension; }, g);
}

SubgroupSpec make_subgroup(Space space, std::string_view name, double parameter) {
  if (space == Space::E3) return make_subgroup_e3<double>(name, parameter);
  return make_subgroup_h3<double>(name, parameter);
}

Isometry generator_flow(const SubgroupSpec& g, std::size_t i, double s) {
  if (const auto* e = std::get_if<SubgroupSpecE3<double>>(&g)) return exp_screw(e->generators.at(i), s);
  return BoundaryMap{std::get<SubgroupSpecH3<double>>(g).generators.at(i).at(s), false};
}

Isometry mixed_flow(const SubgroupSpec& g, std::size_t i, std::size_t j, double phi, double s) {
  const double c = std::cos(phi), sn = std::sin(phi);
  if (const auto* e = std::get_if<SubgroupSpecE3<double>>(&g)) {
    const Twist<double> xi = e->generators.at(i).twist() * c + e->generators.at(j).twist() * sn;
    return exp_twist(xi * s);
  }
  const auto& h = std::get<SubgroupSpecH3<double>>(g);
  return BoundaryMap{combine(h.generators.at(i), c, h.generators.at(j), sn).at(s), false};
}

Isometry random_element(const SubgroupSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> s(-2, 2);
  Isometry out = space_of(g) == Space::E3 ? Isometry(Rigid::identity()) : Isometry(BoundaryMap::identity());
  const auto n = static_cast<std::size_t>(dimension_of(g));
  for (int round = 0; round < 2; ++round) {
    for (std::size_t i = 0; i < n; ++i) out = compose(generator_flow(g, i, s(rng)), out);
  }
  return out;
}

Vec3d generator_velocity(const SubgroupSpec& g, std::size_t i, const Point& p) {
  if (const auto* e = std::get_if<SubgroupSpecE3<double>>(&g)) {
    return e->generators.at(i).velocity(std::get<Vec3d>(p));
  }
  const auto& gen = std::get<SubgroupSpecH3<double>>(g).generators.at(i);
  const HPoint& q = std::get<HPoint>(p);
  const double eps = 1e-5;
  const Vec3d fwd = poincare_extend(gen.at(eps), q).coords();
  const Vec3d back = poincare_extend(gen.at(-eps), q).coords();
  return (fwd - back) / (2 * eps * q.height);
}

Vec3d fiber_tangent(const Fiber& fiber, const Point& p) {
  if (const auto* l = std::get_if<Line>(&fiber)) return l->direction;
  return tangent_at(std::get<Geodesic>(fiber), std::get<HPoint>(p));
}

// ---------------------------------------------------------------------------

std::string describe(const CheckReport& r) {
  std::string out = (r.passed ? "PASS " : "FAIL ") + r.name + ": max residual " +
                    format_real(r.max_residual) + " (tol " + format_real(r.tolerance) + ", " +
                    std::to_string(r.samples) + " samples)";
  if (!r.evidence.empty()) out += "\n  evidence: " + r.evidence;
  return out;
}

namespace {

// Deviation of fiber b from fiber a, measured at a point q on both.
double fiber_gap(const Fiber& a, const Fiber& b, const Point& q, const Point& p) {
  if (const auto* la = std::get_if<Line>(&a)) {
    const auto& lb = std::get<Line>(b);
    return std::max(line_angle(*la, lb), lb.distance_to(std::get<Vec3d>(p)));
  }
  const auto& ga = std::get<Geodesic>(a);
  const auto& gb = std::get<Geodesic>(b);
  const HPoint& x = std::get<HPoint>(q);
  return std::max(undirected_angle(tangent_at(ga, x), tangent_at(gb, x)),
                  distance_to_geodesic(std::get<HPoint>(p), gb));
}

}  // namespace

CheckReport check_partition(const FibrationView& f, int n_samples, double tol, std::uint64_t seed) {
  if (n_samples <= 0) throw InvalidArgument("check_partition: n_samples must be positive");
  if (!(tol > 0)) throw InvalidArgument("check_partition: tol must be positive");
  std::mt19937_64 rng(seed);
  CheckReport r{"partition " + describe(f.base()), false, 0.0, n_samples, tol, {}};
  for (int k = 0; k < n_samples; ++k) {
    const Point p = internal::random_point(f.space(), rng);
    const Fiber fp = f.fiber_through(p);
    if (k % 2 == 0) {
      const Point q = internal::random_point_on(fp, rng);
      const double gap = fiber_gap(fp, f.fiber_through(q), q, p);
      if (gap > r.max_residual) {
        r.max_residual = gap;
        if (!(gap < tol)) {
          r.evidence = "fiber through " + internal::format_point(q) + " differs from " + describe(fp);
        }
      }
    } else {
      const Point q = internal::random_point(f.space(), rng);
      const Fiber fq = f.fiber_through(q);
      if (auto e = internal::transversal_crossing(fp, fq, tol)) {
        r.max_residual = std::max(r.max_residual, e->angle);
        r.evidence = describe(fp) + " crosses " + describe(fq) + " at " +
                     internal::format_point(*e->point) + ", angle " + format_real(e->angle);
      }
    }
  }
  r.passed = r.max_residual < tol;
  return r;
}

const std::vector<double>& default_grid() {
  static const std::vector<double> grid = {-1.7, -0.6, 0.4, 1.1, 2.5};
  return grid;
}

CheckReport check_preservation(const FibrationView& f, const SubgroupSpec& g,
                               const std::vector<double>& grid, double tol, std::uint64_t seed,
                               int n_fibers) {
  if (space_of(g) != f.space()) throw InvalidArgument("check_preservation: group acts on the wrong space");
  if (!(tol > 0)) throw InvalidArgument("check_preservation: tol must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Fiber> fibers;
  for (int k = 0; k < n_fibers; ++k) fibers.push_back(f.fiber_through(internal::random_point(f.space(), rng)));

  CheckReport r{"preservation " + describe(f.base()) + " by " + name_of(g), false, 0.0, 0, tol, {}};
  bool have_crossing = false;
  std::string first_failure;
  const auto n = static_cast<std::size_t>(dimension_of(g));
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : grid) {
      const Isometry iso = generator_flow(g, i, s);
      for (const Fiber& fib : fibers) {
        ++r.samples;
        const Fiber img = apply_isometry(iso, fib);
        double res;
        try {
          res = membership_residual(f, img);
        } catch (const SolverFailure& e) {
          res = INFINITY;
        }
        r.max_residual = std::max(r.max_residual, res);
        if (res < tol || have_crossing) continue;
        const std::string what = "generator " + std::to_string(i) + " at s=" + format_real(s) + " [" +
                                 describe(iso) + "] maps " + describe(fib) + " to " + describe(img);
        if (first_failure.empty()) first_failure = what + " (residual " + format_real(res) + ")";
        // Look for a fiber of f crossing the image transversally.
        for (double u : {0.1, 0.3, 0.5, 0.7, 0.9}) {
          Point q;
          if (const auto* l = std::get_if<Line>(&img)) {
            q = l->at(4 * u - 2);
          } else {
            q = point_on_geodesic(std::get<Geodesic>(img), u);
          }
          std::optional<Fiber> through;
          try {
            through = f.fiber_through(q);
          } catch (const SolverFailure&) {
            continue;
          }
          const double angle = undirected_angle(fiber_tangent(img, q), fiber_tangent(*through, q));
          if (angle > internal::kTransversalAngle) {
            have_crossing = true;
            r.evidence = "transversal: " + what + ", which crosses the fiber " + describe(*through) +
                         " at " + internal::format_point(q) + " at angle " + format_real(angle);
            break;
          }
        }
      }
    }
  }
  r.passed = r.max_residual < tol;
  if (!r.passed && !have_crossing) r.evidence = first_failure;
  return r;
}

// ---------------------------------------------------------------------------

Vec3d curl_fd(const VectorField& field, const Vec3d& p, double h) {
  if (!(h > 0)) throw InvalidArgument("curl_fd: h must be positive");
  Eigen::Matrix3d jac;  // jac(i, j) = d field_i / d x_j
  for (int j = 0; j < 3; ++j) {
    Vec3d e = Vec3d::Zero();
    e[j] = h;
    jac.col(j) = (field(p + e) - field(p - e)) / (2 * h);
  }
  return {jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1)};
}

Vec3d unit_field(double t, const Vec3d& p) { return {std::cos(t * p.z()), std::sin(t * p.z()), 0.0}; }

double curl_eigenvalue(const FibrationView& f, const Vec3d& p, double h) {
  if (f.space() != Space::E3) throw InvalidArgument("curl_eigenvalue: Euclidean fibrations only");
  const Vec3d ref = std::get<Line>(f.fiber_through(Point(p))).direction;
  auto field = [&](const Vec3d& x) -> Vec3d {
    const Vec3d d = std::get<Line>(f.fiber_through(Point(x))).direction;
    return d.dot(ref) < 0 ? Vec3d(-d) : d;
  };
  return curl_fd(field, p, h).dot(ref);
}

InvariantTag measured_invariant(const FibrationView& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0;
  const int n = 8;
  for (int k = 0; k < n; ++k) {
    sum += std::abs(curl_eigenvalue(f, std::get<Vec3d>(internal::random_point(Space::E3, rng)), 1e-4));
  }
  return {InvariantTag::Kind::EuclideanPitch, sum / n, {}};
}

int orbit_dimension(const SubgroupSpec& g, const Fiber& fiber, const std::vector<Point>& probes) {
  const auto n = static_cast<std::size_t>(dimension_of(g));
  int best = 0;
  for (const Point& p : probes) {
    Eigen::Matrix<double, 3, Eigen::Dynamic> span(3, n + 1);
    for (std::size_t i = 0; i < n; ++i) span.col(static_cast<Eigen::Index>(i)) = generator_velocity(g, i, p);
    span.col(static_cast<Eigen::Index>(n)) = fiber_tangent(fiber, p);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(span);
    const auto& sv = svd.singularValues();
    best = std::max(best, static_cast<int>((sv.array() > 1e-6).count()));
  }
  return best;
}

}  // namespace fwh
