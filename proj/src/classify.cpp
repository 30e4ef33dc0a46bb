#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fwh/verify.hpp"
#include "sampling.hpp"

namespace fwh {

using internal::format_real;
using std::numbers::pi;

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::TooSmall: return "TooSmall";
    case Outcome::FixesFiber: return "FixesFiber";
    case Outcome::TransversalImage: return "TransversalImage";
    case Outcome::ProducesFibration: return "ProducesFibration";
    case Outcome::PreservesKnownFibration: return "PreservesKnownFibration";
    case Outcome::Unresolved: return "Unresolved";
  }
  return "?";
}

std::vector<std::pair<std::string, Fiber>> candidate_fibers(Space space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::vector<std::pair<std::string, Fiber>> out;
  if (space == Space::E3) {
    const Vec3d o = Vec3d::Zero();
    out.emplace_back("z-axis", Line(o, Vec3d::UnitZ()));
    out.emplace_back("x-axis", Line(o, Vec3d::UnitX()));
    const double a = std::uniform_real_distribution<double>(0, pi)(rng);
    out.emplace_back("horizontal line through origin", Line(o, Vec3d(std::cos(a), std::sin(a), 0)));
    for (int k = 0; k < 3; ++k) {
      out.emplace_back("random line through origin", Line(o, Vec3d(n(rng), n(rng), n(rng))));
    }
    return out;
  }
  const Complexd i(0, 1);
  out.emplace_back("vertical line over 0", Geodesic(Complexd(0), Boundary::infinity()));
  out.emplace_back("geodesic (-1, 1)", Geodesic(-1.0, 1.0));
  out.emplace_back("geodesic (-i, i)", Geodesic(-i, i));
  for (int k = 0; k < 3; ++k) {
    // Geodesics through (0, 1) have endpoints w and -1/conj(w).
    const Complexd w(n(rng), n(rng));
    out.emplace_back("random geodesic through (0,1)", Geodesic(w, -1.0 / std::conj(w)));
  }
  return out;
}

namespace {

std::vector<double> flow_grid(const SubgroupSpec& g, std::size_t i) {
  std::vector<double> grid = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  double quarter = pi / 4;
  if (const auto* e = std::get_if<SubgroupSpecE3<double>>(&g)) {
    const double w = std::abs(e->generators[i].rotation_rate);
    quarter = w > 0 ? pi / (4 * w) : 0.0;
  }
  if (quarter > 0) {
    for (int k = 1; k < 8; ++k) grid.push_back(k * quarter);
  }
  std::sort(grid.begin(), grid.end());
  std::vector<double> out;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), grid.begin(), grid.end());
  return out;
}

class TransversalSearch {
 public:
  TransversalSearch(const SubgroupSpec& g, const Fiber& f, double tol) : g_(g), f_(f), tol_(tol) {}

  std::optional<Evidence> run() {
    const auto n = static_cast<std::size_t>(dimension_of(g_));
    for (std::size_t i = 0; i < n; ++i) {
      auto at = [&](double s) { return generator_flow(g_, i, s); };
      if (auto e = scan(at, flow_grid(g_, i))) return e;
    }
    std::vector<double> phis;
    for (int k = 0; k < 48; ++k) phis.push_back(k * pi / 24);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (double s : {0.3, 1.0, 2.0}) {
          auto at = [&](double phi) { return mixed_flow(g_, i, j, phi, s); };
          if (auto e = scan(at, phis)) return e;
        }
      }
    }
    return std::nullopt;
  }

 private:
  template <typename Flow>
  std::optional<Evidence> check(Flow&& at, double x) {
    const Isometry iso = at(x);
    const Fiber img = apply_isometry(iso, f_);
    auto e = internal::transversal_crossing(f_, img, tol_);
    if (e) {
      e->isometry = describe(iso);
      e->image = describe(img);
    }
    return e;
  }

  // Direct checks where the separation vanishes, then bisection of each sign change.
  template <typename Flow>
  std::optional<Evidence> scan(Flow&& at, const std::vector<double>& xs) {
    std::vector<double> sep;
    for (double x : xs) {
      const double s = internal::signed_separation(f_, apply_isometry(at(x), f_));
      sep.push_back(s);
      if (std::abs(s) < 1e-9) {
        if (auto e = check(at, x)) return e;
      }
    }
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      if (!(sep[k] * sep[k + 1] < 0)) continue;
      double lo = xs[k], hi = xs[k + 1], slo = sep[k];
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double sm = internal::signed_separation(f_, apply_isometry(at(mid), f_));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if ((sm < 0) == (slo < 0)) {
          lo = mid;
          slo = sm;
        } else {
          hi = mid;
        }
      }
      if (auto e = check(at, 0.5 * (lo + hi))) return e;
    }
    return std::nullopt;
  }

  const SubgroupSpec& g_;
  const Fiber& f_;
  double tol_;
};

bool fixes_fiber(const SubgroupSpec& g, const Fiber& f, double tol) {
  const auto n = static_cast<std::size_t>(dimension_of(g));
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (double s : {-2.5, -1.0, -0.3, 0.3, 1.0, 2.5}) {
      if (!internal::same_fiber(f, apply_isometry(generator_flow(g, i, s), f), tol)) return false;
    }
  }
  return true;
}

double max_residual(const FibrationView& view, const std::vector<Fiber>& fibers) {
  double worst = 0;
  for (const Fiber& f : fibers) worst = std::max(worst, membership_residual(view, f));
  return worst;
}

// Angle of direction d in the plane with frame (e1, e2), reduced modulo pi.
double line_angle_in(const Vec3d& d, const Vec3d& e1, const Vec3d& e2) {
  double a = std::atan2(d.dot(e2), d.dot(e1));
  if (a <= -pi / 2) a += pi;
  if (a > pi / 2) a -= pi;
  return a;
}

struct Identified {
  InvariantTag tag;
  double residual;
};

std::optional<Identified> identify_e3(const SubgroupSpec& g, const Line& f,
                                      const std::vector<Fiber>& images) {
  Vec3d n = Vec3d::Zero();
  double best = 0;
  for (const Fiber& img : images) {
    const Vec3d c = f.direction.cross(std::get<Line>(img).direction);
    if (c.norm() > best) best = c.norm(), n = c;
  }
  const Vec3d e1 = f.direction;
  if (best < 1e-6) {
    // Parallel lines: F_0 with the x-axis turned onto the common direction.
    const Eigen::Quaterniond q = Eigen::Quaterniond::FromTwoVectors(Vec3d::UnitX(), e1);
    const FibrationView view(EuclideanFt(0), Rigid{q.toRotationMatrix(), f.base});
    return Identified{equivalence_invariant(EuclideanFt(0)), max_residual(view, images)};
  }
  n.normalize();
  for (const Fiber& img : images) {
    if (std::abs(std::get<Line>(img).direction.dot(n)) > 1e-9) return std::nullopt;
  }
  const Vec3d e2 = n.cross(e1);
  auto height = [&](const Line& l) { return (l.base - f.base).dot(n); };

  // Rate from short flows, then sharpened on the farthest image.
  double rate = 0, dh_best = 0;
  const auto dim = static_cast<std::size_t>(dimension_of(g));
  for (std::size_t i = 0; i < dim; ++i) {
    const Line up = image_of_line(std::get<Rigid>(generator_flow(g, i, 1e-4)), f);
    const Line down = image_of_line(std::get<Rigid>(generator_flow(g, i, -1e-4)), f);
    const double dh = height(up) - height(down);
    if (std::abs(dh) > dh_best) {
      dh_best = std::abs(dh);
      double dth = line_angle_in(up.direction, e1, e2) - line_angle_in(down.direction, e1, e2);
      dth = std::remainder(dth, pi);
      rate = dth / dh;
    }
  }
  if (dh_best < 1e-9) return std::nullopt;
  double far = 0;
  for (const Fiber& img : images) {
    const Line& l = std::get<Line>(img);
    const double h = height(l);
    if (std::abs(h) <= std::abs(far)) continue;
    far = h;
    const double th = line_angle_in(l.direction, e1, e2);
    rate = (th + std::round((rate * h - th) / pi) * pi) / h;
  }
  if (std::abs(rate) < 1e-9) rate = 0;

  Mat3d frame;
  frame.col(0) = e1;
  frame.col(1) = rate < 0 ? Vec3d(-e2) : e2;  // mirror image for negative rates
  frame.col(2) = n;
  const double t = std::abs(rate);
  const FibrationView view(EuclideanFt(t), Rigid{frame, f.base});
  return Identified{equivalence_invariant(EuclideanFt(t)), max_residual(view, images)};
}

std::optional<Identified> identify_h3(const Geodesic& f, const std::vector<Fiber>& images) {
  for (const Boundary& e : {f.u, f.v}) {
    const bool shared = std::all_of(images.begin(), images.end(), [&](const Fiber& img) {
      const auto& g = std::get<Geodesic>(img);
      return approx_equal(g.u, e, 1e-9) || approx_equal(g.v, e, 1e-9);
    });
    if (!shared) continue;
    // All fibers end at e: F_inf moved so that infinity goes to e.
    const BoundaryMap m = e.infinite ? BoundaryMap::identity()
                                     : BoundaryMap{Mobius(e.value, Complexd(1), Complexd(1), Complexd(0)), false};
    const FibrationView view(HyperbolicFInf{}, m);
    return Identified{equivalence_invariant(HyperbolicFInf{}), max_residual(view, images)};
  }
  std::optional<Complexd> z;
  for (const Fiber& img : images) {
    const auto& g = std::get<Geodesic>(img);
    if (g.is_vertical()) return std::nullopt;
    Complexd u = g.u.value, v = g.v.value;
    if (u.imag() > 0) std::swap(u, v);
    if (!(u.imag() < 0 && v.imag() > 0)) return std::nullopt;
    const Complexd zk = (v - u.real()) / -u.imag();
    if (!z) {
      z = zk;
    } else if (std::abs(zk - *z) > 1e-7 * std::max(1.0, std::abs(*z))) {
      return std::nullopt;
    }
  }
  const FibrationView view(HyperbolicFz(*z), BoundaryMap::identity());
  return Identified{equivalence_invariant(HyperbolicFz(*z)), max_residual(view, images)};
}

}  // namespace

CandidateVerdict classify_candidate(const SubgroupSpec& g, const std::string& label, const Fiber& fiber,
                                    double tol, std::uint64_t seed) {
  CandidateVerdict v;
  v.fiber = label + ": " + describe(fiber);
  v.orbit_dimension = orbit_dimension(g, fiber, probe_points(fiber));

  if (fixes_fiber(g, fiber, tol)) {
    v.outcome = Outcome::FixesFiber;
    v.evidence.note = "every generator flow maps the fiber to itself";
    return v;
  }
  if (auto e = TransversalSearch(g, fiber, tol).run()) {
    v.outcome = Outcome::TransversalImage;
    v.evidence = *e;
    return v;
  }
  if (v.orbit_dimension < 3) {
    v.outcome = Outcome::TooSmall;
    v.evidence.note = "orbit of the fiber has dimension " + std::to_string(v.orbit_dimension);
    return v;
  }

  std::mt19937_64 rng(seed);
  std::vector<Fiber> images = {fiber};
  std::vector<std::string> isos = {"identity"};
  for (int k = 0; k < 12; ++k) {
    const Isometry iso = random_element(g, rng);
    images.push_back(apply_isometry(iso, fiber));
    isos.push_back(describe(iso));
  }
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      if (auto e = internal::transversal_crossing(images[a], images[b], tol)) {
        v.outcome = Outcome::TransversalImage;
        e->isometry = isos[b] + " against " + isos[a];
        e->image = describe(images[b]);
        v.evidence = *e;
        return v;
      }
    }
  }

  std::optional<Identified> id;
  try {
    id = space_of(g) == Space::E3 ? identify_e3(g, std::get<Line>(fiber), images)
                                  : identify_h3(std::get<Geodesic>(fiber), images);
  } catch (const SolverFailure& e) {
    v.evidence.note = e.what();
  }
  if (!id || !(id->residual < tol)) {
    v.outcome = Outcome::Unresolved;
    if (id) v.evidence.note = "identified orbit misses by " + format_real(id->residual);
    return v;
  }
  v.outcome = Outcome::ProducesFibration;
  v.tag = id->tag;
  v.evidence.residual = id->residual;
  v.evidence.note = "13 images are fibers of the identified fibration";
  return v;
}

CaseVerdict classify_group(const SubgroupSpec& g, const ClassifyOptions& opt) {
  CaseVerdict out;
  out.group_name = name_of(g);
  const auto cands = candidate_fibers(space_of(g), opt.seed);
  int best_dim = 0;
  for (const auto& [label, fiber] : cands) {
    best_dim = std::max(best_dim, orbit_dimension(g, fiber, probe_points(fiber)));
  }
  if (best_dim < 3) {
    out.outcome = Outcome::TooSmall;
    for (const auto& [label, fiber] : cands) {
      CandidateVerdict v;
      v.fiber = label + ": " + describe(fiber);
      v.orbit_dimension = orbit_dimension(g, fiber, probe_points(fiber));
      v.outcome = Outcome::TooSmall;
      out.candidates.push_back(std::move(v));
    }
    return out;
  }
  std::uint64_t k = 0;
  for (const auto& [label, fiber] : cands) {
    out.candidates.push_back(classify_candidate(g, label, fiber, opt.tol, opt.seed * 7919 + k++));
  }
  auto has = [&](Outcome o) {
    return std::any_of(out.candidates.begin(), out.candidates.end(),
                       [&](const CandidateVerdict& c) { return c.outcome == o; });
  };
  for (const auto& c : out.candidates) {
    if (!c.tag) continue;
    const bool seen = std::any_of(out.tags.begin(), out.tags.end(),
                                  [&](const InvariantTag& t) { return same_tag(t, *c.tag, 1e-6); });
    if (!seen) out.tags.push_back(*c.tag);
  }
  std::sort(out.tags.begin(), out.tags.end(), [](const InvariantTag& a, const InvariantTag& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.t != b.t) return a.t < b.t;
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  if (has(Outcome::ProducesFibration)) {
    out.outcome = Outcome::ProducesFibration;
  } else if (has(Outcome::Unresolved)) {
    out.outcome = Outcome::Unresolved;
  } else if (has(Outcome::TransversalImage)) {
    out.outcome = Outcome::TransversalImage;
  } else if (has(Outcome::FixesFiber)) {
    out.outcome = Outcome::FixesFiber;
  } else {
    out.outcome = Outcome::TooSmall;
  }
  return out;
}

std::string CaseVerdict::summary() const {
  if (outcome == Outcome::ProducesFibration || outcome == Outcome::PreservesKnownFibration) {
    const auto fz = std::count_if(tags.begin(), tags.end(), [](const InvariantTag& t) {
      return t.kind == InvariantTag::Kind::HyperbolicZ;
    });
    std::string inner;
    if (fz > 1) {
      inner = "F_z family";
    } else {
      for (const auto& t : tags) inner += (inner.empty() ? "" : ",") + describe(t);
    }
    return std::string(to_string(outcome)) + "(" + inner + ")";
  }
  if (outcome == Outcome::TooSmall && candidates.empty()) return "TooSmall";
  std::string out;
  for (Outcome o : {Outcome::FixesFiber, Outcome::TransversalImage, Outcome::Unresolved}) {
    const bool present = std::any_of(candidates.begin(), candidates.end(),
                                     [&](const CandidateVerdict& c) { return c.outcome == o; });
    if (present) out += (out.empty() ? "" : "/") + std::string(to_string(o));
  }
  return out.empty() ? std::string(to_string(outcome)) : out;
}

std::vector<CaseVerdict> classification_demo(Space space, const ClassifyOptions& opt) {
  std::vector<CaseVerdict> out;
  if (space == Space::E3) {
    for (const auto& g : catalog_e3(opt.pitch)) out.push_back(classify_group(SubgroupSpec(g), opt));
  } else {
    for (const auto& g : catalog_h3(opt.ratio)) out.push_back(classify_group(SubgroupSpec(g), opt));
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>>& golden_table(Space space) {
  static const std::vector<std::pair<std::string, std::string>> e3 = {
      {"{1}", "TooSmall"},
      {"T(1)", "TooSmall"},
      {"SO(2)", "TooSmall"},
      {"SO(2)_t-bar", "TooSmall"},
      {"SO(2)xT(1)", "FixesFiber/TransversalImage"},
      {"T(2)", "ProducesFibration(t=0)"},
      {"E(2)_t-bar", "ProducesFibration(t=0,t=1)"},
      {"T(3)", "ProducesFibration(t=0)"},
      {"E(2)", "ProducesFibration(t=0)"},
      {"SO(3)", "TransversalImage"},
      {"E(2)xT(1)", "ProducesFibration(t=0)"},
      {"E(3)", "TransversalImage"},
  };
  static const std::vector<std::pair<std::string, std::string>> h3 = {
      {"{1}", "TooSmall"},
      {"Hyp", "TooSmall"},
      {"Par", "TooSmall"},
      {"Ell", "TooSmall"},
      {"Lox", "TooSmall"},
      {"T(2)", "ProducesFibration(F_inf)"},
      {"<Hyp,Par>", "ProducesFibration(F_z family)"},
      {"<Ell,Hyp>", "FixesFiber/TransversalImage"},
      {"Hom", "ProducesFibration(F_inf)"},
      {"ScrewHom", "ProducesFibration(F_inf)"},
      {"E(2)", "ProducesFibration(F_inf)"},
      {"H(2)", "ProducesFibration(z=i)"},
      {"SO(3)", "TransversalImage"},
      {"Sim", "ProducesFibration(F_inf)"},
      {"H(3)", "TransversalImage"},
  };
  return space == Space::E3 ? e3 : h3;
}

CaseVerdict assess_group(const FibrationView& f, const SubgroupSpec& g, double tol, std::uint64_t seed) {
  CaseVerdict out;
  out.group_name = name_of(g);
  const CheckReport r = check_preservation(f, g, default_grid(), tol, seed);
  CandidateVerdict c;
  c.fiber = "100 sampled fibers of " + describe(f.base());
  c.evidence.residual = r.max_residual;
  c.evidence.note = r.evidence;
  if (r.passed) {
    out.outcome = Outcome::PreservesKnownFibration;
    out.tags.push_back(equivalence_invariant(f.base()));
  } else if (r.evidence.rfind("transversal", 0) == 0) {
    out.outcome = Outcome::TransversalImage;
  } else {
    out.outcome = Outcome::Unresolved;
  }
  c.outcome = out.outcome;
  out.candidates.push_back(std::move(c));
  return out;
}

}  // namespace fwh
